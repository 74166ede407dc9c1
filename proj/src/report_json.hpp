#pragma once

#include <json.hpp>

#include "kcausal/report.hpp"

// Shared between the report printer and the dataset codec so embedded check
// results keep exactly one JSON shape.
namespace kcausal::detail {

nlohmann::ordered_json report_json(const CheckReport& report);
CheckReport report_from_json(const nlohmann::ordered_json& j);

}  // namespace kcausal::detail
