#include "kcausal/report.hpp"

#include <json.hpp>

#include "kcausal/errors.hpp"
#include "report_json.hpp"

namespace kcausal {

namespace detail {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json param_json(const ParamValue& v) {
  return std::visit([](const auto& x) { return ordered_json(x); }, v);
}

}  // namespace

ordered_json report_json(const CheckReport& report) {
  ordered_json j;
  j["check"] = report.check;
  j["holds"] = report.holds;
  ordered_json ws = ordered_json::array();
  for (const Witness& w : report.witnesses) {
    ordered_json wj;
    wj["points"] = w.points;
    wj["detail"] = w.detail;
    ws.push_back(std::move(wj));
  }
  j["witnesses"] = std::move(ws);
  ordered_json ps = ordered_json::object();
  for (const auto& [key, value] : report.params) ps[key] = param_json(value);
  j["params"] = std::move(ps);
  j["notes"] = report.notes;
  return j;
}

CheckReport report_from_json(const ordered_json& j) {
  CheckReport r;
  r.check = j.at("check").get<std::string>();
  r.holds = j.at("holds").get<bool>();
  for (const auto& wj : j.at("witnesses")) {
    Witness w;
    w.points = wj.at("points").get<std::vector<int>>();
    w.detail = wj.at("detail").get<std::string>();
    r.witnesses.push_back(std::move(w));
  }
  for (const auto& item : j.at("params").items()) {
    const ordered_json& value = item.value();
    if (value.is_boolean())
      r.params.emplace_back(item.key(), value.get<bool>());
    else if (value.is_number_integer())
      r.params.emplace_back(item.key(), value.get<std::int64_t>());
    else if (value.is_number_float())
      r.params.emplace_back(item.key(), value.get<double>());
    else if (value.is_string())
      r.params.emplace_back(item.key(), value.get<std::string>());
    else
      fail(errc::malformed_spec,
           "unsupported parameter type in stored report '" + r.check + "'");
  }
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

}  // namespace detail

std::string report_to_json(const CheckReport& report, int indent) {
  return detail::report_json(report).dump(indent);
}

std::string reports_to_json(const std::vector<CheckReport>& reports, double elapsed_seconds,
                            int indent) {
  detail::ordered_json j;
  j["checks"] = detail::ordered_json::array();
  for (const CheckReport& r : reports) j["checks"].push_back(detail::report_json(r));
  j["elapsed_seconds"] = elapsed_seconds;
  return j.dump(indent);
}

}  // namespace kcausal
