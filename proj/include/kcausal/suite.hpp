#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kcausal/causal.hpp"
#include "kcausal/order.hpp"

namespace kcausal {

// Approximation relation read off the causal structure: in both orientations
// (x, y) is related iff y lies in the interior of the closed future of x.
// Requires the closed relation to be antisymmetric (NOT_K_CAUSAL otherwise).
// Both orientations produce the same matrix by construction; the substantive
// duality statement is the interior-duality check, asserted separately.
WayBelowRel way_below_causal(const CausalStructure& c, OrderDir dir);

// One dataset plus the margin restriction every dataset-level check uses.
struct SuiteContext {
  CausalStructure c;
  double margin = 0.0;
  PointSet restricted;  // points at least `margin` inside the region
};

// margin defaults to twice the ball radius.
SuiteContext make_suite_context(CausalStructure c,
                                std::optional<double> margin = std::nullopt);

// Names accepted by run_check, in documentation order.
const std::vector<std::string>& known_check_names();

// Runs one named check against the dataset. Several names expand to more
// than one report (both orientations, or a bundle with its parts). Every
// report is stamped with the ball radius and margin. Unknown names raise
// MALFORMED_SPEC; precondition failures (e.g. a non-antisymmetric closed
// relation where a partial order is needed) propagate as errors.
std::vector<CheckReport> run_check(const SuiteContext& ctx, const std::string& name,
                                   std::optional<std::uint64_t> seed = std::nullopt);

// Family selectors for topology comparison: "balls", "alexandrov",
// "k-alexandrov", "interval". Raises MALFORMED_SPEC on anything else.
std::vector<PointSet> topology_family(const SuiteContext& ctx, const std::string& name);

// Compares two named families on the margin-restricted subspace.
CheckReport compare_families(const SuiteContext& ctx, const std::string& left,
                             const std::string& right);

}  // namespace kcausal
