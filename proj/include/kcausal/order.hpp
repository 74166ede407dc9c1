#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kcausal/relation.hpp"
#include "kcausal/report.hpp"

namespace kcausal {

// ---------------------------------------------------------------------------
// Posets and bounds
// ---------------------------------------------------------------------------

// Orientation for the approximation relation: `below` evaluates the
// way-below relation (x approximates y from underneath), `above` its
// order-dual (y approximates x from above).
enum class OrderDir { below, above };

const char* order_dir_name(OrderDir dir);

// A validated partial order on {0..n-1}.  order.test(x, y) means x <= y.
struct PosetHandle {
  Rel order;

  int size() const { return order.size(); }
  PosetHandle opposite() const { return PosetHandle{order.transpose()}; }
};

// Checks reflexivity, antisymmetry and transitivity, raising NOT_REFLEXIVE /
// NOT_ANTISYMMETRIC / NOT_TRANSITIVE with a witness in the message.  When
// `reflexivize` is set the diagonal is filled in first instead of rejected.
PosetHandle validate_order(const Rel& r, bool reflexivize = false);

std::optional<int> least_upper_bound(const PosetHandle& p, const PointSet& s);
std::optional<int> greatest_lower_bound(const PosetHandle& p, const PointSet& s);

struct BoundsResult {
  bool directed = false;                // every pair has an upper bound in s
  bool filtered = false;                // every pair has a lower bound in s
  std::optional<int> supremum;          // least upper bound, if one exists
  std::optional<int> infimum;           // greatest lower bound, if one exists
};

// Raises EMPTY_SUBSET when s has no members.
BoundsResult bounds(const PosetHandle& p, const PointSet& s);

// ---------------------------------------------------------------------------
// Approximation (way-below) relations
// ---------------------------------------------------------------------------

enum class WbMethod { definitional, finite_shortcut, causal_interior, analytic_chronology };

const char* wb_method_name(WbMethod method);

struct WayBelowRel {
  Rel rel;             // rel.test(x, y): x approximates y (below) or y sits
                       // arbitrarily close above x (above)
  WbMethod method = WbMethod::finite_shortcut;
  OrderDir direction = OrderDir::below;
};

// Largest carrier accepted by the quantifier-over-subsets evaluation; it
// enumerates every nonempty subset, so the cap keeps the loop around 4k sets.
inline constexpr int kDefinitionalCap = 12;

// Evaluates the approximation relation straight from its definition by
// enumerating every directed (resp. filtered) subset that has a supremum
// (resp. infimum).  Raises CARRIER_TOO_LARGE above the cap.
Rel way_below_matrix(const PosetHandle& p, OrderDir dir, int cap = kDefinitionalCap);

bool way_below_definitional(const PosetHandle& p, int x, int y, OrderDir dir,
                            int cap = kDefinitionalCap);

// On a finite carrier every directed set contains its supremum, so the
// approximation relation collapses to the order itself; this shortcut just
// copies it (transposing for the `above` orientation).
WayBelowRel way_below_fast(const PosetHandle& p, OrderDir dir);

// ---------------------------------------------------------------------------
// Scott topology
// ---------------------------------------------------------------------------

// On a finite poset a set is Scott-open iff it is an upper set: the
// directed-supremum condition is automatic because every directed set
// contains its supremum.  Returns that upper-set test.
bool scott_open_check(const PosetHandle& p, const PointSet& u);

// The directed-supremum condition checked literally, by enumerating directed
// subsets with a supremum.  Exists so the collapse claimed above can be
// tested rather than assumed.  Raises CARRIER_TOO_LARGE above the cap.
bool scott_directed_condition(const PosetHandle& p, const PointSet& u, int cap = 16);

// ---------------------------------------------------------------------------
// Continuity, interpolation, intervals
// ---------------------------------------------------------------------------

// Evaluates four flags on one poset with a below- and an above-oriented
// approximation relation:
//   continuous            every x is recovered from its approximants below
//   dual_continuous       the order-dual statement
//   bicontinuous          both of the above
//   jointly_bicontinuous  bicontinuous and the two relations coincide
// The report's holds mirrors `bicontinuous`; all four land in params.
// restrict_to narrows which points are asserted over; approximants and
// bounds are always taken in the full poset, so edge points of a restricted
// window keep their support below the window.
CheckReport continuity_checks(const PosetHandle& p, const WayBelowRel& wb,
                              const WayBelowRel& wa,
                              const PointSet* restrict_to = nullptr);

// Same computation, but holds mirrors `jointly_bicontinuous` and a mismatch
// between the two relations is reported as a witness pair.
CheckReport joint_bicontinuity_check(const PosetHandle& p, const WayBelowRel& wb,
                                     const WayBelowRel& wa,
                                     const PointSet* restrict_to = nullptr);

// For every related pair (x, y) of restricted points checks that some z
// (anywhere on the carrier) interpolates strictly between them.
CheckReport interpolation_check(const WayBelowRel& wb,
                                const PointSet* restrict_to = nullptr);

// Order interval [a, b] = up-set of a intersected with down-set of b.
PointSet order_interval(const PosetHandle& p, int a, int b);

// Basic sets {x : a approximates x and x is approximated from above by b},
// one per ordered pair with a nonempty result, deduplicated and sorted.
std::vector<PointSet> interval_topology_family(const WayBelowRel& wb,
                                               const WayBelowRel& wa);

// Bicontinuity plus compactness of every order interval.  On a finite
// carrier intervals are finite and hence compact in any topology, so the
// compactness half is recorded as a note rather than computed.
CheckReport gh_poset_check(const PosetHandle& p, const WayBelowRel& wb,
                           const WayBelowRel& wa,
                           const PointSet* restrict_to = nullptr);

// ---------------------------------------------------------------------------
// Upper-space demonstration
// ---------------------------------------------------------------------------

// Builds the poset of nonempty subsets of an n-point discrete space under
// reverse inclusion and checks that the approximation relation computed from
// its definition equals the containment criterion (interior of a subset in
// the discrete topology is the subset itself).  n <= 4 runs the definitional
// evaluation; n == 5 falls back to the finite shortcut with a note; larger
// n raises CARRIER_TOO_LARGE.
CheckReport upper_space_demo(int n_points);

}  // namespace kcausal
