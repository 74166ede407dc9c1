#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kcausal/pointset.hpp"
#include "kcausal/relation.hpp"
#include "kcausal/report.hpp"
#include "kcausal/spacetime.hpp"
#include "kcausal/topology.hpp"

namespace kcausal {

// Analytic chronology matrix for the sample: (p,q) iff a timelike curve runs
// from p to q. Transitivity is asserted post-hoc except on the cylinder, whose
// irreflexive-by-convention encoding breaks it on mutually related pairs.
Rel chronology(const EventSet& events);

struct KPlusResult {
  Rel rel;
  int iterations = 0;  // productive alternations (rounds that added pairs)
};

// Least relation containing `chrono` that is both transitive and closed in the
// product topology: alternate transitive closure and relation closure until a
// full alternation adds nothing. Both operators are monotone and inflationary
// and any closed transitive superset absorbs each step, so the fixed point is
// the intersection of all candidates. The certificate (containment,
// transitivity, closure stability) is asserted before returning.
KPlusResult k_plus(const Rel& chrono, const FiniteTopology& topology);

// Reflexive closure: the partial order handed to order-theoretic consumers.
Rel k_order(const Rel& k);

// Everything the pipeline derives from one sample.
struct CausalStructure {
  EventSet events;
  FiniteTopology topology;
  Rel chrono;
  Rel k;
  int iterations = 0;
  double radius = 0.0;
};

CausalStructure build_causal_structure(EventSet events,
                                       std::optional<double> radius = std::nullopt);

// Antisymmetry of the computed closed causal relation.
CheckReport is_k_causal(const Rel& k);

// u is convex for k: every point between two members is a member.
// (The union over a,b in u of future(a) & past(b) factors as
// future-image(u) & past-image(u) because a and b vary independently.)
bool k_convex(const Rel& k, const Rel& k_transpose, const PointSet& u);

// Smallest open k-convex set containing p: grow from the minimal neighborhood,
// alternately adding between-points and re-opening with minimal neighborhoods.
PointSet k_convex_open_hull(const FiniteTopology& t, const Rel& k, const Rel& k_transpose,
                            int p);

// Every point p admits, inside every generator containing p, an open k-convex
// set containing p. Equivalent to hull(p) == min_nbhd(p); failures carry the
// point and the index of a generator the hull escapes.
CheckReport strong_k_causality(const FiniteTopology& t, const Rel& k,
                               const PointSet* restrict_to = nullptr);

// Every restricted point has a proper open k-convex neighborhood (the hull
// stays strictly inside the carrier). Total relations fail everywhere.
CheckReport k_convexity_check(const FiniteTopology& t, const Rel& k,
                              const PointSet* restrict_to = nullptr);

// With F(p) = interior(image(k, p, sign)): for every p some open U around p
// has F(p) subset of F(q) for all q in U. The minimal neighborhood is the
// hardest such U, so only it is checked.
CheckReport inner_continuity(const FiniteTopology& t, const Rel& k, Dir sign,
                             const PointSet* restrict_to = nullptr);

// Dual side: closure(F(q)) must stay inside closure(F(p)) for q near p —
// equivalently the largest set missing closure(F(p)) keeps missing closure(F(q)).
CheckReport outer_continuity(const FiniteTopology& t, const Rel& k, Dir sign,
                             const PointSet* restrict_to = nullptr);

// Interior duality: p in int(past-image(q)) iff q in int(future-image(p)),
// over all restricted pairs. Requires an antisymmetric k.
CheckReport lemma32_check(const FiniteTopology& t, const Rel& k,
                          const PointSet* restrict_to = nullptr);

inline constexpr std::uint64_t kDefaultTripleSeed = 0x9e3779b97f4a7c15ull;
inline constexpr int kFullTripleLimit = 150;
inline constexpr std::int64_t kSampledTripleCount = 1'000'000;

// Interior monotonicity along the order, both implications, over triples:
//   (p,q) in k and r in int(future(q))  =>  r in int(future(p))
//   p in int(past(q)) and (q,r) in k    =>  p in int(past(r))
// Full triple enumeration up to kFullTripleLimit restricted points, seeded
// uniform subsampling of kSampledTripleCount triples above it.
CheckReport lemma43_check(const Rel& k, const FiniteTopology& t,
                          std::optional<std::uint64_t> seed = std::nullopt,
                          const PointSet* restrict_to = nullptr);

enum class AlexandrovKind { chronological, k_interior };

// Basic open diamonds: chronological uses future/past chronology images,
// k_interior uses interiors of the closed-relation images. Nonempty sets only,
// deduplicated, deterministically ordered.
std::vector<PointSet> alexandrov_family(const CausalStructure& c, AlexandrovKind kind);

}  // namespace kcausal
