#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kcausal/pointset.hpp"
#include "kcausal/relation.hpp"
#include "kcausal/topology.hpp"

namespace kcausal {

struct Event {
  double t = 0.0;
  double x = 0.0;
  bool operator==(const Event&) const = default;
};

// Closed chart rectangle [t_min,t_max] x [x_min,x_max].
struct Region {
  double t_min = 0.0, t_max = 0.0, x_min = 0.0, x_max = 0.0;
  bool operator==(const Region&) const = default;
  bool contains(const Event& e) const;
  bool contains_x(double x) const { return x_min <= x && x <= x_max; }
  double t_extent() const { return t_max - t_min; }
  double x_extent() const { return x_max - x_min; }
};

// Closed segment between two spacelike-separated endpoints: t = slope()*x + offset()
// over [x_lo(), x_hi()], with |slope| < 1.
struct SpacelikeSegment {
  Event a, b;
  bool operator==(const SpacelikeSegment&) const = default;
  double slope() const { return (b.t - a.t) / (b.x - a.x); }
  double offset() const { return a.t - slope() * a.x; }
  double x_lo() const { return a.x < b.x ? a.x : b.x; }
  double x_hi() const { return a.x < b.x ? b.x : a.x; }
  double height_at(double x) const { return slope() * x + offset(); }
  double distance(const Event& e) const;
};

enum class ModelKind { minkowski, minus_points, minus_segment, cylinder };

const char* model_kind_name(ModelKind kind);

// Relations named after their roles: chronology (timelike curves), causality
// (causal curves), and the closed causal hull computed analytically where known.
enum class RelKind { chrono, causal, k_hull };

const char* rel_kind_name(RelKind kind);  // "I" / "J" / "K"

// 1+1-dimensional analytic models on a chart rectangle. The cylinder identifies
// t modulo `period` (a causality-violating quotient); the minus variants delete
// points or one closed spacelike segment from flat spacetime.
struct SpacetimeModel {
  ModelKind kind = ModelKind::minkowski;
  Region region{0.0, 4.0, -2.0, 2.0};
  std::vector<Event> removed_points;               // minus_points
  std::optional<SpacelikeSegment> removed_segment; // minus_segment
  double period = 0.0;                             // cylinder
  bool operator==(const SpacetimeModel&) const = default;
  bool supports(RelKind kind) const;
  bool on_removed_set(const Event& e, double tol = 1e-9) const;
};

// Parse a model spec string: KIND[:key=value]... with KIND one of
// minkowski | minus-points | minus-segment | cylinder and keys
// region=T0,T1,X0,X1  remove=t,x (repeatable)  a=t,x  b=t,x  period=P.
SpacetimeModel make_model(const std::string& spec);
// Validate a directly-assembled model (removed sets inside the region, segment
// spacelike, cylinder period positive and >= the region's time extent).
SpacetimeModel make_model(SpacetimeModel draft);
// Canonical spec string for display; parses back to an equal model.
std::string model_spec(const SpacetimeModel& model);

struct GridScheme {
  int m_t = 0, m_x = 0;
  double jitter = 0.0;  // chart units; requires a seed when positive
  std::optional<std::uint64_t> seed;
};

struct RandomScheme {
  int n = 0;
  std::optional<std::uint64_t> seed;  // always required
};

inline constexpr const char* kRngAlgorithm = "mt19937_64-u53";

// Descriptor of how an event set was produced, recorded for reproducibility.
struct SamplingScheme {
  std::string kind;  // "grid" | "random" | "explicit"
  int m_t = 0, m_x = 0;
  int n = 0;
  double jitter = 0.0;
  std::optional<std::uint64_t> seed;
  std::string algorithm;  // RNG identifier when a generator was consumed
  std::vector<int> skipped_sites;  // grid sites dropped over removed sets
  bool operator==(const SamplingScheme&) const = default;
};

std::string scheme_string(const SamplingScheme& scheme);

struct EventSet {
  SpacetimeModel model;
  std::vector<Event> events;
  SamplingScheme scheme;
  bool operator==(const EventSet&) const = default;
  int size() const { return static_cast<int>(events.size()); }
};

// Lattice sample. Without jitter the nodes span the region boundary-to-boundary;
// with jitter the lattice sits at cell centers so displaced events stay inside.
// Sites landing on removed sets are skipped and recorded.
EventSet sample(const SpacetimeModel& model, const GridScheme& scheme);
// Uniform sample; resamples a point up to 100 times to get off removed sets.
EventSet sample(const SpacetimeModel& model, const RandomScheme& scheme);
// Explicit events (validated: inside the region, off removed sets).
EventSet make_event_set(SpacetimeModel model, std::vector<Event> events);

// Chart distance between events; the cylinder reduces the time difference
// modulo the period before measuring.
double chart_distance(const SpacetimeModel& model, const Event& p, const Event& q);
// Distance to the region boundary and to removed sets, whichever is nearest.
// The cylinder has no time boundary, so only the x-sides count there.
double clearance(const SpacetimeModel& model, const Event& e);
double max_nearest_neighbor_distance(const EventSet& events);
// 2x the largest nearest-neighbor gap: guarantees every event has company
// in its ball while keeping interiors informative.
double default_radius(const EventSet& events);
inline double default_margin(double radius) { return 2.0 * radius; }
// Events whose clearance is at least `margin`.
PointSet margin_interior(const EventSet& events, double margin);

// Finite topology generated by closed chart balls of the given radius.
FiniteTopology ball_topology(const EventSet& events, double radius);

// Exact membership predicates. chrono is irreflexive by convention (on the
// cylinder every distinct pair is chronology-related); causal and k_hull are
// reflexive. Unsupported combinations raise UNSUPPORTED_ORACLE.
bool oracle(const SpacetimeModel& model, RelKind kind, const Event& p, const Event& q);
Rel oracle_relation(const EventSet& events, RelKind kind);

// (q.t - p.t) - |q.x - p.x|: positive strictly inside the flat future cone,
// zero on its null boundary. The double version carries rounding error of a
// few ulps; the sign version is exact (expansion arithmetic), which keeps the
// cone relations transitive even on lattices full of exactly-null pairs.
double cone_slack(const Event& p, const Event& q);
int cone_slack_sign(const Event& p, const Event& q);

}  // namespace kcausal
