#include "kcausal/spacetime.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <string_view>
#include <utility>

#include "kcausal/errors.hpp"

namespace kcausal {

namespace {

std::string fmt(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_double(std::string_view s) {
  double v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc() && ptr == s.data() + s.size(), errc::malformed_spec,
          "bad number '" + std::string(s) + "' in model spec");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool in_chart(const SpacetimeModel& m, const Event& e) {
  if (m.kind == ModelKind::cylinder) return m.region.contains_x(e.x);
  return m.region.contains(e);
}

// ---- exact sign of short sums (expansion arithmetic) -----------------------
// two_sum is the branch-free exact transform: hi + lo == a + b with
// hi = fl(a + b). Chaining it keeps every rounding error as an extra
// component, so the sign read off the final expansion is the sign of the
// real-number sum — no ulp can flip a genuinely null pair to timelike.

struct TwoSum {
  double hi, lo;
};

TwoSum two_sum(double a, double b) {
  const double x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  return {x, (a - av) + (b - bv)};
}

int sign_of_sum4(double a, double b, double c, double d) {
  double e[4];
  TwoSum s = two_sum(a, b);
  e[0] = s.lo;
  double q = s.hi;
  for (int i = 1; i < 3; ++i) {  // grow the expansion by c, then by d
    const double next = i == 1 ? c : d;
    double carry = next;
    for (int j = 0; j < i; ++j) {
      s = two_sum(carry, e[j]);
      e[j] = s.lo;
      carry = s.hi;
    }
    s = two_sum(carry, q);
    e[i] = s.lo;
    q = s.hi;
  }
  e[3] = q;
  for (int i = 3; i >= 0; --i) {
    if (e[i] != 0.0) return e[i] > 0.0 ? 1 : -1;
  }
  return 0;
}

// A causal curve from below the segment's line to above it crosses the line
// exactly once (the line is spacelike, so t - height(x) strictly increases
// along causal curves). The curve exists iff some crossing abscissa reachable
// from p and able to reach q lies off the removed x-interval.
bool segment_blocked(const SpacelikeSegment& seg, const Event& p, const Event& q) {
  const double al = seg.slope(), be = seg.offset();
  const double fp = p.t - (al * p.x + be);
  const double fq = q.t - (al * q.x + be);
  if (!(fp < 0.0 && fq > 0.0)) return false;
  const double lo1 = (p.t - be + p.x) / (al + 1.0);
  const double hi1 = (p.t - be - p.x) / (al - 1.0);
  const double lo2 = (q.x - q.t + be) / (1.0 - al);
  const double hi2 = (q.t - be + q.x) / (1.0 + al);
  const double lo = std::max(lo1, lo2);
  const double hi = std::min(hi1, hi2);
  return lo >= seg.x_lo() && hi <= seg.x_hi();
}

}  // namespace

bool Region::contains(const Event& e) const {
  return t_min <= e.t && e.t <= t_max && x_min <= e.x && e.x <= x_max;
}

double SpacelikeSegment::distance(const Event& e) const {
  const double vt = b.t - a.t, vx = b.x - a.x;
  const double wt = e.t - a.t, wx = e.x - a.x;
  const double len2 = vt * vt + vx * vx;
  double s = len2 > 0.0 ? (wt * vt + wx * vx) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::hypot(wt - s * vt, wx - s * vx);
}

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::minkowski: return "minkowski";
    case ModelKind::minus_points: return "minus-points";
    case ModelKind::minus_segment: return "minus-segment";
    case ModelKind::cylinder: return "cylinder";
  }
  return "?";
}

const char* rel_kind_name(RelKind kind) {
  switch (kind) {
    case RelKind::chrono: return "I";
    case RelKind::causal: return "J";
    case RelKind::k_hull: return "K";
  }
  return "?";
}

bool SpacetimeModel::supports(RelKind k) const {
  switch (kind) {
    case ModelKind::minkowski:
    case ModelKind::minus_points: return true;
    case ModelKind::minus_segment: return k != RelKind::k_hull;
    case ModelKind::cylinder: return k == RelKind::chrono;
  }
  return false;
}

bool SpacetimeModel::on_removed_set(const Event& e, double tol) const {
  for (const Event& p : removed_points) {
    if (std::abs(e.t - p.t) <= tol && std::abs(e.x - p.x) <= tol) return true;
  }
  if (removed_segment) {
    const SpacelikeSegment& s = *removed_segment;
    if (e.x >= s.x_lo() - tol && e.x <= s.x_hi() + tol &&
        std::abs(e.t - s.height_at(e.x)) <= tol) {
      return true;
    }
  }
  return false;
}

SpacetimeModel make_model(SpacetimeModel m) {
  const Region& r = m.region;
  require(r.t_min < r.t_max && r.x_min < r.x_max, errc::malformed_spec, "degenerate region");
  auto strictly_inside = [&](const Event& e) {
    return r.t_min < e.t && e.t < r.t_max && r.x_min < e.x && e.x < r.x_max;
  };
  switch (m.kind) {
    case ModelKind::minkowski:
      require(m.removed_points.empty() && !m.removed_segment && m.period == 0.0,
              errc::malformed_spec, "flat model takes no removed sets or period");
      break;
    case ModelKind::minus_points:
      require(!m.removed_points.empty(), errc::malformed_spec,
              "minus-points model needs at least one removed point");
      require(!m.removed_segment && m.period == 0.0, errc::malformed_spec,
              "minus-points model takes no segment or period");
      for (const Event& e : m.removed_points)
        require(strictly_inside(e), errc::malformed_spec,
                "removed point must lie inside the region");
      break;
    case ModelKind::minus_segment: {
      require(m.removed_segment.has_value(), errc::malformed_spec,
              "minus-segment model needs segment endpoints");
      require(m.removed_points.empty() && m.period == 0.0, errc::malformed_spec,
              "minus-segment model takes no removed points or period");
      const SpacelikeSegment& s = *m.removed_segment;
      require(std::abs(s.b.t - s.a.t) < std::abs(s.b.x - s.a.x), errc::malformed_spec,
              "removed segment must be spacelike");
      require(strictly_inside(s.a) && strictly_inside(s.b), errc::malformed_spec,
              "removed segment must lie inside the region");
      break;
    }
    case ModelKind::cylinder:
      require(m.period > 0.0, errc::malformed_spec, "cylinder needs a positive period");
      require(r.t_extent() <= m.period, errc::malformed_spec,
              "region time extent exceeds the identification period");
      require(m.removed_points.empty() && !m.removed_segment, errc::malformed_spec,
              "cylinder takes no removed sets");
      break;
  }
  return m;
}

SpacetimeModel make_model(const std::string& spec) {
  const auto tokens = split(spec, ':');
  require(!tokens.empty() && !tokens[0].empty(), errc::malformed_spec, "empty model spec");
  SpacetimeModel m;
  const std::string_view kind = tokens[0];
  if (kind == "minkowski") {
    m.kind = ModelKind::minkowski;
  } else if (kind == "minus-points") {
    m.kind = ModelKind::minus_points;
  } else if (kind == "minus-segment") {
    m.kind = ModelKind::minus_segment;
  } else if (kind == "cylinder") {
    m.kind = ModelKind::cylinder;
  } else {
    fail(errc::malformed_spec, "unknown model kind '" + std::string(kind) + "'");
  }
  bool region_given = false;
  bool period_given = false;
  double period = 0.0;
  std::optional<Event> seg_a, seg_b;
  for (size_t i = 1; i < tokens.size(); ++i) {
    const std::string_view tok = tokens[i];
    const size_t eq = tok.find('=');
    require(eq != std::string_view::npos, errc::malformed_spec,
            "expected key=value, got '" + std::string(tok) + "'");
    const std::string_view key = tok.substr(0, eq);
    const auto vals = split(tok.substr(eq + 1), ',');
    auto need = [&](size_t count) {
      require(vals.size() == count, errc::malformed_spec,
              "key '" + std::string(key) + "' takes " + std::to_string(count) + " numbers");
    };
    if (key == "region") {
      need(4);
      m.region = Region{parse_double(vals[0]), parse_double(vals[1]), parse_double(vals[2]),
                        parse_double(vals[3])};
      region_given = true;
    } else if (key == "remove") {
      need(2);
      m.removed_points.push_back(Event{parse_double(vals[0]), parse_double(vals[1])});
    } else if (key == "a") {
      need(2);
      seg_a = Event{parse_double(vals[0]), parse_double(vals[1])};
    } else if (key == "b") {
      need(2);
      seg_b = Event{parse_double(vals[0]), parse_double(vals[1])};
    } else if (key == "period") {
      need(1);
      period = parse_double(vals[0]);
      period_given = true;
    } else {
      fail(errc::malformed_spec, "unknown model key '" + std::string(key) + "'");
    }
  }
  require(m.kind == ModelKind::minus_segment || (!seg_a && !seg_b), errc::malformed_spec,
          "segment endpoints apply to minus-segment models only");
  switch (m.kind) {
    case ModelKind::minkowski: break;
    case ModelKind::minus_points:
      if (m.removed_points.empty()) m.removed_points.push_back(Event{2.0, 0.0});
      break;
    case ModelKind::minus_segment:
      require(seg_a.has_value() == seg_b.has_value(), errc::malformed_spec,
              "segment needs both endpoints a= and b=");
      if (seg_a) {
        m.removed_segment = SpacelikeSegment{*seg_a, *seg_b};
      } else {
        m.removed_segment = SpacelikeSegment{Event{2.0, -0.5}, Event{2.0, 0.5}};
      }
      break;
    case ModelKind::cylinder:
      m.period = period_given ? period : 1.0;
      if (!region_given) m.region = Region{0.0, m.period, -1.0, 1.0};
      break;
  }
  if (m.kind != ModelKind::cylinder) m.period = period_given ? period : 0.0;
  return make_model(std::move(m));
}

std::string model_spec(const SpacetimeModel& m) {
  std::string s = model_kind_name(m.kind);
  s += ":region=" + fmt(m.region.t_min) + "," + fmt(m.region.t_max) + "," + fmt(m.region.x_min) +
       "," + fmt(m.region.x_max);
  for (const Event& p : m.removed_points) s += ":remove=" + fmt(p.t) + "," + fmt(p.x);
  if (m.removed_segment) {
    s += ":a=" + fmt(m.removed_segment->a.t) + "," + fmt(m.removed_segment->a.x);
    s += ":b=" + fmt(m.removed_segment->b.t) + "," + fmt(m.removed_segment->b.x);
  }
  if (m.kind == ModelKind::cylinder) s += ":period=" + fmt(m.period);
  return s;
}

std::string scheme_string(const SamplingScheme& s) {
  std::string out = s.kind;
  if (s.kind == "grid") {
    out += ":" + std::to_string(s.m_t) + "x" + std::to_string(s.m_x);
    if (s.jitter > 0.0) out += ":jitter=" + fmt(s.jitter);
  } else {
    out += ":n=" + std::to_string(s.n);
  }
  if (s.seed) out += ":seed=" + std::to_string(*s.seed);
  if (!s.skipped_sites.empty()) out += ":skipped=" + std::to_string(s.skipped_sites.size());
  return out;
}

EventSet sample(const SpacetimeModel& model, const GridScheme& scheme) {
  require(scheme.m_t >= 1 && scheme.m_x >= 1, errc::malformed_spec,
          "grid dimensions must be at least 1x1");
  require(scheme.jitter >= 0.0, errc::malformed_spec, "jitter must be nonnegative");
  const Region& r = model.region;
  EventSet out;
  out.model = model;
  out.scheme.kind = "grid";
  out.scheme.m_t = scheme.m_t;
  out.scheme.m_x = scheme.m_x;
  out.scheme.jitter = scheme.jitter;
  out.scheme.seed = scheme.seed;
  std::optional<std::mt19937_64> rng;
  if (scheme.jitter > 0.0) {
    require(scheme.seed.has_value(), errc::seed_required, "jittered grids need a seed");
    const double dt = r.t_extent() / scheme.m_t;
    const double dx = r.x_extent() / scheme.m_x;
    require(scheme.jitter < 0.5 * std::min(dt, dx), errc::malformed_spec,
            "jitter must stay below half the grid spacing");
    rng.emplace(*scheme.seed);
    out.scheme.algorithm = kRngAlgorithm;
  }
  for (int it = 0; it < scheme.m_t; ++it) {
    for (int ix = 0; ix < scheme.m_x; ++ix) {
      Event e;
      if (rng) {
        e.t = r.t_min + (it + 0.5) * (r.t_extent() / scheme.m_t) +
              (2.0 * unit_double(*rng) - 1.0) * scheme.jitter;
        e.x = r.x_min + (ix + 0.5) * (r.x_extent() / scheme.m_x) +
              (2.0 * unit_double(*rng) - 1.0) * scheme.jitter;
      } else {
        e.t = scheme.m_t == 1 ? 0.5 * (r.t_min + r.t_max)
                              : r.t_min + it * (r.t_extent() / (scheme.m_t - 1));
        e.x = scheme.m_x == 1 ? 0.5 * (r.x_min + r.x_max)
                              : r.x_min + ix * (r.x_extent() / (scheme.m_x - 1));
      }
      if (model.on_removed_set(e)) {
        out.scheme.skipped_sites.push_back(it * scheme.m_x + ix);
      } else {
        out.events.push_back(e);
      }
    }
  }
  require(!out.events.empty(), errc::region_too_small, "every grid site fell on a removed set");
  return out;
}

EventSet sample(const SpacetimeModel& model, const RandomScheme& scheme) {
  require(scheme.n >= 1, errc::malformed_spec, "sample count must be positive");
  require(scheme.seed.has_value(), errc::seed_required, "random sampling needs a seed");
  const Region& r = model.region;
  EventSet out;
  out.model = model;
  out.scheme.kind = "random";
  out.scheme.n = scheme.n;
  out.scheme.seed = scheme.seed;
  out.scheme.algorithm = kRngAlgorithm;
  std::mt19937_64 rng(*scheme.seed);
  out.events.reserve(static_cast<size_t>(scheme.n));
  for (int i = 0; i < scheme.n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
      Event e{r.t_min + unit_double(rng) * r.t_extent(),
              r.x_min + unit_double(rng) * r.x_extent()};
      if (!model.on_removed_set(e)) {
        out.events.push_back(e);
        placed = true;
      }
    }
    require(placed, errc::region_too_small, "could not place an event off the removed sets");
  }
  return out;
}

EventSet make_event_set(SpacetimeModel model, std::vector<Event> events) {
  EventSet out;
  out.model = std::move(model);
  out.events = std::move(events);
  out.scheme.kind = "explicit";
  out.scheme.n = out.size();
  for (const Event& e : out.events) {
    require(in_chart(out.model, e), errc::event_outside_region, "event outside the model region");
    require(!out.model.on_removed_set(e), errc::event_outside_region,
            "event lies on a removed set");
  }
  return out;
}

double chart_distance(const SpacetimeModel& model, const Event& p, const Event& q) {
  double dt = q.t - p.t;
  if (model.kind == ModelKind::cylinder) dt = std::remainder(dt, model.period);
  return std::hypot(dt, q.x - p.x);
}

double clearance(const SpacetimeModel& model, const Event& e) {
  const Region& r = model.region;
  double d = std::min(e.x - r.x_min, r.x_max - e.x);
  if (model.kind != ModelKind::cylinder) d = std::min({d, e.t - r.t_min, r.t_max - e.t});
  for (const Event& p : model.removed_points) {
    d = std::min(d, std::hypot(e.t - p.t, e.x - p.x));
  }
  if (model.removed_segment) d = std::min(d, model.removed_segment->distance(e));
  return d;
}

double max_nearest_neighbor_distance(const EventSet& events) {
  const int n = events.size();
  require(n >= 2, errc::malformed_spec, "nearest-neighbor spacing needs at least two events");
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      best = std::min(best, chart_distance(events.model, events.events[i], events.events[j]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double default_radius(const EventSet& events) { return 2.0 * max_nearest_neighbor_distance(events); }

PointSet margin_interior(const EventSet& events, double margin) {
  PointSet out(events.size());
  for (int i = 0; i < events.size(); ++i) {
    if (clearance(events.model, events.events[i]) >= margin) out.set(i);
  }
  return out;
}

FiniteTopology ball_topology(const EventSet& events, double radius) {
  require(radius > 0.0, errc::malformed_spec, "ball radius must be positive");
  const int n = events.size();
  require(n >= 1, errc::empty_event_set, "no events to build a topology over");
  // One-sided slack so that pairs engineered to sit exactly on a ball boundary
  // (lattice spacings vs. a radius derived from them) land inside consistently.
  const double reach = radius * (1.0 + 1e-9);
  std::vector<PointSet> gens(static_cast<size_t>(n), PointSet(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (chart_distance(events.model, events.events[i], events.events[j]) <= reach) {
        gens[static_cast<size_t>(i)].set(j);
      }
    }
  }
  return FiniteTopology(n, std::move(gens));
}

bool oracle(const SpacetimeModel& model, RelKind kind, const Event& p, const Event& q) {
  require(model.supports(kind), errc::unsupported_oracle,
          std::string(rel_kind_name(kind)) + " has no exact predicate on " +
              model_kind_name(model.kind));
  require(in_chart(model, p) && in_chart(model, q), errc::event_outside_region,
          "event outside the model region");
  switch (model.kind) {
    case ModelKind::minkowski: {
      const int sign = cone_slack_sign(p, q);
      return kind == RelKind::chrono ? sign > 0 : sign >= 0;
    }
    case ModelKind::minus_points: {
      const int sign = cone_slack_sign(p, q);
      if (kind == RelKind::chrono) return sign > 0;   // open cones dodge finitely many points
      if (kind == RelKind::k_hull) return sign >= 0;  // closing restores the null boundary
      if (p == q) return true;
      if (sign < 0) return false;
      if (sign > 0) return true;  // timelike: a 2-parameter family of causal paths
      // Exactly null with p != q: the only causal path is the null geodesic
      // segment, blocked iff a removed point sits strictly between (null from
      // p and null to q forces it onto the segment).
      for (const Event& rp : model.removed_points) {
        if (p.t < rp.t && rp.t < q.t && cone_slack_sign(p, rp) == 0 &&
            cone_slack_sign(rp, q) == 0)
          return false;
      }
      return true;
    }
    case ModelKind::minus_segment: {
      if (kind == RelKind::causal && p == q) return true;
      const int sign = cone_slack_sign(p, q);
      const bool cone = kind == RelKind::chrono ? sign > 0 : sign >= 0;
      return cone && !segment_blocked(*model.removed_segment, p, q);
    }
    case ModelKind::cylinder: {
      // Winding through the time identification connects every distinct pair.
      const bool same_point = q.x == p.x && std::remainder(q.t - p.t, model.period) == 0.0;
      return !same_point;
    }
  }
  fail(errc::internal, "unhandled model kind");
}

Rel oracle_relation(const EventSet& events, RelKind kind) {
  const int n = events.size();
  require(n >= 1, errc::empty_event_set, "no events to relate");
  Rel out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (oracle(events.model, kind, events.events[i], events.events[j])) out.set(i, j);
    }
  }
  return out;
}

double cone_slack(const Event& p, const Event& q) {
  return (q.t - p.t) - std::abs(q.x - p.x);
}

int cone_slack_sign(const Event& p, const Event& q) {
  // The branch on the x order is itself exact: comparing two doubles never
  // rounds. Each arm hands the four signed terms of the slack to the
  // expansion evaluator.
  if (q.x >= p.x) return sign_of_sum4(q.t, -p.t, -q.x, p.x);
  return sign_of_sum4(q.t, -p.t, q.x, -p.x);
}

}  // namespace kcausal
