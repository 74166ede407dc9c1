#include "kcausal/order.hpp"

#include <algorithm>
#include <string>

namespace kcausal {

namespace {

std::string point_str(int x) { return std::to_string(x); }

// Least upper bound against a precomputed transpose; nullopt when the set of
// upper bounds is empty or has no least element.
std::optional<int> lub_impl(const Rel& order, const PointSet& s) {
  PointSet ub = PointSet::full(order.size());
  s.for_each([&](int m) { ub &= order.row(m); });
  std::optional<int> least;
  ub.for_each([&](int u) {
    if (!least && ub.is_subset_of(order.row(u))) least = u;
  });
  return least;
}

std::optional<int> glb_impl(const Rel& order, const Rel& order_t, const PointSet& s) {
  PointSet lb = PointSet::full(order.size());
  s.for_each([&](int m) { lb &= order_t.row(m); });
  std::optional<int> greatest;
  lb.for_each([&](int g) {
    if (!greatest && lb.is_subset_of(order_t.row(g))) greatest = g;
  });
  return greatest;
}

bool pairwise_directed(const Rel& order, const PointSet& s) {
  bool ok = true;
  s.for_each([&](int a) {
    if (!ok) return;
    s.for_each([&](int b) {
      if (!ok || b < a) return;
      PointSet common = order.row(a);
      common &= order.row(b);
      common &= s;
      if (common.none()) ok = false;
    });
  });
  return ok;
}

}  // namespace

const char* order_dir_name(OrderDir dir) {
  return dir == OrderDir::below ? "below" : "above";
}

const char* wb_method_name(WbMethod method) {
  switch (method) {
    case WbMethod::definitional: return "definitional";
    case WbMethod::finite_shortcut: return "finite_shortcut";
    case WbMethod::causal_interior: return "causal_interior";
    case WbMethod::analytic_chronology: return "analytic_chronology";
  }
  return "unknown";
}

PosetHandle validate_order(const Rel& r, bool reflexivize) {
  Rel order = reflexivize ? reflexive_closure(r) : r;
  const RelationProperties props = relation_properties(order);
  require(props.reflexive, errc::not_reflexive,
          "point " + point_str(props.reflexive_witness) + " is not below itself");
  require(props.antisymmetric, errc::not_antisymmetric,
          "points " + point_str(props.antisymmetric_witness[0]) + " and " +
              point_str(props.antisymmetric_witness[1]) + " sit below each other");
  require(props.transitive, errc::not_transitive,
          "chain " + point_str(props.transitive_witness[0]) + " -> " +
              point_str(props.transitive_witness[1]) + " -> " +
              point_str(props.transitive_witness[2]) + " does not compose");
  return PosetHandle{std::move(order)};
}

std::optional<int> least_upper_bound(const PosetHandle& p, const PointSet& s) {
  require(s.size() == p.size(), errc::dimension_mismatch,
          "subset must live on the poset carrier");
  require(s.any(), errc::empty_subset, "bounds of the empty subset are not taken");
  return lub_impl(p.order, s);
}

std::optional<int> greatest_lower_bound(const PosetHandle& p, const PointSet& s) {
  require(s.size() == p.size(), errc::dimension_mismatch,
          "subset must live on the poset carrier");
  require(s.any(), errc::empty_subset, "bounds of the empty subset are not taken");
  return glb_impl(p.order, p.order.transpose(), s);
}

BoundsResult bounds(const PosetHandle& p, const PointSet& s) {
  require(s.size() == p.size(), errc::dimension_mismatch,
          "subset must live on the poset carrier");
  require(s.any(), errc::empty_subset, "bounds of the empty subset are not taken");
  const Rel order_t = p.order.transpose();

  BoundsResult out;
  out.directed = pairwise_directed(p.order, s);
  out.filtered = pairwise_directed(order_t, s);
  out.supremum = lub_impl(p.order, s);
  out.infimum = glb_impl(p.order, order_t, s);
  return out;
}

// ---------------------------------------------------------------------------
// Approximation relations
// ---------------------------------------------------------------------------

namespace {

// Definitional evaluation in the `below` orientation on the given order.
// For each directed subset S with supremum u, every y <= u constrains its
// approximants to the down-set of S; x approximates y iff x survives every
// such constraint.  Subsets with |S| = 1 always qualify, so the result is
// contained in the order from the start.
Rel way_below_core(const Rel& order, int cap) {
  const int n = order.size();
  require(n <= cap, errc::carrier_too_large,
          "definitional evaluation enumerates all subsets of the carrier (" +
              std::to_string(n) + " points, cap " + std::to_string(cap) + ")");
  const Rel order_t = order.transpose();

  std::vector<PointSet> allowed(static_cast<size_t>(n), PointSet::full(n));
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    PointSet s(n);
    for (int i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) s.set(i);
    if (!pairwise_directed(order, s)) continue;
    const std::optional<int> sup = lub_impl(order, s);
    if (!sup) continue;

    PointSet down_s(n);
    s.for_each([&](int m) { down_s |= order_t.row(m); });
    order_t.row(*sup).for_each([&](int y) { allowed[static_cast<size_t>(y)] &= down_s; });
  }

  Rel by_target(n);
  for (int y = 0; y < n; ++y) by_target.row_mut(y) = allowed[static_cast<size_t>(y)];
  return by_target.transpose();
}

}  // namespace

Rel way_below_matrix(const PosetHandle& p, OrderDir dir, int cap) {
  if (dir == OrderDir::below) return way_below_core(p.order, cap);
  // above(x, y) on P equals below(y, x) on the opposite poset.
  return way_below_core(p.order.transpose(), cap).transpose();
}

bool way_below_definitional(const PosetHandle& p, int x, int y, OrderDir dir, int cap) {
  return way_below_matrix(p, dir, cap).test(x, y);
}

WayBelowRel way_below_fast(const PosetHandle& p, OrderDir dir) {
  return WayBelowRel{p.order, WbMethod::finite_shortcut, dir};
}

// ---------------------------------------------------------------------------
// Scott topology
// ---------------------------------------------------------------------------

bool scott_open_check(const PosetHandle& p, const PointSet& u) {
  require(u.size() == p.size(), errc::dimension_mismatch,
          "subset must live on the poset carrier");
  bool upper = true;
  u.for_each([&](int x) {
    if (upper && !p.order.row(x).is_subset_of(u)) upper = false;
  });
  return upper;
}

bool scott_directed_condition(const PosetHandle& p, const PointSet& u, int cap) {
  require(u.size() == p.size(), errc::dimension_mismatch,
          "subset must live on the poset carrier");
  const int n = p.size();
  require(n <= cap, errc::carrier_too_large,
          "literal directed-supremum test enumerates all subsets of the carrier (" +
              std::to_string(n) + " points, cap " + std::to_string(cap) + ")");

  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    PointSet s(n);
    for (int i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) s.set(i);
    if (!pairwise_directed(p.order, s)) continue;
    const std::optional<int> sup = lub_impl(p.order, s);
    if (!sup || !u.test(*sup)) continue;
    if (!s.intersects(u)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Continuity, interpolation, intervals
// ---------------------------------------------------------------------------

namespace {

struct ContinuityResult {
  bool continuous = true;
  bool dual_continuous = true;
  bool jointly = true;
  std::vector<int> below_failures;       // x not recovered from approximants below
  std::vector<int> above_failures;       // dual direction
  std::optional<std::array<int, 2>> mismatch;  // first pair where wb != wa
};

constexpr int kWitnessCap = 25;

PointSet domain_or_full(int n, const PointSet* restrict_to) {
  if (!restrict_to) return PointSet::full(n);
  require(restrict_to->size() == n, errc::dimension_mismatch,
          "restriction mask must match the carrier");
  return *restrict_to;
}

// Assertions range over `restrict_to` (default: everything); approximants and
// the bounds that recover each point are always taken on the full carrier.
ContinuityResult continuity_core(const PosetHandle& p, const WayBelowRel& wb,
                                 const WayBelowRel& wa, const PointSet* restrict_to) {
  require(wb.direction == OrderDir::below && wa.direction == OrderDir::above,
          errc::malformed_spec,
          "continuity needs one below- and one above-oriented relation");
  require(wb.rel.size() == p.size() && wa.rel.size() == p.size(),
          errc::dimension_mismatch,
          "approximation relations must live on the poset carrier");

  const PointSet domain = domain_or_full(p.size(), restrict_to);
  const Rel order_t = p.order.transpose();
  const Rel wb_t = wb.rel.transpose();

  ContinuityResult out;
  domain.for_each([&](int x) {
    // Approximants of x from below that actually sit below it. x bounds this
    // set by construction; continuity asks that the bound cannot be improved:
    // no point strictly below x also bounds it. Wherever a least upper bound
    // exists this is exactly sup-recovery; where incomparable bounds coexist
    // (cone pairs whose slack sits under the sampling scale are unresolvable
    // and appear incomparable) x must still be a minimal bound.
    PointSet s = wb_t.row(x);
    s &= order_t.row(x);
    bool ok = s.any();
    if (ok) {
      PointSet ub = PointSet::full(p.size());
      s.for_each([&](int y) { ub &= p.order.row(y); });
      PointSet strictly_below = order_t.row(x);
      strictly_below.reset(x);
      ok = !ub.intersects(strictly_below);
    }
    if (!ok) {
      out.continuous = false;
      out.below_failures.push_back(x);
    }

    // Dual side: x must be a maximal lower bound of its approximants from
    // above (the points it reaches arbitrarily closely from below).
    PointSet t = wa.rel.row(x);
    t &= p.order.row(x);
    bool dual_ok = t.any();
    if (dual_ok) {
      PointSet lb = PointSet::full(p.size());
      t.for_each([&](int y) { lb &= order_t.row(y); });
      PointSet strictly_above = p.order.row(x);
      strictly_above.reset(x);
      dual_ok = !lb.intersects(strictly_above);
    }
    if (!dual_ok) {
      out.dual_continuous = false;
      out.above_failures.push_back(x);
    }
  });

  domain.for_each([&](int x) {
    if (out.mismatch) return;
    PointSet diff = wb.rel.row(x) | wa.rel.row(x);
    diff -= wb.rel.row(x) & wa.rel.row(x);
    diff &= domain;
    if (diff.any()) out.mismatch = std::array<int, 2>{x, diff.first()};
  });
  out.jointly = !out.mismatch && out.continuous && out.dual_continuous;
  return out;
}

void stamp_methods(CheckReport& report, const WayBelowRel& wb, const WayBelowRel& wa) {
  report.set_param("method_below", wb_method_name(wb.method));
  report.set_param("method_above", wb_method_name(wa.method));
  const auto sampled = [](WbMethod m) {
    return m == WbMethod::causal_interior || m == WbMethod::analytic_chronology;
  };
  if (sampled(wb.method) || sampled(wa.method))
    report.note(
        "approximation relations come from a sampled continuum (the "
        "subset-quantifier definition degenerates on finite carriers); "
        "sup/inf recovery is evaluated as minimal-upper-bound / "
        "maximal-lower-bound recovery, which coincides with least/greatest "
        "whenever one exists and stays meaningful when sampling leaves only "
        "incomparable bounds");
}

void stamp_flags(CheckReport& report, const ContinuityResult& r) {
  report.set_param("continuous", r.continuous);
  report.set_param("dual_continuous", r.dual_continuous);
  report.set_param("bicontinuous", r.continuous && r.dual_continuous);
  report.set_param("jointly_bicontinuous", r.jointly);
}

void stamp_domain(CheckReport& report, int carrier, const PointSet* restrict_to) {
  report.set_param("carrier", carrier);
  if (restrict_to) report.set_param("restricted_to", restrict_to->count());
}

void add_direction_witnesses(CheckReport& report, const ContinuityResult& r) {
  int quota = kWitnessCap;
  for (int x : r.below_failures) {
    if (quota-- <= 0) break;
    report.add_witness({x}, "not a minimal upper bound of its approximants from below");
  }
  for (int x : r.above_failures) {
    if (quota-- <= 0) break;
    report.add_witness({x}, "not a maximal lower bound of its approximants from above");
  }
  const size_t total = r.below_failures.size() + r.above_failures.size();
  if (total > static_cast<size_t>(kWitnessCap))
    report.note(std::to_string(total - static_cast<size_t>(kWitnessCap)) +
                " further failing points suppressed");
}

}  // namespace

CheckReport continuity_checks(const PosetHandle& p, const WayBelowRel& wb,
                              const WayBelowRel& wa, const PointSet* restrict_to) {
  CheckReport report;
  report.check = "continuity";
  const ContinuityResult r = continuity_core(p, wb, wa, restrict_to);
  stamp_domain(report, p.size(), restrict_to);
  stamp_methods(report, wb, wa);
  stamp_flags(report, r);
  add_direction_witnesses(report, r);
  if (r.mismatch)
    report.note("below- and above-oriented relations differ at pair (" +
                point_str((*r.mismatch)[0]) + ", " + point_str((*r.mismatch)[1]) + ")");
  return report;
}

CheckReport joint_bicontinuity_check(const PosetHandle& p, const WayBelowRel& wb,
                                     const WayBelowRel& wa, const PointSet* restrict_to) {
  CheckReport report;
  report.check = "joint-bicontinuity";
  const ContinuityResult r = continuity_core(p, wb, wa, restrict_to);
  stamp_domain(report, p.size(), restrict_to);
  stamp_methods(report, wb, wa);
  stamp_flags(report, r);
  add_direction_witnesses(report, r);
  if (r.mismatch)
    report.add_witness({(*r.mismatch)[0], (*r.mismatch)[1]},
                       "below- and above-oriented relations disagree here");
  report.holds = r.jointly;
  return report;
}

CheckReport interpolation_check(const WayBelowRel& wb, const PointSet* restrict_to) {
  CheckReport report;
  report.check = "interpolation";
  const int n = wb.rel.size();
  const PointSet domain = domain_or_full(n, restrict_to);
  const Rel wb_t = wb.rel.transpose();
  stamp_domain(report, n, restrict_to);
  report.set_param("method", wb_method_name(wb.method));

  int shown = 0;
  std::int64_t pairs = 0;
  std::int64_t failures = 0;
  domain.for_each([&](int x) {
    PointSet targets = wb.rel.row(x);
    targets &= domain;
    targets.for_each([&](int y) {
      ++pairs;
      PointSet mid = wb.rel.row(x);
      mid &= wb_t.row(y);
      if (mid.any()) return;
      ++failures;
      if (shown < kWitnessCap) {
        ++shown;
        report.add_witness({x, y}, "no point interpolates between this pair");
      }
    });
  });
  report.set_param("pairs", pairs);
  if (failures > shown) {
    report.holds = false;
    report.note(std::to_string(failures - shown) + " further failing pairs suppressed");
  }
  return report;
}

PointSet order_interval(const PosetHandle& p, int a, int b) {
  PointSet out = p.order.row(a);
  out &= p.order.transpose().row(b);
  return out;
}

std::vector<PointSet> interval_topology_family(const WayBelowRel& wb,
                                               const WayBelowRel& wa) {
  require(wb.rel.size() == wa.rel.size(), errc::dimension_mismatch,
          "both approximation relations must live on one carrier");
  require(wb.direction == OrderDir::below && wa.direction == OrderDir::above,
          errc::malformed_spec,
          "interval family needs one below- and one above-oriented relation");
  const int n = wb.rel.size();
  const Rel wa_t = wa.rel.transpose();

  std::vector<PointSet> family;
  for (int a = 0; a < n; ++a) {
    if (wb.rel.row(a).none()) continue;
    for (int b = 0; b < n; ++b) {
      PointSet basic = wb.rel.row(a);
      basic &= wa_t.row(b);
      if (basic.any()) family.push_back(std::move(basic));
    }
  }
  std::sort(family.begin(), family.end(),
            [](const PointSet& l, const PointSet& r) { return (l <=> r) < 0; });
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

CheckReport gh_poset_check(const PosetHandle& p, const WayBelowRel& wb,
                           const WayBelowRel& wa, const PointSet* restrict_to) {
  CheckReport report;
  report.check = "gh-poset";
  const ContinuityResult r = continuity_core(p, wb, wa, restrict_to);
  stamp_domain(report, p.size(), restrict_to);
  stamp_methods(report, wb, wa);
  stamp_flags(report, r);
  add_direction_witnesses(report, r);
  report.note(
      "order intervals on a finite carrier are finite, hence compact in any "
      "topology; compactness is recorded, not computed");
  report.holds = r.continuous && r.dual_continuous;
  return report;
}

// ---------------------------------------------------------------------------
// Upper-space demonstration
// ---------------------------------------------------------------------------

CheckReport upper_space_demo(int n_points) {
  require(n_points >= 1, errc::empty_event_set, "upper space needs at least one point");
  require(n_points <= 5, errc::carrier_too_large,
          "upper space on " + std::to_string(n_points) +
              " points has 2^n - 1 elements; capped at n = 5");

  // Elements are the nonempty subsets of {0..n-1}; element index = mask - 1.
  const int m = (1 << n_points) - 1;
  Rel contains(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const unsigned a = static_cast<unsigned>(i) + 1;
      const unsigned b = static_cast<unsigned>(j) + 1;
      if ((a & b) == b) contains.set(i, j);  // b subset of a: a below b reversed
    }
  const PosetHandle poset = validate_order(contains);

  CheckReport report;
  report.check = "upper-space";
  report.set_param("points", n_points);
  report.set_param("elements", m);

  Rel approx(m);
  if (n_points <= 4) {
    approx = way_below_matrix(poset, OrderDir::below, /*cap=*/16);
    report.set_param("method", wb_method_name(WbMethod::definitional));
  } else {
    approx = way_below_fast(poset, OrderDir::below).rel;
    report.set_param("method", wb_method_name(WbMethod::finite_shortcut));
    report.note(
        "32-element carrier exceeds the subset-enumeration budget; the finite "
        "shortcut (approximation = order) was used instead");
  }

  // Criterion: A approximates B iff B is contained in the interior of A.
  // Under the discrete topology on the points the interior of A is A itself,
  // so the criterion is reverse containment -- exactly the order.
  report.note(
      "interior in the discrete topology is the identity, so the containment "
      "criterion coincides with the order relation");
  int shown = 0;
  for (int i = 0; i < m; ++i) {
    const PointSet diff =
        (approx.row(i) | contains.row(i)) - (approx.row(i) & contains.row(i));
    diff.for_each([&](int j) {
      if (shown >= kWitnessCap) return;
      ++shown;
      report.add_witness({i, j},
                         "approximation and containment criterion disagree here");
    });
  }
  return report;
}

}  // namespace kcausal
