#include "kcausal/causal.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>

#include "kcausal/errors.hpp"

namespace kcausal {

namespace {

PointSet restriction_or_full(const PointSet* restrict_to, int n) {
  if (restrict_to == nullptr) return PointSet::full(n);
  require(restrict_to->size() == n, errc::dimension_mismatch,
          "restriction set does not match carrier");
  return *restrict_to;
}

// Rows of interiors of the relation's images: row p = interior(image(k, p, sign)).
Rel interior_rows(const FiniteTopology& t, const Rel& k_oriented) {
  Rel out(k_oriented.size());
  for (int p = 0; p < k_oriented.size(); ++p) {
    out.row_mut(p) = t.interior(k_oriented.row(p));
  }
  return out;
}

void record_restriction(CheckReport& report, const PointSet& domain, int n) {
  report.set_param("carrier", n);
  report.set_param("restricted_to", domain.count());
}

}  // namespace

Rel chronology(const EventSet& events) {
  Rel rel = oracle_relation(events, RelKind::chrono);
  const RelationProperties props = relation_properties(rel);
  require(props.irreflexive, errc::internal, "chronology relation has a diagonal pair");
  if (events.model.kind != ModelKind::cylinder) {
    // Timelike curves concatenate, so the analytic relation must compose.
    require(props.transitive, errc::internal, "chronology relation failed transitivity");
  }
  return rel;
}

KPlusResult k_plus(const Rel& chrono, const FiniteTopology& topology) {
  require(chrono.size() == topology.size(), errc::dimension_mismatch,
          "relation and topology sizes differ");
  const int cap = topology.size() * topology.size() + 1;
  KPlusResult out{chrono, 0};
  while (true) {
    Rel next = transitive_closure(topology.relation_closure(out.rel));
    if (next == out.rel) break;
    out.rel = std::move(next);
    ++out.iterations;
    require(out.iterations <= cap, errc::internal, "closure alternation exceeded its cap");
  }
  require(chrono.is_subset_of(out.rel) && compose(out.rel, out.rel).is_subset_of(out.rel) &&
              topology.relation_closure(out.rel) == out.rel,
          errc::internal, "fixed-point certificate failed");
  return out;
}

Rel k_order(const Rel& k) { return reflexive_closure(k); }

CausalStructure build_causal_structure(EventSet events, std::optional<double> radius) {
  CausalStructure c{std::move(events), FiniteTopology::discrete(1), Rel(1), Rel(1), 0, 0.0};
  c.radius = radius.has_value() ? *radius : default_radius(c.events);
  c.topology = ball_topology(c.events, c.radius);
  c.chrono = chronology(c.events);
  KPlusResult fixed = k_plus(c.chrono, c.topology);
  c.k = std::move(fixed.rel);
  c.iterations = fixed.iterations;
  return c;
}

CheckReport is_k_causal(const Rel& k) {
  CheckReport report;
  report.check = "k-causal";
  report.set_param("carrier", k.size());
  const RelationProperties props = relation_properties(k);
  if (!props.antisymmetric) {
    report.add_witness({props.antisymmetric_witness[0], props.antisymmetric_witness[1]},
                       "both directions present between distinct points");
  }
  return report;
}

bool k_convex(const Rel& k, const Rel& k_transpose, const PointSet& u) {
  require(u.size() == k.size(), errc::dimension_mismatch, "set size does not match relation");
  PointSet future(k.size());
  PointSet past(k.size());
  u.for_each([&](int a) {
    future |= k.row(a);
    past |= k_transpose.row(a);
  });
  future &= past;
  return future.is_subset_of(u);
}

PointSet k_convex_open_hull(const FiniteTopology& t, const Rel& k, const Rel& k_transpose,
                            int p) {
  const int n = t.size();
  require(k.size() == n && k_transpose.size() == n, errc::dimension_mismatch,
          "relation and topology sizes differ");
  PointSet u = t.min_nbhd(p);
  while (true) {
    PointSet grown = u;
    PointSet future(n);
    PointSet past(n);
    grown.for_each([&](int a) {
      future |= k.row(a);
      past |= k_transpose.row(a);
    });
    future &= past;
    grown |= future;
    PointSet opened(n);
    grown.for_each([&](int x) { opened |= t.min_nbhd(x); });
    grown |= opened;
    if (grown == u) return u;
    u = std::move(grown);
  }
}

CheckReport strong_k_causality(const FiniteTopology& t, const Rel& k,
                               const PointSet* restrict_to) {
  CheckReport report;
  report.check = "strong-k-causal";
  const int n = t.size();
  const PointSet domain = restriction_or_full(restrict_to, n);
  record_restriction(report, domain, n);
  const Rel k_t = k.transpose();
  constexpr int kWitnessCap = 25;
  int suppressed = 0;
  domain.for_each([&](int p) {
    const PointSet hull = k_convex_open_hull(t, k, k_t, p);
    if (hull.is_subset_of(t.min_nbhd(p))) return;  // hull == N(p): every generator works
    for (int gi = 0; gi < static_cast<int>(t.generators().size()); ++gi) {
      const PointSet& g = t.generators()[gi];
      if (!g.test(p) || hull.is_subset_of(g)) continue;
      if (static_cast<int>(report.witnesses.size()) < kWitnessCap) {
        report.add_witness({p, gi},
                           "no open convex set fits between the point and this generator");
      } else {
        report.holds = false;
        ++suppressed;
      }
    }
  });
  if (suppressed > 0) {
    report.note("suppressed " + std::to_string(suppressed) + " further witnesses");
  }
  return report;
}

CheckReport k_convexity_check(const FiniteTopology& t, const Rel& k,
                              const PointSet* restrict_to) {
  CheckReport report;
  report.check = "k-convexity";
  const int n = t.size();
  const PointSet domain = restriction_or_full(restrict_to, n);
  record_restriction(report, domain, n);
  report.note("holds when every restricted point has a proper open convex neighborhood");
  const Rel k_t = k.transpose();
  constexpr int kWitnessCap = 25;
  int suppressed = 0;
  domain.for_each([&](int p) {
    const PointSet hull = k_convex_open_hull(t, k, k_t, p);
    if (hull.count() < n) return;
    if (static_cast<int>(report.witnesses.size()) < kWitnessCap) {
      report.add_witness({p}, "smallest open convex neighborhood is the whole carrier");
    } else {
      report.holds = false;
      ++suppressed;
    }
  });
  if (suppressed > 0) {
    report.note("suppressed " + std::to_string(suppressed) + " further witnesses");
  }
  return report;
}

CheckReport inner_continuity(const FiniteTopology& t, const Rel& k, Dir sign,
                             const PointSet* restrict_to) {
  CheckReport report;
  report.check = "inner-continuity";
  report.set_param("sign", sign == Dir::future ? "future" : "past");
  const int n = t.size();
  require(k.size() == n, errc::dimension_mismatch, "relation and topology sizes differ");
  const PointSet domain = restriction_or_full(restrict_to, n);
  record_restriction(report, domain, n);
  const Rel oriented = sign == Dir::future ? k : k.transpose();
  const Rel f = interior_rows(t, oriented);
  constexpr int kWitnessCap = 25;
  domain.for_each([&](int p) {
    const PointSet near = t.min_nbhd(p) & domain;
    near.for_each([&](int q) {
      if (f.row(p).is_subset_of(f.row(q))) return;
      if (static_cast<int>(report.witnesses.size()) < kWitnessCap) {
        report.add_witness({p, q}, "image interior at the neighbor loses points");
      } else {
        report.holds = false;
      }
    });
  });
  return report;
}

CheckReport outer_continuity(const FiniteTopology& t, const Rel& k, Dir sign,
                             const PointSet* restrict_to) {
  CheckReport report;
  report.check = "outer-continuity";
  report.set_param("sign", sign == Dir::future ? "future" : "past");
  const int n = t.size();
  require(k.size() == n, errc::dimension_mismatch, "relation and topology sizes differ");
  const PointSet domain = restriction_or_full(restrict_to, n);
  record_restriction(report, domain, n);
  const Rel oriented = sign == Dir::future ? k : k.transpose();
  const Rel f = interior_rows(t, oriented);
  Rel closures(n);
  for (int p = 0; p < n; ++p) closures.row_mut(p) = t.closure_set(f.row(p));
  constexpr int kWitnessCap = 25;
  domain.for_each([&](int p) {
    const PointSet near = t.min_nbhd(p) & domain;
    near.for_each([&](int q) {
      if (closures.row(q).is_subset_of(closures.row(p))) return;
      if (static_cast<int>(report.witnesses.size()) < kWitnessCap) {
        report.add_witness({p, q}, "image closure at the neighbor gains points");
      } else {
        report.holds = false;
      }
    });
  });
  return report;
}

CheckReport lemma32_check(const FiniteTopology& t, const Rel& k,
                          const PointSet* restrict_to) {
  CheckReport report;
  report.check = "lemma32";
  const int n = t.size();
  require(k.size() == n, errc::dimension_mismatch, "relation and topology sizes differ");
  const RelationProperties props = relation_properties(k);
  require(props.antisymmetric, errc::not_k_causal,
          "interior duality needs an antisymmetric relation");
  const PointSet domain = restriction_or_full(restrict_to, n);
  record_restriction(report, domain, n);
  const Rel f_int = interior_rows(t, k);
  const Rel p_int = interior_rows(t, k.transpose());
  constexpr int kWitnessCap = 25;
  bool truncated = false;
  domain.for_each([&](int p) {
    domain.for_each([&](int q) {
      if (p_int.test(q, p) == f_int.test(p, q)) return;
      if (static_cast<int>(report.witnesses.size()) < kWitnessCap) {
        report.add_witness({p, q}, "interior membership disagrees between the two sides");
      } else {
        report.holds = false;
        truncated = true;
      }
    });
  });
  if (truncated) report.note("further witnesses suppressed");
  return report;
}

CheckReport lemma43_check(const Rel& k, const FiniteTopology& t,
                          std::optional<std::uint64_t> seed, const PointSet* restrict_to) {
  CheckReport report;
  report.check = "lemma43";
  const int n = t.size();
  require(k.size() == n, errc::dimension_mismatch, "relation and topology sizes differ");
  const PointSet domain = restriction_or_full(restrict_to, n);
  record_restriction(report, domain, n);
  const Rel f_int = interior_rows(t, k);
  const Rel p_int = interior_rows(t, k.transpose());
  const std::vector<int> pts = domain.members();
  const int m = static_cast<int>(pts.size());
  constexpr int kWitnessCap = 10;
  auto check_triple = [&](int p, int q, int r) {
    if (static_cast<int>(report.witnesses.size()) >= kWitnessCap) return;
    if (k.test(p, q) && f_int.test(q, r) && !f_int.test(p, r)) {
      report.add_witness({p, q, r}, "future-image interior not inherited down the order");
    }
    if (p_int.test(q, p) && k.test(q, r) && !p_int.test(r, p)) {
      report.add_witness({p, q, r}, "past-image interior not inherited up the order");
    }
  };
  if (m <= kFullTripleLimit) {
    report.set_param("mode", "full");
    report.set_param("triples", static_cast<std::int64_t>(m) * m * m);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        for (int c = 0; c < m; ++c) check_triple(pts[a], pts[b], pts[c]);
      }
    }
  } else {
    const std::uint64_t used_seed = seed.value_or(kDefaultTripleSeed);
    report.set_param("mode", "subsampled");
    report.set_param("triples", kSampledTripleCount);
    report.set_param("seed", static_cast<std::int64_t>(used_seed));
    report.set_param("algorithm", kRngAlgorithm);
    std::mt19937_64 rng(used_seed);
    auto pick = [&]() {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      int i = static_cast<int>(u * m);
      return pts[i < m ? i : m - 1];
    };
    for (std::int64_t i = 0; i < kSampledTripleCount; ++i) {
      const int p = pick(), q = pick(), r = pick();
      check_triple(p, q, r);
    }
  }
  return report;
}

std::vector<PointSet> alexandrov_family(const CausalStructure& c, AlexandrovKind kind) {
  const int n = c.topology.size();
  Rel fwd(n), bwd(n);
  if (kind == AlexandrovKind::chronological) {
    fwd = c.chrono;
    bwd = c.chrono.transpose();
  } else {
    fwd = interior_rows(c.topology, c.k);
    bwd = interior_rows(c.topology, c.k.transpose());
  }
  std::vector<PointSet> family;
  family.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      PointSet diamond = fwd.row(p) & bwd.row(q);
      if (diamond.any()) family.push_back(std::move(diamond));
    }
  }
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

}  // namespace kcausal
