#include "kcausal/topology.hpp"

#include <utility>

#include "kcausal/errors.hpp"

namespace kcausal {

FiniteTopology::FiniteTopology(int n, std::vector<PointSet> generators)
    : n_(n), generators_(std::move(generators)), nbhd_(n), nbhd_t_(n) {
  require(n_ > 0, errc::empty_event_set, "topology over an empty carrier");
  for (const PointSet& g : generators_)
    require(g.size() == n_, errc::dimension_mismatch, "generator size does not match carrier");
  for (int x = 0; x < n_; ++x) {
    PointSet nb = PointSet::full(n_);
    bool covered = false;
    for (const PointSet& g : generators_) {
      if (g.test(x)) {
        nb &= g;
        covered = true;
      }
    }
    require(covered, errc::non_covering_family,
            "no generator contains point " + std::to_string(x));
    nbhd_.row_mut(x) = nb;
  }
  nbhd_t_ = nbhd_.transpose();
}

FiniteTopology FiniteTopology::discrete(int n) {
  std::vector<PointSet> gens;
  gens.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) gens.push_back(PointSet::singleton(n, i));
  return FiniteTopology(n, std::move(gens));
}

FiniteTopology FiniteTopology::indiscrete(int n) {
  return FiniteTopology(n, {PointSet::full(n)});
}

bool FiniteTopology::is_open(const PointSet& u) const {
  require(u.size() == n_, errc::dimension_mismatch, "set size does not match carrier");
  bool open = true;
  u.for_each([&](int x) {
    if (!nbhd_.row(x).is_subset_of(u)) open = false;
  });
  return open;
}

PointSet FiniteTopology::interior(const PointSet& s) const {
  require(s.size() == n_, errc::dimension_mismatch, "set size does not match carrier");
  PointSet out(n_);
  s.for_each([&](int x) {
    if (nbhd_.row(x).is_subset_of(s)) out.set(x);
  });
  return out;
}

PointSet FiniteTopology::closure_set(const PointSet& s) const {
  require(s.size() == n_, errc::dimension_mismatch, "set size does not match carrier");
  PointSet out(n_);
  for (int x = 0; x < n_; ++x) {
    if (nbhd_.row(x).intersects(s)) out.set(x);
  }
  return out;
}

Rel FiniteTopology::relation_closure(const Rel& r) const {
  require(r.size() == n_, errc::dimension_mismatch, "relation size does not match carrier");
  return compose(compose(nbhd_, r), nbhd_t_);
}

FiniteTopology build_topology(int n, std::vector<PointSet> generators) {
  return FiniteTopology(n, std::move(generators));
}

namespace {

// Minimal neighbourhoods of the subspace topology on restrict_to generated by
// the family: N(x) = restriction cut by every generator trace containing x.
std::vector<PointSet> restricted_nbhds(const std::vector<PointSet>& family, int n,
                                       const PointSet& restrict_to) {
  std::vector<PointSet> nb(static_cast<size_t>(n), restrict_to);
  for (const PointSet& g : family) {
    require(g.size() == n, errc::dimension_mismatch, "generator size does not match carrier");
    const PointSet trace = g & restrict_to;
    trace.for_each([&](int x) { nb[static_cast<size_t>(x)] &= trace; });
  }
  return nb;
}

}  // namespace

TopologyComparison topologies_equivalent(const std::vector<PointSet>& a,
                                         const std::vector<PointSet>& b, int n,
                                         const PointSet& restrict_to) {
  require(n > 0, errc::empty_event_set, "comparison over an empty carrier");
  require(restrict_to.size() == n, errc::dimension_mismatch,
          "restriction set does not match carrier");
  const std::vector<PointSet> nb_a = restricted_nbhds(a, n, restrict_to);
  const std::vector<PointSet> nb_b = restricted_nbhds(b, n, restrict_to);
  // Family f's restricted generators must be open in the other subspace topology:
  // for every x in a trace, the other side's minimal neighbourhood stays in it.
  auto check = [&](const std::vector<PointSet>& family, const std::vector<PointSet>& other_nb,
                   int direction) -> std::optional<TopologyMismatch> {
    for (int gi = 0; gi < static_cast<int>(family.size()); ++gi) {
      const PointSet trace = family[static_cast<size_t>(gi)] & restrict_to;
      int bad = -1;
      trace.for_each([&](int x) {
        if (bad >= 0) return;
        if (!other_nb[static_cast<size_t>(x)].is_subset_of(trace)) bad = x;
      });
      if (bad >= 0) return TopologyMismatch{direction, gi, bad};
    }
    return std::nullopt;
  };
  TopologyComparison out;
  if (auto m = check(a, nb_b, 0)) {
    out.mismatch = m;
    return out;
  }
  if (auto m = check(b, nb_a, 1)) {
    out.mismatch = m;
    return out;
  }
  out.equivalent = true;
  return out;
}

TopologyComparison topologies_equivalent(const FiniteTopology& a, const FiniteTopology& b,
                                         const PointSet& restrict_to) {
  require(a.size() == b.size(), errc::dimension_mismatch, "topologies over different carriers");
  return topologies_equivalent(a.generators(), b.generators(), a.size(), restrict_to);
}

}  // namespace kcausal
