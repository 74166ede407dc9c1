#pragma once

#include <optional>
#include <vector>

#include "kcausal/relation.hpp"

namespace kcausal {

// Finite topological space presented by a generating family of point-sets.
// All derived structure flows from the minimal neighbourhoods
//   N(x) = intersection of every generator containing x,
// which satisfy y in N(x) => N(y) subset of N(x), so x |-> N(x) is the
// row map of a preorder (nbhd_rel below) and closure/interior are word-parallel.
class FiniteTopology {
 public:
  FiniteTopology(int n, std::vector<PointSet> generators);

  static FiniteTopology discrete(int n);
  static FiniteTopology indiscrete(int n);

  int size() const { return n_; }
  const std::vector<PointSet>& generators() const { return generators_; }
  const PointSet& min_nbhd(int x) const { return nbhd_.row(x); }
  const Rel& nbhd_rel() const { return nbhd_; }

  bool is_open(const PointSet& u) const;
  // Largest open subset: {x in s : N(x) subset of s}.
  PointSet interior(const PointSet& s) const;
  // Smallest closed superset: {x : N(x) meets s}.
  PointSet closure_set(const PointSet& s) const;

  // Product-topology closure of a relation: (x,y) survives iff N(x) x N(y) meets r.
  // Computed as A . r . A^T where A is the neighbourhood preorder; A is reflexive and
  // transitive, so the operator is inflationary, monotone and idempotent.
  Rel relation_closure(const Rel& r) const;

 private:
  int n_;
  std::vector<PointSet> generators_;
  Rel nbhd_;    // row x = N(x)
  Rel nbhd_t_;  // transpose, cached for relation_closure
};

FiniteTopology build_topology(int n, std::vector<PointSet> generators);

struct TopologyMismatch {
  int direction;   // 0: first family's set not open in second topology; 1: converse
  int set_index;   // offending generator within the cited family
  int point;       // witness x whose restricted neighbourhood escapes the set
};

struct TopologyComparison {
  bool equivalent = false;
  std::optional<TopologyMismatch> mismatch;
};

// Mutual refinement of the topologies generated by two families, compared as
// subspace topologies on restrict_to (minimal neighbourhoods intersected with it).
TopologyComparison topologies_equivalent(const FiniteTopology& a, const FiniteTopology& b,
                                         const PointSet& restrict_to);

// Same comparison with the topologies presented by raw generating families over
// an n-point carrier. A family need not cover every point here: a restricted
// point no generator contains gets the whole restriction as its minimal
// neighbourhood (the ambient space is always open in the generated topology).
TopologyComparison topologies_equivalent(const std::vector<PointSet>& a,
                                         const std::vector<PointSet>& b, int n,
                                         const PointSet& restrict_to);

}  // namespace kcausal
