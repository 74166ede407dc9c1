#pragma once

#include <array>
#include <initializer_list>
#include <utility>
#include <vector>

#include "kcausal/pointset.hpp"

namespace kcausal {

enum class Dir { future, past };

// Binary relation on {0..n-1} as a dense bit matrix, one PointSet per row.
class Rel {
 public:
  Rel() = default;
  explicit Rel(int n) : n_(n), rows_(static_cast<size_t>(n), PointSet(n)) {}

  static Rel identity(int n) {
    Rel r(n);
    for (int i = 0; i < n; ++i) r.set(i, i);
    return r;
  }
  static Rel from_pairs(int n, std::initializer_list<std::pair<int, int>> pairs) {
    Rel r(n);
    for (auto [a, b] : pairs) r.set(a, b);
    return r;
  }

  int size() const { return n_; }
  void set(int i, int j) { row_mut(i).set(j); }
  void reset(int i, int j) { row_mut(i).reset(j); }
  bool test(int i, int j) const { return row(i).test(j); }

  const PointSet& row(int i) const {
    require(i >= 0 && i < n_, errc::out_of_range_index, "relation row " + std::to_string(i));
    return rows_[static_cast<size_t>(i)];
  }
  PointSet& row_mut(int i) {
    require(i >= 0 && i < n_, errc::out_of_range_index, "relation row " + std::to_string(i));
    return rows_[static_cast<size_t>(i)];
  }

  int pair_count() const {
    int c = 0;
    for (const auto& r : rows_) c += r.count();
    return c;
  }

  bool operator==(const Rel& o) const = default;

  Rel transpose() const;

  Rel& operator|=(const Rel& o);
  Rel& operator&=(const Rel& o);
  Rel& operator-=(const Rel& o);
  friend Rel operator|(Rel a, const Rel& b) { return a |= b; }
  friend Rel operator&(Rel a, const Rel& b) { return a &= b; }
  friend Rel operator-(Rel a, const Rel& b) { return a -= b; }

  bool is_subset_of(const Rel& o) const;

 private:
  int n_ = 0;
  std::vector<PointSet> rows_;
};

// (a compose b)(i,j) holds iff some k has a(i,k) and b(k,j).
Rel compose(const Rel& a, const Rel& b);

// Reachability in one or more steps; row-propagation (Floyd-Warshall over bits).
Rel transitive_closure(const Rel& r);

Rel reflexive_closure(const Rel& r);

// Forward image R(p) for future, preimage R^{-1}(p) for past.
PointSet image(const Rel& r, int p, Dir dir);

// Submatrix on the members of keep, reindexed by ascending original index.
Rel restrict_relation(const Rel& r, const PointSet& keep);

struct RelationProperties {
  bool reflexive = false;
  int reflexive_witness = -1;  // smallest i with (i,i) absent
  bool irreflexive = false;
  int irreflexive_witness = -1;  // smallest i with (i,i) present
  bool transitive = false;
  std::array<int, 3> transitive_witness{-1, -1, -1};  // lexicographically smallest (i,j,k)
  bool antisymmetric = false;
  std::array<int, 2> antisymmetric_witness{-1, -1};  // lexicographically smallest (i,j), i != j
};

RelationProperties relation_properties(const Rel& r);

}  // namespace kcausal
