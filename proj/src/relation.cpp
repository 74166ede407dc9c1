#include "kcausal/relation.hpp"

namespace kcausal {

namespace {
void check_same(const Rel& a, const Rel& b) {
  require(a.size() == b.size(), errc::dimension_mismatch,
          "relations on carriers of size " + std::to_string(a.size()) + " and " +
              std::to_string(b.size()));
}
}  // namespace

Rel Rel::transpose() const {
  Rel t(n_);
  for (int i = 0; i < n_; ++i)
    rows_[static_cast<size_t>(i)].for_each([&](int j) { t.set(j, i); });
  return t;
}

Rel& Rel::operator|=(const Rel& o) {
  check_same(*this, o);
  for (int i = 0; i < n_; ++i) row_mut(i) |= o.row(i);
  return *this;
}

Rel& Rel::operator&=(const Rel& o) {
  check_same(*this, o);
  for (int i = 0; i < n_; ++i) row_mut(i) &= o.row(i);
  return *this;
}

Rel& Rel::operator-=(const Rel& o) {
  check_same(*this, o);
  for (int i = 0; i < n_; ++i) row_mut(i) -= o.row(i);
  return *this;
}

bool Rel::is_subset_of(const Rel& o) const {
  check_same(*this, o);
  for (int i = 0; i < n_; ++i)
    if (!row(i).is_subset_of(o.row(i))) return false;
  return true;
}

Rel compose(const Rel& a, const Rel& b) {
  check_same(a, b);
  const int n = a.size();
  Rel c(n);
  for (int i = 0; i < n; ++i) {
    PointSet& out = c.row_mut(i);
    a.row(i).for_each([&](int k) { out |= b.row(k); });
  }
  return c;
}

Rel transitive_closure(const Rel& r) {
  const int n = r.size();
  Rel c = r;
  for (int k = 0; k < n; ++k) {
    const PointSet via = c.row(k);
    for (int i = 0; i < n; ++i)
      if (c.test(i, k)) c.row_mut(i) |= via;
  }
  return c;
}

Rel reflexive_closure(const Rel& r) {
  Rel c = r;
  for (int i = 0; i < r.size(); ++i) c.set(i, i);
  return c;
}

PointSet image(const Rel& r, int p, Dir dir) {
  if (dir == Dir::future) return r.row(p);
  PointSet pre(r.size());
  for (int i = 0; i < r.size(); ++i)
    if (r.test(i, p)) pre.set(i);
  return pre;
}

RelationProperties relation_properties(const Rel& r) {
  const int n = r.size();
  RelationProperties p;

  p.reflexive = true;
  p.irreflexive = true;
  for (int i = 0; i < n; ++i) {
    const bool d = r.test(i, i);
    if (!d && p.reflexive) {
      p.reflexive = false;
      p.reflexive_witness = i;
    }
    if (d && p.irreflexive) {
      p.irreflexive = false;
      p.irreflexive_witness = i;
    }
  }

  p.transitive = true;
  for (int i = 0; i < n && p.transitive; ++i)
    for (int j = 0; j < n && p.transitive; ++j) {
      if (!r.test(i, j)) continue;
      // Need row(j) subset of row(i); the first missing k is the witness.
      const PointSet missing = r.row(j) - r.row(i);
      if (missing.any()) {
        p.transitive = false;
        p.transitive_witness = {i, j, missing.first()};
      }
    }

  p.antisymmetric = true;
  for (int i = 0; i < n && p.antisymmetric; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (r.test(i, j) && r.test(j, i)) {
        p.antisymmetric = false;
        p.antisymmetric_witness = {i, j};
        break;
      }
    }

  return p;
}

Rel restrict_relation(const Rel& r, const PointSet& keep) {
  require(keep.size() == r.size(), errc::dimension_mismatch,
          "restriction mask must match the relation carrier");
  const std::vector<int> members = keep.members();
  Rel out(static_cast<int>(members.size()));
  for (int i = 0; i < out.size(); ++i)
    for (int j = 0; j < out.size(); ++j)
      if (r.test(members[i], members[j])) out.set(i, j);
  return out;
}

}  // namespace kcausal
