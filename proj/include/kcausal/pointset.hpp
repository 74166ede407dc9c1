#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

#include "kcausal/errors.hpp"

namespace kcausal {

// Dense bitset over a carrier of n points.  Word layout is little-bit-endian:
// point j lives in word j/64 at bit j%64.  All binary operations require equal sizes.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int n) : n_(n), words_((static_cast<size_t>(n) + 63) / 64, 0) {}

  static PointSet full(int n) {
    PointSet s(n);
    for (auto& w : s.words_) w = ~0ull;
    s.mask_tail();
    return s;
  }
  static PointSet singleton(int n, int i) {
    PointSet s(n);
    s.set(i);
    return s;
  }

  int size() const { return n_; }
  bool empty() const { return n_ == 0; }

  void set(int i) {
    check_index(i);
    words_[i >> 6] |= 1ull << (i & 63);
  }
  void reset(int i) {
    check_index(i);
    words_[i >> 6] &= ~(1ull << (i & 63));
  }
  bool test(int i) const {
    check_index(i);
    return (words_[i >> 6] >> (i & 63)) & 1ull;
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (auto w : words_) if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  PointSet& operator|=(const PointSet& o) {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  PointSet& operator&=(const PointSet& o) {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  // Set difference: keep points not in o.
  PointSet& operator-=(const PointSet& o) {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

  PointSet complement() const {
    PointSet r(n_);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.mask_tail();
    return r;
  }

  bool is_subset_of(const PointSet& o) const {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const PointSet& o) const {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  bool operator==(const PointSet& o) const { return n_ == o.n_ && words_ == o.words_; }
  // Deterministic total order (size, then word-lexicographic); used to canonicalize families.
  std::strong_ordering operator<=>(const PointSet& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    for (size_t i = 0; i < words_.size(); ++i)
      if (auto c = words_[i] <=> o.words_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  // Smallest member, or -1 when empty.
  int first() const {
    for (size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return static_cast<int>(w * 64 + std::countr_zero(words_[w]));
    return -1;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (size_t w = 0; w < words_.size(); ++w) {
      uint64_t bits = words_[w];
      while (bits) {
        int i = static_cast<int>(w * 64 + std::countr_zero(bits));
        f(i);
        bits &= bits - 1;
      }
    }
  }

  std::vector<int> members() const {
    std::vector<int> v;
    v.reserve(static_cast<size_t>(count()));
    for_each([&](int i) { v.push_back(i); });
    return v;
  }

  const std::vector<uint64_t>& words() const { return words_; }

 private:
  void check_index(int i) const {
    require(i >= 0 && i < n_, errc::out_of_range_index,
            "point index " + std::to_string(i) + " outside carrier of size " + std::to_string(n_));
  }
  void check_same(const PointSet& o) const {
    require(n_ == o.n_, errc::dimension_mismatch,
            "point sets over carriers of size " + std::to_string(n_) + " and " +
                std::to_string(o.n_));
  }
  void mask_tail() {
    if (n_ % 64 != 0 && !words_.empty()) words_.back() &= (1ull << (n_ % 64)) - 1ull;
  }

  int n_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace kcausal
