#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

#include "mint/errors.hpp"

namespace mint {

using EdgeId = int;

// Everything in this library lives inside a dense universe of at most 64
// edge indices, so sets are single machine words and the memo caches can key
// on the raw bit pattern.
inline constexpr int kMaxUniverse = 64;

class EdgeSet {
 public:
  constexpr EdgeSet() = default;
  EdgeSet(std::initializer_list<EdgeId> edges) {
    for (EdgeId e : edges) add(e);
  }

  static EdgeSet range(int n) {
    if (n < 0 || n > kMaxUniverse) throw InputError("edge range outside [0, 64]");
    return from_bits(n == kMaxUniverse ? ~0ull : (1ull << n) - 1);
  }
  static EdgeSet from_bits(std::uint64_t bits) {
    EdgeSet s;
    s.bits_ = bits;
    return s;
  }
  static EdgeSet single(EdgeId e) { return EdgeSet{}.with(e); }

  bool contains(EdgeId e) const { return e >= 0 && e < kMaxUniverse && (bits_ >> e) & 1; }
  bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }

  // Smallest member; the set must be nonempty.
  EdgeId first() const {
    if (empty()) throw InternalError("first() on empty edge set");
    return std::countr_zero(bits_);
  }

  EdgeSet& add(EdgeId e) {
    check(e);
    bits_ |= 1ull << e;
    return *this;
  }
  EdgeSet& remove(EdgeId e) {
    check(e);
    bits_ &= ~(1ull << e);
    return *this;
  }
  EdgeSet with(EdgeId e) const { return EdgeSet(*this).add(e); }
  EdgeSet without(EdgeId e) const { return EdgeSet(*this).remove(e); }

  friend EdgeSet operator|(EdgeSet a, EdgeSet b) { return from_bits(a.bits_ | b.bits_); }
  friend EdgeSet operator&(EdgeSet a, EdgeSet b) { return from_bits(a.bits_ & b.bits_); }
  friend EdgeSet operator^(EdgeSet a, EdgeSet b) { return from_bits(a.bits_ ^ b.bits_); }
  friend EdgeSet operator-(EdgeSet a, EdgeSet b) { return from_bits(a.bits_ & ~b.bits_); }
  EdgeSet& operator|=(EdgeSet o) { bits_ |= o.bits_; return *this; }
  EdgeSet& operator&=(EdgeSet o) { bits_ &= o.bits_; return *this; }
  EdgeSet& operator^=(EdgeSet o) { bits_ ^= o.bits_; return *this; }
  EdgeSet& operator-=(EdgeSet o) { bits_ &= ~o.bits_; return *this; }
  bool operator==(const EdgeSet&) const = default;

  bool subset_of(EdgeSet o) const { return (bits_ & ~o.bits_) == 0; }
  bool intersects(EdgeSet o) const { return (bits_ & o.bits_) != 0; }

  std::uint64_t bits() const { return bits_; }

  std::vector<EdgeId> to_vector() const {
    std::vector<EdgeId> v;
    v.reserve(size());
    for (EdgeId e : *this) v.push_back(e);
    return v;
  }

  std::string to_string() const {
    std::string s = "{";
    bool sep = false;
    for (EdgeId e : *this) {
      if (sep) s += ',';
      s += std::to_string(e);
      sep = true;
    }
    return s + "}";
  }

  class const_iterator {
   public:
    using value_type = EdgeId;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::forward_iterator_tag;
    const_iterator() = default;
    explicit const_iterator(std::uint64_t rest) : rest_(rest) {}
    EdgeId operator*() const { return std::countr_zero(rest_); }
    const_iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    const_iterator operator++(int) {
      auto c = *this;
      ++*this;
      return c;
    }
    bool operator==(const const_iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };
  const_iterator begin() const { return const_iterator(bits_); }
  const_iterator end() const { return const_iterator(0); }

 private:
  static void check(EdgeId e) {
    if (e < 0 || e >= kMaxUniverse)
      throw InputError("edge index " + std::to_string(e) + " outside [0, 64)");
  }
  std::uint64_t bits_ = 0;
};

// Visits the k-subsets of `ground` in lexicographic order (members compared as
// sorted index tuples). The callback returns false to stop; the function
// returns false iff it was stopped early.
template <class F>
bool for_each_subset_of_size(EdgeSet ground, int k, F&& fn) {
  const std::vector<EdgeId> v = ground.to_vector();
  const int m = static_cast<int>(v.size());
  if (k < 0 || k > m) return true;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    EdgeSet s;
    for (int i : idx) s.add(v[i]);
    if (!fn(s)) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// All subsets of `ground` in size-then-lex order, so "first hit" searches are
// deterministic. Same early-stop protocol as above.
template <class F>
bool for_each_subset(EdgeSet ground, F&& fn) {
  for (int k = 0; k <= ground.size(); ++k)
    if (!for_each_subset_of_size(ground, k, fn)) return false;
  return true;
}

}  // namespace mint
