#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "zslen/error.hpp"
#include "zslen/rational.hpp"

namespace zslen {

// Finite set of nonnegative integers stored as a bitset. Used for sets of
// lengths, distance sets and difference sets alike.
class LengthSet {
 public:
  LengthSet() = default;
  LengthSet(std::initializer_list<std::uint64_t> values) {
    for (auto v : values) insert(v);
  }
  template <typename It>
  LengthSet(It first, It last) {
    for (; first != last; ++first) insert(static_cast<std::uint64_t>(*first));
  }

  // [lo, hi]; empty if lo > hi.
  static LengthSet interval(std::uint64_t lo, std::uint64_t hi) {
    LengthSet s;
    for (std::uint64_t v = lo; v <= hi && lo <= hi; ++v) s.insert(v);
    return s;
  }

  void insert(std::uint64_t v) {
    std::size_t w = v >> 6;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= std::uint64_t{1} << (v & 63);
  }

  bool contains(std::uint64_t v) const {
    std::size_t w = v >> 6;
    return w < words_.size() && ((words_[w] >> (v & 63)) & 1);
  }

  bool empty() const { return words_.empty(); }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  std::uint64_t min() const {
    require_nonempty();
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w]) return w * 64 + static_cast<std::uint64_t>(std::countr_zero(words_[w]));
    }
    return 0;
  }

  std::uint64_t max() const {
    require_nonempty();
    return (words_.size() - 1) * 64 + 63 - static_cast<std::uint64_t>(std::countl_zero(words_.back()));
  }

  std::vector<std::uint64_t> values() const {
    std::vector<std::uint64_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        out.push_back(w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  // { x + k : x in this }
  LengthSet shifted(std::uint64_t k) const {
    LengthSet out;
    if (empty()) return out;
    const std::size_t ws = k >> 6, bs = k & 63;
    out.words_.assign(words_.size() + ws + 1, 0);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      out.words_[i + ws] |= words_[i] << bs;
      if (bs) out.words_[i + ws + 1] |= words_[i] >> (64 - bs);
    }
    out.trim();
    return out;
  }

  LengthSet& operator|=(const LengthSet& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  // this |= (o shifted by k), without a temporary.
  void merge_shifted(const LengthSet& o, std::uint64_t k) {
    if (o.empty()) return;
    const std::size_t ws = k >> 6, bs = k & 63;
    if (words_.size() < o.words_.size() + ws + 1) words_.resize(o.words_.size() + ws + 1, 0);
    for (std::size_t i = 0; i < o.words_.size(); ++i) {
      words_[i + ws] |= o.words_[i] << bs;
      if (bs) words_[i + ws + 1] |= o.words_[i] >> (64 - bs);
    }
    trim();
  }

  bool is_subset_of(const LengthSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t other = i < o.words_.size() ? o.words_[i] : 0;
      if (words_[i] & ~other) return false;
    }
    return true;
  }

  std::size_t memory_bytes() const { return sizeof(LengthSet) + words_.capacity() * sizeof(std::uint64_t); }

  // "{2,3,5}"
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (auto v : values()) {
      if (!first) out += ',';
      first = false;
      out += std::to_string(v);
    }
    return out + "}";
  }

  bool operator==(const LengthSet& o) const { return words_ == o.words_; }
  // Lexicographic on the sorted element lists.
  bool operator<(const LengthSet& o) const { return values() < o.values(); }

 private:
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }
  void require_nonempty() const {
    if (words_.empty()) throw InvalidArgument("empty set has no minimum or maximum");
  }

  std::vector<std::uint64_t> words_;
};

// Successive distances: d is in the result iff d = b - a for consecutive a < b.
inline LengthSet delta_of_set(const LengthSet& l) {
  LengthSet out;
  auto v = l.values();
  for (std::size_t i = 1; i < v.size(); ++i) out.insert(v[i] - v[i - 1]);
  return out;
}

// max L / min L, with rho({0}) = 1.
inline Rational elasticity_of_set(const LengthSet& l) {
  if (l.empty()) throw InvalidArgument("elasticity of an empty set");
  if (l.min() == 0) {
    if (l.max() == 0) return Rational(1, 1);
    throw InvalidArgument("elasticity is infinite for a set containing 0 and a positive value");
  }
  return Rational(l.max(), l.min());
}

inline LengthSet sumset(const LengthSet& a, const LengthSet& b) {
  LengthSet out;
  for (auto x : a.values()) out.merge_shifted(b, x);
  return out;
}

// k * L = { k x : x in L }
inline LengthSet dilate(const LengthSet& l, std::uint64_t k) {
  LengthSet out;
  for (auto x : l.values()) out.insert(x * k);
  return out;
}

}  // namespace zslen
