#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "zslen/error.hpp"
#include "zslen/group.hpp"
#include "zslen/rational.hpp"

namespace zslen {

using Multiplicity = std::uint32_t;

inline constexpr std::uint64_t kDefaultSubsequenceSumLimit = 64;
inline constexpr std::uint64_t kMaxSequenceLength = std::uint64_t{1} << 31;

// A finite multiset of group elements, the free abelian monoid element
// prod g^{v_g(S)}. Entries iterate in lexicographic element order.
class Sequence {
 public:
  explicit Sequence(Group group) : group_(std::move(group)) { group_.require_indexable(); }

  Sequence(Group group, std::map<ElementIndex, Multiplicity> entries) : Sequence(std::move(group)) {
    for (auto [e, m] : entries) add(e, m);
  }

  // Parses the canonical text form, e.g. "[1]^6 [2]" or "[1,0]^2 [0,1]^2".
  // A bare element means multiplicity one; "1" or "" is the empty sequence.
  static Sequence parse(const Group& group, std::string_view text) {
    Sequence s(group);
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& why) -> void {
      throw InvalidArgument("bad sequence '" + std::string(text) + "': " + why);
    };
    auto read_uint = [&]() -> std::uint64_t {
      skip_ws();
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
      if (ec != std::errc() || ptr == text.data() + pos) fail("expected a nonnegative integer");
      pos = static_cast<std::size_t>(ptr - text.data());
      return v;
    };
    skip_ws();
    if (pos < text.size() && text[pos] == '1') {
      ++pos;
      skip_ws();
      if (pos != text.size()) fail("'1' denotes the empty sequence and stands alone");
      return s;
    }
    while (true) {
      skip_ws();
      if (pos == text.size()) break;
      if (text[pos] != '[') fail("expected '['");
      ++pos;
      std::vector<std::uint64_t> coords;
      while (true) {
        coords.push_back(read_uint());
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == ']') {
          ++pos;
          break;
        }
        fail("expected ',' or ']'");
      }
      if (coords.size() != group.num_factors()) {
        fail("element has " + std::to_string(coords.size()) + " coordinates, group " + group.descriptor() + " needs " +
             std::to_string(group.num_factors()));
      }
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] >= group.factors()[i]) fail("coordinate out of range for " + group.descriptor());
      }
      std::uint64_t mult = 1;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        mult = read_uint();
      }
      if (mult > std::numeric_limits<Multiplicity>::max()) fail("multiplicity too large");
      if (mult > 0) s.add(group.index_of(coords), static_cast<Multiplicity>(mult));
    }
    return s;
  }

  // Canonical text form; the empty sequence prints as "1".
  std::string to_string() const {
    if (entries_.empty()) return "1";
    std::string out;
    for (auto [e, m] : entries_) {
      if (!out.empty()) out += ' ';
      out += group_.format_element(e) + '^' + std::to_string(m);
    }
    return out;
  }

  const Group& group() const { return group_; }
  const std::map<ElementIndex, Multiplicity>& entries() const { return entries_; }
  std::uint64_t length() const { return length_; }
  bool empty() const { return entries_.empty(); }

  Multiplicity multiplicity(ElementIndex e) const {
    auto it = entries_.find(e);
    return it == entries_.end() ? 0 : it->second;
  }
  Multiplicity multiplicity(const GroupElement& g) const { return multiplicity(checked_index(g)); }

  std::vector<GroupElement> support() const {
    std::vector<GroupElement> out;
    out.reserve(entries_.size());
    for (auto [e, m] : entries_) out.push_back(GroupElement::from_index(group_, e));
    return out;
  }
  std::vector<ElementIndex> support_indices() const {
    std::vector<ElementIndex> out;
    out.reserve(entries_.size());
    for (auto [e, m] : entries_) out.push_back(e);
    return out;
  }

  Sequence& add(ElementIndex e, Multiplicity m = 1) {
    if (e >= group_.order()) throw InvalidArgument("element index out of range");
    if (m == 0) return *this;
    if (length_ + m > kMaxSequenceLength) throw InvalidArgument("sequence length exceeds 2^31");
    auto& slot = entries_[e];
    slot += m;
    length_ += m;
    return *this;
  }
  Sequence& add(const GroupElement& g, Multiplicity m = 1) { return add(checked_index(g), m); }

  // Removes m copies of e; throws if fewer are present.
  Sequence& remove(ElementIndex e, Multiplicity m = 1) {
    auto it = entries_.find(e);
    if (it == entries_.end() || it->second < m) throw InvalidArgument("element not contained with that multiplicity");
    it->second -= m;
    length_ -= m;
    if (it->second == 0) entries_.erase(it);
    return *this;
  }

  bool operator==(const Sequence& o) const { return group_ == o.group_ && entries_ == o.entries_; }
  bool operator<(const Sequence& o) const { return entries_ < o.entries_; }

 private:
  ElementIndex checked_index(const GroupElement& g) const {
    if (!(g.group() == group_)) throw InvalidArgument("element belongs to a different group");
    return g.index();
  }

  Group group_;
  std::map<ElementIndex, Multiplicity> entries_;
  std::uint64_t length_ = 0;
};

inline void require_same_group(const Sequence& a, const Sequence& b) {
  if (!(a.group() == b.group())) {
    throw InvalidArgument("sequences over " + a.group().descriptor() + " and " + b.group().descriptor());
  }
}

inline GroupElement sigma(const Sequence& s) {
  const auto& g = s.group();
  ElementIndex acc = 0;
  for (auto [e, m] : s.entries()) acc = g.add(acc, g.multiple(e, m));
  return GroupElement::from_index(g, acc);
}

// Sums of all nonempty subsequences; the empty sum is never included.
class SubsequenceSumSet {
 public:
  SubsequenceSumSet(Group group, ElementSet sums) : group_(std::move(group)), sums_(std::move(sums)) {}

  bool contains(const GroupElement& g) const { return sums_.contains(g.index()); }
  bool contains_zero() const { return sums_.contains(0); }
  std::size_t size() const { return sums_.size(); }
  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    sums_.for_each([&](ElementIndex e) { out.push_back(GroupElement::from_index(group_, e)); });
    return out;
  }
  const ElementSet& bits() const { return sums_; }

 private:
  Group group_;
  ElementSet sums_;
};

// Reachable-sum dynamic program: O(|S| * |G|).
inline SubsequenceSumSet subsequence_sums(const Sequence& s, std::uint64_t length_limit = kDefaultSubsequenceSumLimit) {
  if (s.length() > length_limit) {
    throw BudgetExceeded("subsequence sums limited to length " + std::to_string(length_limit), s.length());
  }
  const auto& g = s.group();
  ElementSet reach(g.order());
  for (auto [e, m] : s.entries()) {
    for (Multiplicity i = 0; i < m; ++i) {
      auto shifted = reach.translated(g, e);
      reach |= shifted;
      reach.insert(e);
    }
  }
  return SubsequenceSumSet(g, std::move(reach));
}

inline bool is_zero_sum_free(const Sequence& s, std::uint64_t length_limit = kDefaultSubsequenceSumLimit) {
  return !subsequence_sums(s, length_limit).contains_zero();
}

// S is minimal zero-sum iff it is nonempty, sums to zero, and S with one
// element removed is zero-sum free.
inline bool is_minimal_zero_sum(const Sequence& s, std::uint64_t length_limit = kDefaultSubsequenceSumLimit) {
  if (s.empty()) return false;
  if (!sigma(s).is_zero()) return false;
  Sequence rest = s;
  rest.remove(s.entries().begin()->first);
  return is_zero_sum_free(rest, length_limit);
}

// ||S||_g = (n_1 + ... + n_l) / ord(g) with each entry written as n_i * g,
// n_i in [1, ord(g)].
inline Rational g_norm(const Sequence& s, const GroupElement& g) {
  if (!(g.group() == s.group())) throw InvalidArgument("g-norm element from a different group");
  const auto& grp = s.group();
  const std::uint64_t n = element_order(g);
  if (n < 2) throw InvalidArgument("g-norm needs ord(g) >= 2");
  // Discrete log table for <g>.
  std::map<ElementIndex, std::uint64_t> log;
  ElementIndex x = g.index();
  for (std::uint64_t k = 1; k <= n; ++k) {
    log.emplace(x, k);
    x = grp.add(x, g.index());
  }
  std::uint64_t total = 0;
  for (auto [e, m] : s.entries()) {
    auto it = log.find(e);
    if (it == log.end()) {
      throw InvalidArgument("element " + grp.format_element(e) + " is not in the cyclic subgroup generated by " +
                            g.to_string());
    }
    total += it->second * m;
  }
  return Rational(total, n);
}

inline Sequence negate_sequence(const Sequence& s) {
  Sequence out(s.group());
  for (auto [e, m] : s.entries()) out.add(s.group().negate(e), m);
  return out;
}

inline Sequence multiply(const Sequence& a, const Sequence& b) {
  require_same_group(a, b);
  Sequence out = a;
  for (auto [e, m] : b.entries()) out.add(e, m);
  return out;
}

// Repeated product S^k.
inline Sequence power(const Sequence& s, std::uint64_t k) {
  Sequence out(s.group());
  for (auto [e, m] : s.entries()) {
    if (static_cast<std::uint64_t>(m) * k > std::numeric_limits<Multiplicity>::max()) {
      throw InvalidArgument("multiplicity overflow in power");
    }
    out.add(e, static_cast<Multiplicity>(m * k));
  }
  return out;
}

// True iff `divisor` is a sub-multiset of `s`.
inline bool divides(const Sequence& divisor, const Sequence& s) {
  require_same_group(divisor, s);
  for (auto [e, m] : divisor.entries()) {
    if (s.multiplicity(e) < m) return false;
  }
  return true;
}

// s / divisor; requires divides(divisor, s).
inline Sequence divide(const Sequence& s, const Sequence& divisor) {
  if (!divides(divisor, s)) throw InvalidArgument(divisor.to_string() + " does not divide " + s.to_string());
  Sequence out = s;
  for (auto [e, m] : divisor.entries()) out.remove(e, m);
  return out;
}

}  // namespace zslen
