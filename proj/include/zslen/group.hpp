#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zslen/error.hpp"

namespace zslen {

// Position of an element in the lexicographic enumeration of a group.
using ElementIndex = std::uint32_t;

inline constexpr std::uint64_t kDefaultElementLimit = 1'000'000;
inline constexpr std::uint64_t kDefaultAutomorphismGroupLimit = 81;
inline constexpr std::uint64_t kDefaultAutomorphismCountLimit = 1'000'000;

// A finite abelian group C_{n1} + ... + C_{nr}, kept exactly as written.
// C2xC4 and C8 are different objects; canonical_form() normalizes explicitly.
class Group {
 public:
  Group() : Group(std::vector<std::uint64_t>{1}) {}

  explicit Group(std::vector<std::uint64_t> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw InvalidArgument("group needs at least one cyclic factor");
    order_ = 1;
    for (auto n : factors_) {
      if (n < 1) throw InvalidArgument("cyclic factor must be >= 1");
      if (order_ > std::numeric_limits<std::uint64_t>::max() / n) {
        throw InvalidArgument("group order does not fit in 64 bits");
      }
      order_ *= n;
    }
    strides_.assign(factors_.size(), 1);
    for (std::size_t i = factors_.size(); i-- > 1;) {
      strides_[i - 1] = strides_[i] * factors_[i];
    }
  }

  // Parses "C6", "C2xC4", "c3^3", "C2^2xC4" (case-insensitive).
  static Group parse(std::string_view text) {
    std::vector<std::uint64_t> factors;
    std::string s;
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      }
    }
    if (s.empty()) throw InvalidArgument("empty group descriptor");
    std::size_t pos = 0;
    auto read_int = [&](const char* what) -> std::uint64_t {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
      if (ec != std::errc() || ptr == s.data() + pos) {
        throw InvalidArgument("bad group descriptor '" + std::string(text) + "': expected " + what);
      }
      pos = static_cast<std::size_t>(ptr - s.data());
      return v;
    };
    while (true) {
      if (pos >= s.size() || s[pos] != 'c') {
        throw InvalidArgument("bad group descriptor '" + std::string(text) + "': expected 'C'");
      }
      ++pos;
      std::uint64_t n = read_int("cyclic order");
      std::uint64_t reps = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        reps = read_int("exponent");
        if (reps == 0 || reps > 64) throw InvalidArgument("group exponent must be in [1,64]");
      }
      for (std::uint64_t i = 0; i < reps; ++i) factors.push_back(n);
      if (pos == s.size()) break;
      if (s[pos] != 'x') {
        throw InvalidArgument("bad group descriptor '" + std::string(text) + "': expected 'x'");
      }
      ++pos;
    }
    return Group(std::move(factors));
  }

  // Inverse of parse(); consecutive equal factors are folded into C<n>^<k>.
  std::string descriptor() const {
    std::string out;
    for (std::size_t i = 0; i < factors_.size();) {
      std::size_t j = i;
      while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
      if (!out.empty()) out += 'x';
      out += 'C' + std::to_string(factors_[i]);
      if (j - i > 1) out += '^' + std::to_string(j - i);
      i = j;
    }
    return out;
  }

  std::span<const std::uint64_t> factors() const { return factors_; }
  std::size_t num_factors() const { return factors_.size(); }
  std::uint64_t order() const { return order_; }

  bool operator==(const Group& other) const { return factors_ == other.factors_; }

  // --- index arithmetic (requires order() to fit in ElementIndex) ---

  void require_indexable() const {
    if (order_ > std::numeric_limits<ElementIndex>::max()) {
      throw InvalidArgument("group " + descriptor() + " is too large for indexed enumeration");
    }
  }

  ElementIndex index_of(std::span<const std::uint64_t> coords) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) idx += (coords[i] % factors_[i]) * strides_[i];
    return static_cast<ElementIndex>(idx);
  }

  std::vector<std::uint64_t> coords_of(ElementIndex idx) const {
    std::vector<std::uint64_t> c(factors_.size());
    std::uint64_t rest = idx;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      c[i] = rest / strides_[i];
      rest %= strides_[i];
    }
    return c;
  }

  ElementIndex add(ElementIndex a, ElementIndex b) const {
    std::uint64_t ra = a, rb = b, out = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::uint64_t ca = ra / strides_[i], cb = rb / strides_[i];
      ra %= strides_[i];
      rb %= strides_[i];
      std::uint64_t s = ca + cb;
      if (s >= factors_[i]) s -= factors_[i];
      out += s * strides_[i];
    }
    return static_cast<ElementIndex>(out);
  }

  ElementIndex negate(ElementIndex a) const {
    std::uint64_t ra = a, out = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::uint64_t ca = ra / strides_[i];
      ra %= strides_[i];
      out += (ca == 0 ? 0 : factors_[i] - ca) * strides_[i];
    }
    return static_cast<ElementIndex>(out);
  }

  ElementIndex multiple(ElementIndex a, std::uint64_t k) const {
    std::uint64_t ra = a, out = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::uint64_t ca = ra / strides_[i];
      ra %= strides_[i];
      out += static_cast<std::uint64_t>((static_cast<unsigned __int128>(ca) * k) % factors_[i]) * strides_[i];
    }
    return static_cast<ElementIndex>(out);
  }

  std::uint64_t order_of(ElementIndex a) const {
    std::uint64_t ra = a, ord = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::uint64_t ca = ra / strides_[i];
      ra %= strides_[i];
      ord = std::lcm(ord, factors_[i] / std::gcd(factors_[i], ca));
    }
    return ord;
  }

  // "[1,2]" for the element with coordinates (1,2).
  std::string format_element(ElementIndex idx) const {
    auto c = coords_of(idx);
    std::string out = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(c[i]);
    }
    return out + "]";
  }

 private:
  std::vector<std::uint64_t> factors_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t order_ = 1;
};

// An element of a Group as a residue vector. Carries its group so that mixing
// elements of different groups is detected.
class GroupElement {
 public:
  GroupElement(Group group, std::vector<std::uint64_t> coords)
      : group_(std::move(group)), coords_(std::move(coords)) {
    if (coords_.size() != group_.num_factors()) {
      throw InvalidArgument("element has " + std::to_string(coords_.size()) + " coordinates, group " +
                            group_.descriptor() + " needs " + std::to_string(group_.num_factors()));
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] %= group_.factors()[i];
  }

  static GroupElement zero(const Group& g) { return GroupElement(g, std::vector<std::uint64_t>(g.num_factors(), 0)); }

  static GroupElement from_index(const Group& g, ElementIndex idx) { return GroupElement(g, g.coords_of(idx)); }

  const Group& group() const { return group_; }
  std::span<const std::uint64_t> coords() const { return coords_; }
  ElementIndex index() const {
    group_.require_indexable();
    return group_.index_of(coords_);
  }
  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c == 0; });
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(coords_[i]);
    }
    return out + "]";
  }

  bool operator==(const GroupElement& o) const { return group_ == o.group_ && coords_ == o.coords_; }
  std::strong_ordering operator<=>(const GroupElement& o) const {
    if (!(group_ == o.group_)) throw InvalidArgument("comparing elements of different groups");
    return coords_ <=> o.coords_;
  }

 private:
  Group group_;
  std::vector<std::uint64_t> coords_;
};

inline GroupElement add(const GroupElement& a, const GroupElement& b) {
  if (!(a.group() == b.group())) {
    throw InvalidArgument("cannot add elements of " + a.group().descriptor() + " and " + b.group().descriptor());
  }
  std::vector<std::uint64_t> c(a.coords().size());
  auto f = a.group().factors();
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint64_t s = a.coords()[i] + b.coords()[i];
    c[i] = s >= f[i] ? s - f[i] : s;
  }
  return GroupElement(a.group(), std::move(c));
}

inline GroupElement negate(const GroupElement& a) {
  std::vector<std::uint64_t> c(a.coords().size());
  auto f = a.group().factors();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords()[i] == 0 ? 0 : f[i] - a.coords()[i];
  return GroupElement(a.group(), std::move(c));
}

inline std::uint64_t element_order(const GroupElement& a) {
  std::uint64_t ord = 1;
  auto f = a.group().factors();
  for (std::size_t i = 0; i < f.size(); ++i) ord = std::lcm(ord, f[i] / std::gcd(f[i], a.coords()[i]));
  return ord;
}

// All elements in lexicographic coordinate order; position i has index i.
inline std::vector<GroupElement> enumerate_elements(const Group& g, std::uint64_t limit = kDefaultElementLimit) {
  if (g.order() > limit) {
    throw BudgetExceeded("group " + g.descriptor() + " has " + std::to_string(g.order()) +
                             " elements, above the enumeration limit " + std::to_string(limit),
                         g.order());
  }
  std::vector<GroupElement> out;
  out.reserve(g.order());
  for (std::uint64_t i = 0; i < g.order(); ++i) out.push_back(GroupElement::from_index(g, static_cast<ElementIndex>(i)));
  return out;
}

// Dense bitset over the element indices of one group.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::uint64_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  void insert(ElementIndex e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  bool contains(ElementIndex e) const { return (words_[e >> 6] >> (e & 63)) & 1; }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }
  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  std::uint64_t universe() const { return universe_; }

  ElementSet& operator|=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  // { x + g : x in this }
  ElementSet translated(const Group& group, ElementIndex g) const {
    ElementSet out(universe_);
    for_each([&](ElementIndex x) { out.insert(group.add(x, g)); });
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        f(static_cast<ElementIndex>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<ElementIndex> elements() const {
    std::vector<ElementIndex> out;
    for_each([&](ElementIndex e) { out.push_back(e); });
    return out;
  }

  bool operator==(const ElementSet&) const = default;

 private:
  std::uint64_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

namespace detail {

inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace detail

struct GroupInvariants {
  std::uint64_t exponent = 1;
  std::size_t rank = 0;
  std::map<std::uint64_t, std::size_t> p_ranks;
  // 1 < m_1 | m_2 | ... | m_s; empty for the trivial group.
  std::vector<std::uint64_t> invariant_factors;

  bool operator==(const GroupInvariants&) const = default;
};

inline GroupInvariants invariants(const Group& g) {
  GroupInvariants inv;
  std::map<std::uint64_t, std::vector<std::uint64_t>> prime_powers;
  for (auto n : g.factors()) {
    inv.exponent = std::lcm(inv.exponent, n);
    for (auto [p, e] : detail::factorize(n)) {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < e; ++i) q *= p;
      prime_powers[p].push_back(q);
    }
  }
  std::size_t s = 0;
  for (auto& [p, qs] : prime_powers) {
    std::sort(qs.begin(), qs.end(), std::greater<>());
    inv.p_ranks[p] = qs.size();
    s = std::max(s, qs.size());
  }
  inv.rank = s;
  // The largest prime powers go into the last invariant factor.
  inv.invariant_factors.assign(s, 1);
  for (auto& [p, qs] : prime_powers) {
    for (std::size_t i = 0; i < qs.size(); ++i) inv.invariant_factors[s - 1 - i] *= qs[i];
  }
  return inv;
}

// The group C_{m1} + ... + C_{ms} built from the invariant factors.
inline Group canonical_form(const Group& g) {
  auto inv = invariants(g);
  if (inv.invariant_factors.empty()) return Group({1});
  return Group(inv.invariant_factors);
}

inline bool isomorphic(const Group& a, const Group& b) {
  return invariants(a).invariant_factors == invariants(b).invariant_factors;
}

// True iff every element is nonzero and G is the internal direct sum of the
// cyclic subgroups they generate.
inline bool is_basis(const Group& g, std::span<const GroupElement> elems) {
  g.require_indexable();
  std::uint64_t prod = 1;
  std::vector<ElementIndex> idx;
  std::vector<std::uint64_t> ords;
  for (const auto& e : elems) {
    if (!(e.group() == g)) throw InvalidArgument("basis candidate from a different group");
    if (e.is_zero()) return false;
    auto o = element_order(e);
    if (prod > g.order() / o + 1) return false;
    prod *= o;
    idx.push_back(e.index());
    ords.push_back(o);
  }
  if (prod != g.order()) return false;
  // Same cardinality, so the sum map is bijective iff it is injective.
  std::vector<char> seen(g.order(), 0);
  std::vector<ElementIndex> span{0};
  for (std::size_t i = 0; i < idx.size(); ++i) {
    std::vector<ElementIndex> next;
    next.reserve(span.size() * ords[i]);
    for (auto s : span) {
      ElementIndex x = s;
      for (std::uint64_t c = 0; c < ords[i]; ++c) {
        next.push_back(x);
        x = g.add(x, idx[i]);
      }
    }
    span = std::move(next);
  }
  for (auto x : span) {
    if (seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

// A group automorphism as the image of every element index.
using Automorphism = std::vector<ElementIndex>;

// All automorphisms, found by assigning images to the standard generators and
// keeping the assignments that are bijective.
inline std::vector<Automorphism> enumerate_automorphisms(const Group& g,
                                                         std::uint64_t group_limit = kDefaultAutomorphismGroupLimit,
                                                         std::uint64_t count_limit = kDefaultAutomorphismCountLimit) {
  if (g.order() > group_limit) {
    throw BudgetExceeded("automorphism enumeration limited to groups of order <= " + std::to_string(group_limit),
                         g.order());
  }
  const auto f = g.factors();
  const std::size_t r = f.size();
  std::vector<Automorphism> out;
  // spans[i] lists the images of all elements supported on the first i
  // coordinates, in lexicographic order; injectivity is checked incrementally.
  std::vector<std::vector<ElementIndex>> spans(r + 1);
  spans[0] = {0};

  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == r) {
      Automorphism phi(g.order());
      // Element with coords c maps to sum c_i * images[i]; spans[r] is in
      // exactly this lexicographic order.
      for (std::uint64_t x = 0; x < g.order(); ++x) phi[x] = spans[r][x];
      out.push_back(std::move(phi));
      if (out.size() > count_limit) {
        throw BudgetExceeded("more than " + std::to_string(count_limit) + " automorphisms", out.size());
      }
      return;
    }
    for (std::uint64_t h = 0; h < g.order(); ++h) {
      auto hi = static_cast<ElementIndex>(h);
      if (g.multiple(hi, f[i]) != 0) continue;
      std::vector<ElementIndex> next;
      next.reserve(spans[i].size() * f[i]);
      std::vector<char> seen(g.order(), 0);
      bool ok = true;
      for (auto s : spans[i]) {
        ElementIndex x = s;
        for (std::uint64_t c = 0; c < f[i] && ok; ++c) {
          if (seen[x]) ok = false;
          seen[x] = 1;
          next.push_back(x);
          x = g.add(x, hi);
        }
        if (!ok) break;
      }
      if (!ok) continue;
      spans[i + 1] = std::move(next);
      self(self, i + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

}  // namespace zslen
