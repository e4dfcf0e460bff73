#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zslen/error.hpp"
#include "zslen/length_set.hpp"

namespace zslen {

// {0, d} subset of offsets subset of [0, d].
struct Period {
  std::uint64_t d = 1;
  std::vector<std::uint64_t> offsets{0, 1};

  Period() = default;
  Period(std::uint64_t diff, std::vector<std::uint64_t> offs) : d(diff), offsets(std::move(offs)) {
    if (d == 0) throw InvalidArgument("period difference must be positive");
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    if (offsets.empty() || offsets.front() != 0 || offsets.back() != d) {
      throw InvalidArgument("period must contain 0 and d and lie in [0, d]");
    }
  }
  static Period trivial(std::uint64_t d) { return Period(d, {0, d}); }

  // x in D + dZ
  bool contains_class(std::int64_t x) const {
    auto r = static_cast<std::uint64_t>(((x % static_cast<std::int64_t>(d)) + static_cast<std::int64_t>(d)) %
                                        static_cast<std::int64_t>(d));
    return std::binary_search(offsets.begin(), offsets.end(), r);
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < offsets.size(); ++i) out += (i ? "," : "") + std::to_string(offsets[i]);
    return out + "}";
  }

  bool operator==(const Period&) const = default;
};

// L = y + (L' u L* u L'') as in the AAMP definition; parts are stored unshifted.
struct AamWitness {
  std::int64_t y = 0;
  std::vector<std::int64_t> lower;  // L', inside [-M, -1]
  std::vector<std::int64_t> core;   // L*, an AMP with minimum 0
  std::vector<std::int64_t> upper;  // L'', inside max L* + [1, M]
  std::uint64_t bound = 0;          // least M this witness satisfies
  std::uint64_t length = 0;         // AMP length of L*

  bool operator==(const AamWitness&) const = default;
};

enum class Variant { Singleton, AP, AMP, AAP, AAMP };

inline std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Singleton: return "Singleton";
    case Variant::AP: return "AP";
    case Variant::AMP: return "AMP";
    case Variant::AAP: return "AAP";
    case Variant::AAMP: return "AAMP";
  }
  return "?";
}

struct ProgressionForm {
  Variant variant = Variant::Singleton;
  std::uint64_t d = 0;
  Period period;
  std::uint64_t length = 0;
  std::uint64_t bound = 0;
  std::optional<AamWitness> witness;
  LengthSet allowed;
};

// L = min L + d [0, k] for some k >= 0.
inline bool is_ap(const LengthSet& l, std::uint64_t d) {
  if (d == 0) throw InvalidArgument("difference must be positive");
  if (l.empty()) throw InvalidArgument("is_ap on an empty set");
  auto v = l.values();
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] - v[i - 1] != d) return false;
  }
  return true;
}

// L = (min L + D + dZ) intersected with [min L, max L].
inline bool is_amp_with_period(const LengthSet& l, const Period& p) {
  if (l.empty()) return false;
  const std::uint64_t lo = l.min(), hi = l.max();
  for (std::uint64_t x = lo; x <= hi; ++x) {
    if (l.contains(x) != p.contains_class(static_cast<std::int64_t>(x - lo))) return false;
  }
  return true;
}

struct AmpVerdict {
  Period period;
  std::uint64_t length = 0;
};

namespace detail {

inline std::uint64_t amp_length(const LengthSet& l, std::uint64_t d) {
  std::uint64_t k = 0;
  for (std::uint64_t x = l.min(); x <= l.max(); x += d) {
    if (l.contains(x)) k = (x - l.min()) / d;
  }
  return k;
}

}  // namespace detail

// The period is forced: offsets = {(x - min L) mod d : x in L} u {d}.
inline std::optional<AmpVerdict> classify_amp(const LengthSet& l, std::uint64_t d) {
  if (d == 0) throw InvalidArgument("difference must be positive");
  if (l.empty()) return std::nullopt;
  std::vector<std::uint64_t> offs{d};
  for (auto x : l.values()) offs.push_back((x - l.min()) % d);
  Period p(d, std::move(offs));
  if (!is_amp_with_period(l, p)) return std::nullopt;
  return AmpVerdict{p, detail::amp_length(l, d)};
}

namespace detail {

// All witnesses (y, b) with y, b in L: L* = (L - y) cut to [0, b - y].
// Calls f(witness) in order y ascending, then b descending.
template <typename F>
void for_each_aamp_witness(const LengthSet& l, const Period& p, F&& f) {
  auto v = l.values();
  std::vector<std::int64_t> s(v.begin(), v.end());
  for (std::size_t yi = 0; yi < s.size(); ++yi) {
    const std::int64_t y = s[yi];
    bool all_in_class = true;
    for (auto x : s) {
      if (!p.contains_class(x - y)) {
        all_in_class = false;
        break;
      }
    }
    if (!all_in_class) continue;
    for (std::size_t bi = s.size(); bi-- > yi;) {
      const std::int64_t b = s[bi];
      // L* must be exactly (D + dZ) on [0, b - y].
      bool ok = true;
      std::size_t j = yi;
      for (std::int64_t t = 0; t <= b - y && ok; ++t) {
        bool present = j <= bi && s[j] == y + t;
        if (present) ++j;
        if (present != p.contains_class(t)) ok = false;
      }
      if (!ok) continue;
      AamWitness w;
      w.y = y;
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::int64_t x = s[i] - y;
        if (i < yi) {
          w.lower.push_back(x);
        } else if (i <= bi) {
          w.core.push_back(x);
        } else {
          w.upper.push_back(x);
        }
      }
      std::uint64_t m = 0;
      if (!w.lower.empty()) m = std::max<std::uint64_t>(m, static_cast<std::uint64_t>(-w.lower.front()));
      if (!w.upper.empty()) m = std::max<std::uint64_t>(m, static_cast<std::uint64_t>(w.upper.back() - (b - y)));
      w.bound = m;
      std::uint64_t len = 0;
      for (auto x : w.core) {
        if (x % static_cast<std::int64_t>(p.d) == 0) len = static_cast<std::uint64_t>(x) / p.d;
      }
      w.length = len;
      if (f(w)) return;
    }
  }
}

inline void check_reconstructs(const LengthSet& l, const AamWitness& w) {
  LengthSet back;
  for (const auto* part : {&w.lower, &w.core, &w.upper}) {
    for (auto x : *part) back.insert(static_cast<std::uint64_t>(w.y + x));
  }
  if (!(back == l)) throw DefectError("AAMP witness does not reconstruct the classified set");
}

}  // namespace detail

// First witness (y ascending, then largest core) with bound <= M.
inline std::optional<AamWitness> is_aamp(const LengthSet& l, std::uint64_t d, const Period& p, std::uint64_t m) {
  if (d == 0) throw InvalidArgument("difference must be positive");
  if (p.d != d) throw InvalidArgument("period difference does not match d");
  if (l.empty()) return std::nullopt;
  std::optional<AamWitness> out;
  detail::for_each_aamp_witness(l, p, [&](const AamWitness& w) {
    if (w.bound > m) return false;
    out = w;
    return true;
  });
  if (out) detail::check_reconstructs(l, *out);
  return out;
}

// Least bound over all witnesses for period p; the witness attaining it
// first in search order.
inline std::optional<AamWitness> minimal_aamp_witness(const LengthSet& l, const Period& p) {
  if (l.empty()) return std::nullopt;
  std::optional<AamWitness> best;
  detail::for_each_aamp_witness(l, p, [&](const AamWitness& w) {
    if (!best || w.bound < best->bound) best = w;
    return best->bound == 0;
  });
  if (best) detail::check_reconstructs(l, *best);
  return best;
}

// Least M such that L is an AAP with difference d and bound M. Empty when L
// does not lie in a single residue class mod d, since then no M works.
inline std::optional<std::uint64_t> minimal_aap_bound(const LengthSet& l, std::uint64_t d) {
  if (d == 0) throw InvalidArgument("difference must be positive");
  auto w = minimal_aamp_witness(l, Period::trivial(d));
  if (!w) return std::nullopt;
  return w->bound;
}

// Periods for difference d other than {0, d}, by size then lexicographically.
inline std::vector<Period> nontrivial_periods(std::uint64_t d) {
  std::vector<Period> out;
  if (d < 2) return out;
  if (d > 20) throw BudgetExceeded("period enumeration limited to d <= 20", d);
  const std::uint64_t inner = d - 1;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << inner); ++mask) {
    std::vector<std::uint64_t> offs{0};
    for (std::uint64_t i = 0; i < inner; ++i) {
      if (mask >> i & 1) offs.push_back(i + 1);
    }
    offs.push_back(d);
    out.emplace_back(d, std::move(offs));
  }
  std::sort(out.begin(), out.end(), [](const Period& a, const Period& b) {
    if (a.offsets.size() != b.offsets.size()) return a.offsets.size() < b.offsets.size();
    return a.offsets < b.offsets;
  });
  return out;
}

// Verdict relative to the allowed differences, with precedence
// Singleton > AP > AMP > AAP > AAMP and ties broken by (d, period, bound).
inline ProgressionForm classify(const LengthSet& l, const LengthSet& allowed) {
  if (l.empty()) throw InvalidArgument("classify on an empty set");
  if (allowed.empty()) throw InvalidArgument("allowed difference set must be nonempty");
  if (allowed.contains(0)) throw InvalidArgument("differences must be positive");
  ProgressionForm out;
  out.allowed = allowed;
  if (l.size() == 1) {
    out.variant = Variant::Singleton;
    return out;
  }
  const auto ds = allowed.values();
  for (auto d : ds) {
    if (is_ap(l, d)) {
      out.variant = Variant::AP;
      out.d = d;
      out.period = Period::trivial(d);
      out.length = (l.max() - l.min()) / d;
      return out;
    }
  }
  for (auto d : ds) {
    if (auto amp = classify_amp(l, d)) {
      out.variant = Variant::AMP;
      out.d = d;
      out.period = amp->period;
      out.length = amp->length;
      return out;
    }
  }
  auto finish = [&](Variant v, std::uint64_t d, const Period& p, const AamWitness& w) {
    out.variant = v;
    out.d = d;
    out.period = p;
    out.length = w.length;
    out.bound = w.bound;
    out.witness = w;
    return out;
  };
  // AAP: smallest d, then minimal bound.
  for (auto d : ds) {
    if (auto w = minimal_aamp_witness(l, Period::trivial(d))) return finish(Variant::AAP, d, Period::trivial(d), *w);
  }
  for (auto d : ds) {
    for (const auto& p : nontrivial_periods(d)) {
      if (auto w = minimal_aamp_witness(l, p)) return finish(Variant::AAMP, d, p, *w);
    }
  }
  // Unreachable: the full period [0, d] always admits a witness.
  throw DefectError("no AAMP witness for " + l.to_string());
}

}  // namespace zslen
