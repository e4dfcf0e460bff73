#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "zslen/atoms.hpp"
#include "zslen/error.hpp"
#include "zslen/group.hpp"
#include "zslen/length_set.hpp"
#include "zslen/lengths.hpp"
#include "zslen/parallel.hpp"

namespace zslen {

struct SweepOptions {
  SearchBudget budget;
  AtomOptions atom_options;
  unsigned threads = 1;
  // Automorphism dedupe is used only for groups up to this order.
  std::uint64_t automorphism_group_limit = kDefaultAutomorphismGroupLimit;
  // ... and only when Aut(G) has at most this many elements.
  std::uint64_t automorphism_count_limit = 5000;
  // Upper bound on enumerated candidate sequences.
  std::uint64_t sequence_limit = 200'000'000;
};

// Decides whether a multiplicity vector over G is the lexicographically
// largest in its Aut(G)-orbit. Without automorphisms everything is canonical.
class OrbitFilter {
 public:
  OrbitFilter() = default;
  OrbitFilter(const Group& g, const SweepOptions& opts) : order_(g.order()) {
    if (g.order() > opts.automorphism_group_limit) return;
    try {
      autos_ = enumerate_automorphisms(g, opts.automorphism_group_limit, opts.automorphism_count_limit);
    } catch (const BudgetExceeded&) {
      autos_.clear();
    }
    // Drop the identity.
    std::erase_if(autos_, [](const Automorphism& phi) {
      for (std::size_t i = 0; i < phi.size(); ++i) {
        if (phi[i] != i) return false;
      }
      return true;
    });
  }

  bool active() const { return !autos_.empty(); }
  std::size_t size() const { return autos_.size() + 1; }

  // counts is indexed by element index.
  bool canonical(const std::vector<Multiplicity>& counts) const {
    for (const auto& phi : autos_) {
      // Compare phi(counts) with counts lexicographically.
      scratch_.assign(order_, 0);
      for (std::size_t e = 0; e < order_; ++e) scratch_[phi[e]] = counts[e];
      for (std::size_t e = 0; e < order_; ++e) {
        if (scratch_[e] != counts[e]) {
          if (scratch_[e] > counts[e]) return false;
          break;
        }
      }
    }
    return true;
  }

 private:
  std::size_t order_ = 0;
  std::vector<Automorphism> autos_;
  mutable std::vector<Multiplicity> scratch_;
};

// Calls f(counts, length) for every nonempty zero-sum sequence over `elems`
// of length at most max_len whose smallest element is elems[first]. counts
// is indexed like elems.
template <typename F>
void for_each_zero_sum_branch(const Group& g, const std::vector<ElementIndex>& elems, std::uint64_t max_len,
                              std::size_t first, F&& f) {
  if (max_len == 0) return;
  std::vector<int> pos(g.order(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
  std::vector<Multiplicity> counts(elems.size(), 0);

  auto visit = [&](auto&& self, std::size_t last, ElementIndex sum, std::uint64_t len) -> void {
    int q = pos[g.negate(sum)];
    if (q >= 0 && static_cast<std::size_t>(q) >= last && len + 1 <= max_len) {
      ++counts[q];
      f(counts, len + 1);
      --counts[q];
    }
    if (len + 2 > max_len) return;
    for (std::size_t i = last; i < elems.size(); ++i) {
      ++counts[i];
      self(self, i, g.add(sum, elems[i]), len + 1);
      --counts[i];
    }
  };
  if (elems[first] == 0) {
    counts[first] = 1;
    f(counts, 1);
    counts[first] = 0;
  }
  // Longer sequences T arise once each, as (T minus a copy of its largest
  // element) followed by that element.
  counts[first] = 1;
  visit(visit, first, elems[first], 1);
  counts[first] = 0;
}

// All nonempty zero-sum sequences over `elems` with length <= max_len.
template <typename F>
void for_each_zero_sum(const Group& g, const std::vector<ElementIndex>& elems, std::uint64_t max_len, F&& f) {
  for (std::size_t first = 0; first < elems.size(); ++first) for_each_zero_sum_branch(g, elems, max_len, first, f);
}

namespace detail {

inline std::vector<Multiplicity> full_counts(const std::vector<ElementIndex>& elems,
                                             const std::vector<Multiplicity>& counts, std::uint64_t order) {
  std::vector<Multiplicity> out(order, 0);
  for (std::size_t i = 0; i < elems.size(); ++i) out[elems[i]] = counts[i];
  return out;
}

inline AtomSet nonzero_atoms(const Group& g, const SweepOptions& opts) {
  return enumerate_atoms(g, all_elements(g, false), opts.atom_options);
}

class SequenceCounter {
 public:
  explicit SequenceCounter(std::uint64_t limit, const SearchBudget& budget = {}) : limit_(limit), budget_(budget) {}
  void tick() {
    if (++count_ > limit_) {
      throw BudgetExceeded("sweep exceeded the candidate limit of " + std::to_string(limit_), count_);
    }
    if ((count_ & 4095) == 1) check_deadline(budget_, count_);
  }
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t limit_;
  SearchBudget budget_;
  std::uint64_t count_ = 0;
};

}  // namespace detail

// Visits L(A) for every zero-sum A over G \ {0} with |A| <= bound, one A per
// automorphism orbit when the orbit filter is active. f(worker, counts over
// nonzero elements, length, L). Returns the number of sequences visited.
template <typename F>
std::uint64_t sweep_length_sets(const Group& g, std::uint64_t bound, const SweepOptions& opts, F&& f) {
  g.require_indexable();
  AtomSet atoms = detail::nonzero_atoms(g, opts);
  const auto elems = atoms.support;
  OrbitFilter filter(g, opts);
  unsigned threads = std::max(1u, opts.threads);
  std::vector<std::optional<LengthEngine>> engines(threads);
  std::vector<std::uint64_t> counts(elems.size(), 0);
  parallel_for(elems.size(), threads, [&](unsigned w, std::size_t first) {
    if (!engines[w]) engines[w].emplace(atoms, opts.budget);
    detail::SequenceCounter counter(opts.sequence_limit, opts.budget);
    OrbitFilter local = filter;
    for_each_zero_sum_branch(g, elems, bound, first, [&](const std::vector<Multiplicity>& c, std::uint64_t len) {
      counter.tick();
      if (local.active() && !local.canonical(detail::full_counts(elems, c, g.order()))) return;
      LengthEngine::Residual r = c;
      LengthSet l = engines[w]->lengths(r);
      f(w, c, len, l);
    });
    counts[first] = counter.count();
  });
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

struct DistanceReport {
  LengthSet distances;
  std::uint64_t bound = 0;
  std::uint64_t sequences = 0;
};

// Union of Delta(L(A)) over zero-sum A with |A| <= bound. A lower
// approximation of Delta(G).
inline DistanceReport delta_G_bounded(const Group& g, std::uint64_t bound, const SweepOptions& opts = {}) {
  unsigned threads = std::max(1u, opts.threads);
  std::vector<LengthSet> per(threads);
  DistanceReport out;
  out.bound = bound;
  out.sequences = sweep_length_sets(g, bound, opts, [&](unsigned w, const auto&, std::uint64_t, const LengthSet& l) {
    per[w] |= delta_of_set(l);
  });
  for (auto& d : per) out.distances |= d;
  return out;
}

struct DeltaStarReport {
  LengthSet values;
  std::uint64_t bound = 0;
  std::uint64_t sequences = 0;
};

inline constexpr std::uint64_t kDeltaStarOrderLimit = 16;

// {min Delta(G0) : G0 subset of G, Delta(G0) nonempty}, with every Delta(G0)
// approximated by sequences of length <= bound. 0 never matters: L(0A) = 1 + L(A).
inline DeltaStarReport delta_star_bounded(const Group& g, std::uint64_t bound, const SweepOptions& opts = {},
                                          std::uint64_t order_limit = kDeltaStarOrderLimit) {
  if (g.order() > order_limit) {
    throw BudgetExceeded("delta-star subset sweep limited to |G| <= " + std::to_string(order_limit), g.order());
  }
  const std::size_t n = g.order() - 1;
  const std::size_t masks = std::size_t{1} << n;
  unsigned threads = std::max(1u, opts.threads);
  std::vector<std::vector<std::uint64_t>> per(threads, std::vector<std::uint64_t>(masks, 0));
  DeltaStarReport out;
  out.bound = bound;
  out.sequences = sweep_length_sets(g, bound, opts, [&](unsigned w, const std::vector<Multiplicity>& c, std::uint64_t,
                                                         const LengthSet& l) {
    LengthSet d = delta_of_set(l);
    if (d.empty()) return;
    std::uint64_t bits = 0;
    for (auto x : d.values()) {
      if (x >= 64) throw DefectError("distance beyond 63 in a bounded sweep");
      bits |= std::uint64_t{1} << x;
    }
    std::size_t mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i]) mask |= std::size_t{1} << i;
    }
    per[w][mask] |= bits;
  });
  std::vector<std::uint64_t> acc(masks, 0);
  for (auto& p : per) {
    for (std::size_t m = 0; m < masks; ++m) acc[m] |= p[m];
  }
  // Orbit dedupe dropped some supports; Delta is Aut-invariant, so close
  // under automorphisms before the superset closure.
  OrbitFilter filter(g, opts);
  if (filter.active()) {
    auto autos = enumerate_automorphisms(g, opts.automorphism_group_limit, opts.automorphism_count_limit);
    std::vector<std::uint64_t> closed = acc;
    for (std::size_t m = 0; m < masks; ++m) {
      if (!acc[m]) continue;
      for (const auto& phi : autos) {
        std::size_t img = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (m >> i & 1) img |= std::size_t{1} << (phi[i + 1] - 1);
        }
        closed[img] |= acc[m];
      }
    }
    acc = std::move(closed);
  }
  // Delta(G0) is the union over all supports inside G0.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t m = 0; m < masks; ++m) {
      if (m >> i & 1) acc[m] |= acc[m ^ (std::size_t{1} << i)];
    }
  }
  for (std::size_t m = 1; m < masks; ++m) {
    if (acc[m]) out.values.insert(static_cast<std::uint64_t>(std::countr_zero(acc[m])));
  }
  return out;
}

struct RhoReport {
  std::uint64_t k = 0;
  std::uint64_t value = 0;
  std::optional<Sequence> witness;
  std::uint64_t candidates = 0;
};

// rho_k(G) = max { max L(A) : k in L(A) }, by running over all products of
// k atoms. Products involving the atom 0 contribute m + rho'_{k-m}, where
// rho' ranges over products of nonzero atoms only.
inline RhoReport rho_k(const Group& g, std::uint64_t k, const SweepOptions& opts = {}) {
  if (k < 1) throw InvalidArgument("rho_k needs k >= 1");
  g.require_indexable();
  AtomSet atoms = detail::nonzero_atoms(g, opts);
  const std::size_t na = atoms.atoms.size();
  OrbitFilter filter(g, opts);

  std::vector<std::uint64_t> len(na);
  for (std::size_t i = 0; i < na; ++i) len[i] = atoms.atoms[i].length();

  RhoReport out;
  out.k = k;
  // best[j]: rho'_j, with witnesses.
  std::vector<std::optional<std::uint64_t>> best(k + 1);
  std::vector<std::optional<Sequence>> wit(k + 1);
  best[0] = 0;
  wit[0] = Sequence(g);
  unsigned threads = std::max(1u, opts.threads);
  std::vector<std::optional<LengthEngine>> engines(threads);

  for (std::uint64_t j = 1; j <= k && na > 0; ++j) {
    std::mutex mu;
    std::uint64_t shared_best = j;
    std::optional<Sequence> shared_wit;
    std::uint64_t candidates = 0;
    parallel_for(na, threads, [&](unsigned w, std::size_t top) {
      if (!engines[w]) engines[w].emplace(atoms, opts.budget);
      LengthEngine& eng = *engines[w];
      std::unordered_set<std::string> seen;
      std::uint64_t local_best;
      {
        std::lock_guard lock(mu);
        local_best = shared_best;
      }
      std::optional<Sequence> local_wit;
      std::uint64_t local_candidates = 0;
      std::vector<std::size_t> pick{top};
      LengthEngine::Residual res(atoms.support.size(), 0);
      auto add_atom = [&](std::size_t a, int sign) {
        for (auto [e, m] : atoms.atoms[a].entries()) {
          auto p = static_cast<std::size_t>(eng.position_of(e));
          res[p] = sign > 0 ? res[p] + m : res[p] - m;
        }
      };
      add_atom(top, 1);
      auto rec = [&](auto&& self, std::uint64_t chosen_len) -> void {
        if (pick.size() == j) {
          // max L <= |A| / 2, so only |A| >= 2 (best + 1) can improve, and ties
          // are kept for a deterministic witness.
          if (chosen_len < 2 * local_best) return;
          std::string key(reinterpret_cast<const char*>(res.data()), res.size() * sizeof(Multiplicity));
          if (!seen.insert(key).second) return;
          if (filter.active() && !filter.canonical(detail::full_counts(atoms.support, res, g.order()))) return;
          ++local_candidates;
          LengthEngine::Residual r = res;
          std::uint64_t mx = eng.lengths(r).max();
          Sequence a = eng.sequence_of(res);
          if (mx > local_best || (mx == local_best && (!local_wit || a < *local_wit))) {
            local_best = mx;
            local_wit = std::move(a);
          }
          return;
        }
        std::size_t prev = pick.back();
        std::uint64_t remaining = j - pick.size();
        for (std::size_t a = prev + 1; a-- > 0;) {
          // Atoms are sorted by length, so len[a] bounds every later pick.
          if (chosen_len + remaining * len[a] < 2 * local_best) break;
          pick.push_back(a);
          add_atom(a, 1);
          self(self, chosen_len + len[a]);
          add_atom(a, -1);
          pick.pop_back();
        }
      };
      rec(rec, len[top]);
      std::lock_guard lock(mu);
      candidates += local_candidates;
      if (local_wit && (local_best > shared_best || (local_best == shared_best &&
                                                     (!shared_wit || *local_wit < *shared_wit)))) {
        shared_best = local_best;
        shared_wit = local_wit;
      }
    });
    out.candidates += candidates;
    if (shared_wit) {
      best[j] = shared_best;
      wit[j] = shared_wit;
    } else {
      // Every product of j atoms has max L >= j; the search only kept
      // strictly better ones, so fall back to any product (a power of an atom).
      best[j] = j;
      wit[j] = power(atoms.atoms.back(), j);
    }
  }
  // Combine with m copies of the atom 0.
  for (std::uint64_t m = 0; m <= k; ++m) {
    std::uint64_t j = k - m;
    if (!best[j]) continue;
    std::uint64_t v = m + *best[j];
    if (!out.witness || v > out.value) {
      out.value = v;
      Sequence w = *wit[j];
      if (m) w.add(0, static_cast<Multiplicity>(m));
      out.witness = std::move(w);
    }
  }
  return out;
}

}  // namespace zslen
