#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <cstdint>
#include <list>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zslen/atoms.hpp"
#include "zslen/error.hpp"
#include "zslen/length_set.hpp"
#include "zslen/sequence.hpp"

namespace zslen {

struct SearchBudget {
  // Memo misses allowed per top-level query.
  std::uint64_t node_limit = 500'000'000;
  // Upper bound on memo table memory; least recently used entries go first.
  std::uint64_t memo_bytes = std::uint64_t{1} << 30;
  // Wall-clock cutoff shared by every query under this budget.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

inline void check_deadline(const SearchBudget& b, std::uint64_t consumed) {
  if (b.deadline && std::chrono::steady_clock::now() > *b.deadline) {
    throw BudgetExceeded("wall-clock limit reached", consumed);
  }
}

// A factorization as a multiset of atom indices, sorted non-increasingly.
struct Factorization {
  std::vector<std::size_t> parts;

  std::size_t length() const { return parts.size(); }
  bool operator==(const Factorization&) const = default;
  bool operator<(const Factorization& o) const { return parts < o.parts; }
};

struct FactorizationList {
  std::vector<Factorization> items;
  bool truncated = false;
};

// L(A) = {r+k+l + nu (n-2) : nu in [0, min(k,l)]} for A = g^{kn+r} (-g)^{ln+r}, ord(g) = n.
inline LengthSet closed_form_basic(std::uint64_t n, std::uint64_t k, std::uint64_t l, std::uint64_t r) {
  if (n < 2) throw InvalidArgument("closed form needs n >= 2");
  if (r >= n) throw InvalidArgument("closed form needs r in [0, n-1]");
  LengthSet out;
  for (std::uint64_t nu = 0; nu <= std::min(k, l); ++nu) out.insert(r + k + l + nu * (n - 2));
  return out;
}

namespace detail {

// Memo table keyed by an encoded residual, bounded in bytes, LRU eviction.
class LruMemo {
 public:
  explicit LruMemo(std::uint64_t budget_bytes) : budget_(budget_bytes) {}

  const LengthSet* find(const std::string& key) {
    auto it = index_.find(key);
    if (it == index_.end()) return nullptr;
    order_.splice(order_.begin(), order_, it->second);
    return &it->second->value;
  }

  void insert(std::string key, LengthSet value) {
    std::size_t cost = entry_cost(key, value);
    order_.push_front(Entry{std::move(key), std::move(value)});
    index_.emplace(std::string_view(order_.front().key), order_.begin());
    bytes_ += cost;
    while (bytes_ > budget_ && order_.size() > 1) {
      auto& victim = order_.back();
      bytes_ -= entry_cost(victim.key, victim.value);
      index_.erase(std::string_view(victim.key));
      order_.pop_back();
      ++evictions_;
    }
  }

  void clear() {
    index_.clear();
    order_.clear();
    bytes_ = 0;
  }

  std::size_t size() const { return order_.size(); }
  std::uint64_t bytes() const { return bytes_; }
  std::uint64_t evictions() const { return evictions_; }

 private:
  struct Entry {
    std::string key;
    LengthSet value;
  };
  static std::size_t entry_cost(const std::string& key, const LengthSet& v) {
    return key.capacity() + v.memory_bytes() + 96;
  }

  std::list<Entry> order_;
  std::unordered_map<std::string_view, std::list<Entry>::iterator> index_;
  std::uint64_t bytes_ = 0;
  std::uint64_t budget_;
  std::uint64_t evictions_ = 0;
};

}  // namespace detail

// Sets of lengths over a fixed atom set. Zero-sum sequences are handled as
// multiplicity vectors over the atom set's support ("residuals").
//
// L(A) is computed by memoized recursion: every factorization of A contains
// an atom through the smallest element present in A, so
//   L(A) = U { 1 + L(A / U) : U atom, U | A, U contains that element }.
class LengthEngine {
 public:
  using Residual = std::vector<Multiplicity>;

  explicit LengthEngine(AtomSet atoms, SearchBudget budget = {})
      : atoms_(std::move(atoms)), budget_(budget), memo_(budget.memo_bytes), pos_of_(atoms_.group.order(), -1) {
    for (std::size_t i = 0; i < atoms_.support.size(); ++i) pos_of_[atoms_.support[i]] = static_cast<int>(i);
    by_pos_.resize(atoms_.support.size());
    min_atom_with_pos_.assign(atoms_.support.size(), atoms_.atoms.size());
    for (std::size_t a = 0; a < atoms_.atoms.size(); ++a) {
      std::vector<std::pair<std::size_t, Multiplicity>> sparse;
      for (auto [e, m] : atoms_.atoms[a].entries()) {
        int p = pos_of_[e];
        if (p < 0) throw InvalidArgument("atom " + atoms_.atoms[a].to_string() + " is not over the atom support");
        sparse.emplace_back(static_cast<std::size_t>(p), m);
      }
      for (auto [p, m] : sparse) {
        by_pos_[p].push_back(a);
        min_atom_with_pos_[p] = std::min(min_atom_with_pos_[p], a);
      }
      atom_len_.push_back(atoms_.atoms[a].length());
      sparse_.push_back(std::move(sparse));
    }
  }

  const AtomSet& atoms() const { return atoms_; }
  const SearchBudget& budget() const { return budget_; }
  std::uint64_t nodes_used() const { return nodes_; }
  std::size_t memo_entries() const { return memo_.size(); }
  std::uint64_t memo_bytes() const { return memo_.bytes(); }

  int position_of(ElementIndex e) const { return pos_of_[e]; }

  Residual residual_of(const Sequence& a) const {
    if (!(a.group() == atoms_.group)) throw InvalidArgument("sequence group does not match atom set group");
    Residual r(atoms_.support.size(), 0);
    for (auto [e, m] : a.entries()) {
      int p = pos_of_[e];
      if (p < 0) {
        throw InvalidArgument("element " + a.group().format_element(e) + " of " + a.to_string() +
                              " is outside the atom support");
      }
      r[static_cast<std::size_t>(p)] = m;
    }
    return r;
  }

  Sequence sequence_of(const Residual& r) const {
    Sequence s(atoms_.group);
    for (std::size_t p = 0; p < r.size(); ++p) {
      if (r[p]) s.add(atoms_.support[p], r[p]);
    }
    return s;
  }

  Sequence product(const Factorization& z) const {
    Sequence s(atoms_.group);
    for (auto i : z.parts) s = multiply(s, atoms_.atoms.at(i));
    return s;
  }

  // L(A). Requires supp(A) within the atom support and sigma(A) = 0.
  LengthSet set_of_lengths(const Sequence& a) {
    require_zero_sum(a);
    Residual r = residual_of(a);
    LengthSet l = lengths(r);
    check_length_bounds(a.length(), l);
    return l;
  }

  // L of a zero-sum residual; the node budget applies per call.
  LengthSet lengths(Residual& r) {
    nodes_ = 0;
    std::uint64_t len = 0;
    for (auto m : r) len += m;
    return solve(r, len);
  }

  // All factorizations, each once, parts in non-increasing atom order.
  FactorizationList factorizations(const Sequence& a, std::size_t limit) {
    require_zero_sum(a);
    Residual r = residual_of(a);
    nodes_ = 0;
    FactorizationList out;
    std::vector<std::size_t> parts;
    std::uint64_t len = 0;
    for (auto m : r) len += m;
    enumerate(r, len, atoms_.atoms.size(), parts, limit, out);
    return out;
  }

  // Some factorization z of A with |z| = max L(A) that contains the
  // length-two atoms listed in x.
  Factorization max_length_factorization_containing(const Sequence& a, const std::vector<std::size_t>& x) {
    require_zero_sum(a);
    Residual r = residual_of(a);
    for (auto i : x) {
      if (i >= atoms_.atoms.size()) throw InvalidArgument("atom index out of range");
      if (atom_len_[i] != 2) throw InvalidArgument("x may only contain atoms of length 2");
      if (!atom_divides(i, r)) throw InvalidArgument("the atoms of x do not divide A");
      subtract(i, r);
    }
    nodes_ = 0;
    std::uint64_t rest_len = 0;
    for (auto m : r) rest_len += m;
    LengthSet rest = solve(r, rest_len);
    if (rest.empty()) throw DefectError("residual after removing x has no factorization");
    Factorization z;
    z.parts = x;
    extend_witness(r, rest_len, rest.max(), z.parts);
    std::sort(z.parts.begin(), z.parts.end(), std::greater<>());

    Residual full = residual_of(a);
    LengthSet l = lengths(full);
    if (z.length() != l.max()) {
      throw DefectError("no maximal-length factorization of " + a.to_string() + " contains the requested atoms");
    }
    return z;
  }

  // A factorization of A of length exactly t (t must lie in L(A)).
  Factorization factorization_of_length(const Sequence& a, std::uint64_t t) {
    require_zero_sum(a);
    Residual r = residual_of(a);
    nodes_ = 0;
    std::uint64_t len = a.length();
    if (!solve(r, len).contains(t)) throw InvalidArgument(std::to_string(t) + " is not in L(A)");
    Factorization z;
    extend_witness(r, len, t, z.parts);
    std::sort(z.parts.begin(), z.parts.end(), std::greater<>());
    return z;
  }

  void clear_memo() { memo_.clear(); }

 private:
  void require_zero_sum(const Sequence& a) const {
    if (!sigma(a).is_zero()) throw InvalidArgument(a.to_string() + " is not a zero-sum sequence");
  }

  // |A|/D <= min L(A) <= max L(A) <= |A|/d for every nonempty A.
  void check_length_bounds(std::uint64_t size, const LengthSet& l) const {
    if (size == 0) {
      if (!(l == LengthSet{0})) throw DefectError("L(1) must be {0}");
      return;
    }
    if (l.empty()) throw DefectError("zero-sum sequence without factorization; atom set incomplete");
    if (l.min() * atoms_.davenport < size || l.max() * atoms_.min_len > size) {
      throw DefectError("length bounds |A|/D <= min L <= max L <= |A|/d violated");
    }
  }

  bool atom_divides(std::size_t a, const Residual& r) const {
    for (auto [p, m] : sparse_[a]) {
      if (r[p] < m) return false;
    }
    return true;
  }
  void subtract(std::size_t a, Residual& r) const {
    for (auto [p, m] : sparse_[a]) r[p] -= m;
  }
  void restore(std::size_t a, Residual& r) const {
    for (auto [p, m] : sparse_[a]) r[p] += m;
  }

  static std::string encode(const Residual& r) {
    std::string key;
    key.reserve(r.size() + 4);
    for (auto m : r) {
      std::uint32_t v = m;
      while (v >= 0x80) {
        key.push_back(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
      }
      key.push_back(static_cast<char>(v));
    }
    return key;
  }

  LengthSet solve(Residual& r, std::uint64_t len) {
    if (len == 0) return LengthSet{0};
    std::string key = encode(r);
    if (const LengthSet* hit = memo_.find(key)) return *hit;
    if (++nodes_ > budget_.node_limit) {
      throw BudgetExceeded("length computation exceeded the node limit of " + std::to_string(budget_.node_limit),
                           nodes_);
    }
    if ((nodes_ & 4095) == 1) check_deadline(budget_, nodes_);
    std::size_t pivot = 0;
    while (r[pivot] == 0) ++pivot;
    LengthSet out;
    for (auto a : by_pos_[pivot]) {
      if (!atom_divides(a, r)) continue;
      subtract(a, r);
      LengthSet sub = solve(r, len - atom_len_[a]);
      restore(a, r);
      out.merge_shifted(sub, 1);
    }
    memo_.insert(std::move(key), out);
    return out;
  }

  // Appends to `parts` a factorization of r with exactly t atoms.
  void extend_witness(Residual& r, std::uint64_t len, std::uint64_t t, std::vector<std::size_t>& parts) {
    while (len > 0) {
      std::size_t pivot = 0;
      while (r[pivot] == 0) ++pivot;
      bool advanced = false;
      for (auto a : by_pos_[pivot]) {
        if (!atom_divides(a, r)) continue;
        subtract(a, r);
        if (t >= 1 && solve(r, len - atom_len_[a]).contains(t - 1)) {
          parts.push_back(a);
          len -= atom_len_[a];
          --t;
          advanced = true;
          break;
        }
        restore(a, r);
      }
      if (!advanced) throw DefectError("witness reconstruction failed");
    }
    if (t != 0) throw DefectError("witness reconstruction ended with the wrong length");
  }

  void enumerate(Residual& r, std::uint64_t len, std::size_t bound, std::vector<std::size_t>& parts,
                 std::size_t limit, FactorizationList& out) {
    if (out.truncated) return;
    if (len == 0) {
      if (out.items.size() >= limit) {
        out.truncated = true;
        return;
      }
      out.items.push_back(Factorization{parts});
      return;
    }
    if (++nodes_ > budget_.node_limit) {
      throw BudgetExceeded("factorization enumeration exceeded the node limit", nodes_);
    }
    if ((nodes_ & 4095) == 1) check_deadline(budget_, nodes_);
    // Atoms are taken in non-increasing index order, so every element still
    // present must occur in some atom of index < bound.
    for (std::size_t p = 0; p < r.size(); ++p) {
      if (r[p] && min_atom_with_pos_[p] >= bound) return;
    }
    for (std::size_t a = bound; a-- > 0;) {
      if (!atom_divides(a, r)) continue;
      subtract(a, r);
      parts.push_back(a);
      enumerate(r, len - atom_len_[a], a + 1, parts, limit, out);
      parts.pop_back();
      restore(a, r);
      if (out.truncated) return;
    }
  }

  AtomSet atoms_;
  SearchBudget budget_;
  detail::LruMemo memo_;
  std::vector<int> pos_of_;
  std::vector<std::vector<std::size_t>> by_pos_;
  std::vector<std::size_t> min_atom_with_pos_;
  std::vector<std::vector<std::pair<std::size_t, Multiplicity>>> sparse_;
  std::vector<std::uint64_t> atom_len_;
  std::uint64_t nodes_ = 0;
};

// Convenience wrappers for one-off queries.
inline LengthSet set_of_lengths(const Sequence& a, const AtomSet& atoms, SearchBudget budget = {}) {
  LengthEngine engine(atoms, budget);
  return engine.set_of_lengths(a);
}

inline FactorizationList enumerate_factorizations(const Sequence& a, const AtomSet& atoms, std::size_t limit,
                                                  SearchBudget budget = {}) {
  LengthEngine engine(atoms, budget);
  return engine.factorizations(a, limit);
}

inline Factorization max_length_factorization_containing(const Sequence& a, const AtomSet& atoms,
                                                         const std::vector<std::size_t>& x, SearchBudget budget = {}) {
  LengthEngine engine(atoms, budget);
  return engine.max_length_factorization_containing(a, x);
}

// Atoms over supp(A), which are the only atoms a factorization of A can use.
inline AtomSet atoms_for(const Sequence& a, const AtomOptions& opts = {}) {
  return enumerate_atoms(a.group(), a.support_indices(), opts);
}

}  // namespace zslen
