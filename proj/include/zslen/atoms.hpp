#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zslen/error.hpp"
#include "zslen/group.hpp"
#include "zslen/parallel.hpp"
#include "zslen/sequence.hpp"

namespace zslen {

struct AtomOptions {
  std::uint64_t node_limit = 200'000'000;
  // Largest atom length searched. Defaults to |G|, which every atom respects.
  std::optional<std::uint64_t> max_length;
  unsigned threads = 1;
};

// The minimal zero-sum sequences over a support G0, in canonical order: by
// length, then lexicographically by multiplicity vector over `support`.
struct AtomSet {
  Group group;
  std::vector<ElementIndex> support;
  std::vector<Sequence> atoms;
  std::uint64_t davenport = 0;
  std::uint64_t min_len = 0;
  std::uint64_t length_cap = 0;
  std::uint64_t nodes = 0;

  bool operator==(const AtomSet& o) const {
    return group == o.group && support == o.support && atoms == o.atoms && davenport == o.davenport &&
           min_len == o.min_len;
  }
};

inline std::vector<ElementIndex> normalize_support(const Group& g, std::vector<ElementIndex> support) {
  for (auto e : support) {
    if (e >= g.order()) throw InvalidArgument("support element out of range for " + g.descriptor());
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  return support;
}

inline std::vector<ElementIndex> all_elements(const Group& g, bool include_zero = true) {
  g.require_indexable();
  std::vector<ElementIndex> out;
  for (std::uint64_t i = include_zero ? 0 : 1; i < g.order(); ++i) out.push_back(static_cast<ElementIndex>(i));
  return out;
}

namespace detail {

inline std::vector<Multiplicity> multiplicity_vector(const Sequence& s, std::span<const ElementIndex> support) {
  std::vector<Multiplicity> v(support.size(), 0);
  for (std::size_t i = 0; i < support.size(); ++i) v[i] = s.multiplicity(support[i]);
  return v;
}

inline void sort_atoms(std::vector<Sequence>& atoms, std::span<const ElementIndex> support) {
  std::vector<std::pair<std::vector<Multiplicity>, std::size_t>> keys;
  keys.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) keys.emplace_back(multiplicity_vector(atoms[i], support), i);
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    auto la = atoms[a.second].length(), lb = atoms[b.second].length();
    if (la != lb) return la < lb;
    return a.first < b.first;
  });
  std::vector<Sequence> sorted;
  sorted.reserve(atoms.size());
  for (auto& k : keys) sorted.push_back(std::move(atoms[k.second]));
  atoms = std::move(sorted);
}

// Depth-first search over zero-sum free sequences with elements taken in
// nondecreasing position order. Every atom A is reached exactly once, as
// (A minus one copy of its largest element) followed by that element.
class AtomSearch {
 public:
  AtomSearch(const Group& g, std::span<const ElementIndex> elems, std::uint64_t cap, std::uint64_t node_limit)
      : g_(g), elems_(elems.begin(), elems.end()), cap_(cap), node_limit_(node_limit), pos_of_(g.order(), -1) {
    for (std::size_t i = 0; i < elems_.size(); ++i) pos_of_[elems_[i]] = static_cast<int>(i);
    counts_.assign(elems_.size(), 0);
  }

  // Explores all zero-sum free sequences whose first element is at `first`.
  void run_branch(std::size_t first) {
    ElementSet sums(g_.order());
    sums.insert(elems_[first]);
    counts_[first] = 1;
    visit(first, elems_[first], sums, 1);
    counts_[first] = 0;
  }

  std::vector<Sequence>& found() { return found_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void visit(std::size_t last, ElementIndex sum, const ElementSet& sums, std::uint64_t len) {
    if (++nodes_ > node_limit_) {
      throw BudgetExceeded("atom enumeration exceeded the node limit of " + std::to_string(node_limit_) + " after " +
                               std::to_string(found_.size()) + " atoms",
                           nodes_);
    }
    const ElementIndex closing = g_.negate(sum);
    if (int q = pos_of_[closing]; q >= 0 && static_cast<std::size_t>(q) >= last) {
      if (len + 1 > cap_) throw BudgetExceeded("atom length cap " + std::to_string(cap_) + " reached", nodes_);
      emit(static_cast<std::size_t>(q));
    }
    for (std::size_t q = last; q < elems_.size(); ++q) {
      const ElementIndex g = elems_[q];
      if (sums.contains(g_.negate(g))) continue;
      if (len + 2 > cap_) {
        throw BudgetExceeded("atom length cap " + std::to_string(cap_) + " reached", nodes_);
      }
      ElementSet next = sums.translated(g_, g);
      next |= sums;
      next.insert(g);
      ++counts_[q];
      visit(q, g_.add(sum, g), next, len + 1);
      --counts_[q];
    }
  }

  void emit(std::size_t closing) {
    Sequence atom(g_);
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      Multiplicity m = counts_[i] + (i == closing ? 1 : 0);
      if (m) atom.add(elems_[i], m);
    }
    found_.push_back(std::move(atom));
  }

  const Group& g_;
  std::vector<ElementIndex> elems_;
  std::uint64_t cap_;
  std::uint64_t node_limit_;
  std::vector<int> pos_of_;
  std::vector<Multiplicity> counts_;
  std::vector<Sequence> found_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

// All minimal zero-sum sequences over the given support. If 0 is in the
// support, the one-element sequence 0 is an atom and 0 is left out of the
// remaining search.
inline AtomSet enumerate_atoms(const Group& g, std::vector<ElementIndex> support, const AtomOptions& opts = {}) {
  g.require_indexable();
  AtomSet out{g, normalize_support(g, std::move(support)), {}, 0, 0, 0, 0};
  out.length_cap = opts.max_length.value_or(g.order());
  if (out.length_cap == 0) throw InvalidArgument("atom length cap must be positive");

  std::vector<ElementIndex> nonzero;
  for (auto e : out.support) {
    if (e != 0) nonzero.push_back(e);
  }
  if (out.support.size() != nonzero.size()) out.atoms.push_back(Sequence(g).add(0));

  // Branches by first element; each worker keeps its own searcher.
  std::vector<std::vector<Sequence>> per_branch(nonzero.size());
  std::vector<std::uint64_t> nodes(nonzero.size(), 0);
  parallel_for(nonzero.size(), opts.threads, [&](unsigned, std::size_t first) {
    detail::AtomSearch search(g, nonzero, out.length_cap, opts.node_limit);
    search.run_branch(first);
    per_branch[first] = std::move(search.found());
    nodes[first] = search.nodes();
  });
  for (std::size_t i = 0; i < nonzero.size(); ++i) {
    out.nodes += nodes[i];
    for (auto& a : per_branch[i]) out.atoms.push_back(std::move(a));
  }
  if (out.nodes > opts.node_limit) {
    throw BudgetExceeded("atom enumeration exceeded the node limit of " + std::to_string(opts.node_limit), out.nodes);
  }
  detail::sort_atoms(out.atoms, out.support);
  if (!out.atoms.empty()) {
    out.min_len = out.atoms.front().length();
    out.davenport = out.atoms.back().length();
  }
  return out;
}

inline AtomSet enumerate_atoms(const Group& g, std::span<const GroupElement> support, const AtomOptions& opts = {}) {
  std::vector<ElementIndex> idx;
  for (const auto& e : support) {
    if (!(e.group() == g)) throw InvalidArgument("support element from a different group");
    idx.push_back(e.index());
  }
  return enumerate_atoms(g, std::move(idx), opts);
}

// D(G): the maximal length of an atom over the whole group.
inline std::uint64_t davenport(const Group& g, const AtomOptions& opts = {}) {
  return enumerate_atoms(g, all_elements(g), opts).davenport;
}

}  // namespace zslen
