#include <gtest/gtest.h>

#include <map>
#include <set>

#include "zslen/sweeps.hpp"

using namespace zslen;

namespace {

SweepOptions unfiltered() {
  SweepOptions o;
  o.automorphism_group_limit = 0;
  return o;
}

// Every multiset of nonzero elements with length in [1, bound] and sum zero,
// as full multiplicity vectors.
std::vector<std::vector<Multiplicity>> brute_zero_sums(const Group& g, std::uint64_t bound) {
  std::vector<std::vector<Multiplicity>> out;
  std::vector<Multiplicity> m(g.order(), 0);
  auto rec = [&](auto&& self, ElementIndex e, std::uint64_t len, ElementIndex sum) -> void {
    if (e == g.order()) {
      if (len > 0 && sum == 0) out.push_back(m);
      return;
    }
    for (Multiplicity v = 0; len + v <= bound; ++v) {
      m[e] = v;
      self(self, e + 1, len + v, g.add(sum, g.multiple(e, v)));
    }
    m[e] = 0;
  };
  rec(rec, 1, 0, 0);
  return out;
}

// Lengths of factorizations by repeated division with atoms in index order.
void brute_lengths(const std::vector<Sequence>& atoms, const Sequence& rest, std::size_t from, std::uint64_t depth,
                   LengthSet& out) {
  if (rest.empty()) {
    out.insert(depth);
    return;
  }
  for (std::size_t i = from; i < atoms.size(); ++i) {
    if (divides(atoms[i], rest)) brute_lengths(atoms, divide(rest, atoms[i]), i, depth + 1, out);
  }
}

Sequence from_counts(const Group& g, const std::vector<Multiplicity>& m) {
  Sequence s(g);
  for (ElementIndex e = 0; e < m.size(); ++e) {
    if (m[e]) s.add(e, m[e]);
  }
  return s;
}

LengthSet brute_delta_G(const Group& g, std::uint64_t bound) {
  auto atoms = enumerate_atoms(g, all_elements(g, false)).atoms;
  LengthSet out;
  for (const auto& m : brute_zero_sums(g, bound)) {
    LengthSet l;
    brute_lengths(atoms, from_counts(g, m), 0, 0, l);
    out |= delta_of_set(l);
  }
  return out;
}

std::uint64_t brute_rho(const Group& g, std::uint64_t k) {
  auto atoms = enumerate_atoms(g, all_elements(g, true)).atoms;
  std::uint64_t best = 0;
  std::vector<std::size_t> pick(k, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t from, const Sequence& prod) -> void {
    if (i == k) {
      LengthSet l;
      brute_lengths(atoms, prod, 0, 0, l);
      best = std::max(best, l.max());
      return;
    }
    for (std::size_t a = from; a < atoms.size(); ++a) self(self, i + 1, a, multiply(prod, atoms[a]));
  };
  rec(rec, 0, 0, Sequence(g));
  return best;
}

}  // namespace

TEST(ZeroSumEnumeration, MatchesBruteForceCounts) {
  for (auto d : {"C3", "C4", "C5", "C6", "C2^2", "C2xC4", "C3^2"}) {
    Group g = Group::parse(d);
    std::vector<ElementIndex> elems;
    for (ElementIndex e = 1; e < g.order(); ++e) elems.push_back(e);
    std::set<std::vector<Multiplicity>> seen;
    std::uint64_t visits = 0;
    for_each_zero_sum(g, elems, 8, [&](const std::vector<Multiplicity>& c, std::uint64_t len) {
      ++visits;
      std::uint64_t total = 0;
      for (auto v : c) total += v;
      EXPECT_EQ(total, len);
      seen.insert(c);
    });
    auto brute = brute_zero_sums(g, 8);
    EXPECT_EQ(visits, brute.size()) << d;
    EXPECT_EQ(seen.size(), brute.size()) << d;
  }
}

TEST(DeltaG, BoundedSweep) {
  EXPECT_EQ(delta_G_bounded(Group::parse("C3"), 12).distances, LengthSet{1});
  EXPECT_EQ(delta_G_bounded(Group::parse("C2"), 12).distances, LengthSet{});
  EXPECT_EQ(delta_G_bounded(Group::parse("C5"), 10).distances, (LengthSet{1, 2, 3}));
}

TEST(DeltaG, MatchesBruteForce) {
  for (auto [d, b] : std::vector<std::pair<const char*, std::uint64_t>>{{"C4", 8}, {"C5", 8}, {"C2^2", 8}, {"C6", 8}}) {
    Group g = Group::parse(d);
    EXPECT_EQ(delta_G_bounded(g, b).distances, brute_delta_G(g, b)) << d;
  }
}

TEST(DeltaG, OrbitFilterAndThreadsDoNotChangeResults) {
  for (auto d : {"C6", "C2^3", "C3^2", "C2xC4"}) {
    Group g = Group::parse(d);
    auto plain = delta_G_bounded(g, 9, unfiltered());
    SweepOptions filtered;
    auto f = delta_G_bounded(g, 9, filtered);
    EXPECT_EQ(f.distances, plain.distances) << d;
    EXPECT_LE(f.sequences, plain.sequences) << d;
    filtered.threads = 3;
    EXPECT_EQ(delta_G_bounded(g, 9, filtered).distances, plain.distances) << d;
  }
}

TEST(DeltaStar, SmallGroups) {
  EXPECT_EQ(delta_star_bounded(Group::parse("C5"), 10).values, (LengthSet{1, 3}));
  EXPECT_EQ(delta_star_bounded(Group::parse("C6"), 12).values, (LengthSet{1, 2, 4}));
  EXPECT_EQ(delta_star_bounded(Group::parse("C2^3"), 8).values, (LengthSet{1, 2}));
  EXPECT_EQ(delta_star_bounded(Group::parse("C2"), 4).values, LengthSet{});
  EXPECT_THROW(delta_star_bounded(Group::parse("C17"), 4), BudgetExceeded);
}

TEST(DeltaStar, OrbitFilterDoesNotChangeResults) {
  for (auto d : {"C6", "C2^3", "C7", "C2xC4"}) {
    Group g = Group::parse(d);
    EXPECT_EQ(delta_star_bounded(g, 10).values, delta_star_bounded(g, 10, unfiltered()).values) << d;
  }
}

TEST(Rho, CyclicValues) {
  EXPECT_EQ(rho_k(Group::parse("C5"), 2).value, 5u);
  EXPECT_EQ(rho_k(Group::parse("C5"), 3).value, 6u);
  EXPECT_EQ(rho_k(Group::parse("C2^2"), 2).value, 3u);
  for (std::uint64_t n = 4; n <= 7; ++n) {
    EXPECT_EQ(rho_k(Group({n}), 3).value, n + 1) << n;
    EXPECT_EQ(rho_k(Group({n}), 4).value, 2 * n) << n;
  }
  EXPECT_EQ(rho_k(Group::parse("C1"), 3).value, 3u);
  EXPECT_THROW(rho_k(Group::parse("C5"), 0), InvalidArgument);
}

TEST(Rho, WitnessHasTheClaimedLengths) {
  Group g = Group::parse("C6");
  auto r = rho_k(g, 3);
  ASSERT_TRUE(r.witness.has_value());
  LengthSet l = set_of_lengths(*r.witness, atoms_for(*r.witness));
  EXPECT_TRUE(l.contains(3));
  EXPECT_EQ(l.max(), r.value);
}

TEST(Rho, MatchesBruteForce) {
  for (auto d : {"C3", "C4", "C2^2", "C5"}) {
    Group g = Group::parse(d);
    for (std::uint64_t k = 1; k <= 3; ++k) EXPECT_EQ(rho_k(g, k).value, brute_rho(g, k)) << d << " k=" << k;
  }
}

TEST(Rho, ThreadInvariance) {
  Group g = Group::parse("C2xC4");
  SweepOptions many;
  many.threads = 4;
  for (std::uint64_t k = 2; k <= 4; ++k) EXPECT_EQ(rho_k(g, k, many).value, rho_k(g, k).value);
}

TEST(Sweeps, SequenceLimitIsABudget) {
  SweepOptions o;
  o.sequence_limit = 10;
  EXPECT_THROW(delta_G_bounded(Group::parse("C5"), 10, o), BudgetExceeded);
}
