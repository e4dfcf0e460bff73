#include <gtest/gtest.h>

#include "zslen/catalog.hpp"

using namespace zslen;

namespace {

bool is_any_ap(const LengthSet& l) {
  if (l.size() < 3) return true;
  auto v = l.values();
  return is_ap(l, v[1] - v[0]);
}

}  // namespace

TEST(MembershipOracle, Examples) {
  EXPECT_TRUE(system_membership_oracle(Group::parse("C3"), LengthSet{2, 3}));
  EXPECT_TRUE(system_membership_oracle(Group::parse("C4"), LengthSet{2, 4}));
  EXPECT_FALSE(system_membership_oracle(Group::parse("C2"), LengthSet{2, 3}));
  EXPECT_TRUE(system_membership_oracle(Group::parse("C2"), LengthSet{5}));
  EXPECT_FALSE(system_membership_oracle(Group::parse("C3"), LengthSet{1, 2}));
  EXPECT_THROW(system_membership_oracle(Group::parse("C5"), LengthSet{2}), InvalidArgument);
}

TEST(MembershipOracle, AgreesWithEnumeratedSystems) {
  // Every L(A) with min L = m comes from some |A| <= D m, so sets with
  // D min L <= bound must all appear.
  for (auto d : {"C1", "C2", "C3", "C2^2", "C4", "C2^3", "C3^2"}) {
    Group g = Group::parse(d);
    const std::uint64_t bound = g.order() >= 8 ? 10 : 12;
    auto sys = system_enumerate(g, bound);
    for (const auto& l : sys.sets) EXPECT_TRUE(system_membership_oracle(g, l)) << d << " " << l.to_string();
    const std::uint64_t big_d = davenport(g);
    for (std::uint64_t lo = 0; big_d * lo <= bound; ++lo) {
      for (std::uint64_t hi = lo; hi <= lo * big_d / 2 + 1; ++hi) {
        for (std::uint64_t step : {1, 2}) {
          if ((hi - lo) % step) continue;
          LengthSet l;
          for (std::uint64_t x = lo; x <= hi; x += step) l.insert(x);
          if (system_membership_oracle(g, l)) {
            EXPECT_TRUE(sys.sets.count(l)) << d << " " << l.to_string();
          }
        }
      }
    }
  }
}

TEST(Systems, SmallCases) {
  auto c2 = system_enumerate(Group::parse("C2"), 10);
  for (const auto& l : c2.sets) EXPECT_EQ(l.size(), 1u);
  EXPECT_EQ(c2.sets.size(), 11u);
  EXPECT_TRUE(c2.sets.count(LengthSet{0}));

  EXPECT_EQ(system_enumerate(Group::parse("C3"), 10).sets, system_enumerate(Group::parse("C2^2"), 10).sets);

  auto c5 = system_enumerate(Group::parse("C5"), 12);
  for (const auto& l : c5.sets) EXPECT_TRUE(is_any_ap(l)) << l.to_string();
  EXPECT_TRUE(c5.sets.count(LengthSet{2, 5}));
  EXPECT_TRUE(c5.sets.count(LengthSet{3, 4, 5, 6}));
  EXPECT_EQ(max_distance(c5.sets), 3u);
}

TEST(Systems, CompareIdenticalAndTrivial) {
  auto same = compare_systems(Group::parse("C6"), Group::parse("C2xC3"), 9);
  EXPECT_TRUE(same.equal);
  EXPECT_FALSE(same.distinguishing.has_value());
  EXPECT_EQ(same.first_size, same.second_size);

  EXPECT_TRUE(compare_systems(Group::parse("C1"), Group::parse("C2"), 10).equal);

  auto diff = compare_systems(Group::parse("C3"), Group::parse("C4"), 10);
  EXPECT_FALSE(diff.equal);
  ASSERT_TRUE(diff.distinguishing.has_value());
  EXPECT_EQ(diff.side, 2);
  EXPECT_EQ(diff.first_max_delta, 1u);
  EXPECT_EQ(diff.second_max_delta, 2u);
  ASSERT_TRUE(diff.max_delta_witness.has_value());
  EXPECT_EQ(delta_of_set(*diff.max_delta_witness).max(), 2u);
}

TEST(Systems, OrbitFilterAndThreadsDoNotChangeTheSystem) {
  Group g = Group::parse("C2xC4");
  SweepOptions plain;
  plain.automorphism_group_limit = 0;
  SweepOptions many;
  many.threads = 3;
  auto a = system_enumerate(g, 10, plain).sets;
  EXPECT_EQ(system_enumerate(g, 10).sets, a);
  EXPECT_EQ(system_enumerate(g, 10, many).sets, a);
}

TEST(Families, Sizes) {
  EXPECT_EQ(family_generator("prop3.5", {4, 1, 0, 0}).length(), 18u);
  EXPECT_EQ(family_generator("prop3.6.1", {0, 1, 0, 0}).length(), 18u);
  EXPECT_EQ(family_generator("prop3.2", {7, 6, 0, 0}).length(), 92u);
  EXPECT_EQ(family_generator("prop3.2", {8, 1, 0, 0}).length(), 24u);
  for (const auto& id : family_ids()) {
    FamilyParams p{8, 1, 1, 1};
    EXPECT_TRUE(sigma(family_generator(id, p)).is_zero()) << id;
  }
  EXPECT_THROW(family_generator("prop3.2", {6, 1, 0, 0}), InvalidArgument);
  EXPECT_THROW(family_generator("prop3.7.1", {0, 0, 0, 0}), InvalidArgument);
  EXPECT_THROW(family_generator("nope", {}), InvalidArgument);
  EXPECT_THROW(expected_length_set("prop3.2", {7, 1, 0, 0}), InvalidArgument);
}

TEST(Families, ExpectedSets) {
  EXPECT_EQ(expected_length_set("prop3.6.1", {0, 1, 0, 0}), (LengthSet{4, 6, 7, 8, 9}));
  EXPECT_EQ(expected_length_set("prop3.6.2", {0, 1, 0, 0}), (LengthSet{3, 4, 6}));
  EXPECT_EQ(expected_length_set("prop3.7.2", {0, 1, 0, 0}), (LengthSet{4, 5, 7, 8, 10}));
  EXPECT_EQ(expected_length_set("prop3.5", {4, 1, 0, 0}), (LengthSet{4, 6, 7, 8, 9}));
}

TEST(Families, ComputedMatchesExpected) {
  std::vector<std::pair<std::string, FamilyParams>> cases{
      {"prop3.5", {4, 1, 0, 0}},   {"prop3.5", {5, 2, 0, 0}},   {"prop3.5", {6, 1, 0, 0}},
      {"prop3.6.1", {0, 1, 0, 0}}, {"prop3.6.2", {0, 1, 0, 0}}, {"prop3.6.2", {0, 3, 0, 0}},
      {"prop3.7.1", {0, 1, 0, 0}}, {"prop3.7.2", {0, 1, 0, 0}}, {"basic", {5, 2, 1, 3}}};
  for (const auto& [id, p] : cases) {
    Sequence a = family_generator(id, p);
    EXPECT_EQ(set_of_lengths(a, atoms_for(a)), expected_length_set(id, p)) << id << " k=" << p.k;
  }
}

TEST(Families, ProgressionShapes) {
  Sequence a = family_generator("prop3.2", {7, 1, 0, 0});
  LengthSet l = set_of_lengths(a, atoms_for(a));
  auto f = classify(l, LengthSet{1});
  EXPECT_EQ(f.variant, Variant::AAP);
  EXPECT_FALSE(is_ap(l, 1));

  LengthSet six = expected_length_set("prop3.6.2", {0, 3, 0, 0});
  auto g = classify(six, LengthSet{1, 2, 3});
  EXPECT_EQ(g.variant, Variant::AMP);
  EXPECT_EQ(g.d, 3u);
  EXPECT_EQ(g.period, Period(3, {0, 1, 3}));
}

TEST(Suites, FastSuitesPass) {
  SuiteOptions k2;
  k2.k = 2;
  EXPECT_TRUE(verify_suite("prop3.6.2", k2).pass);
  for (auto id : {"wichtig-2A", "prop3.1-C4", "basic", "prop3.2", "prop3.3", "wichtig-3"}) {
    auto r = verify_suite(id);
    EXPECT_TRUE(r.pass) << id;
    EXPECT_TRUE(r.complete) << id;
    EXPECT_FALSE(r.cases.empty()) << id;
  }
}

TEST(Suites, ProofSetsDisagreeOnOneCase) {
  auto r = verify_suite("proof-sets");
  EXPECT_FALSE(r.pass);
  std::size_t failing = 0;
  for (const auto& c : r.cases) {
    if (!c.pass) {
      ++failing;
      EXPECT_EQ(c.computed, "{4,5,7,8,10}");
    }
  }
  EXPECT_EQ(failing, 1u);
}

TEST(Suites, BudgetMakesSuiteIncomplete) {
  SuiteOptions o;
  o.sweep.budget.node_limit = 3;
  auto r = verify_suite("prop3.7.1", o);
  EXPECT_FALSE(r.complete);
  EXPECT_FALSE(r.pass);
}

TEST(Suites, UnknownIdAndIdList) {
  EXPECT_THROW(verify_suite("nope"), InvalidArgument);
  EXPECT_GE(suite_ids().size(), 20u);
}

TEST(Suites, NaturalOrder) {
  EXPECT_TRUE(detail::natural_less("k=2", "k=10"));
  EXPECT_FALSE(detail::natural_less("k=10", "k=2"));
  EXPECT_TRUE(detail::natural_less("a", "b"));
  EXPECT_TRUE(detail::natural_less("prop3.6", "prop3.10"));
}
