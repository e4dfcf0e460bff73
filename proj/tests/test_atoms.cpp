#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include <unistd.h>

#include "zslen/atom_cache.hpp"
#include "zslen/atoms.hpp"

using namespace zslen;

namespace {

const Group c6 = Group::parse("C6");

// Atoms written with g = [1]: "g^4 (2g)" becomes "[1]^4 [2]^1".
std::set<std::string> texts(const AtomSet& a) {
  std::set<std::string> out;
  for (const auto& u : a.atoms) out.insert(u.to_string());
  return out;
}

std::set<std::string> parse_all(const Group& g, std::initializer_list<const char*> list) {
  std::set<std::string> out;
  for (auto t : list) out.insert(Sequence::parse(g, t).to_string());
  return out;
}

// Oracle: every multiplicity vector over the support up to total length
// `cap`, filtered by the subset-sum based minimality test.
std::set<std::string> brute_atoms(const Group& g, const std::vector<ElementIndex>& support, std::uint64_t cap) {
  std::set<std::string> out;
  std::vector<Multiplicity> m(support.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t len) -> void {
    if (i == support.size()) {
      Sequence s(g);
      for (std::size_t j = 0; j < support.size(); ++j) s.add(support[j], m[j]);
      if (is_minimal_zero_sum(s, cap + 1)) out.insert(s.to_string());
      return;
    }
    for (Multiplicity v = 0; len + v <= cap; ++v) {
      m[i] = v;
      self(self, i + 1, len + v);
    }
    m[i] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

std::uint64_t brute_davenport(const Group& g) {
  std::uint64_t best = 0;
  for (const auto& t : brute_atoms(g, all_elements(g, false), g.order())) {
    best = std::max(best, Sequence::parse(g, t).length());
  }
  return best;
}

}  // namespace

TEST(AtomTables, Wichtig1) {
  auto a = enumerate_atoms(c6, std::vector<ElementIndex>{1, 2, 3, 5});
  EXPECT_EQ(a.atoms.size(), 12u);
  EXPECT_EQ(texts(a), parse_all(c6, {"[1]^6", "[1]^4 [2]", "[1]^3 [3]", "[1]^2 [2]^2", "[1] [2] [3]", "[1] [5]",
                                     "[2]^3", "[3]^2", "[2]^2 [3] [5]", "[2] [5]^2", "[3] [5]^3", "[5]^6"}));
}

TEST(AtomTables, Wichtig2A) {
  auto a = enumerate_atoms(c6, std::vector<ElementIndex>{1, 3, 4});
  EXPECT_EQ(a.atoms.size(), 6u);
  EXPECT_EQ(texts(a), parse_all(c6, {"[1]^6", "[1]^3 [3]", "[1]^2 [4]", "[3]^2", "[4]^2 [3] [1]", "[4]^3"}));
}

TEST(AtomTables, Wichtig2) {
  auto a = enumerate_atoms(c6, std::vector<ElementIndex>{1, 2, 3, 4});
  EXPECT_EQ(a.atoms.size(), 11u);
  EXPECT_EQ(texts(a), parse_all(c6, {"[1]^6", "[1]^4 [2]", "[1]^3 [3]", "[1]^2 [2]^2", "[1]^2 [4]", "[1] [2] [3]",
                                     "[2] [4]", "[2]^3", "[3]^2", "[4]^2 [3] [1]", "[4]^3"}));
}

TEST(AtomTables, Wichtig3) {
  auto a = enumerate_atoms(c6, std::vector<ElementIndex>{1, 2, 5});
  EXPECT_EQ(a.atoms.size(), 7u);
  EXPECT_EQ(texts(a), parse_all(c6, {"[1]^6", "[1]^4 [2]", "[1]^2 [2]^2", "[5] [1]", "[2]^3", "[2] [5]^2", "[5]^6"}));
}

TEST(AtomTables, Wichtig4GradedByNorm) {
  auto a = enumerate_atoms(c6, std::vector<ElementIndex>{1, 2, 4, 5});
  EXPECT_EQ(a.atoms.size(), 12u);
  EXPECT_EQ(texts(a), parse_all(c6, {"[1]^6", "[1]^4 [2]", "[1]^2 [2]^2", "[2]^3", "[2] [4]", "[4] [1]^2", "[1] [5]",
                                     "[4]^3", "[2] [5]^2", "[4]^2 [5]^2", "[5]^4 [4]", "[5]^6"}));
  // Rows of the graded list: norm 1 has seven atoms, then one each of 2..5 and one more of 2.
  std::map<std::string, std::size_t> per_norm;
  for (const auto& u : a.atoms) ++per_norm[g_norm(u, GroupElement::from_index(c6, 1)).to_string()];
  EXPECT_EQ(per_norm, (std::map<std::string, std::size_t>{{"1", 7}, {"2", 2}, {"3", 1}, {"4", 1}, {"5", 1}}));
}

TEST(AtomTables, CyclicFiveTable) {
  Group c5 = Group::parse("C5");
  auto a = enumerate_atoms(c5, std::vector<ElementIndex>{1, 2, 4});
  EXPECT_EQ(a.atoms.size(), 8u);
  EXPECT_EQ(texts(a), parse_all(c5, {"[1]^5", "[1]^3 [2]", "[1] [2]^2", "[1] [4]", "[2]^5", "[2]^3 [4]", "[2] [4]^2",
                                     "[4]^5"}));
}

TEST(Atoms, CanonicalOrder) {
  auto a = enumerate_atoms(c6, std::vector<ElementIndex>{1, 2, 5});
  for (std::size_t i = 1; i < a.atoms.size(); ++i) EXPECT_LE(a.atoms[i - 1].length(), a.atoms[i].length());
  EXPECT_EQ(a.min_len, 2u);
  EXPECT_EQ(a.davenport, 6u);
}

TEST(Atoms, ZeroIsAnAtom) {
  auto a = enumerate_atoms(c6, std::vector<ElementIndex>{0, 3});
  EXPECT_EQ(texts(a), parse_all(c6, {"[0]", "[3]^2"}));
}

TEST(Atoms, Davenport) {
  EXPECT_EQ(davenport(Group::parse("C5")), 5u);
  EXPECT_EQ(davenport(Group::parse("C6")), 6u);
  EXPECT_EQ(davenport(Group::parse("C2^2")), 3u);
  EXPECT_EQ(davenport(Group::parse("C2^3")), 4u);
  EXPECT_EQ(davenport(Group::parse("C3^2")), 5u);
}

TEST(Atoms, DavenportMatchesBruteForce) {
  for (auto d : {"C2^2", "C2^3", "C3^2", "C4", "C2xC4"}) {
    Group g = Group::parse(d);
    EXPECT_EQ(davenport(g), brute_davenport(g)) << d;
  }
}

TEST(Atoms, LengthCapIsAGuard) {
  AtomOptions o;
  o.max_length = 3;
  EXPECT_THROW(enumerate_atoms(c6, std::vector<ElementIndex>{1, 5}, o), BudgetExceeded);
  o.node_limit = 5;
  o.max_length.reset();
  EXPECT_THROW(enumerate_atoms(Group::parse("C3^2"), all_elements(Group::parse("C3^2")), o), BudgetExceeded);
}

TEST(AtomsProperty, MatchesBruteForceOnRandomSupports) {
  std::mt19937_64 rng(0);
  for (auto d : {"C5", "C6", "C7", "C2xC4", "C3^2", "C2^3", "C8"}) {
    Group g = Group::parse(d);
    for (int i = 0; i < 6; ++i) {
      std::vector<ElementIndex> support;
      for (ElementIndex e = 1; e < g.order(); ++e) {
        if (rng() % 2) support.push_back(e);
      }
      if (support.size() > 5) support.resize(5);
      auto a = enumerate_atoms(g, support);
      EXPECT_EQ(texts(a), brute_atoms(g, support, g.order())) << d;
    }
  }
}

TEST(AtomsProperty, CountInvariantUnderStabilizingAutomorphisms) {
  Group g = Group::parse("C2xC4");
  std::vector<ElementIndex> support{1, 3, 4, 5};
  auto base = enumerate_atoms(g, support).atoms.size();
  for (const auto& phi : enumerate_automorphisms(g)) {
    std::vector<ElementIndex> image;
    for (auto e : support) image.push_back(phi[e]);
    EXPECT_EQ(enumerate_atoms(g, image).atoms.size(), base);
  }
}

class AtomCacheTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root = std::filesystem::temp_directory_path() / ("zslen-cache-test-" + std::to_string(::getpid()));
    std::filesystem::remove_all(root);
  }
  void TearDown() override { std::filesystem::remove_all(root); }
  std::filesystem::path root;
};

TEST_F(AtomCacheTest, RoundTrip) {
  std::vector<ElementIndex> support{1, 2, 5};
  auto a = enumerate_atoms(c6, support);
  cache_store(root, a);
  auto b = cache_load(root, c6, support);
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(*b, a);
  EXPECT_EQ(b->atoms.size(), 7u);
}

TEST_F(AtomCacheTest, MissingKeyIsNotAnError) { EXPECT_FALSE(cache_load(root, c6, {1, 5}).has_value()); }

TEST_F(AtomCacheTest, StaleVersionAndCorruption) {
  std::vector<ElementIndex> support{1, 5};
  cache_store(root, enumerate_atoms(c6, support));
  auto path = cache_file(root, c6, normalize_support(c6, support));
  std::string text;
  {
    std::ifstream in(path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  auto write = [&](const std::string& s) { std::ofstream(path, std::ios::trunc) << s; };

  std::string flipped = text;
  flipped.replace(flipped.find("[1]^1"), 5, "[2]^1");
  write(flipped);
  EXPECT_THROW(cache_load(root, c6, support), CacheError);

  std::string stale = text;
  stale.replace(stale.find(" v1 "), 4, " v0 ");
  write(stale);
  EXPECT_THROW(cache_load(root, c6, support), CacheError);

  write(text.substr(0, text.size() / 2));
  EXPECT_THROW(cache_load(root, c6, support), CacheError);

  write(text);
  EXPECT_TRUE(cache_load(root, c6, support).has_value());
}

TEST_F(AtomCacheTest, CachedAtomsStoresThenReuses) {
  std::vector<ElementIndex> support{1, 2, 4, 5};
  auto a = cached_atoms(root, c6, support);
  EXPECT_TRUE(std::filesystem::exists(cache_file(root, c6, normalize_support(c6, support))));
  EXPECT_EQ(cached_atoms(root, c6, support), a);
  EXPECT_EQ(cached_atoms(std::nullopt, c6, support), a);
}
