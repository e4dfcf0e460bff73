// One PASS/FAIL line per acceptance criterion. Exit status 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "zslen/zslen.hpp"

using namespace zslen;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int number, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= limit_seconds) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(limit_seconds)) + " s limit)";
  }
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %-34s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", number, name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

// Collects failing suite cases into a short detail string.
Outcome from_suite(const SuiteReport& r) {
  Outcome o{r.pass, ""};
  std::size_t bad = 0;
  for (const auto& c : r.cases) {
    if (c.pass) continue;
    if (++bad <= 3) o.detail += "[" + c.id + ": expected " + c.expected + ", got " + c.computed + "] ";
  }
  o.detail = r.suite + ": " + std::to_string(r.cases.size() - bad) + "/" + std::to_string(r.cases.size()) +
             " cases" + (r.complete ? "" : ", incomplete") + (o.detail.empty() ? "" : " " + o.detail);
  return o;
}

Outcome all_of(std::initializer_list<Outcome> parts) {
  Outcome o{true, ""};
  for (const auto& p : parts) {
    o.pass = o.pass && p.pass;
    o.detail += (o.detail.empty() ? "" : "; ") + p.detail;
  }
  return o;
}

Outcome expect(bool ok, const std::string& what, const std::string& got) {
  return {ok, what + (ok ? " ok" : " got " + got)};
}

bool same_atoms(const Group& g, std::vector<ElementIndex> support, std::initializer_list<const char*> table) {
  std::set<std::string> want, got;
  for (auto t : table) want.insert(Sequence::parse(g, t).to_string());
  for (const auto& u : enumerate_atoms(g, support).atoms) got.insert(u.to_string());
  return want == got;
}

// Longest minimal zero-sum sequence by scanning every multiplicity vector.
std::uint64_t brute_davenport(const Group& g) {
  std::uint64_t best = 0;
  std::vector<Multiplicity> m(g.order(), 0);
  auto rec = [&](auto&& self, ElementIndex e, std::uint64_t len) -> void {
    if (e == g.order()) {
      if (len <= best) return;
      Sequence s(g);
      for (ElementIndex i = 1; i < g.order(); ++i) {
        if (m[i]) s.add(i, m[i]);
      }
      if (is_minimal_zero_sum(s, g.order() + 1)) best = len;
      return;
    }
    for (Multiplicity v = 0; len + v <= g.order(); ++v) {
      m[e] = v;
      self(self, e + 1, len + v);
    }
    m[e] = 0;
  };
  rec(rec, 1, 0);
  return best;
}

}  // namespace

int main() {
  std::printf("zslen acceptance suite\n");

  criterion(1, "atom tables", 1, [] {
    Group c6({6}), c5({5});
    bool w1 = same_atoms(c6, {1, 2, 3, 5},
                         {"[1]^6", "[1]^4 [2]", "[1]^3 [3]", "[1]^2 [2]^2", "[1] [2] [3]", "[1] [5]", "[2]^3",
                          "[3]^2", "[2]^2 [3] [5]", "[2] [5]^2", "[3] [5]^3", "[5]^6"});
    bool w2a = same_atoms(c6, {1, 3, 4}, {"[1]^6", "[1]^3 [3]", "[1]^2 [4]", "[3]^2", "[4]^2 [3] [1]", "[4]^3"});
    bool w2 = same_atoms(c6, {1, 2, 3, 4},
                         {"[1]^6", "[1]^4 [2]", "[1]^3 [3]", "[1]^2 [2]^2", "[1]^2 [4]", "[1] [2] [3]", "[2] [4]",
                          "[2]^3", "[3]^2", "[4]^2 [3] [1]", "[4]^3"});
    bool w3 = same_atoms(c6, {1, 2, 5}, {"[1]^6", "[1]^4 [2]", "[1]^2 [2]^2", "[5] [1]", "[2]^3", "[2] [5]^2", "[5]^6"});
    bool w4 = same_atoms(c6, {1, 2, 4, 5},
                         {"[1]^6", "[1]^4 [2]", "[1]^2 [2]^2", "[2]^3", "[2] [4]", "[4] [1]^2", "[1] [5]", "[4]^3",
                          "[2] [5]^2", "[4]^2 [5]^2", "[5]^4 [4]", "[5]^6"});
    // Graded list: the only atom of g-norm 5 is (-g)^6.
    bool graded = true;
    for (const auto& u : enumerate_atoms(c6, std::vector<ElementIndex>{1, 2, 4, 5}).atoms) {
      bool top = g_norm(u, GroupElement::from_index(c6, 1)).to_string() == "5";
      graded = graded && top == (u == Sequence::parse(c6, "[5]^6"));
    }
    bool p34 = same_atoms(c5, {1, 2, 4},
                          {"[1]^5", "[1]^3 [2]", "[1] [2]^2", "[1] [4]", "[2]^5", "[2]^3 [4]", "[2] [4]^2", "[4]^5"});
    bool ok = w1 && w2a && w2 && w3 && w4 && graded && p34;
    return Outcome{ok, std::string("wichtig-1/2A/2/3/4 ") + (w1 && w2a && w2 && w3 && w4 ? "match" : "differ") +
                           ", norm-5 row " + (graded ? "ok" : "wrong") + ", C5 table " + (p34 ? "match" : "differs")};
  });

  criterion(2, "Davenport constants", 5, [] {
    std::string got;
    bool ok = true;
    for (auto [d, want] : std::vector<std::pair<const char*, std::uint64_t>>{
             {"C5", 5}, {"C6", 6}, {"C2^2", 3}, {"C2^3", 4}, {"C3^2", 5}}) {
      Group g = Group::parse(d);
      std::uint64_t v = davenport(g);
      bool cross = true;
      if (g.num_factors() > 1 && g.order() > 4) cross = brute_davenport(g) == v;
      ok = ok && v == want && cross;
      got += std::string(d) + "=" + std::to_string(v) + (cross ? "" : " (brute force disagrees)") + " ";
    }
    return Outcome{ok, got};
  });

  criterion(3, "closed form for g^a (-g)^b", 30, [] { return from_suite(verify_suite("basic")); });

  criterion(4, "small systems vs membership oracle", 120, [] {
    Outcome o{true, ""};
    for (auto d : {"C3", "C4", "C2^3", "C3^2"}) {
      auto r = from_suite(verify_suite(std::string("prop3.1-") + d));
      o.pass = o.pass && r.pass;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string(d) + " " + r.detail.substr(r.detail.find(' ') + 1);
    }
    o.detail += "; reverse inclusion over oracle sets with D(G) min L <= 12";
    return o;
  });

  criterion(5, "proof-step sets", 120, [] { return from_suite(verify_suite("proof-sets")); });

  criterion(6, "family closed forms", 600, [] {
    SuiteOptions one;
    one.k = 1;
    return all_of({from_suite(verify_suite("prop3.5")), from_suite(verify_suite("prop3.6.1")),
                   from_suite(verify_suite("prop3.6.2")), from_suite(verify_suite("prop3.7.2", one)),
                   from_suite(verify_suite("prop3.7.1", one))});
  });

  criterion(7, "AAP but not AP (n=7, k=6)", 900, [] { return from_suite(verify_suite("prop3.2")); });

  criterion(8, "C6 and C5 form coverage, |A|<=14", 1200, [] {
    SuiteOptions o;
    o.bound = 14;
    return all_of({from_suite(verify_suite("prop3.3", o)), from_suite(verify_suite("prop3.4", o))});
  });

  criterion(9, "invariant suites (seed 0)", 600, [] {
    SuiteOptions o;
    o.seed = 0;
    o.samples = 10'000;
    return all_of({from_suite(verify_suite("invariants", o)), from_suite(verify_suite("wichtig-0"))});
  });

  criterion(10, "Delta* and rho_k", 900, [] {
    LengthSet c5 = delta_star_bounded(Group({5}), 10).values;
    Outcome direct = expect(c5 == LengthSet{1, 3}, "Delta*(C5)={1,3}", c5.to_string());
    bool rho_ok = true;
    std::string rho_got;
    for (std::uint64_t n = 4; n <= 7; ++n) {
      auto v = rho_k(Group({n}), 3).value;
      rho_ok = rho_ok && v == n + 1;
      rho_got += "C" + std::to_string(n) + ":" + std::to_string(v) + " ";
    }
    return all_of({direct, expect(rho_ok, "rho3(C_n)=n+1 for n in [4,7]", rho_got),
                   from_suite(verify_suite("prop2.3")), from_suite(verify_suite("prop2.4"))});
  });

  criterion(11, "system comparisons", 900, [] {
    auto same = compare_systems(Group::parse("C3"), Group::parse("C2^2"), 12);
    Outcome first = expect(same.equal, "C3 vs C2^2 equal at 12", "differences");
    auto diff = compare_systems(Group::parse("C3^3"), Group::parse("C4^2"), 10);
    bool three = diff.max_delta_witness && delta_of_set(*diff.max_delta_witness).contains(3) &&
                 std::min(diff.first_max_delta, diff.second_max_delta) < 3;
    std::string got = diff.max_delta_witness ? diff.max_delta_witness->to_string() : "none";
    Outcome second = expect(!diff.equal && three, "C3^3 vs C4^2 at 10 separated by a set with distance 3",
                            got + " max delta " + std::to_string(diff.first_max_delta) + " vs " +
                                std::to_string(diff.second_max_delta));
    if (second.pass) {
      second.detail += " (" + got + " only in " +
                       (diff.first_max_delta > diff.second_max_delta ? diff.first_group : diff.second_group).descriptor() +
                       ", smallest difference " + diff.distinguishing->to_string() + ")";
    }
    return all_of({first, second});
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
