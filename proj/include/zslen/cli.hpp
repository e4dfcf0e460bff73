#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zslen/atom_cache.hpp"
#include "zslen/atoms.hpp"
#include "zslen/catalog.hpp"
#include "zslen/error.hpp"
#include "zslen/group.hpp"
#include "zslen/length_set.hpp"
#include "zslen/lengths.hpp"
#include "zslen/parallel.hpp"
#include "zslen/report.hpp"
#include "zslen/sequence.hpp"
#include "zslen/structure.hpp"
#include "zslen/sweeps.hpp"

namespace zslen::cli {

enum ExitCode : int { kOk = 0, kSuiteFailure = 1, kUsage = 2, kBudget = 3, kDefect = 4 };

inline constexpr const char* kGrammar = R"(Descriptors:
  group     C<n>[^<r>] joined by 'x', case-insensitive: C6, C2xC4, C3^3, C2^2xC4
  element   bracketed coordinates, one per cyclic factor: [1] in C6, [1,0] in C2xC4
  sequence  elements with optional multiplicity, space separated: "[1]^6 [5]^6";
            a bare element has multiplicity 1 and "1" is the empty sequence
  set       integers in braces or separated by ',' or ';': "{2,3,5}", "2,3,5"

Output: --format plain (default, human-oriented), json (one document, stable key
order) or csv (one row per record, sets written as "3;4;6").

Exit codes: 0 success, 1 suite failure, 2 usage error, 3 budget exhausted,
4 internal defect.

Environment: ZSLEN_CACHE_DIR atom cache root, ZSLEN_THREADS worker count.)";

struct RunConfig {
  std::string format = "plain";
  std::uint64_t budget_nodes = SearchBudget{}.node_limit;
  std::uint64_t memo_bytes = SearchBudget{}.memo_bytes;
  double time_limit = 0;  // seconds, 0 = none
  unsigned threads = 0;   // 0 = ZSLEN_THREADS or hardware
  bool cache = true;
  std::string cache_dir;
  std::uint64_t seed = 0;

  std::string group;
  std::string second_group;
  std::string sequence;
  std::string set;
  std::string suite;
  std::optional<std::uint64_t> bound;
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> samples;
  std::uint64_t limit = 1000;
  std::string allowed;
  std::string suite_group;

  SearchBudget budget() const {
    SearchBudget b;
    b.node_limit = budget_nodes;
    b.memo_bytes = memo_bytes;
    if (time_limit > 0) {
      b.deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(time_limit));
    }
    return b;
  }
  unsigned thread_count() const { return threads > 0 ? threads : default_thread_count(); }
  std::optional<std::filesystem::path> cache_root() const {
    if (!cache) return std::nullopt;
    if (!cache_dir.empty()) return std::filesystem::path(cache_dir);
    return cache_root_from_env();
  }
  SweepOptions sweep() const {
    SweepOptions o;
    o.budget = budget();
    o.threads = thread_count();
    o.atom_options.threads = o.threads;
    return o;
  }
};

inline LengthSet parse_set(std::string_view text) {
  LengthSet out;
  std::string s;
  for (char c : text) {
    if (c == '{' || c == '}' || std::isspace(static_cast<unsigned char>(c))) continue;
    s.push_back(c == ';' ? ',' : c);
  }
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
    if (ec != std::errc() || ptr == s.data() + pos) throw InvalidArgument("bad set '" + std::string(text) + "'");
    out.insert(v);
    pos = static_cast<std::size_t>(ptr - s.data());
    if (pos < s.size()) {
      if (s[pos] != ',') throw InvalidArgument("bad set '" + std::string(text) + "'");
      ++pos;
    }
  }
  return out;
}

namespace detail {

using report::Json;

inline void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

inline std::uint64_t default_bound(const Group& g, const RunConfig& cfg) {
  if (cfg.bound) return *cfg.bound;
  return 2 * davenport(g, cfg.sweep().atom_options);
}

inline int cmd_atoms(const RunConfig& cfg, std::ostream& out) {
  Group g = Group::parse(cfg.group);
  std::vector<ElementIndex> support =
      cfg.sequence.empty() ? all_elements(g, true) : Sequence::parse(g, cfg.sequence).support_indices();
  AtomSet a = cached_atoms(cfg.cache_root(), g, support, cfg.sweep().atom_options);
  if (cfg.format == "json") {
    emit_json(out, report::atoms_json(a));
  } else if (cfg.format == "csv") {
    out << report::csv_row({"index", "atom", "length"});
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
      out << report::csv_row({std::to_string(i), a.atoms[i].to_string(), std::to_string(a.atoms[i].length())});
    }
  } else {
    for (const auto& u : a.atoms) out << u.to_string() << "\n";
    out << a.atoms.size() << " atoms, max length " << a.davenport << "\n";
  }
  return kOk;
}

inline int cmd_davenport(const RunConfig& cfg, std::ostream& out) {
  Group g = Group::parse(cfg.group);
  std::uint64_t d = g.order() == 1 ? 1 : cached_atoms(cfg.cache_root(), g, all_elements(g, false), cfg.sweep().atom_options).davenport;
  if (cfg.format == "json") {
    emit_json(out, Json{{"group", g.descriptor()}, {"davenport", d}});
  } else if (cfg.format == "csv") {
    out << report::csv_row({"group", "davenport"}) << report::csv_row({g.descriptor(), std::to_string(d)});
  } else {
    out << d << "\n";
  }
  return kOk;
}

inline LengthEngine engine_for(const Sequence& a, const RunConfig& cfg) {
  return LengthEngine(cached_atoms(cfg.cache_root(), a.group(), a.support_indices(), cfg.sweep().atom_options),
                      cfg.budget());
}

inline int cmd_lengths(const RunConfig& cfg, std::ostream& out) {
  Group g = Group::parse(cfg.group);
  Sequence a = Sequence::parse(g, cfg.sequence);
  SearchBudget b = cfg.budget();
  LengthEngine eng = engine_for(a, cfg);
  LengthSet l = eng.set_of_lengths(a);
  if (cfg.format == "json") {
    emit_json(out, report::lengths_json(a, l, b, eng.nodes_used()));
  } else if (cfg.format == "csv") {
    out << report::csv_row({"input", "length_set", "min", "max", "delta", "elasticity"});
    out << report::csv_row({a.to_string(), report::set_csv(l), std::to_string(l.min()), std::to_string(l.max()),
                            report::set_csv(delta_of_set(l)), elasticity_of_set(l).to_string()});
  } else {
    out << l.to_string() << "\n";
  }
  return kOk;
}

inline int cmd_factorizations(const RunConfig& cfg, std::ostream& out) {
  Group g = Group::parse(cfg.group);
  Sequence a = Sequence::parse(g, cfg.sequence);
  LengthEngine eng = engine_for(a, cfg);
  FactorizationList z = eng.factorizations(a, cfg.limit);
  if (z.truncated) throw BudgetExceeded("more than " + std::to_string(cfg.limit) + " factorizations", z.items.size());
  if (cfg.format == "json") {
    emit_json(out, report::factorizations_json(a, eng, z));
  } else {
    if (cfg.format == "csv") out << report::csv_row({"index", "length", "atoms"});
    for (std::size_t i = 0; i < z.items.size(); ++i) {
      std::string atoms;
      for (auto p : z.items[i].parts) atoms += (atoms.empty() ? "" : " * ") + eng.atoms().atoms[p].to_string();
      if (cfg.format == "csv") {
        out << report::csv_row({std::to_string(i), std::to_string(z.items[i].length()), atoms});
      } else {
        out << z.items[i].length() << ": " << atoms << "\n";
      }
    }
  }
  return kOk;
}

inline int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  LengthSet l = parse_set(cfg.set);
  if (l.empty()) throw InvalidArgument("cannot classify the empty set");
  LengthSet allowed;
  std::uint64_t bound = 0;
  std::string source;
  if (!cfg.allowed.empty()) {
    allowed = parse_set(cfg.allowed);
    source = "given";
  } else if (!cfg.group.empty()) {
    Group g = Group::parse(cfg.group);
    bound = default_bound(g, cfg);
    allowed = delta_star_bounded(g, bound, cfg.sweep()).values;
    source = "delta-star " + g.descriptor();
    if (allowed.empty()) throw InvalidArgument("delta-star of " + g.descriptor() + " is empty; pass --allowed");
  } else {
    throw InvalidArgument("classify needs --allowed or --group");
  }
  ProgressionForm f = classify(l, allowed);
  if (cfg.format == "json") {
    Json j{{"input", report::set_json(l)}, {"allowed_source", source}};
    if (bound) j["bound"] = bound;
    j["form"] = report::form_json(f);
    emit_json(out, j);
  } else if (cfg.format == "csv") {
    out << report::csv_row({"set", "variant", "d", "offsets", "length", "bound", "allowed"});
    std::string offs;
    for (auto o : f.period.offsets) offs += (offs.empty() ? "" : ";") + std::to_string(o);
    bool trivial = f.variant == Variant::Singleton;
    out << report::csv_row({report::set_csv(l), variant_name(f.variant), trivial ? "" : std::to_string(f.d),
                            trivial ? "" : offs, trivial ? "" : std::to_string(f.length), std::to_string(f.bound),
                            report::set_csv(allowed)});
  } else {
    out << ::zslen::detail::form_string(f) << "  (allowed " << allowed.to_string() << ")\n";
  }
  return kOk;
}

inline int cmd_rho(const RunConfig& cfg, std::ostream& out) {
  Group g = Group::parse(cfg.group);
  std::uint64_t k = cfg.k.value_or(2);
  RhoReport r = rho_k(g, k, cfg.sweep());
  std::string wit = r.witness ? r.witness->to_string() : "";
  if (cfg.format == "json") {
    emit_json(out, Json{{"group", g.descriptor()}, {"k", k}, {"rho", r.value}, {"witness", wit},
                        {"candidates", r.candidates}});
  } else if (cfg.format == "csv") {
    out << report::csv_row({"group", "k", "rho", "witness"})
        << report::csv_row({g.descriptor(), std::to_string(k), std::to_string(r.value), wit});
  } else {
    out << r.value << "\n";
  }
  return kOk;
}

inline int cmd_delta(const RunConfig& cfg, std::ostream& out, bool star) {
  Group g = Group::parse(cfg.group);
  std::uint64_t bound = default_bound(g, cfg);
  LengthSet values;
  std::uint64_t sequences = 0;
  if (star) {
    auto r = delta_star_bounded(g, bound, cfg.sweep());
    values = r.values;
    sequences = r.sequences;
  } else {
    auto r = delta_G_bounded(g, bound, cfg.sweep());
    values = r.distances;
    sequences = r.sequences;
  }
  if (cfg.format == "json") {
    emit_json(out, Json{{"group", g.descriptor()}, {"bound", bound}, {star ? "delta_star" : "delta", report::set_json(values)},
                        {"sequences", sequences}});
  } else if (cfg.format == "csv") {
    out << report::csv_row({"group", "bound", "values"})
        << report::csv_row({g.descriptor(), std::to_string(bound), report::set_csv(values)});
  } else {
    out << values.to_string() << "  (|A| <= " << bound << ")\n";
  }
  return kOk;
}

inline int cmd_system(const RunConfig& cfg, std::ostream& out) {
  Group g = Group::parse(cfg.group);
  std::uint64_t bound = cfg.bound.value_or(12);
  SystemReport s = system_enumerate(g, bound, cfg.sweep());
  if (cfg.format == "json") {
    emit_json(out, report::system_json(s));
  } else if (cfg.format == "csv") {
    out << report::csv_row({"group", "bound", "length_set"});
    for (const auto& l : s.sets) out << report::csv_row({g.descriptor(), std::to_string(bound), report::set_csv(l)});
  } else {
    for (const auto& l : s.sets) out << l.to_string() << "\n";
    out << s.sets.size() << " sets, |A| <= " << bound << "\n";
  }
  return kOk;
}

inline int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  Group a = Group::parse(cfg.group), b = Group::parse(cfg.second_group);
  std::uint64_t bound = cfg.bound.value_or(12);
  CompareReport c = compare_systems(a, b, bound, cfg.sweep());
  if (cfg.format == "json") {
    emit_json(out, report::compare_json(c));
    return kOk;
  }
  std::string dist = c.distinguishing ? c.distinguishing->to_string() : "";
  std::string side = c.side == 1 ? a.descriptor() : c.side == 2 ? b.descriptor() : "";
  std::string wit = c.max_delta_witness ? c.max_delta_witness->to_string() : "";
  if (cfg.format == "csv") {
    out << report::csv_row({"first", "second", "bound", "equal", "distinguishing", "side", "first_max_delta",
                            "second_max_delta", "max_delta_witness"});
    out << report::csv_row({a.descriptor(), b.descriptor(), std::to_string(bound), c.equal ? "true" : "false",
                            dist, side, std::to_string(c.first_max_delta), std::to_string(c.second_max_delta), wit});
  } else {
    out << (c.equal ? "equal" : "different") << " up to |A| <= " << bound << " (" << c.first_size << " vs "
        << c.second_size << " sets)\n";
    if (c.distinguishing) out << "first distinguishing set " << dist << " only in " << side << "\n";
    out << "max distance " << c.first_max_delta << " vs " << c.second_max_delta << "\n";
    if (c.max_delta_witness) out << "attained by " << wit << "\n";
  }
  return kOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  SuiteOptions o;
  o.n = cfg.n;
  o.k = cfg.k;
  o.bound = cfg.bound;
  if (!cfg.suite_group.empty()) o.group = cfg.suite_group;
  o.seed = cfg.seed;
  if (cfg.samples) o.samples = *cfg.samples;
  o.sweep = cfg.sweep();
  SuiteReport r = verify_suite(cfg.suite, o);
  if (cfg.format == "json") {
    emit_json(out, report::suite_json(r, o.sweep.budget));
  } else if (cfg.format == "csv") {
    out << report::suite_csv(r);
  } else {
    for (const auto& c : r.cases) {
      out << (c.pass ? "ok   " : "FAIL ") << c.id << ": " << c.computed;
      if (!c.pass) out << " (expected " << c.expected << ")";
      out << "\n";
    }
    out << r.suite << ": " << (r.pass ? "PASS" : r.complete ? "FAIL" : "INCOMPLETE") << " (" << r.cases.size()
        << " cases)\n";
  }
  if (!r.complete) return kBudget;
  return r.pass ? kOk : kSuiteFailure;
}

}  // namespace detail

// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact sets of lengths over finite abelian groups", "zslen"};
  app.footer(kGrammar);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "plain | json | csv")->check(CLI::IsMember({"plain", "json", "csv"}));
  app.add_option("--budget-nodes", cfg.budget_nodes, "search nodes per length query")->capture_default_str();
  app.add_option("--memo-bytes", cfg.memo_bytes, "memo table memory limit")->capture_default_str();
  app.add_option("--time-limit", cfg.time_limit, "wall-clock limit in seconds (0 = none)");
  app.add_option("--threads", cfg.threads, "worker threads (default ZSLEN_THREADS or all cores)");
  app.add_flag("--cache,!--no-cache", cfg.cache, "use the atom cache under ZSLEN_CACHE_DIR (default on)");
  app.add_option("--cache-dir", cfg.cache_dir, "atom cache root, overrides ZSLEN_CACHE_DIR");
  app.add_option("--seed", cfg.seed, "seed for randomized suites")->capture_default_str();

  auto group_arg = [&](CLI::App* s) { s->add_option("group", cfg.group, "group descriptor")->required(); };
  auto bound_opt = [&](CLI::App* s, const std::string& what) { s->add_option("--bound", cfg.bound, what); };

  auto* atoms = app.add_subcommand("atoms", "list the atoms over a support (default: all of G)");
  group_arg(atoms);
  atoms->add_option("support", cfg.sequence, "sequence whose support is used");

  auto* dav = app.add_subcommand("davenport", "Davenport constant");
  group_arg(dav);

  auto* lengths = app.add_subcommand("lengths", "set of lengths of a zero-sum sequence");
  group_arg(lengths);
  lengths->add_option("sequence", cfg.sequence, "zero-sum sequence")->required();

  auto* facts = app.add_subcommand("factorizations", "all factorizations of a zero-sum sequence");
  group_arg(facts);
  facts->add_option("sequence", cfg.sequence, "zero-sum sequence")->required();
  facts->add_option("--limit", cfg.limit, "maximum number listed; more exhausts the budget")->capture_default_str();

  auto* cls = app.add_subcommand("classify", "AP / AMP / AAP / AAMP verdict for a finite set");
  cls->add_option("set", cfg.set, "finite set of nonnegative integers")->required();
  cls->add_option("--allowed", cfg.allowed, "allowed differences");
  cls->add_option("--group", cfg.group, "take the allowed differences from delta-star of this group");
  bound_opt(cls, "sequence length bound for delta-star (default 2 D(G))");

  auto* rho = app.add_subcommand("rho", "k-th elasticity rho_k");
  group_arg(rho);
  rho->add_option("--k", cfg.k, "k (default 2)");

  auto* delta = app.add_subcommand("delta", "union of distance sets over |A| <= bound");
  group_arg(delta);
  bound_opt(delta, "sequence length bound (default 2 D(G))");

  auto* dstar = app.add_subcommand("delta-star", "minimal distances over subsets, bounded");
  group_arg(dstar);
  bound_opt(dstar, "sequence length bound (default 2 D(G))");

  auto* sys = app.add_subcommand("system", "all sets of lengths with |A| <= bound");
  group_arg(sys);
  bound_opt(sys, "sequence length bound (default 12)");

  auto* cmp = app.add_subcommand("compare", "compare two bounded systems");
  group_arg(cmp);
  cmp->add_option("second", cfg.second_group, "second group descriptor")->required();
  bound_opt(cmp, "sequence length bound (default 12)");

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::string suites;
  for (const auto& s : suite_ids()) suites += (suites.empty() ? "" : ", ") + s;
  ver->add_option("suite", cfg.suite, "one of: " + suites + "; prop3.1-<group> is shorthand")->required();
  ver->add_option("--k", cfg.k, "family parameter k");
  ver->add_option("--n", cfg.n, "family parameter n, or the group order limit");
  bound_opt(ver, "sequence length or multiplicity bound");
  ver->add_option("--group", cfg.suite_group, "group for prop3.1");
  ver->add_option("--samples", cfg.samples, "cases per randomized property");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "zslen: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (atoms->parsed()) return detail::cmd_atoms(cfg, out);
    if (dav->parsed()) return detail::cmd_davenport(cfg, out);
    if (lengths->parsed()) return detail::cmd_lengths(cfg, out);
    if (facts->parsed()) return detail::cmd_factorizations(cfg, out);
    if (cls->parsed()) return detail::cmd_classify(cfg, out);
    if (rho->parsed()) return detail::cmd_rho(cfg, out);
    if (delta->parsed()) return detail::cmd_delta(cfg, out, false);
    if (dstar->parsed()) return detail::cmd_delta(cfg, out, true);
    if (sys->parsed()) return detail::cmd_system(cfg, out);
    if (cmp->parsed()) return detail::cmd_compare(cfg, out);
    if (ver->parsed()) return detail::cmd_verify(cfg, out);
  } catch (const BudgetExceeded& e) {
    err << "zslen: budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const InvalidArgument& e) {
    err << "zslen: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "zslen: " << e.what() << "\n";
    return kSuiteFailure;
  } catch (const DefectError& e) {
    err << "zslen: internal defect: " << e.what() << "\n";
    return kDefect;
  }
  err << "zslen: no command\n";
  return kUsage;
}

}  // namespace zslen::cli
