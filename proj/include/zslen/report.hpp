#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "zslen/atoms.hpp"
#include "zslen/catalog.hpp"
#include "zslen/length_set.hpp"
#include "zslen/lengths.hpp"
#include "zslen/sequence.hpp"
#include "zslen/structure.hpp"
#include "zslen/sweeps.hpp"

namespace zslen::report {

using Json = nlohmann::ordered_json;

inline Json set_json(const LengthSet& l) {
  Json a = Json::array();
  for (auto v : l.values()) a.push_back(v);
  return a;
}

// CSV cells hold sets as "3;4;6".
inline std::string set_csv(const LengthSet& l) {
  std::string s;
  for (auto v : l.values()) s += (s.empty() ? "" : ";") + std::to_string(v);
  return s;
}

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_cell(cells[i]);
  return out + "\n";
}

inline Json budget_json(const SearchBudget& b, std::uint64_t used) {
  return Json{{"nodes_used", used}, {"node_limit", b.node_limit}, {"memo_bytes", b.memo_bytes}};
}

inline Json atoms_json(const AtomSet& a) {
  Json list = Json::array();
  for (const auto& u : a.atoms) list.push_back(u.to_string());
  Json support = Json::array();
  for (auto e : a.support) support.push_back(a.group.format_element(e));
  return Json{{"group", a.group.descriptor()}, {"support", support},   {"count", a.atoms.size()},
              {"davenport", a.davenport},      {"min_length", a.min_len}, {"atoms", list}};
}

inline Json lengths_json(const Sequence& input, const LengthSet& l, const SearchBudget& b, std::uint64_t used) {
  Json j{{"input", input.to_string()}, {"group", input.group().descriptor()}, {"length_set", set_json(l)}};
  j["min"] = l.min();
  j["max"] = l.max();
  j["delta"] = set_json(delta_of_set(l));
  j["elasticity"] = elasticity_of_set(l).to_string();
  j["budget_used"] = budget_json(b, used);
  return j;
}

inline Json factorizations_json(const Sequence& input, const LengthEngine& eng, const FactorizationList& z) {
  Json items = Json::array();
  for (const auto& f : z.items) {
    Json parts = Json::array();
    for (auto i : f.parts) parts.push_back(eng.atoms().atoms[i].to_string());
    items.push_back(Json{{"length", f.length()}, {"atoms", parts}});
  }
  return Json{{"input", input.to_string()},
              {"count", z.items.size()},
              {"truncated", z.truncated},
              {"factorizations", items}};
}

inline Json form_json(const ProgressionForm& f) {
  Json j{{"variant", variant_name(f.variant)}};
  if (f.variant != Variant::Singleton) {
    j["d"] = f.d;
    j["offsets"] = f.period.offsets;
    j["length"] = f.length;
  }
  if (f.variant == Variant::AAP || f.variant == Variant::AAMP) j["bound"] = f.bound;
  if (f.witness) {
    const auto& w = *f.witness;
    j["witness"] = Json{{"y", w.y},         {"lower", w.lower},   {"core", w.core},
                        {"upper", w.upper}, {"bound", w.bound}, {"length", w.length}};
  } else {
    j["witness"] = nullptr;
  }
  j["allowed"] = set_json(f.allowed);
  return j;
}

inline Json suite_json(const SuiteReport& r, const SearchBudget& b) {
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  Json cases = Json::array();
  for (const auto& c : r.cases) {
    cases.push_back(Json{{"id", c.id}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
  }
  Json budget{{"complete", r.complete},
              {"nodes", r.nodes},
              {"sequences", r.sequences},
              {"node_limit", b.node_limit},
              {"memo_bytes", b.memo_bytes}};
  return Json{{"suite", r.suite}, {"params", params}, {"cases", cases}, {"pass", r.pass}, {"budget", budget}};
}

inline std::string suite_csv(const SuiteReport& r) {
  std::string out = csv_row({"suite", "id", "expected", "computed", "pass"});
  for (const auto& c : r.cases) out += csv_row({r.suite, c.id, c.expected, c.computed, c.pass ? "true" : "false"});
  return out;
}

// A system of sets as a bare array; the empty system is "[]".
inline Json sets_json(const std::set<LengthSet>& system) {
  Json sets = Json::array();
  for (const auto& l : system) sets.push_back(set_json(l));
  return sets;
}

inline Json system_json(const SystemReport& s) {
  Json sets = sets_json(s.sets);
  return Json{{"group", s.group.descriptor()}, {"bound", s.bound}, {"sequences", s.sequences}, {"count", s.sets.size()},
              {"sets", sets}};
}

inline Json compare_json(const CompareReport& c) {
  Json j{{"first", c.first_group.descriptor()},
         {"second", c.second_group.descriptor()},
         {"bound", c.bound},
         {"equal", c.equal},
         {"first_count", c.first_size},
         {"second_count", c.second_size},
         {"only_first", c.only_first},
         {"only_second", c.only_second}};
  j["distinguishing"] = c.distinguishing ? set_json(*c.distinguishing) : Json(nullptr);
  j["distinguishing_side"] = c.side == 1 ? Json(c.first_group.descriptor())
                             : c.side == 2 ? Json(c.second_group.descriptor())
                                           : Json(nullptr);
  j["first_max_delta"] = c.first_max_delta;
  j["second_max_delta"] = c.second_max_delta;
  j["max_delta_witness"] = c.max_delta_witness ? set_json(*c.max_delta_witness) : Json(nullptr);
  return j;
}

}  // namespace zslen::report
