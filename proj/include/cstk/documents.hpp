#pragma once

// JSON document formats: strict parsing (unknown fields are errors, every
// diagnostic names the offending field), deterministic serialization
// (object keys are sorted by the json library, no timestamps, no
// environment data), and one-pass rechecking of emitted result documents.
//
// Document shapes are described in docs/schemas.md.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cst.hpp"
#include "hales_jewett.hpp"
#include "jsets.hpp"
#include "semigroup.hpp"
#include "structures.hpp"
#include "subset.hpp"

namespace cstk {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// field access

inline const json& require_field(const json& j, const char* key, const char* ctx) {
  if (!j.is_object()) throw SchemaError(std::string(ctx) + " must be an object");
  auto it = j.find(key);
  if (it == j.end())
    throw SchemaError(std::string(ctx) + ": missing field '" + key + "'");
  return *it;
}

inline void require_allowed(const json& j, std::initializer_list<const char*> allowed,
                            const char* ctx) {
  if (!j.is_object()) throw SchemaError(std::string(ctx) + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) {
        ok = true;
        break;
      }
    if (!ok)
      throw SchemaError(std::string(ctx) + ": unexpected field '" + it.key() + "'");
  }
}

inline std::uint64_t as_u64(const json& j, const char* ctx) {
  if (!j.is_number_unsigned())
    throw SchemaError(std::string(ctx) + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

inline std::size_t as_size(const json& j, const char* ctx) {
  return static_cast<std::size_t>(as_u64(j, ctx));
}

inline bool as_bool(const json& j, const char* ctx) {
  if (!j.is_boolean()) throw SchemaError(std::string(ctx) + " must be a boolean");
  return j.get<bool>();
}

inline std::string as_str(const json& j, const char* ctx) {
  if (!j.is_string()) throw SchemaError(std::string(ctx) + " must be a string");
  return j.get<std::string>();
}

inline const json& as_array(const json& j, const char* ctx) {
  if (!j.is_array()) throw SchemaError(std::string(ctx) + " must be an array");
  return j;
}

// ---------------------------------------------------------------------------
// semigroups, windows, elements

inline json semigroup_to_json(const SemigroupSpec& s) {
  json j;
  j["kind"] = kind_name(s.kind());
  switch (s.kind()) {
    case Kind::FiniteTable: {
      json rows = json::array();
      for (std::size_t i = 0; i < s.table_size(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < s.table_size(); ++k) row.push_back(s.table_at(i, k));
        rows.push_back(std::move(row));
      }
      j["table"] = std::move(rows);
      j["commutative"] = s.commutative();
      break;
    }
    case Kind::NatAdd:
      break;
    case Kind::FreeWord: {
      json gens = json::array();
      for (char c : s.alphabet()) gens.push_back(std::string(1, c));
      j["generators"] = std::move(gens);
      j["cap"] = s.word_cap();
      break;
    }
  }
  return j;
}

// enforce_valid = false lets the validate task load a structurally sound
// but non-associative table and report on it.
inline SemigroupSpec semigroup_from_json(const json& j, bool enforce_valid = true) {
  const std::string kind = as_str(require_field(j, "kind", "semigroup"), "semigroup.kind");
  SemigroupSpec s;
  if (kind == "finite-table") {
    require_allowed(j, {"kind", "table", "commutative"}, "semigroup");
    const json& rows = as_array(require_field(j, "table", "semigroup"), "semigroup.table");
    std::vector<std::vector<std::size_t>> table;
    for (const auto& row : rows) {
      std::vector<std::size_t> r;
      for (const auto& v : as_array(row, "semigroup.table row"))
        r.push_back(as_size(v, "semigroup.table entry"));
      table.push_back(std::move(r));
    }
    bool comm = false;
    if (j.contains("commutative")) comm = as_bool(j["commutative"], "semigroup.commutative");
    s = SemigroupSpec::finite_table(std::move(table), comm);
  } else if (kind == "nat-add") {
    require_allowed(j, {"kind", "commutative"}, "semigroup");
    if (j.contains("commutative") && !as_bool(j["commutative"], "semigroup.commutative"))
      throw SchemaError("semigroup: nat-add is commutative");
    s = SemigroupSpec::nat_add();
  } else if (kind == "free-word") {
    require_allowed(j, {"kind", "generators", "cap", "commutative"}, "semigroup");
    std::string alphabet;
    for (const auto& g : as_array(require_field(j, "generators", "semigroup"),
                                  "semigroup.generators")) {
      std::string letter = as_str(g, "semigroup.generators entry");
      if (letter.size() != 1)
        throw SchemaError("semigroup.generators: each generator is a single character");
      alphabet += letter;
    }
    std::size_t cap = SemigroupSpec::kDefaultWordCap;
    if (j.contains("cap")) cap = as_size(j["cap"], "semigroup.cap");
    bool comm = false;
    if (j.contains("commutative")) comm = as_bool(j["commutative"], "semigroup.commutative");
    s = SemigroupSpec::free_word(std::move(alphabet), cap, comm);
  } else {
    throw SchemaError("semigroup.kind: unknown kind '" + kind + "'");
  }
  if (enforce_valid) {
    auto rep = validate(s);
    if (!rep.valid()) throw SchemaError("semigroup: " + rep.detail);
  }
  return s;
}

// Top-level "window" field; required for infinite kinds, ignored for
// finite tables (their window is the whole semigroup).
inline Window window_from_run(const json& top, const SemigroupSpec& s) {
  if (s.kind() == Kind::FiniteTable) return Window();
  if (!top.contains("window")) throw SchemaError("run: missing field 'window'");
  return Window(as_u64(top["window"], "run.window"));
}

inline json element_to_json(const SemigroupSpec& s, const Element& e) {
  s.require_own(e, "serialize element");
  switch (s.kind()) {
    case Kind::FiniteTable: return json(e.index());
    case Kind::NatAdd: return json(e.nat());
    case Kind::FreeWord: return json(e.word());
  }
  return json();
}

inline Element element_from_json(const SemigroupSpec& s, const json& j, const char* ctx) {
  switch (s.kind()) {
    case Kind::FiniteTable: return s.idx(as_size(j, ctx));
    case Kind::NatAdd: return s.nat(as_u64(j, ctx));
    case Kind::FreeWord: return s.word(as_str(j, ctx));
  }
  throw SchemaError(std::string(ctx) + ": unreadable element");
}

inline std::vector<Element> elements_from_json(const SemigroupSpec& s, const json& j,
                                               const char* ctx) {
  std::vector<Element> out;
  for (const auto& v : as_array(j, ctx)) out.push_back(element_from_json(s, v, ctx));
  return out;
}

inline json elements_to_json(const SemigroupSpec& s, const std::vector<Element>& es) {
  json out = json::array();
  for (const auto& e : es) out.push_back(element_to_json(s, e));
  return out;
}

// ---------------------------------------------------------------------------
// subsets

inline json subset_to_json(const SubsetSpec& a) {
  json j;
  switch (a.skind()) {
    case SubsetSpec::SKind::Residue:
      j["set"] = "residue";
      j["mod"] = a.mod();
      j["rem"] = a.rem();
      break;
    case SubsetSpec::SKind::Explicit:
      j["set"] = "explicit";
      j["elements"] = elements_to_json(a.spec(), a.elements());
      break;
    case SubsetSpec::SKind::Intervals: {
      j["set"] = "intervals";
      json ivs = json::array();
      for (const auto& [lo, hi] : a.interval_list()) ivs.push_back(json::array({lo, hi}));
      j["intervals"] = std::move(ivs);
      break;
    }
    case SubsetSpec::SKind::Prefix:
      j["set"] = "prefix";
      j["prefix"] = a.prefix_string();
      break;
    case SubsetSpec::SKind::TableSubset:
      j["set"] = "indices";
      j["indices"] = a.indices();
      break;
    case SubsetSpec::SKind::Complement:
      j["set"] = "complement";
      j["of"] = subset_to_json(a.children().front());
      if (a.complement_window().bound()) j["window"] = *a.complement_window().bound();
      break;
    case SubsetSpec::SKind::Union:
    case SubsetSpec::SKind::Intersection: {
      j["set"] = a.skind() == SubsetSpec::SKind::Union ? "union" : "intersection";
      json parts = json::array();
      for (const auto& c : a.children()) parts.push_back(subset_to_json(c));
      j["of"] = std::move(parts);
      break;
    }
  }
  return j;
}

inline SubsetSpec subset_from_json(const SemigroupSpec& s, const json& j) {
  const std::string kind = as_str(require_field(j, "set", "subset"), "subset.set");
  if (kind == "residue") {
    require_allowed(j, {"set", "mod", "rem"}, "subset");
    return SubsetSpec::residue(s, as_u64(require_field(j, "mod", "subset"), "subset.mod"),
                               as_u64(require_field(j, "rem", "subset"), "subset.rem"));
  }
  if (kind == "explicit") {
    require_allowed(j, {"set", "elements"}, "subset");
    return SubsetSpec::explicit_set(
        s, elements_from_json(s, require_field(j, "elements", "subset"), "subset.elements"));
  }
  if (kind == "intervals") {
    require_allowed(j, {"set", "intervals"}, "subset");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ivs;
    for (const auto& iv : as_array(require_field(j, "intervals", "subset"), "subset.intervals")) {
      const auto& pair = as_array(iv, "subset.intervals entry");
      if (pair.size() != 2) throw SchemaError("subset.intervals entry must be [lo, hi]");
      ivs.emplace_back(as_u64(pair[0], "subset.intervals lo"),
                       as_u64(pair[1], "subset.intervals hi"));
    }
    return SubsetSpec::intervals(s, std::move(ivs));
  }
  if (kind == "prefix") {
    require_allowed(j, {"set", "prefix"}, "subset");
    return SubsetSpec::prefix(s, as_str(require_field(j, "prefix", "subset"), "subset.prefix"));
  }
  if (kind == "indices") {
    require_allowed(j, {"set", "indices"}, "subset");
    std::vector<std::size_t> idx;
    for (const auto& v : as_array(require_field(j, "indices", "subset"), "subset.indices"))
      idx.push_back(as_size(v, "subset.indices entry"));
    return SubsetSpec::table_subset(s, std::move(idx));
  }
  if (kind == "complement") {
    require_allowed(j, {"set", "of", "window"}, "subset");
    SubsetSpec inner = subset_from_json(s, require_field(j, "of", "subset"));
    if (j.contains("window")) return SubsetSpec::complement(inner, Window(as_u64(j["window"], "subset.window")));
    if (s.kind() != Kind::FiniteTable)
      throw SchemaError("subset: complement needs a window for infinite semigroups");
    return SubsetSpec::complement(inner, Window());
  }
  if (kind == "union" || kind == "intersection") {
    require_allowed(j, {"set", "of"}, "subset");
    std::vector<SubsetSpec> parts;
    for (const auto& p : as_array(require_field(j, "of", "subset"), "subset.of"))
      parts.push_back(subset_from_json(s, p));
    return kind == "union" ? SubsetSpec::set_union(std::move(parts))
                           : SubsetSpec::set_intersection(std::move(parts));
  }
  throw SchemaError("subset.set: unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// sequences, families, chains

inline json rule_to_json(const SequenceRule& r) {
  json j;
  switch (r.rkind()) {
    case SequenceRule::RKind::ExplicitPrefix:
      j["rule"] = "explicit";
      j["values"] = elements_to_json(r.spec(), r.items());
      break;
    case SequenceRule::RKind::Affine:
      j["rule"] = "affine";
      j["c"] = r.affine_c();
      j["d"] = r.affine_d();
      break;
    case SequenceRule::RKind::Periodic:
      j["rule"] = "periodic";
      j["row"] = elements_to_json(r.spec(), r.items());
      break;
    case SequenceRule::RKind::Power:
      j["rule"] = "power";
      j["base"] = r.power_base();
      break;
  }
  return j;
}

inline SequenceRule rule_from_json(const SemigroupSpec& s, const json& j) {
  const std::string kind = as_str(require_field(j, "rule", "sequence"), "sequence.rule");
  if (kind == "explicit") {
    require_allowed(j, {"rule", "values"}, "sequence");
    return SequenceRule::explicit_prefix(
        s, elements_from_json(s, require_field(j, "values", "sequence"), "sequence.values"));
  }
  if (kind == "affine") {
    require_allowed(j, {"rule", "c", "d"}, "sequence");
    return SequenceRule::affine(s, as_u64(require_field(j, "c", "sequence"), "sequence.c"),
                                as_u64(require_field(j, "d", "sequence"), "sequence.d"));
  }
  if (kind == "periodic") {
    require_allowed(j, {"rule", "row"}, "sequence");
    return SequenceRule::periodic(
        s, elements_from_json(s, require_field(j, "row", "sequence"), "sequence.row"));
  }
  if (kind == "power") {
    require_allowed(j, {"rule", "base"}, "sequence");
    return SequenceRule::power(s, as_str(require_field(j, "base", "sequence"), "sequence.base"));
  }
  throw SchemaError("sequence.rule: unknown kind '" + kind + "'");
}

inline json family_to_json(const SequenceFamily& f) {
  json j = json::array();
  for (const auto& r : f.rules()) j.push_back(rule_to_json(r));
  return j;
}

inline SequenceFamily family_from_json(const SemigroupSpec& s, const json& j) {
  std::vector<SequenceRule> rules;
  for (const auto& r : as_array(j, "sequence family")) rules.push_back(rule_from_json(s, r));
  return SequenceFamily(std::move(rules));
}

inline json chain_to_json(const FamilyChain& c) {
  json j = json::array();
  for (const auto& f : c.members()) j.push_back(family_to_json(f));
  return j;
}

inline FamilyChain chain_from_json(const SemigroupSpec& s, const json& j,
                                   ChainLimits limits = {}) {
  std::vector<SequenceFamily> members;
  for (const auto& f : as_array(j, "chain")) members.push_back(family_from_json(s, f));
  return FamilyChain(std::move(members), limits);
}

// ---------------------------------------------------------------------------
// directed families

inline json directed_family_to_json(const DirectedFamily& f) {
  const auto& s = f.spec();
  json j;
  j["indices"] = f.indices();
  json sets;
  for (const auto& idx : f.indices()) sets[idx] = subset_to_json(f.set_of(idx));
  j["sets"] = std::move(sets);
  j["ambient"] = subset_to_json(f.ambient());
  json shift;
  if (f.shift_builtin() == DirectedFamily::BuiltinShift::Constant) {
    shift["builtin"] = "constant";
  } else {
    json entries = json::array();
    for (const auto& e : f.shift_table()) {
      json entry;
      entry["from"] = e.from;
      entry["x"] = element_to_json(s, e.x);
      entry["to"] = e.to;
      entries.push_back(std::move(entry));
    }
    shift["table"] = std::move(entries);
  }
  j["shift"] = std::move(shift);
  json meet;
  switch (f.meet_builtin()) {
    case DirectedFamily::BuiltinMeet::Constant: meet["builtin"] = "constant"; break;
    case DirectedFamily::BuiltinMeet::ChainMin: meet["builtin"] = "chain-min"; break;
    case DirectedFamily::BuiltinMeet::None: {
      json entries = json::array();
      for (const auto& e : f.meet_table()) {
        json entry;
        entry["of"] = e.of;
        entry["to"] = e.to;
        entries.push_back(std::move(entry));
      }
      meet["table"] = std::move(entries);
      break;
    }
  }
  j["meet"] = std::move(meet);
  return j;
}

inline DirectedFamily directed_family_from_json(const SemigroupSpec& s, const json& j) {
  require_allowed(j, {"indices", "sets", "ambient", "shift", "meet"}, "family");
  std::vector<std::string> indices;
  for (const auto& v : as_array(require_field(j, "indices", "family"), "family.indices"))
    indices.push_back(as_str(v, "family.indices entry"));
  const json& sets_j = require_field(j, "sets", "family");
  if (!sets_j.is_object()) throw SchemaError("family.sets must be an object");
  std::map<std::string, SubsetSpec> sets;
  for (auto it = sets_j.begin(); it != sets_j.end(); ++it)
    sets.emplace(it.key(), subset_from_json(s, it.value()));
  SubsetSpec ambient = subset_from_json(s, require_field(j, "ambient", "family"));
  DirectedFamily fam(s, std::move(indices), std::move(sets), std::move(ambient));

  const json& shift = require_field(j, "shift", "family");
  require_allowed(shift, {"builtin", "table"}, "family.shift");
  if (shift.contains("builtin")) {
    const std::string b = as_str(shift["builtin"], "family.shift.builtin");
    if (b != "constant") throw SchemaError("family.shift.builtin: unknown resolver '" + b + "'");
    fam.set_shift_builtin(DirectedFamily::BuiltinShift::Constant);
  } else {
    std::vector<DirectedFamily::ShiftEntry> entries;
    for (const auto& e : as_array(require_field(shift, "table", "family.shift"),
                                  "family.shift.table")) {
      require_allowed(e, {"from", "x", "to"}, "family.shift.table entry");
      entries.push_back({as_str(require_field(e, "from", "shift entry"), "shift entry.from"),
                         element_from_json(s, require_field(e, "x", "shift entry"), "shift entry.x"),
                         as_str(require_field(e, "to", "shift entry"), "shift entry.to")});
    }
    fam.set_shift_table(std::move(entries));
  }

  const json& meet = require_field(j, "meet", "family");
  require_allowed(meet, {"builtin", "table"}, "family.meet");
  if (meet.contains("builtin")) {
    const std::string b = as_str(meet["builtin"], "family.meet.builtin");
    if (b == "constant")
      fam.set_meet_builtin(DirectedFamily::BuiltinMeet::Constant);
    else if (b == "chain-min")
      fam.set_meet_builtin(DirectedFamily::BuiltinMeet::ChainMin);
    else
      throw SchemaError("family.meet.builtin: unknown resolver '" + b + "'");
  } else {
    std::vector<DirectedFamily::MeetEntry> entries;
    for (const auto& e : as_array(require_field(meet, "table", "family.meet"),
                                  "family.meet.table")) {
      require_allowed(e, {"of", "to"}, "family.meet.table entry");
      DirectedFamily::MeetEntry me;
      for (const auto& v : as_array(require_field(e, "of", "meet entry"), "meet entry.of"))
        me.of.push_back(as_str(v, "meet entry.of"));
      me.to = as_str(require_field(e, "to", "meet entry"), "meet entry.to");
      entries.push_back(std::move(me));
    }
    fam.set_meet_table(std::move(entries));
  }
  return fam;
}

// ---------------------------------------------------------------------------
// collectionwise data

inline json cwpws_to_json(const SemigroupSpec& s, const CwpwsData& d) {
  json j;
  json subsets;
  for (const auto& [label, set] : d.family) subsets[label] = subset_to_json(set);
  j["subsets"] = std::move(subsets);
  json g = json::array();
  for (const auto& e : d.g) {
    json entry;
    entry["sets"] = e.sets;
    entry["value"] = elements_to_json(s, e.value);
    g.push_back(std::move(entry));
  }
  j["g"] = std::move(g);
  json x = json::array();
  for (const auto& e : d.x) {
    json entry;
    entry["frame"] = e.frame;
    if (e.translated) entry["translated"] = elements_to_json(s, *e.translated);
    if (e.sets) entry["sets"] = *e.sets;
    entry["value"] = element_to_json(s, e.value);
    x.push_back(std::move(entry));
  }
  j["x"] = std::move(x);
  json triples = json::array();
  for (const auto& t : d.triples) {
    json entry;
    entry["f"] = elements_to_json(s, t.f);
    entry["sets"] = t.sets;
    entry["frame"] = t.frame;
    triples.push_back(std::move(entry));
  }
  j["triples"] = std::move(triples);
  return j;
}

inline CwpwsData cwpws_from_json(const SemigroupSpec& s, const json& j) {
  require_allowed(j, {"subsets", "g", "x", "triples"}, "cwpws");
  CwpwsData d;
  const json& subsets = require_field(j, "subsets", "cwpws");
  if (!subsets.is_object()) throw SchemaError("cwpws.subsets must be an object");
  for (auto it = subsets.begin(); it != subsets.end(); ++it)
    d.family.emplace(it.key(), subset_from_json(s, it.value()));

  auto labels_from = [&](const json& v, const char* ctx) {
    std::vector<std::string> out;
    for (const auto& l : as_array(v, ctx)) out.push_back(as_str(l, ctx));
    return out;
  };

  for (const auto& e : as_array(require_field(j, "g", "cwpws"), "cwpws.g")) {
    require_allowed(e, {"sets", "value"}, "cwpws.g entry");
    CwpwsData::GEntry ge;
    ge.sets = labels_from(require_field(e, "sets", "cwpws.g entry"), "cwpws.g sets");
    ge.value = elements_from_json(s, require_field(e, "value", "cwpws.g entry"), "cwpws.g value");
    d.g.push_back(std::move(ge));
  }
  for (const auto& e : as_array(require_field(j, "x", "cwpws"), "cwpws.x")) {
    require_allowed(e, {"frame", "translated", "sets", "value"}, "cwpws.x entry");
    CwpwsData::XEntry xe;
    xe.frame = labels_from(require_field(e, "frame", "cwpws.x entry"), "cwpws.x frame");
    if (e.contains("translated"))
      xe.translated = elements_from_json(s, e["translated"], "cwpws.x translated");
    if (e.contains("sets")) xe.sets = labels_from(e["sets"], "cwpws.x sets");
    if (!xe.translated && !xe.sets)
      throw SchemaError("cwpws.x entry needs 'translated' or 'sets'");
    xe.value = element_from_json(s, require_field(e, "value", "cwpws.x entry"), "cwpws.x value");
    d.x.push_back(std::move(xe));
  }
  for (const auto& e : as_array(require_field(j, "triples", "cwpws"), "cwpws.triples")) {
    require_allowed(e, {"f", "sets", "frame"}, "cwpws.triple");
    CwpwsData::Triple t;
    t.f = elements_from_json(s, require_field(e, "f", "cwpws.triple"), "cwpws.triple f");
    t.sets = labels_from(require_field(e, "sets", "cwpws.triple"), "cwpws.triple sets");
    t.frame = labels_from(require_field(e, "frame", "cwpws.triple"), "cwpws.triple frame");
    d.triples.push_back(std::move(t));
  }
  return d;
}

// ---------------------------------------------------------------------------
// colorings as text: one "word color" pair per line, words as digit strings

inline std::string coloring_table_to_text(const std::vector<int>& by_rank, std::uint8_t t,
                                          std::size_t n) {
  std::string out;
  for (std::size_t rank = 0; rank < by_rank.size(); ++rank) {
    out += word_text(word_from_rank(rank, t, n));
    out += ' ';
    out += std::to_string(by_rank[rank]);
    out += '\n';
  }
  return out;
}

inline std::vector<int> coloring_table_from_text(const std::string& text, int colors,
                                                 std::uint8_t t, std::size_t n) {
  const auto cube = static_cast<std::size_t>(pow_u64(t, n));
  std::vector<int> by_rank(cube, 0);
  std::vector<bool> seen(cube, false);
  std::istringstream in(text);
  std::string word_s;
  int color = 0;
  while (in >> word_s) {
    if (!(in >> color)) throw SchemaError("coloring: word '" + word_s + "' has no color");
    Word w = parse_word(word_s, t);
    if (w.letters.size() != n)
      throw SchemaError("coloring: word '" + word_s + "' has the wrong length");
    const std::size_t rank = word_rank(w, t);
    if (seen[rank]) throw SchemaError("coloring: word '" + word_s + "' listed twice");
    if (color < 1 || color > colors)
      throw SchemaError("coloring: word '" + word_s + "' has color out of range");
    seen[rank] = true;
    by_rank[rank] = color;
  }
  for (std::size_t rank = 0; rank < cube; ++rank)
    if (!seen[rank])
      throw SchemaError("coloring is partial: word " + word_text(word_from_rank(rank, t, n)) +
                        " is uncolored");
  return by_rank;
}

// Named rules: "constant:<c>", "first-letter", "sum-mod".
inline Coloring coloring_from_rule(const std::string& rule, int colors) {
  if (rule.rfind("constant:", 0) == 0) {
    const int c = std::stoi(rule.substr(9));
    if (c < 1 || c > colors) throw SchemaError("coloring rule: constant color out of range");
    return Coloring(colors, [c](const Word&) { return c; });
  }
  if (rule == "first-letter")
    return Coloring(colors, [](const Word& w) { return static_cast<int>(w.letters.front()); });
  if (rule == "sum-mod")
    return Coloring(colors, [colors](const Word& w) {
      int sum = 0;
      for (auto l : w.letters) sum += l;
      return sum % colors + 1;
    });
  throw SchemaError("coloring rule: unknown rule '" + rule + "'");
}

// ---------------------------------------------------------------------------
// result documents

inline json verdict_to_json(Verdict v) { return json(verdict_name(v)); }

inline Verdict verdict_from_json(const json& j) {
  const std::string v = as_str(j, "verdict");
  if (v == "holds") return Verdict::Holds;
  if (v == "holds-on-window") return Verdict::HoldsOnWindow;
  if (v == "fails") return Verdict::Fails;
  throw SchemaError("verdict: unknown value '" + v + "'");
}

inline json probes_to_json(const SemigroupSpec& s,
                           const std::vector<std::vector<Element>>& probes) {
  json out = json::array();
  for (const auto& p : probes) out.push_back(elements_to_json(s, p));
  return out;
}

inline std::vector<std::vector<Element>> probes_from_json(const SemigroupSpec& s, const json& j,
                                                          const char* ctx) {
  std::vector<std::vector<Element>> out;
  for (const auto& p : as_array(j, ctx)) out.push_back(elements_from_json(s, p, ctx));
  return out;
}

inline json certificate_doc(const SemigroupSpec& s, const Window& w, const json& subset_j,
                            const Certificate& cert, std::size_t max_f,
                            const std::vector<std::vector<Element>>& probes) {
  json j;
  j["type"] = "certificate";
  j["check"] = cert.check;
  j["verdict"] = verdict_to_json(cert.verdict);
  j["semigroup"] = semigroup_to_json(s);
  if (w.bound()) j["window"] = *w.bound();
  j["subset"] = subset_j;
  if (cert.check != "thick") j["max-f"] = max_f;
  if (cert.check != "syndetic") j["probes"] = probes_to_json(s, probes);
  if (!cert.translates.empty()) j["translates"] = elements_to_json(s, cert.translates);
  if (!cert.probe_map.empty()) {
    json pm = json::array();
    for (const auto& [probe, x] : cert.probe_map) {
      json entry;
      entry["probe"] = elements_to_json(s, probe);
      entry["x"] = element_to_json(s, x);
      pm.push_back(std::move(entry));
    }
    j["probe-map"] = std::move(pm);
  }
  if (!cert.translates_within_bound) j["translates-within-bound"] = false;
  if (!cert.best_translates.empty())
    j["best-translates"] = elements_to_json(s, cert.best_translates);
  if (cert.counterexample) j["counterexample"] = element_to_json(s, *cert.counterexample);
  if (cert.failing_probe) j["failing-probe"] = elements_to_json(s, *cert.failing_probe);
  if (!cert.note.empty()) j["note"] = cert.note;
  return j;
}

inline json transcript_to_json(const Transcript& tr) {
  json steps = json::array();
  for (const auto& st : tr.steps) {
    json e;
    e["attempt"] = st.attempt;
    e["step"] = st.step;
    e["name"] = st.name;
    e["ok"] = st.ok;
    e["detail"] = st.detail;
    steps.push_back(std::move(e));
  }
  json j;
  j["steps"] = std::move(steps);
  j["summary"] = tr.summary;
  return j;
}

inline json cst_verification_to_json(const SemigroupSpec&, const CstVerification& rep) {
  json j;
  j["ok"] = rep.ok();
  j["combinations"] = rep.combinations;
  j["ordering-ok"] = rep.ordering_ok;
  json vs = json::array();
  for (const auto& v : rep.violations) {
    json e;
    e["subchain"] = v.subchain;
    e["picks"] = v.picks;
    e["kind"] = v.kind;
    e["detail"] = v.detail;
    vs.push_back(std::move(e));
  }
  j["violations"] = std::move(vs);
  return j;
}

inline json cst_trace_to_json(const std::vector<CstStepTrace>& trace) {
  json out = json::array();
  for (const auto& st : trace) {
    json e;
    e["member"] = st.member;
    e["strategy"] = st.strategy;
    e["bound"] = st.bound;
    e["combinations"] = st.combination_count;
    json shifts = json::array();
    for (const auto& [value, index] : st.shifts)
      shifts.push_back(json::array({value, index}));
    e["shifts"] = std::move(shifts);
    e["meet"] = st.meet_index;
    if (st.widened) e["widened"] = true;
    out.push_back(std::move(e));
  }
  return out;
}

inline json cst_table_doc(const SemigroupSpec& s, const Window& w, const DirectedFamily& fam,
                          const FamilyChain& chain, const CstTable& table,
                          const CstVerification& rep) {
  json j;
  j["type"] = "cst-table";
  j["setting"] = "commutative";
  j["semigroup"] = semigroup_to_json(s);
  if (w.bound()) j["window"] = *w.bound();
  j["family"] = directed_family_to_json(fam);
  j["chain"] = chain_to_json(chain);
  j["start-index"] = table.start_index;
  j["target"] = subset_to_json(fam.set_of(table.start_index));
  json entries = json::array();
  for (std::size_t i = 0; i < table.alpha.size(); ++i) {
    json e;
    e["alpha"] = element_to_json(s, table.alpha[i]);
    e["h"] = table.h[i];
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  j["trace"] = cst_trace_to_json(table.trace);
  j["verification"] = cst_verification_to_json(s, rep);
  return j;
}

inline json cst_table_nc_doc(const SemigroupSpec& s, const Window& w, const DirectedFamily& fam,
                             const FamilyChain& chain, const CstTableNC& table,
                             const CstVerification& rep) {
  json j;
  j["type"] = "cst-table";
  j["setting"] = "noncommutative";
  j["semigroup"] = semigroup_to_json(s);
  if (w.bound()) j["window"] = *w.bound();
  j["family"] = directed_family_to_json(fam);
  j["chain"] = chain_to_json(chain);
  j["start-index"] = table.start_index;
  j["target"] = subset_to_json(fam.set_of(table.start_index));
  json entries = json::array();
  for (std::size_t i = 0; i < table.alpha.size(); ++i) {
    json e;
    e["alpha"] = elements_to_json(s, table.alpha[i]);
    e["tau"] = table.tau[i];
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  j["trace"] = cst_trace_to_json(table.trace);
  j["verification"] = cst_verification_to_json(s, rep);
  return j;
}

struct LoadedCstTable {
  SemigroupSpec spec;
  Window window;
  FamilyChain chain;
  SubsetSpec target;
  bool commutative = true;
  CstTable table;      // filled when commutative
  CstTableNC table_nc; // filled otherwise

  LoadedCstTable(SemigroupSpec s, Window w, FamilyChain c, SubsetSpec t)
      : spec(std::move(s)), window(std::move(w)), chain(std::move(c)), target(std::move(t)) {}
};

inline LoadedCstTable cst_table_from_json(const json& j) {
  require_allowed(j,
                  {"type", "setting", "semigroup", "window", "family", "chain", "start-index",
                   "target", "entries", "trace", "verification"},
                  "cst-table");
  if (as_str(require_field(j, "type", "cst-table"), "cst-table.type") != "cst-table")
    throw SchemaError("cst-table.type must be 'cst-table'");
  SemigroupSpec s = semigroup_from_json(require_field(j, "semigroup", "cst-table"));
  Window w = window_from_run(j, s);
  FamilyChain chain = chain_from_json(s, require_field(j, "chain", "cst-table"));
  SubsetSpec target = subset_from_json(s, require_field(j, "target", "cst-table"));
  LoadedCstTable out(std::move(s), w, std::move(chain), std::move(target));
  const std::string setting =
      as_str(require_field(j, "setting", "cst-table"), "cst-table.setting");
  const std::string start =
      as_str(require_field(j, "start-index", "cst-table"), "cst-table.start-index");
  const json& entries = as_array(require_field(j, "entries", "cst-table"), "cst-table.entries");
  if (setting == "commutative") {
    out.commutative = true;
    out.table.start_index = start;
    for (const auto& e : entries) {
      require_allowed(e, {"alpha", "h"}, "cst-table entry");
      out.table.alpha.push_back(
          element_from_json(out.spec, require_field(e, "alpha", "entry"), "entry.alpha"));
      std::vector<std::uint64_t> h;
      for (const auto& v : as_array(require_field(e, "h", "entry"), "entry.h"))
        h.push_back(as_u64(v, "entry.h value"));
      out.table.h.push_back(std::move(h));
    }
  } else if (setting == "noncommutative") {
    out.commutative = false;
    out.table_nc.start_index = start;
    for (const auto& e : entries) {
      require_allowed(e, {"alpha", "tau"}, "cst-table entry");
      out.table_nc.alpha.push_back(
          elements_from_json(out.spec, require_field(e, "alpha", "entry"), "entry.alpha"));
      std::vector<std::uint64_t> tau;
      for (const auto& v : as_array(require_field(e, "tau", "entry"), "entry.tau"))
        tau.push_back(as_u64(v, "entry.tau value"));
      out.table_nc.tau.push_back(std::move(tau));
    }
  } else {
    throw SchemaError("cst-table.setting: unknown value '" + setting + "'");
  }
  return out;
}

// ---------------------------------------------------------------------------
// one-pass recheck of emitted documents

struct RecheckOutcome {
  bool match = false;
  std::string detail;
};

namespace detail {

inline RecheckOutcome recheck_certificate(const json& doc) {
  SemigroupSpec s = semigroup_from_json(require_field(doc, "semigroup", "certificate"));
  Window w = window_from_run(doc, s);
  SubsetSpec a = subset_from_json(s, require_field(doc, "subset", "certificate"));
  const std::string check = as_str(require_field(doc, "check", "certificate"), "certificate.check");
  const Verdict verdict = verdict_from_json(require_field(doc, "verdict", "certificate"));
  auto elems = window_elements(s, w);

  auto covered_by = [&](const std::vector<Element>& f, const Element& e) {
    for (const auto& t : f) {
      auto y = s.try_compose(t, e);
      if (y && a.contains(*y)) return true;
    }
    return false;
  };

  if (check == "syndetic") {
    if (verdict != Verdict::Fails) {
      auto f = elements_from_json(s, require_field(doc, "translates", "certificate"),
                                  "certificate.translates");
      for (const auto& e : elems)
        if (!covered_by(f, e))
          return {false, "translate set misses " + s.show(e)};
      return {true, "every window element is covered by the translate set"};
    }
    auto ce = element_from_json(s, require_field(doc, "counterexample", "certificate"),
                                "certificate.counterexample");
    std::vector<Element> best;
    if (doc.contains("best-translates"))
      best = elements_from_json(s, doc["best-translates"], "certificate.best-translates");
    if (covered_by(best, ce))
      return {false, "counterexample is covered by the exhibited translates"};
    return {true, "counterexample escapes the exhibited translates"};
  }

  if (check == "thick") {
    if (verdict != Verdict::Fails) {
      for (const auto& entry :
           as_array(require_field(doc, "probe-map", "certificate"), "certificate.probe-map")) {
        auto probe = elements_from_json(s, require_field(entry, "probe", "probe-map entry"),
                                        "probe-map probe");
        auto x = element_from_json(s, require_field(entry, "x", "probe-map entry"),
                                   "probe-map x");
        for (const auto& e : probe) {
          auto y = s.try_compose(e, x);
          if (!y || !a.contains(*y))
            return {false, "probe element " + s.show(e) + " escapes under its x"};
        }
      }
      return {true, "every recorded probe placement lands in the set"};
    }
    auto probe = elements_from_json(s, require_field(doc, "failing-probe", "certificate"),
                                    "certificate.failing-probe");
    for (const auto& x : elems) {
      bool all = true;
      for (const auto& e : probe) {
        auto y = s.try_compose(e, x);
        if (!y || !a.contains(*y)) {
          all = false;
          break;
        }
      }
      if (all) return {false, "failing probe is actually placeable at " + s.show(x)};
    }
    return {true, "failing probe admits no placement on the window"};
  }

  if (check == "piecewise-syndetic") {
    if (verdict != Verdict::Fails) {
      auto f = elements_from_json(s, require_field(doc, "translates", "certificate"),
                                  "certificate.translates");
      for (const auto& entry :
           as_array(require_field(doc, "probe-map", "certificate"), "certificate.probe-map")) {
        auto probe = elements_from_json(s, require_field(entry, "probe", "probe-map entry"),
                                        "probe-map probe");
        auto x = element_from_json(s, require_field(entry, "x", "probe-map entry"),
                                   "probe-map x");
        for (const auto& e : probe) {
          auto y = s.try_compose(e, x);
          if (!y || !covered_by(f, *y))
            return {false, "probe element " + s.show(e) + " leaves the translate union"};
        }
      }
      return {true, "every recorded probe placement lands in the translate union"};
    }
    std::vector<Element> best;
    if (doc.contains("best-translates"))
      best = elements_from_json(s, doc["best-translates"], "certificate.best-translates");
    auto probe = elements_from_json(s, require_field(doc, "failing-probe", "certificate"),
                                    "certificate.failing-probe");
    for (const auto& x : elems) {
      bool all = true;
      for (const auto& e : probe) {
        auto y = s.try_compose(e, x);
        if (!y || !covered_by(best, *y)) {
          all = false;
          break;
        }
      }
      if (all) return {false, "failing probe fits the exhibited translates at " + s.show(x)};
    }
    return {true, "failing probe admits no placement in the exhibited translate union"};
  }

  throw SchemaError("certificate.check: unknown check '" + check + "'");
}

inline RecheckOutcome recheck_hj_line(const json& doc) {
  const auto t = static_cast<std::uint8_t>(as_u64(require_field(doc, "t", "hj-line"), "hj-line.t"));
  const std::size_t n = as_size(require_field(doc, "n", "hj-line"), "hj-line.n");
  const int colors = static_cast<int>(as_u64(require_field(doc, "colors", "hj-line"),
                                             "hj-line.colors"));
  Coloring coloring = doc.contains("rule")
                          ? coloring_from_rule(as_str(doc["rule"], "hj-line.rule"), colors)
                          : Coloring::from_table(colors, t, n,
                                                 coloring_table_from_text(
                                                     as_str(require_field(doc, "coloring",
                                                                          "hj-line"),
                                                            "hj-line.coloring"),
                                                     colors, t, n));
  const bool found = as_bool(require_field(doc, "found", "hj-line"), "hj-line.found");
  if (found) {
    const std::string pattern = as_str(require_field(doc, "pattern", "hj-line"), "hj-line.pattern");
    VariableWord v;
    for (char c : pattern)
      v.symbols.push_back(c == '*' ? 0 : static_cast<std::uint8_t>(c - '0'));
    if (v.symbols.size() != n || v.wildcard_count() == 0)
      return {false, "pattern is not a variable word of the right length"};
    int c0 = -1;
    for (std::uint8_t l = 1; l <= t; ++l) {
      int c = coloring.color_of(instantiate(v, l, t));
      if (c0 < 0) c0 = c;
      else if (c != c0) return {false, "line is not monochromatic"};
    }
    return {true, "line instantiations all have color " + std::to_string(c0)};
  }
  auto hit = find_monochromatic_line(t, n, coloring);
  if (hit) return {false, "a monochromatic line exists: " + pattern_text(*hit)};
  return {true, "no monochromatic line, as recorded"};
}

inline RecheckOutcome recheck_hj_number(const json& doc) {
  const int r = static_cast<int>(as_u64(require_field(doc, "colors", "hj-number"),
                                        "hj-number.colors"));
  const auto t = static_cast<std::uint8_t>(as_u64(require_field(doc, "t", "hj-number"),
                                                  "hj-number.t"));
  const std::size_t max_n = as_size(require_field(doc, "max-n", "hj-number"), "hj-number.max-n");
  const std::uint64_t budget = as_u64(require_field(doc, "budget", "hj-number"),
                                      "hj-number.budget");
  const std::string strategy_s = as_str(require_field(doc, "strategy", "hj-number"),
                                        "hj-number.strategy");
  const HjStrategy strategy =
      strategy_s == "exhaustive" ? HjStrategy::Exhaustive : HjStrategy::Backtrack;
  auto res = hj_number_search(r, t, max_n, budget, strategy);
  const std::string status = as_str(require_field(doc, "status", "hj-number"),
                                    "hj-number.status");
  const char* expect = res.status == HjNumberResult::Status::Exact ? "exact"
                       : res.status == HjNumberResult::Status::LowerBound ? "lower-bound"
                                                                           : "exhausted";
  if (status != expect) return {false, std::string("status differs: reran as ") + expect};
  if (as_u64(require_field(doc, "value", "hj-number"), "hj-number.value") != res.value)
    return {false, "value differs on rerun"};
  if (doc.contains("avoiding")) {
    auto stored = coloring_table_from_text(as_str(doc["avoiding"], "hj-number.avoiding"), r, t,
                                           res.avoiding_length);
    if (stored != res.avoiding) return {false, "avoiding coloring differs on rerun"};
    Coloring col = Coloring::from_table(r, t, res.avoiding_length, stored);
    if (find_monochromatic_line(t, res.avoiding_length, col))
      return {false, "stored avoiding coloring has a monochromatic line"};
  }
  return {true, "deterministic rerun reproduces the result"};
}

inline RecheckOutcome recheck_j_witness(const json& doc) {
  SemigroupSpec s = semigroup_from_json(require_field(doc, "semigroup", "j-witness"));
  Window w = window_from_run(doc, s);
  SubsetSpec a = subset_from_json(s, require_field(doc, "subset", "j-witness"));
  SequenceFamily fam = family_from_json(s, require_field(doc, "sequences", "j-witness"));
  const json& bounds = require_field(doc, "bounds", "j-witness");
  const bool found = as_bool(require_field(doc, "found", "j-witness"), "j-witness.found");
  const std::string type = as_str(require_field(doc, "type", "j-witness"), "type");

  if (type == "j-witness") {
    const std::uint64_t min_bound = as_u64(require_field(bounds, "min-bound", "bounds"),
                                           "bounds.min-bound");
    if (found) {
      JWitness witness;
      witness.a = element_from_json(s, require_field(doc, "a", "j-witness"), "j-witness.a");
      for (const auto& v : as_array(require_field(doc, "h", "j-witness"), "j-witness.h"))
        witness.h.push_back(as_u64(v, "j-witness.h value"));
      if (!verify_j_witness(s, a, fam, witness, min_bound))
        return {false, "stored witness fails verification"};
      return {true, "witness verifies by membership"};
    }
    auto rerun = find_j_witness_bruteforce(
        s, w, a, fam, min_bound, as_size(require_field(bounds, "max-h", "bounds"), "bounds.max-h"),
        as_u64(require_field(bounds, "max-index", "bounds"), "bounds.max-index"));
    if (rerun) return {false, "rerun finds a witness the document lacks"};
    return {true, "rerun confirms absence within the bounds"};
  }

  // noncommutative
  const std::uint64_t n_bound = as_u64(require_field(bounds, "n-bound", "bounds"),
                                       "bounds.n-bound");
  if (found) {
    JWitnessNC witness;
    witness.a = elements_from_json(s, require_field(doc, "a", "j-witness-nc"), "j-witness-nc.a");
    for (const auto& v : as_array(require_field(doc, "t", "j-witness-nc"), "j-witness-nc.t"))
      witness.t.push_back(as_u64(v, "j-witness-nc.t value"));
    if (!verify_j_witness_nc(s, a, fam, witness, n_bound))
      return {false, "stored witness fails verification"};
    return {true, "witness verifies by membership"};
  }
  NcBounds nb;
  nb.n_bound = n_bound;
  nb.max_m = as_size(require_field(bounds, "max-m", "bounds"), "bounds.max-m");
  nb.max_index = as_u64(require_field(bounds, "max-index", "bounds"), "bounds.max-index");
  auto rerun = find_j_witness_nc(s, w, a, fam, JsetStrategy::BruteForce, nb);
  if (rerun) return {false, "rerun finds a witness the document lacks"};
  return {true, "rerun confirms absence within the bounds"};
}

inline RecheckOutcome recheck_cst_table(const json& doc) {
  auto loaded = cst_table_from_json(doc);
  CstVerification rep =
      loaded.commutative
          ? verify_cst(loaded.spec, loaded.table, loaded.chain, loaded.target)
          : verify_cst_nc(loaded.spec, loaded.table_nc, loaded.chain, loaded.target);
  if (!rep.ok()) {
    std::string detail = "table fails verification";
    if (!rep.violations.empty()) detail += ": " + rep.violations.front().detail;
    return {false, detail};
  }
  return {true, std::to_string(rep.combinations) + " combinations verified"};
}

inline RecheckOutcome recheck_validation(const json& doc) {
  SemigroupSpec s = semigroup_from_json(require_field(doc, "semigroup", "validation"), false);
  auto rep = validate(s);
  const bool stored = as_bool(require_field(doc, "valid", "validation"), "validation.valid");
  if (rep.valid() != stored) return {false, "validity differs on rerun"};
  return {true, "validation reproduces"};
}

inline RecheckOutcome recheck_cwpws(const json& doc) {
  SemigroupSpec s = semigroup_from_json(require_field(doc, "semigroup", "cwpws-report"));
  Window w = window_from_run(doc, s);
  CwpwsData data = cwpws_from_json(s, require_field(doc, "cwpws", "cwpws-report"));
  auto rep = check_collectionwise_pws(s, w, data);
  const Verdict stored = verdict_from_json(require_field(doc, "verdict", "cwpws-report"));
  if (rep.verdict != stored) return {false, "verdict differs on rerun"};
  return {true, "verdict reproduces on " + std::to_string(rep.triples_checked) + " triples"};
}

}  // namespace detail

inline RecheckOutcome recheck_document(const json& doc) {
  const std::string type = as_str(require_field(doc, "type", "document"), "document.type");
  if (type == "certificate") return detail::recheck_certificate(doc);
  if (type == "hj-line") return detail::recheck_hj_line(doc);
  if (type == "hj-number") return detail::recheck_hj_number(doc);
  if (type == "j-witness" || type == "j-witness-nc") return detail::recheck_j_witness(doc);
  if (type == "cst-table") return detail::recheck_cst_table(doc);
  if (type == "validation") return detail::recheck_validation(doc);
  if (type == "cwpws-report") return detail::recheck_cwpws(doc);
  throw SchemaError("document.type: no recheck for '" + type + "'");
}

}  // namespace cstk
