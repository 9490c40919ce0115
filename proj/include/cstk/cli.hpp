#pragma once

// Command line front end. Every task consumes one JSON run document and
// emits one JSON result document (to --output, otherwise stdout); human
// summaries go to stderr. Exit codes: 0 when the property holds or a
// witness was found and verified, 1 for fails / absent / violations /
// exhausted searches (a certificate or counterexample is still emitted),
// 2 for schema or contract errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "documents.hpp"

namespace cstk::cli {

struct Overrides {
  std::optional<std::uint64_t> window;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  std::optional<std::string> strategy;
  std::string output;
};

namespace detail {

inline json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
  return j;
}

inline void emit(const json& doc, const Overrides& ov) {
  const std::string text = doc.dump(2) + "\n";
  if (ov.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(ov.output);
    if (!out) throw SchemaError("cannot write '" + ov.output + "'");
    out << text;
  }
}

inline json apply_window_override(json run, const Overrides& ov) {
  if (ov.window) run["window"] = *ov.window;
  return run;
}

inline ResolveOptions resolve_options(const json& run, const Overrides& ov) {
  ResolveOptions opt;
  if (run.contains("seed")) opt.seed = as_u64(run["seed"], "run.seed");
  if (ov.seed) opt.seed = *ov.seed;
  if (run.contains("sample-k")) opt.sample_k = as_size(run["sample-k"], "run.sample-k");
  if (run.contains("exhaustive-check"))
    opt.exhaustive = as_bool(run["exhaustive-check"], "run.exhaustive-check");
  return opt;
}

inline std::string pick_strategy(const json& run, const Overrides& ov,
                                 const std::string& fallback) {
  std::string s = fallback;
  if (run.contains("strategy")) s = as_str(run["strategy"], "run.strategy");
  if (ov.strategy) s = *ov.strategy;
  return s;
}

inline int run_validate(const json& run, const Overrides& ov) {
  require_allowed(run, {"semigroup"}, "run");
  const json& sj = require_field(run, "semigroup", "run");
  SemigroupSpec s = semigroup_from_json(sj, false);
  auto rep = validate(s);
  json doc;
  doc["type"] = "validation";
  doc["semigroup"] = sj;
  doc["valid"] = rep.valid();
  doc["associative"] = rep.associative;
  doc["commutative-ok"] = rep.commutative_ok;
  if (rep.assoc_witness)
    doc["assoc-witness"] = std::vector<std::size_t>(rep.assoc_witness->begin(),
                                                    rep.assoc_witness->end());
  if (rep.comm_witness)
    doc["comm-witness"] = std::vector<std::size_t>(rep.comm_witness->begin(),
                                                   rep.comm_witness->end());
  doc["detail"] = rep.detail;
  emit(doc, ov);
  std::cerr << (rep.valid() ? "valid: " : "invalid: ") << rep.detail << "\n";
  return rep.valid() ? 0 : 1;
}

inline int emit_certificate(const SemigroupSpec& s, const Window& w, const json& subset_j,
                            const Certificate& cert, std::size_t max_f,
                            const std::vector<std::vector<Element>>& probes,
                            const Overrides& ov) {
  emit(certificate_doc(s, w, subset_j, cert, max_f, probes), ov);
  std::cerr << cert.check << ": " << verdict_name(cert.verdict);
  if (!cert.note.empty()) std::cerr << " (" << cert.note << ")";
  std::cerr << "\n";
  return cert.verdict == Verdict::Fails ? 1 : 0;
}

inline int run_check(const std::string& which, json run, const Overrides& ov) {
  run = apply_window_override(std::move(run), ov);
  if (which == "cwpws") {
    require_allowed(run, {"semigroup", "window", "cwpws"}, "run");
    SemigroupSpec s = semigroup_from_json(require_field(run, "semigroup", "run"));
    Window w = window_from_run(run, s);
    CwpwsData data = cwpws_from_json(s, require_field(run, "cwpws", "run"));
    auto rep = check_collectionwise_pws(s, w, data);
    json doc;
    doc["type"] = "cwpws-report";
    doc["verdict"] = verdict_to_json(rep.verdict);
    doc["semigroup"] = semigroup_to_json(s);
    if (w.bound()) doc["window"] = *w.bound();
    doc["cwpws"] = cwpws_to_json(s, data);
    doc["triples-checked"] = rep.triples_checked;
    if (rep.violation) {
      json v;
      v["triple"] = rep.violation->triple;
      v["unplaced"] = element_to_json(s, rep.violation->unplaced);
      v["detail"] = rep.violation->detail;
      doc["violation"] = std::move(v);
    }
    emit(doc, ov);
    std::cerr << "cwpws: " << verdict_name(rep.verdict) << " on " << rep.triples_checked
              << " triples\n";
    return rep.verdict == Verdict::Fails ? 1 : 0;
  }

  SemigroupSpec s = semigroup_from_json(require_field(run, "semigroup", "run"));
  Window w = window_from_run(run, s);
  const json& subset_j = require_field(run, "subset", "run");
  SubsetSpec a = subset_from_json(s, subset_j);

  if (which == "syndetic") {
    require_allowed(run, {"semigroup", "window", "subset", "max-f"}, "run");
    std::size_t max_f = 3;
    if (run.contains("max-f")) max_f = as_size(run["max-f"], "run.max-f");
    auto cert = check_syndetic(s, w, a, max_f);
    return emit_certificate(s, w, subset_j, cert, max_f, {}, ov);
  }
  if (which == "thick") {
    require_allowed(run, {"semigroup", "window", "subset", "probes"}, "run");
    std::vector<std::vector<Element>> probes;
    if (run.contains("probes")) probes = probes_from_json(s, run["probes"], "run.probes");
    auto cert = check_thick(s, w, a, probes);
    return emit_certificate(s, w, subset_j, cert, 0, probes, ov);
  }
  if (which == "pws") {
    require_allowed(run, {"semigroup", "window", "subset", "max-f", "probes"}, "run");
    std::size_t max_f = 3;
    if (run.contains("max-f")) max_f = as_size(run["max-f"], "run.max-f");
    std::vector<std::vector<Element>> probes;
    if (run.contains("probes")) probes = probes_from_json(s, run["probes"], "run.probes");
    auto cert = check_piecewise_syndetic(s, w, a, max_f, probes);
    return emit_certificate(s, w, subset_j, cert, max_f, probes, ov);
  }
  throw SchemaError("unknown check '" + which + "'");
}

inline int run_hj_line(const json& run, const Overrides& ov) {
  require_allowed(run, {"hj"}, "run");
  const json& hj = require_field(run, "hj", "run");
  require_allowed(hj, {"t", "n", "colors", "coloring", "rule"}, "run.hj");
  const auto t = static_cast<std::uint8_t>(as_u64(require_field(hj, "t", "run.hj"), "hj.t"));
  const std::size_t n = as_size(require_field(hj, "n", "run.hj"), "hj.n");
  const int colors = static_cast<int>(as_u64(require_field(hj, "colors", "run.hj"), "hj.colors"));

  json doc;
  doc["type"] = "hj-line";
  doc["t"] = t;
  doc["n"] = n;
  doc["colors"] = colors;
  std::optional<Coloring> coloring;
  if (hj.contains("rule")) {
    const std::string rule = as_str(hj["rule"], "hj.rule");
    coloring = coloring_from_rule(rule, colors);
    doc["rule"] = rule;
  } else {
    const std::string text = as_str(require_field(hj, "coloring", "run.hj"), "hj.coloring");
    coloring = Coloring::from_table(colors, t, n,
                                    coloring_table_from_text(text, colors, t, n));
    doc["coloring"] = text;
  }
  auto hit = find_monochromatic_line(t, n, *coloring);
  doc["found"] = hit.has_value();
  if (hit) {
    doc["pattern"] = pattern_text(*hit);
    doc["color"] = coloring->color_of(instantiate(*hit, 1, t));
    std::cerr << "monochromatic line " << pattern_text(*hit) << "\n";
  } else {
    std::cerr << "no monochromatic line\n";
  }
  emit(doc, ov);
  return hit ? 0 : 1;
}

inline int run_hj_number(const json& run, const Overrides& ov) {
  require_allowed(run, {"hj", "strategy"}, "run");
  const json& hj = require_field(run, "hj", "run");
  require_allowed(hj, {"t", "colors", "max-n", "budget", "strategy"}, "run.hj");
  const auto t = static_cast<std::uint8_t>(as_u64(require_field(hj, "t", "run.hj"), "hj.t"));
  const int colors = static_cast<int>(as_u64(require_field(hj, "colors", "run.hj"), "hj.colors"));
  const std::size_t max_n = as_size(require_field(hj, "max-n", "run.hj"), "hj.max-n");
  std::uint64_t budget = 1u << 22;
  if (hj.contains("budget")) budget = as_u64(hj["budget"], "hj.budget");
  if (ov.budget) budget = *ov.budget;
  std::string strategy_s = "backtrack";
  if (hj.contains("strategy")) strategy_s = as_str(hj["strategy"], "hj.strategy");
  if (run.contains("strategy")) strategy_s = as_str(run["strategy"], "run.strategy");
  if (ov.strategy) strategy_s = *ov.strategy;
  HjStrategy strategy;
  if (strategy_s == "backtrack")
    strategy = HjStrategy::Backtrack;
  else if (strategy_s == "exhaustive")
    strategy = HjStrategy::Exhaustive;
  else
    throw SchemaError("strategy must be 'backtrack' or 'exhaustive'");

  auto res = hj_number_search(colors, t, max_n, budget, strategy);
  json doc;
  doc["type"] = "hj-number";
  doc["t"] = t;
  doc["colors"] = colors;
  doc["max-n"] = max_n;
  doc["budget"] = budget;
  doc["strategy"] = strategy_s;
  doc["nodes"] = res.nodes;
  doc["value"] = res.value;
  switch (res.status) {
    case HjNumberResult::Status::Exact: doc["status"] = "exact"; break;
    case HjNumberResult::Status::LowerBound: doc["status"] = "lower-bound"; break;
    case HjNumberResult::Status::Exhausted: doc["status"] = "exhausted"; break;
  }
  if (!res.avoiding.empty()) {
    doc["avoiding-length"] = res.avoiding_length;
    doc["avoiding"] = coloring_table_to_text(res.avoiding, t, res.avoiding_length);
  }
  emit(doc, ov);
  switch (res.status) {
    case HjNumberResult::Status::Exact:
      std::cerr << "HJ(" << colors << "," << int(t) << ") = " << res.value << "\n";
      return 0;
    case HjNumberResult::Status::LowerBound:
      std::cerr << "HJ(" << colors << "," << int(t) << ") > " << res.value
                << " (avoiding coloring exhibited)\n";
      return 0;
    case HjNumberResult::Status::Exhausted:
      std::cerr << "budget exhausted after " << res.nodes << " nodes\n";
      return 1;
  }
  return 2;
}

inline void print_transcript(const Transcript& tr) {
  for (const auto& st : tr.steps)
    std::cerr << "  [" << st.attempt << "." << st.step << "] " << st.name << ": "
              << (st.ok ? "ok" : "no") << " (" << st.detail << ")\n";
  if (!tr.summary.empty()) std::cerr << "  " << tr.summary << "\n";
}

inline int run_jset_find(json run, const Overrides& ov) {
  run = apply_window_override(std::move(run), ov);
  require_allowed(run,
                  {"semigroup", "window", "subset", "sequences", "strategy", "bounds",
                   "translates", "seed"},
                  "run");
  SemigroupSpec s = semigroup_from_json(require_field(run, "semigroup", "run"));
  Window w = window_from_run(run, s);
  const json& subset_j = require_field(run, "subset", "run");
  SubsetSpec a = subset_from_json(s, subset_j);
  SequenceFamily fam = family_from_json(s, require_field(run, "sequences", "run"));

  json bounds = run.contains("bounds") ? run["bounds"] : json::object();
  require_allowed(bounds, {"min-bound", "max-h", "max-index", "n-bound", "max-m", "len-cap"},
                  "run.bounds");
  auto bound_u64 = [&](const char* key, std::uint64_t dflt) {
    return bounds.contains(key) ? as_u64(bounds[key], key) : dflt;
  };

  const std::string strategy_s = pick_strategy(run, ov, "bruteforce");
  if (strategy_s != "bruteforce" && strategy_s != "hales-jewett")
    throw SchemaError("strategy must be 'bruteforce' or 'hales-jewett'");
  std::vector<Element> translates;
  if (run.contains("translates"))
    translates = elements_from_json(s, run["translates"], "run.translates");

  json doc;
  doc["semigroup"] = semigroup_to_json(s);
  if (w.bound()) doc["window"] = *w.bound();
  doc["subset"] = subset_j;
  doc["sequences"] = family_to_json(fam);
  doc["strategy"] = strategy_s;
  if (!translates.empty()) doc["translates"] = elements_to_json(s, translates);

  Transcript tr;
  if (s.commutative()) {
    const std::uint64_t min_bound = bound_u64("min-bound", 0);
    const std::size_t max_h = static_cast<std::size_t>(bound_u64("max-h", 3));
    const std::uint64_t max_index = bound_u64("max-index", 16);
    const std::size_t len_cap = static_cast<std::size_t>(bound_u64("len-cap", 8));
    doc["type"] = "j-witness";
    doc["bounds"] = {{"min-bound", min_bound}, {"max-h", max_h}, {"max-index", max_index},
                     {"len-cap", len_cap}};
    std::optional<JWitness> witness;
    if (strategy_s == "bruteforce")
      witness = find_j_witness_bruteforce(s, w, a, fam, min_bound, max_h, max_index);
    else
      witness = find_j_witness_hj(s, w, a, fam, translates, min_bound, len_cap, &tr);
    doc["found"] = witness.has_value();
    if (strategy_s == "hales-jewett") doc["transcript"] = transcript_to_json(tr);
    if (witness) {
      doc["a"] = element_to_json(s, witness->a);
      doc["h"] = witness->h;
      doc["verified"] = verify_j_witness(s, a, fam, *witness, min_bound);
    }
    emit(doc, ov);
    if (strategy_s == "hales-jewett") print_transcript(tr);
    if (witness) {
      std::cerr << "witness a=" << s.show(witness->a) << " H="
                << cstk::detail::h_text(witness->h) << "\n";
      return 0;
    }
    std::cerr << "no witness within the bounds\n";
    return 1;
  }

  NcBounds nb;
  nb.n_bound = bound_u64("n-bound", 0);
  nb.max_m = static_cast<std::size_t>(bound_u64("max-m", 2));
  nb.max_index = bound_u64("max-index", 8);
  nb.len_cap = static_cast<std::size_t>(bound_u64("len-cap", 8));
  doc["type"] = "j-witness-nc";
  doc["bounds"] = {{"n-bound", nb.n_bound}, {"max-m", nb.max_m}, {"max-index", nb.max_index},
                   {"len-cap", nb.len_cap}};
  auto witness = find_j_witness_nc(
      s, w, a, fam,
      strategy_s == "bruteforce" ? JsetStrategy::BruteForce : JsetStrategy::HalesJewett, nb,
      translates, &tr);
  doc["found"] = witness.has_value();
  if (strategy_s == "hales-jewett") doc["transcript"] = transcript_to_json(tr);
  if (witness) {
    doc["a"] = elements_to_json(s, witness->a);
    doc["t"] = witness->t;
    doc["verified"] = verify_j_witness_nc(s, a, fam, *witness, nb.n_bound);
  }
  emit(doc, ov);
  if (strategy_s == "hales-jewett") print_transcript(tr);
  if (witness) {
    std::cerr << "witness with m=" << witness->t.size() << "\n";
    return 0;
  }
  std::cerr << "no witness within the bounds\n";
  return 1;
}

inline int run_cst_build(json run, const Overrides& ov) {
  run = apply_window_override(std::move(run), ov);
  require_allowed(run,
                  {"semigroup", "window", "family", "chain", "strategy", "bounds", "translates",
                   "start-index", "widen-on-failure", "seed", "sample-k", "exhaustive-check"},
                  "run");
  SemigroupSpec s = semigroup_from_json(require_field(run, "semigroup", "run"));
  Window w = window_from_run(run, s);
  DirectedFamily fam = directed_family_from_json(s, require_field(run, "family", "run"));
  FamilyChain chain = chain_from_json(s, require_field(run, "chain", "run"));

  CstBuildOptions opts;
  opts.resolve = resolve_options(run, ov);
  const std::string strategy_s = pick_strategy(run, ov, "bruteforce");
  if (strategy_s == "bruteforce")
    opts.strategy = JsetStrategy::BruteForce;
  else if (strategy_s == "hales-jewett")
    opts.strategy = JsetStrategy::HalesJewett;
  else
    throw SchemaError("strategy must be 'bruteforce' or 'hales-jewett'");
  json bounds = run.contains("bounds") ? run["bounds"] : json::object();
  require_allowed(bounds, {"max-h", "max-index", "max-m", "nc-max-index", "len-cap"},
                  "run.bounds");
  if (bounds.contains("max-h")) opts.max_h = as_size(bounds["max-h"], "bounds.max-h");
  if (bounds.contains("max-index")) opts.max_index = as_u64(bounds["max-index"], "bounds.max-index");
  if (bounds.contains("max-m")) opts.max_m = as_size(bounds["max-m"], "bounds.max-m");
  if (bounds.contains("nc-max-index"))
    opts.nc_max_index = as_u64(bounds["nc-max-index"], "bounds.nc-max-index");
  if (bounds.contains("len-cap")) opts.len_cap = as_size(bounds["len-cap"], "bounds.len-cap");
  if (run.contains("translates"))
    opts.translates = elements_from_json(s, run["translates"], "run.translates");
  if (run.contains("start-index")) opts.start_index = as_str(run["start-index"], "run.start-index");
  if (run.contains("widen-on-failure"))
    opts.widen_on_failure = as_bool(run["widen-on-failure"], "run.widen-on-failure");

  try {
    if (s.commutative()) {
      auto table = build_cst_commutative(s, w, fam, chain, opts);
      auto rep = verify_cst(s, table, chain, fam.set_of(table.start_index));
      emit(cst_table_doc(s, w, fam, chain, table, rep), ov);
      std::cerr << "table built: " << chain.size() << " members, " << rep.combinations
                << " combinations verified\n";
    } else {
      auto table = build_cst_noncommutative(s, w, fam, chain, opts);
      auto rep = verify_cst_nc(s, table, chain, fam.set_of(table.start_index));
      emit(cst_table_nc_doc(s, w, fam, chain, table, rep), ov);
      std::cerr << "table built: " << chain.size() << " members, " << rep.combinations
                << " combinations verified\n";
    }
  } catch (const SearchExhausted& e) {
    json doc;
    doc["type"] = "cst-build-failure";
    doc["detail"] = e.what();
    emit(doc, ov);
    std::cerr << "build failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

inline int run_cst_verify(const json& doc_j, const Overrides& ov) {
  auto loaded = cst_table_from_json(doc_j);
  CstVerification rep =
      loaded.commutative
          ? verify_cst(loaded.spec, loaded.table, loaded.chain, loaded.target)
          : verify_cst_nc(loaded.spec, loaded.table_nc, loaded.chain, loaded.target);
  json doc = cst_verification_to_json(loaded.spec, rep);
  doc["type"] = "cst-verification";
  emit(doc, ov);
  std::cerr << (rep.ok() ? "verified: " : "violations: ") << rep.combinations
            << " combinations";
  if (!rep.violations.empty()) std::cerr << ", first: " << rep.violations.front().detail;
  std::cerr << "\n";
  return rep.ok() ? 0 : 1;
}

inline int run_recheck(const json& doc_j, const Overrides& ov) {
  auto outcome = recheck_document(doc_j);
  json doc;
  doc["type"] = "recheck";
  doc["source-type"] = doc_j.at("type");
  doc["match"] = outcome.match;
  doc["detail"] = outcome.detail;
  emit(doc, ov);
  std::cerr << (outcome.match ? "recheck ok: " : "recheck mismatch: ") << outcome.detail << "\n";
  return outcome.match ? 0 : 1;
}

}  // namespace detail

inline int run(int argc, const char* const* argv) {
  CLI::App app{"witness searches and largeness checks over finitely described semigroups"};
  app.require_subcommand(1);

  std::string file;
  Overrides ov;
  std::uint64_t window_v = 0, seed_v = 0, budget_v = 0;
  std::string strategy_v;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("run", file, "run document (JSON)")->required();
    cmd->add_option("--output", ov.output, "write the result document to this file");
    cmd->add_option("--window", window_v, "override the run window bound")
        ->each([&](const std::string&) { ov.window = window_v; });
    cmd->add_option("--seed", seed_v, "override the resolver sampling seed")
        ->each([&](const std::string&) { ov.seed = seed_v; });
    cmd->add_option("--budget", budget_v, "override the search budget")
        ->each([&](const std::string&) { ov.budget = budget_v; });
    cmd->add_option("--strategy", strategy_v, "override the search strategy")
        ->each([&](const std::string&) { ov.strategy = strategy_v; });
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a semigroup description");
  add_common(validate_cmd);

  auto* check_cmd = app.add_subcommand("check", "largeness checks");
  check_cmd->require_subcommand(1);
  auto* syndetic_cmd = check_cmd->add_subcommand("syndetic", "bounded translate cover");
  auto* thick_cmd = check_cmd->add_subcommand("thick", "probe placement");
  auto* pws_cmd = check_cmd->add_subcommand("pws", "piecewise syndetic");
  auto* cwpws_cmd = check_cmd->add_subcommand("cwpws", "collectionwise piecewise syndetic");
  for (auto* c : {syndetic_cmd, thick_cmd, pws_cmd, cwpws_cmd}) add_common(c);

  auto* hj_cmd = app.add_subcommand("hj", "combinatorial lines");
  hj_cmd->require_subcommand(1);
  auto* hj_line_cmd = hj_cmd->add_subcommand("line", "monochromatic line search");
  auto* hj_number_cmd = hj_cmd->add_subcommand("number", "least cube dimension search");
  for (auto* c : {hj_line_cmd, hj_number_cmd}) add_common(c);

  auto* jset_cmd = app.add_subcommand("jset", "witness searches");
  jset_cmd->require_subcommand(1);
  auto* jset_find_cmd = jset_cmd->add_subcommand("find", "find a witness");
  add_common(jset_find_cmd);

  auto* cst_cmd = app.add_subcommand("cst", "iterated witness tables");
  cst_cmd->require_subcommand(1);
  auto* cst_build_cmd = cst_cmd->add_subcommand("build", "build a table over a chain");
  auto* cst_verify_cmd = cst_cmd->add_subcommand("verify", "verify an emitted table");
  for (auto* c : {cst_build_cmd, cst_verify_cmd}) add_common(c);

  auto* recheck_cmd = app.add_subcommand("recheck", "re-verify an emitted document");
  add_common(recheck_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    json input = detail::load_file(file);
    if (validate_cmd->parsed()) return detail::run_validate(input, ov);
    if (syndetic_cmd->parsed()) return detail::run_check("syndetic", input, ov);
    if (thick_cmd->parsed()) return detail::run_check("thick", input, ov);
    if (pws_cmd->parsed()) return detail::run_check("pws", input, ov);
    if (cwpws_cmd->parsed()) return detail::run_check("cwpws", input, ov);
    if (hj_line_cmd->parsed()) return detail::run_hj_line(input, ov);
    if (hj_number_cmd->parsed()) return detail::run_hj_number(input, ov);
    if (jset_find_cmd->parsed()) return detail::run_jset_find(input, ov);
    if (cst_build_cmd->parsed()) return detail::run_cst_build(input, ov);
    if (cst_verify_cmd->parsed()) return detail::run_cst_verify(input, ov);
    if (recheck_cmd->parsed()) return detail::run_recheck(input, ov);
    std::cerr << "no task selected\n";
    return 2;
  } catch (const SearchExhausted& e) {
    std::cerr << "exhausted: " << e.what() << "\n";
    return 1;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const ContractError& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cstk::cli
