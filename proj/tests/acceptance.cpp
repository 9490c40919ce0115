// Acceptance gate: one line per criterion, nonzero exit if any fails.
// argv[1] = path to the cstk CLI binary, argv[2] = directory of sample runs.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <cstk/cst.hpp>
#include <cstk/documents.hpp>
#include <cstk/hales_jewett.hpp>
#include <cstk/jsets.hpp>
#include <cstk/semigroup.hpp>
#include <cstk/structures.hpp>
#include <cstk/subset.hpp>

using namespace cstk;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
std::string g_samples;

struct Outcome {
  bool pass = true;
  std::string note;

  void fail(const std::string& why) {
    if (pass) note = why;
    pass = false;
  }
};

bool run_criterion(int number, const char* label, double limit_s,
                   const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && elapsed > limit_s)
    out.fail("runtime " + std::to_string(elapsed) + "s exceeds " + std::to_string(limit_s) + "s");
  std::printf("%s  criterion %2d: %s (%.2fs)%s%s\n", out.pass ? "PASS" : "FAIL", number, label,
              elapsed, out.note.empty() ? "" : " -- ", out.note.c_str());
  std::fflush(stdout);
  return out.pass;
}

int shell(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::uint64_t pow_sz(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// --------------------------------------------------------------------------
// 1. HJ(2,2) = 2 with a bichromatic length-1 lower-bound certificate.

void criterion_1(Outcome& out) {
  auto res = hj_number_search(2, 2, 3, std::uint64_t{1} << 22, HjStrategy::Exhaustive);
  if (res.status != HjNumberResult::Status::Exact) return out.fail("status is not exact");
  if (res.value != 2) return out.fail("value " + std::to_string(res.value) + " != 2");
  if (res.avoiding_length != 1) return out.fail("avoiding certificate is not on length 1");
  if (res.avoiding.size() != 2 || res.avoiding[0] == res.avoiding[1])
    return out.fail("avoiding coloring of [2]^1 is not bichromatic");
  Coloring col = Coloring::from_table(2, 2, 1, res.avoiding);
  if (find_monochromatic_line(2, 1, col))
    return out.fail("avoiding coloring admits a monochromatic line");
  // Exactness means all 16 colorings of [2]^2 were exhausted: each contains a line.
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<int> table(4);
    for (int i = 0; i < 4; ++i) table[i] = ((mask >> i) & 1) + 1;
    Coloring c2 = Coloring::from_table(2, 2, 2, table);
    if (!find_monochromatic_line(2, 2, c2))
      return out.fail("a coloring of [2]^2 avoids all lines, contradicting exactness");
  }
}

// --------------------------------------------------------------------------
// 2. Line-count identity with structural re-verification.

void criterion_2(Outcome& out) {
  for (std::uint8_t t = 1; t <= 3; ++t) {
    for (std::size_t n = 1; n <= 4; ++n) {
      auto lines = enumerate_lines(t, n);
      const std::uint64_t expect = pow_sz(t + 1, n) - pow_sz(t, n);
      if (lines.size() != expect)
        return out.fail("t=" + std::to_string(t) + " N=" + std::to_string(n) + ": " +
                        std::to_string(lines.size()) + " lines, expected " +
                        std::to_string(expect));
      std::set<std::string> seen;
      for (const auto& v : lines) {
        if (v.symbols.size() != n) return out.fail("line of wrong length");
        if (v.wildcard_count() == 0) return out.fail("line without a wildcard");
        for (auto sym : v.symbols)
          if (sym > t) return out.fail("line uses a letter beyond the alphabet");
        if (!seen.insert(pattern_text(v)).second) return out.fail("duplicate line emitted");
        auto words = line_words(v, t);
        if (words.size() != t) return out.fail("line does not instantiate to t words");
        for (std::uint8_t l = 1; l <= t; ++l)
          for (std::size_t p = 0; p < n; ++p) {
            const std::uint8_t expect_letter = v.symbols[p] == 0 ? l : v.symbols[p];
            if (words[l - 1].letters[p] != expect_letter)
              return out.fail("instantiation disagrees with the pattern");
          }
      }
    }
  }
}

// --------------------------------------------------------------------------
// 3 + 4. Randomized commutative J-set soundness and strategy agreement.

struct JInstance {
  bool hj_found = false;
  bool bf_found = false;
};
std::vector<JInstance> g_instances;

void criterion_3(Outcome& out) {
  g_instances.clear();
  auto nat = SemigroupSpec::nat_add();
  const Window w(10000);
  std::mt19937_64 rng(424242);
  for (int round = 0; round < 200; ++round) {
    const std::uint64_t m = 2 + rng() % 5;
    const std::uint64_t rem = rng() % m;
    auto target = SubsetSpec::residue(nat, m, rem);

    std::vector<SequenceRule> rules;
    const std::size_t want = 1 + rng() % 3;
    while (rules.size() < want) {
      auto r = SequenceRule::affine(nat, rng() % 5, 1 + rng() % 4);
      bool dup = false;
      for (const auto& have : rules) dup = dup || have.key() == r.key();
      if (!dup) rules.push_back(r);
    }
    SequenceFamily fam(rules);
    const std::uint64_t min_bound = rng() % 3;

    std::vector<Element> translates;
    for (std::uint64_t t = 1; t <= m; ++t) translates.push_back(nat.nat(t));

    JInstance inst;
    auto bf = find_j_witness_bruteforce(nat, w, target, fam, min_bound, 3, 8);
    if (bf) {
      inst.bf_found = true;
      if (!verify_j_witness(nat, target, fam, *bf, min_bound))
        return out.fail("bruteforce witness fails re-verification at round " +
                        std::to_string(round));
      if (bf->h.front() <= min_bound)
        return out.fail("bruteforce witness violates the index bound");
    }
    auto hj = find_j_witness_hj(nat, w, target, fam, translates, min_bound, 3);
    if (hj) {
      inst.hj_found = true;
      if (!verify_j_witness(nat, target, fam, *hj, min_bound))
        return out.fail("constructive witness fails re-verification at round " +
                        std::to_string(round));
      if (hj->h.front() <= min_bound)
        return out.fail("constructive witness violates the index bound");
    }
    g_instances.push_back(inst);
  }
  if (g_instances.size() != 200) out.fail("instance count drifted");
}

void criterion_4(Outcome& out) {
  if (g_instances.size() != 200) return out.fail("criterion 3 did not record 200 instances");
  std::size_t agreements = 0;
  for (std::size_t i = 0; i < g_instances.size(); ++i) {
    if (g_instances[i].hj_found) {
      ++agreements;
      if (!g_instances[i].bf_found)
        return out.fail("instance " + std::to_string(i) +
                        ": constructive strategy found a witness, exhaustive did not");
    }
  }
  if (agreements == 0) out.fail("no instance exercised the constructive strategy");
}

// --------------------------------------------------------------------------
// 5. Constructive pipeline on the even numbers, transcript step names.

void criterion_5(Outcome& out) {
  auto nat = SemigroupSpec::nat_add();
  auto evens = SubsetSpec::residue(nat, 2, 0);
  SequenceFamily fam({SequenceRule::affine(nat, 0, 1), SequenceRule::affine(nat, 0, 2)});
  Transcript tr;
  auto wit = find_j_witness_hj(nat, Window(400), evens, fam, {nat.nat(1), nat.nat(2)}, 0, 6,
                               &tr);
  if (!wit) return out.fail("pipeline returned no witness");
  if (!verify_j_witness(nat, evens, fam, *wit, 0)) return out.fail("witness does not verify");
  const char* names[] = {"working-length", "product-map", "thickness",
                         "coloring",       "line-search", "extraction"};
  for (const char* name : names) {
    bool found = false;
    for (const auto& st : tr.steps) found = found || (st.name == name && st.ok);
    if (!found) return out.fail(std::string("transcript lacks step '") + name + "'");
  }
}

// --------------------------------------------------------------------------
// 6. Exact commutative table for the doubling chain.

DirectedFamily make_even_family(const SemigroupSpec& nat) {
  std::map<std::string, SubsetSpec> sets;
  sets.emplace("even", SubsetSpec::residue(nat, 2, 0));
  DirectedFamily fam(nat, {"even"}, std::move(sets), SubsetSpec::residue(nat, 1, 0));
  fam.set_shift_builtin(DirectedFamily::BuiltinShift::Constant);
  fam.set_meet_builtin(DirectedFamily::BuiltinMeet::Constant);
  return fam;
}

void criterion_6(Outcome& out) {
  auto nat = SemigroupSpec::nat_add();
  auto fam = make_even_family(nat);
  SequenceFamily f1({SequenceRule::affine(nat, 0, 2)});
  SequenceFamily f2({SequenceRule::affine(nat, 0, 2), SequenceRule::affine(nat, 0, 4)});
  FamilyChain chain({f1, f2});
  auto table = build_cst_commutative(nat, Window(600), fam, chain, {});
  if (table.alpha[0] != nat.nat(2) || table.h[0] != std::vector<std::uint64_t>{1})
    return out.fail("first row differs from the canonical table");
  if (table.alpha[1] != nat.nat(2) || table.h[1] != std::vector<std::uint64_t>{2})
    return out.fail("second row differs from the canonical table");
  auto rep = verify_cst(nat, table, chain, fam.set_of("even"));
  if (!rep.ok()) return out.fail("verification reports violations");
  if (rep.combinations != 5)
    return out.fail("expected 5 subchain membership checks, got " +
                    std::to_string(rep.combinations));
  if (!rep.ordering_ok) return out.fail("ordering check failed");
}

// --------------------------------------------------------------------------
// 7. Noncommutative tables: left-zero absorption and dual-path agreement.

void criterion_7(Outcome& out) {
  auto lz = SemigroupSpec::finite_table({{0, 0}, {1, 1}}, false);
  std::map<std::string, SubsetSpec> sets;
  sets.emplace("z", SubsetSpec::table_subset(lz, {0}));
  DirectedFamily fam(lz, {"z"}, std::move(sets), SubsetSpec::table_subset(lz, {0, 1}));
  fam.set_shift_builtin(DirectedFamily::BuiltinShift::Constant);
  fam.set_meet_builtin(DirectedFamily::BuiltinMeet::Constant);
  SequenceFamily f1({SequenceRule::periodic(lz, {lz.idx(0), lz.idx(1)})});
  SequenceFamily f2({SequenceRule::periodic(lz, {lz.idx(0), lz.idx(1)}),
                     SequenceRule::periodic(lz, {lz.idx(1), lz.idx(0)})});
  FamilyChain chain({f1, f2});
  auto table = build_cst_noncommutative(lz, Window(), fam, chain, {});
  auto rep = verify_cst_nc(lz, table, chain, fam.set_of("z"));
  if (!rep.ok()) return out.fail("left-zero table fails verification");
  for (const auto& term : enumerate_chain_terms_nc(lz, table, chain, chain.size()))
    if (term.value != lz.idx(0)) return out.fail("a chain product escapes the absorbing element");

  std::vector<std::vector<std::size_t>> zt(4, std::vector<std::size_t>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) zt[i][j] = (i + j) % 4;
  auto z4 = SemigroupSpec::finite_table(zt, true);
  std::map<std::string, SubsetSpec> zsets;
  zsets.emplace("even02", SubsetSpec::table_subset(z4, {0, 2}));
  DirectedFamily zfam(z4, {"even02"}, std::move(zsets),
                      SubsetSpec::table_subset(z4, {0, 1, 2, 3}));
  zfam.set_shift_builtin(DirectedFamily::BuiltinShift::Constant);
  zfam.set_meet_builtin(DirectedFamily::BuiltinMeet::Constant);
  SequenceFamily g1({SequenceRule::periodic(z4, {z4.idx(2)})});
  SequenceFamily g2({SequenceRule::periodic(z4, {z4.idx(2)}),
                     SequenceRule::periodic(z4, {z4.idx(0)})});
  FamilyChain zchain({g1, g2});
  auto com = build_cst_commutative(z4, Window(), zfam, zchain, {});
  auto nc = build_cst_noncommutative(z4, Window(), zfam, zchain, {});
  const auto& target = zfam.set_of("even02");
  if (!verify_cst(z4, com, zchain, target).ok())
    return out.fail("commutative path fails on the cyclic table");
  if (!verify_cst_nc(z4, nc, zchain, target).ok())
    return out.fail("noncommutative path fails on the cyclic table");
  auto cterms = enumerate_chain_terms(z4, com, zchain, 2);
  auto nterms = enumerate_chain_terms_nc(z4, nc, zchain, 2);
  if (cterms.size() != nterms.size()) return out.fail("combination counts differ between paths");
  for (std::size_t i = 0; i < cterms.size(); ++i)
    if (target.contains(cterms[i].value) != target.contains(nterms[i].value))
      return out.fail("membership verdicts differ between the two paths");
}

// --------------------------------------------------------------------------
// 8. Builder-verifier closure with mutation detection.

void criterion_8(Outcome& out) {
  auto nat = SemigroupSpec::nat_add();
  std::mt19937_64 rng(515151);
  for (int round = 0; round < 50; ++round) {
    const std::uint64_t m = 2 + rng() % 3;
    std::map<std::string, SubsetSpec> sets;
    sets.emplace("a", SubsetSpec::residue(nat, m, 0));
    DirectedFamily fam(nat, {"a"}, std::move(sets), SubsetSpec::residue(nat, 1, 0));
    fam.set_shift_builtin(DirectedFamily::BuiltinShift::Constant);
    fam.set_meet_builtin(DirectedFamily::BuiltinMeet::Constant);

    const std::size_t members = 1 + rng() % 3;
    std::vector<SequenceFamily> fams;
    std::vector<SequenceRule> rules{SequenceRule::affine(nat, 0, m)};
    fams.emplace_back(rules);
    for (std::size_t i = 1; i < members; ++i) {
      while (true) {
        auto r = SequenceRule::affine(nat, m * (rng() % 3), m * (1 + rng() % 3));
        bool dup = false;
        for (const auto& have : rules) dup = dup || have.key() == r.key();
        if (!dup) {
          rules.push_back(r);
          break;
        }
      }
      fams.emplace_back(rules);
    }
    FamilyChain chain(fams);

    auto table = build_cst_commutative(nat, Window(3000), fam, chain, {});
    const auto& target = fam.set_of("a");
    auto rep = verify_cst(nat, table, chain, target);
    if (!rep.ok() || !rep.violations.empty())
      return out.fail("a fresh build fails verification at round " + std::to_string(round));

    // Tampering one witness breaks membership in every combination using it:
    // all sequence values are multiples of m, the nudge is not.
    auto bad = table;
    const std::size_t victim = rng() % members;
    bad.alpha[victim] = nat.nat(bad.alpha[victim].nat() + 1);
    if (verify_cst(nat, bad, chain, target).ok())
      return out.fail("a membership mutation went undetected at round " + std::to_string(round));

    if (members >= 2) {
      auto misordered = table;
      misordered.h[members - 1] = misordered.h[members - 2];
      auto mrep = verify_cst(nat, misordered, chain, target);
      if (mrep.ordering_ok)
        return out.fail("an ordering mutation went undetected at round " + std::to_string(round));
    }
  }
}

// --------------------------------------------------------------------------
// 9. Finite-table ground truth against exhaustive oracles.

void criterion_9(Outcome& out) {
  const std::size_t expected_counts[] = {0, 1, 8, 113};
  for (std::size_t n = 1; n <= 3; ++n) {
    std::size_t valid_count = 0;
    const std::size_t cells = n * n;
    const std::uint64_t total = pow_sz(n, cells);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<std::vector<std::size_t>> tbl(n, std::vector<std::size_t>(n));
      std::uint64_t rest = code;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          tbl[i][j] = rest % n;
          rest /= n;
        }
      auto s = SemigroupSpec::finite_table(tbl, false);
      if (!validate(s).valid()) continue;
      ++valid_count;

      std::vector<Element> elems;
      for (std::size_t i = 0; i < n; ++i) elems.push_back(s.idx(i));

      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<std::size_t> idxs;
        for (std::size_t i = 0; i < n; ++i)
          if ((mask >> i) & 1) idxs.push_back(i);
        auto a = SubsetSpec::table_subset(s, idxs);

        // syndetic oracle: some translate set covers everything
        bool oracle_syndetic = false;
        for (std::uint64_t f = 1; f < (std::uint64_t{1} << n) && !oracle_syndetic; ++f) {
          bool covers = true;
          for (const auto& e : elems) {
            bool hit = false;
            for (std::size_t i = 0; i < n; ++i)
              if ((f >> i) & 1) hit = hit || a.contains(s.compose(elems[i], e));
            if (!hit) {
              covers = false;
              break;
            }
          }
          oracle_syndetic = covers;
        }
        auto syn = check_syndetic(s, Window(), a, n);
        if ((syn.verdict == Verdict::Holds) != oracle_syndetic)
          return out.fail("syndetic disagrees with the oracle on a table of size " +
                          std::to_string(n));

        // thick oracle: every probe is placeable
        std::vector<std::vector<Element>> probes;
        bool oracle_thick = true;
        for (std::uint64_t p = 1; p < (std::uint64_t{1} << n); ++p) {
          std::vector<Element> probe;
          for (std::size_t i = 0; i < n; ++i)
            if ((p >> i) & 1) probe.push_back(elems[i]);
          probes.push_back(probe);
          bool placeable = false;
          for (const auto& x : elems) {
            bool all = true;
            for (const auto& e : probe) all = all && a.contains(s.compose(e, x));
            placeable = placeable || all;
          }
          oracle_thick = oracle_thick && placeable;
        }
        auto thick = check_thick(s, Window(), a, probes);
        if ((thick.verdict == Verdict::Holds) != oracle_thick)
          return out.fail("thick disagrees with the oracle on a table of size " +
                          std::to_string(n));

        // J-set search vs direct interleaving enumeration, m <= 2
        std::vector<SequenceRule> rules;
        for (std::size_t i = 0; i < n; ++i)
          rules.push_back(SequenceRule::periodic(s, {elems[i]}));
        SequenceFamily fam(rules);

        bool oracle_j = false;
        std::vector<std::vector<std::uint64_t>> tuples{{1}, {2}, {1, 2}};
        for (const auto& t : tuples) {
          if (oracle_j) break;
          std::vector<std::size_t> pick(t.size() + 1, 0);
          while (true) {
            std::vector<Element> av;
            for (std::size_t p : pick) av.push_back(elems[p]);
            bool all = true;
            for (const auto& f : fam.rules())
              if (!a.contains(eval_x(s, av, t, f))) {
                all = false;
                break;
              }
            if (all) {
              oracle_j = true;
              break;
            }
            std::size_t pos = pick.size();
            while (pos > 0 && ++pick[pos - 1] == n) pick[--pos] = 0;
            if (pos == 0) break;
          }
        }

        NcBounds bounds;
        bounds.max_m = 2;
        bounds.max_index = 2;
        auto got = find_j_witness_nc(s, Window(), a, fam, JsetStrategy::BruteForce, bounds);
        if (got.has_value() != oracle_j)
          return out.fail("witness search disagrees with triple enumeration on a table of size " +
                          std::to_string(n));
        if (got && !verify_j_witness_nc(s, a, fam, *got, 0))
          return out.fail("a found witness fails verification");
      }
    }
    if (valid_count != expected_counts[n])
      return out.fail("size " + std::to_string(n) + ": " + std::to_string(valid_count) +
                      " associative tables, expected " + std::to_string(expected_counts[n]));
  }
}

// --------------------------------------------------------------------------
// 10. Every sample run emits a document the CLI rechecks verbatim.

void criterion_10(Outcome& out) {
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"validate", "validate_bad_table.json"},
      {"check syndetic", "syndetic_nat_mod2.json"},
      {"check syndetic", "syndetic_mod4_table.json"},
      {"check syndetic", "syndetic_fails_sparse.json"},
      {"check thick", "thick_intervals.json"},
      {"check pws", "pws_sparse_intervals.json"},
      {"check cwpws", "cwpws_residues.json"},
      {"hj number", "hj_number_2_2.json"},
      {"hj line", "hj_line_first_letter.json"},
      {"jset find", "jset_bruteforce.json"},
      {"jset find", "jset_hales_jewett.json"},
      {"jset find", "jset_freeword_bruteforce.json"},
      {"jset find", "jset_freeword_hales_jewett.json"},
      {"cst build", "cst_build_commutative.json"},
      {"cst build", "cst_build_noncommutative.json"},
  };

  fs::path work = fs::temp_directory_path() / "cstk_acceptance";
  fs::create_directories(work);

  for (const auto& [subcmd, file] : runs) {
    const fs::path in = fs::path(g_samples) / file;
    const fs::path emitted = work / (file + ".out.json");
    const fs::path rechecked = work / (file + ".recheck.json");

    const int emit_rc = shell("\"" + g_cli + "\" " + subcmd + " \"" + in.string() +
                              "\" --output \"" + emitted.string() + "\" 2>/dev/null");
    if (emit_rc != 0 && emit_rc != 1)
      return out.fail(file + ": emission exited with " + std::to_string(emit_rc));

    const int recheck_rc = shell("\"" + g_cli + "\" recheck \"" + emitted.string() +
                                 "\" --output \"" + rechecked.string() + "\" 2>/dev/null");
    if (recheck_rc != 0)
      return out.fail(file + ": recheck exited with " + std::to_string(recheck_rc));

    std::ifstream rein(rechecked);
    if (!rein) return out.fail(file + ": recheck produced no output file");
    json rdoc = json::parse(rein, nullptr, false);
    if (rdoc.is_discarded() || rdoc.value("match", false) != true)
      return out.fail(file + ": recheck document does not record a match");
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <cstk-cli> <samples-dir>\n", argv[0]);
    return 2;
  }
  g_cli = argv[1];
  g_samples = argv[2];

  bool all = true;
  all &= run_criterion(1, "HJ(2,2) exact with bichromatic lower-bound certificate", 1.0,
                       criterion_1);
  all &= run_criterion(2, "line counts match (t+1)^N - t^N with structural reverify", 5.0,
                       criterion_2);
  all &= run_criterion(3, "200 randomized commutative witness searches stay sound", 60.0,
                       criterion_3);
  all &= run_criterion(4, "constructive hits imply exhaustive hits on the same window", 0,
                       criterion_4);
  all &= run_criterion(5, "constructive pipeline names all six transcript steps", 0,
                       criterion_5);
  all &= run_criterion(6, "doubling chain builds its canonical two-row table", 1.0, criterion_6);
  all &= run_criterion(7, "left-zero absorption and dual-path verdict agreement", 5.0,
                       criterion_7);
  all &= run_criterion(8, "50 randomized builds verify, mutations are detected", 0, criterion_8);
  all &= run_criterion(9, "small finite tables agree with exhaustive oracles", 120.0,
                       criterion_9);
  all &= run_criterion(10, "every sample document rechecks through the CLI", 0, criterion_10);

  return all ? 0 : 1;
}
