#pragma once

// Iterated witness tables over an increasing chain of sequence families
// F_1 ⊂ F_2 ⊂ ... ⊂ F_k, driven by a downward directed family ⟨A_N⟩.
//
// Each step assigns the current family a witness whose index block lies
// strictly above every earlier block. The target set of step i is A_M where
// M resolves the meet of the start index with one shifted index per
// previously reachable combination value c (the shift of A_N0 by c), so
// that membership of the new witness in A_M forces every combined value
// across subchains back into A_N0.
//
// verify_cst replays all combinations of every nonempty subchain with one
// sequence chosen per member and checks each combined value by membership
// alone, plus the block ordering between consecutive members.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jsets.hpp"
#include "semigroup.hpp"
#include "structures.hpp"
#include "subset.hpp"

namespace cstk {

struct ChainLimits {
  std::size_t max_members = 6;
  std::size_t max_family_size = 4;
};

class FamilyChain {
public:
  explicit FamilyChain(std::vector<SequenceFamily> members, ChainLimits limits = {})
      : members_(std::move(members)) {
    if (members_.empty()) throw SchemaError("chain has no members");
    if (members_.size() > limits.max_members)
      throw SchemaError("chain exceeds " + std::to_string(limits.max_members) + " members");
    for (const auto& fam : members_)
      if (fam.size() > limits.max_family_size)
        throw SchemaError("family exceeds " + std::to_string(limits.max_family_size) +
                          " sequences");
    for (std::size_t i = 1; i < members_.size(); ++i)
      if (!members_[i].strictly_includes(members_[i - 1]))
        throw SchemaError("chain member " + std::to_string(i + 1) +
                          " does not strictly include member " + std::to_string(i));
  }

  std::size_t size() const { return members_.size(); }
  const SequenceFamily& at(std::size_t i) const { return members_[i]; }
  const std::vector<SequenceFamily>& members() const { return members_; }
  const SemigroupSpec& spec() const { return members_.front().spec(); }

private:
  std::vector<SequenceFamily> members_;
};

struct CstStepTrace {
  std::size_t member = 0;  // 1-based
  std::string strategy;
  std::uint64_t bound = 0;                // min_bound / n_bound used for the search
  std::size_t combination_count = 0;      // distinct subchain values shifted
  std::vector<std::pair<std::string, std::string>> shifts;  // (value, resolved index)
  std::string meet_index;
  bool widened = false;
};

struct CstTable {
  std::vector<Element> alpha;
  std::vector<std::vector<std::uint64_t>> h;
  std::string start_index;
  std::vector<CstStepTrace> trace;
};

struct CstTableNC {
  std::vector<std::vector<Element>> alpha;   // per member: m+1 elements
  std::vector<std::vector<std::uint64_t>> tau;  // per member: m indices
  std::string start_index;
  std::vector<CstStepTrace> trace;
};

struct ChainTerm {
  std::vector<std::size_t> subchain;  // ascending member positions, 0-based
  std::vector<std::size_t> picks;     // chosen rule position per subchain member
  Element value;
};

namespace detail {

template <class TermOf>
std::vector<ChainTerm> enumerate_terms(const FamilyChain& chain, std::size_t upto,
                                       TermOf&& term_of) {
  std::vector<ChainTerm> out;
  if (upto == 0) return out;
  std::vector<std::size_t> subchain;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < upto; ++i) {
      subchain.push_back(i);
      std::vector<std::size_t> picks(subchain.size(), 0);
      while (true) {
        out.push_back(term_of(subchain, picks));
        std::size_t j = picks.size();
        bool carried = false;
        while (j > 0) {
          --j;
          if (picks[j] + 1 < chain.at(subchain[j]).size()) {
            ++picks[j];
            for (std::size_t l = j + 1; l < picks.size(); ++l) picks[l] = 0;
            carried = true;
            break;
          }
        }
        if (!carried) break;
      }
      self(self, i + 1);
      subchain.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

// All combined values over nonempty subchains of members 1..upto with one
// sequence chosen per member: Σ (α_i + Σ_{t∈H_i} f(t)) in chain order.
inline std::vector<ChainTerm> enumerate_chain_terms(const SemigroupSpec& s,
                                                    const CstTable& table,
                                                    const FamilyChain& chain,
                                                    std::size_t upto) {
  if (upto > table.alpha.size() || upto > chain.size())
    throw ContractError("chain terms requested beyond the filled table");
  return detail::enumerate_terms(chain, upto, [&](const std::vector<std::size_t>& subchain,
                                                  const std::vector<std::size_t>& picks) {
    ChainTerm term;
    term.subchain = subchain;
    term.picks = picks;
    std::optional<Element> acc;
    for (std::size_t j = 0; j < subchain.size(); ++j) {
      const std::size_t gi = subchain[j];
      const auto& f = chain.at(gi).rules()[picks[j]];
      Element part = s.compose(table.alpha[gi], sum_over(s, f, table.h[gi]));
      acc = acc ? s.compose(*acc, part) : part;
    }
    term.value = *acc;
    return term;
  });
}

inline std::vector<ChainTerm> enumerate_chain_terms_nc(const SemigroupSpec& s,
                                                       const CstTableNC& table,
                                                       const FamilyChain& chain,
                                                       std::size_t upto) {
  if (upto > table.alpha.size() || upto > chain.size())
    throw ContractError("chain terms requested beyond the filled table");
  return detail::enumerate_terms(chain, upto, [&](const std::vector<std::size_t>& subchain,
                                                  const std::vector<std::size_t>& picks) {
    ChainTerm term;
    term.subchain = subchain;
    term.picks = picks;
    std::optional<Element> acc;
    for (std::size_t j = 0; j < subchain.size(); ++j) {
      const std::size_t gi = subchain[j];
      const auto& f = chain.at(gi).rules()[picks[j]];
      Element part = eval_x(s, table.alpha[gi], table.tau[gi], f);
      acc = acc ? s.compose(*acc, part) : part;
    }
    term.value = *acc;
    return term;
  });
}

struct CstViolation {
  std::vector<std::size_t> subchain;
  std::vector<std::size_t> picks;
  std::string kind;  // "membership" or "ordering"
  std::string detail;
};

struct CstVerification {
  std::uint64_t combinations = 0;
  bool ordering_ok = true;
  std::vector<CstViolation> violations;

  bool ok() const { return ordering_ok && violations.empty(); }
};

inline CstVerification verify_cst(const SemigroupSpec& s, const CstTable& table,
                                  const FamilyChain& chain, const SubsetSpec& target) {
  if (table.alpha.size() != chain.size() || table.h.size() != chain.size())
    throw ContractError("table shape does not match the chain");
  CstVerification rep;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (table.h[i].empty())
      throw ContractError("empty index block at member " + std::to_string(i + 1));
    for (std::size_t j = 1; j < table.h[i].size(); ++j)
      if (table.h[i][j - 1] >= table.h[i][j])
        throw ContractError("index block at member " + std::to_string(i + 1) +
                            " is not strictly increasing");
  }
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (table.h[i - 1].back() >= table.h[i].front()) {
      rep.ordering_ok = false;
      rep.violations.push_back(
          {{i - 1, i}, {}, "ordering",
           "max H(" + std::to_string(i) + ") = " + std::to_string(table.h[i - 1].back()) +
               " does not precede min H(" + std::to_string(i + 1) + ") = " +
               std::to_string(table.h[i].front())});
    }
  }
  for (auto& term : enumerate_chain_terms(s, table, chain, chain.size())) {
    ++rep.combinations;
    if (!target.contains(term.value))
      rep.violations.push_back({term.subchain, term.picks, "membership",
                                "combined value " + s.show(term.value) + " is outside the target set"});
  }
  return rep;
}

inline CstVerification verify_cst_nc(const SemigroupSpec& s, const CstTableNC& table,
                                     const FamilyChain& chain, const SubsetSpec& target) {
  if (table.alpha.size() != chain.size() || table.tau.size() != chain.size())
    throw ContractError("table shape does not match the chain");
  CstVerification rep;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (table.tau[i].empty() || table.alpha[i].size() != table.tau[i].size() + 1)
      throw ContractError("malformed interleaving at member " + std::to_string(i + 1));
    for (std::size_t j = 1; j < table.tau[i].size(); ++j)
      if (table.tau[i][j - 1] >= table.tau[i][j])
        throw ContractError("index tuple at member " + std::to_string(i + 1) +
                            " is not strictly increasing");
  }
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (table.tau[i - 1].back() >= table.tau[i].front()) {
      rep.ordering_ok = false;
      rep.violations.push_back(
          {{i - 1, i}, {}, "ordering",
           "last index of member " + std::to_string(i) + " does not precede the first of member " +
               std::to_string(i + 1)});
    }
  }
  for (auto& term : enumerate_chain_terms_nc(s, table, chain, chain.size())) {
    ++rep.combinations;
    if (!target.contains(term.value))
      rep.violations.push_back({term.subchain, term.picks, "membership",
                                "combined value " + s.show(term.value) + " is outside the target set"});
  }
  return rep;
}

struct CstBuildOptions {
  JsetStrategy strategy = JsetStrategy::BruteForce;
  std::size_t max_h = 3;
  std::uint64_t max_index = 16;
  std::size_t max_m = 2;
  std::uint64_t nc_max_index = 8;
  std::size_t len_cap = 8;
  std::vector<Element> translates;  // constructive strategy only
  std::optional<std::string> start_index;
  bool widen_on_failure = true;
  ResolveOptions resolve;
};

namespace detail {

inline std::vector<Element> distinct_values(const SemigroupSpec&, std::vector<ChainTerm> terms) {
  std::vector<Element> vals;
  vals.reserve(terms.size());
  for (auto& t : terms) vals.push_back(t.value);
  std::sort(vals.begin(), vals.end(), element_less);
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

// Meet of the start index with the shift of every reachable combination
// value; base step resolves to the start index directly.
inline std::string resolve_step_target(const DirectedFamily& fam, const Window& w,
                                       const std::string& start,
                                       const std::vector<Element>& values,
                                       const ResolveOptions& opt, CstStepTrace& trace) {
  const auto& a0 = fam.set_of(start);
  std::vector<std::string> indices{start};
  for (const auto& c : values) {
    if (!a0.contains(c))
      throw ContractError("combined value " + fam.spec().show(c) +
                          " escaped A_" + start + " before the next step");
    std::string m = fam.resolve_shift(w, start, c, opt);
    trace.shifts.emplace_back(fam.spec().show(c), m);
    indices.push_back(m);
  }
  std::string meet = indices.size() == 1 ? start : fam.resolve_meet(w, indices, opt);
  trace.meet_index = meet;
  trace.combination_count = values.size();
  return meet;
}

}  // namespace detail

inline CstTable build_cst_commutative(const SemigroupSpec& s, const Window& w,
                                      const DirectedFamily& fam, const FamilyChain& chain,
                                      const CstBuildOptions& opts) {
  if (!s.commutative()) throw ContractError("commutative builder on a non-commutative semigroup");
  fam.validate_on(w);
  const std::string start = opts.start_index.value_or(fam.indices().front());
  (void)fam.set_of(start);

  CstTable table;
  table.start_index = start;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    CstStepTrace trace;
    trace.member = i + 1;
    trace.strategy = opts.strategy == JsetStrategy::BruteForce ? "bruteforce" : "hales-jewett";

    auto terms = enumerate_chain_terms(s, table, chain, i);
    auto values = detail::distinct_values(s, std::move(terms));
    const std::string target =
        detail::resolve_step_target(fam, w, start, values, opts.resolve, trace);

    std::uint64_t min_bound = 0;
    for (const auto& block : table.h)
      if (!block.empty()) min_bound = std::max(min_bound, block.back());
    trace.bound = min_bound;

    const auto& a_target = fam.set_of(target);
    auto search = [&](const Window& win) -> std::optional<JWitness> {
      if (opts.strategy == JsetStrategy::BruteForce)
        return find_j_witness_bruteforce(s, win, a_target, chain.at(i), min_bound, opts.max_h,
                                         opts.max_index);
      return find_j_witness_hj(s, win, a_target, chain.at(i), opts.translates, min_bound,
                               opts.len_cap);
    };

    auto witness = search(w);
    if (!witness && opts.widen_on_failure && w.bound()) {
      witness = search(w.doubled());
      if (witness) trace.widened = true;
    }
    if (!witness)
      throw SearchExhausted("no witness for chain member " + std::to_string(i + 1) +
                            " against A_" + target + " within the configured bounds");

    table.alpha.push_back(witness->a);
    table.h.push_back(witness->h);
    table.trace.push_back(std::move(trace));
  }

  auto report = verify_cst(s, table, chain, fam.set_of(start));
  if (!report.ok()) throw std::logic_error("built table failed its own verification");
  return table;
}

inline CstTableNC build_cst_noncommutative(const SemigroupSpec& s, const Window& w,
                                           const DirectedFamily& fam, const FamilyChain& chain,
                                           const CstBuildOptions& opts) {
  fam.validate_on(w);
  const std::string start = opts.start_index.value_or(fam.indices().front());
  (void)fam.set_of(start);

  CstTableNC table;
  table.start_index = start;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    CstStepTrace trace;
    trace.member = i + 1;
    trace.strategy = opts.strategy == JsetStrategy::BruteForce ? "bruteforce" : "hales-jewett";

    auto terms = enumerate_chain_terms_nc(s, table, chain, i);
    auto values = detail::distinct_values(s, std::move(terms));
    const std::string target =
        detail::resolve_step_target(fam, w, start, values, opts.resolve, trace);

    std::uint64_t n_bound = 0;
    for (const auto& block : table.tau)
      if (!block.empty()) n_bound = std::max(n_bound, block.back());
    trace.bound = n_bound;

    NcBounds bounds;
    bounds.n_bound = n_bound;
    bounds.max_m = opts.max_m;
    bounds.max_index = opts.nc_max_index;
    bounds.len_cap = opts.len_cap;

    const auto& a_target = fam.set_of(target);
    auto search = [&](const Window& win) {
      return find_j_witness_nc(s, win, a_target, chain.at(i), opts.strategy, bounds,
                               opts.translates);
    };

    auto witness = search(w);
    if (!witness && opts.widen_on_failure && w.bound()) {
      witness = search(w.doubled());
      if (witness) trace.widened = true;
    }
    if (!witness)
      throw SearchExhausted("no witness for chain member " + std::to_string(i + 1) +
                            " against A_" + target + " within the configured bounds");

    table.alpha.push_back(witness->a);
    table.tau.push_back(witness->t);
    table.trace.push_back(std::move(trace));
  }

  auto report = verify_cst_nc(s, table, chain, fam.set_of(start));
  if (!report.ok()) throw std::logic_error("built table failed its own verification");
  return table;
}

}  // namespace cstk
