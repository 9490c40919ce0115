#pragma once

// J-set witnesses and their searches.
//
// Commutative form: (a, H) with a ∈ S, H a finite nonempty set of indices,
// such that a + Σ_{t∈H} f(t) ∈ A for every f in the family.
//
// Noncommutative form: (a(1..m+1), t(1..m)) with t strictly increasing,
// such that a(1)·f(t(1))·a(2)· ... ·a(m)·f(t(m))·a(m+1) ∈ A for every f.
//
// Two strategies: exhaustive enumeration over (H, a) respectively
// (m, t, a), and a constructive route that builds a product map over a
// combinatorial cube, places it inside a union of translate preimages,
// colors words by their least working translate and extracts the witness
// from a monochromatic line. The constructive route records a transcript
// of its six steps.
//
// Canonical search orders: H by maximum ascending then lexicographic on
// the ascending tuple; noncommutative candidates by m ascending, then the
// index tuple lexicographic, then the a-tuple in window order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hales_jewett.hpp"
#include "semigroup.hpp"
#include "subset.hpp"

namespace cstk {

struct JWitness {
  Element a;
  std::vector<std::uint64_t> h;  // ascending
};

struct JWitnessNC {
  std::vector<Element> a;        // m+1 elements
  std::vector<std::uint64_t> t;  // m indices, strictly increasing
};

struct Transcript {
  struct Step {
    std::size_t attempt = 0;  // working length N
    int step = 0;
    std::string name;
    bool ok = false;
    std::string detail;
  };
  std::vector<Step> steps;
  std::string summary;

  void add(std::size_t attempt, int step, std::string name, bool ok, std::string detail) {
    steps.push_back({attempt, step, std::move(name), ok, std::move(detail)});
  }
};

inline Element sum_over(const SemigroupSpec& s, const SequenceRule& f,
                        const std::vector<std::uint64_t>& h) {
  std::vector<Element> parts;
  parts.reserve(h.size());
  for (auto t : h) parts.push_back(f.eval(t));
  return product_ordered(s, parts);
}

inline bool verify_j_witness(const SemigroupSpec& s, const SubsetSpec& a_set,
                             const SequenceFamily& fam, const JWitness& w,
                             std::uint64_t min_bound = 0) {
  if (!s.commutative()) throw ContractError("commutative witness against a non-commutative semigroup");
  if (w.h.empty()) return false;
  for (std::size_t i = 1; i < w.h.size(); ++i)
    if (w.h[i - 1] >= w.h[i]) return false;
  if (w.h.front() <= min_bound) return false;
  s.require_own(w.a, "witness");
  for (const auto& f : fam.rules()) {
    if (!f.defined_at(w.h.back())) return false;
    auto total = s.try_compose(w.a, sum_over(s, f, w.h));
    if (!total || !a_set.contains(*total)) return false;
  }
  return true;
}

// a(1)·f(t(1))·a(2)·...·a(m)·f(t(m))·a(m+1)
inline Element eval_x(const SemigroupSpec& s, const std::vector<Element>& a,
                      const std::vector<std::uint64_t>& t, const SequenceRule& f) {
  if (t.empty() || a.size() != t.size() + 1)
    throw ContractError("eval_x needs m >= 1 indices and m+1 interleaved elements");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i - 1] >= t[i]) throw ContractError("eval_x indices must be strictly increasing");
  Element acc = a.front();
  s.require_own(acc, "eval_x");
  for (std::size_t j = 0; j < t.size(); ++j) {
    acc = s.compose(acc, f.eval(t[j]));
    s.require_own(a[j + 1], "eval_x");
    acc = s.compose(acc, a[j + 1]);
  }
  return acc;
}

inline bool verify_j_witness_nc(const SemigroupSpec& s, const SubsetSpec& a_set,
                                const SequenceFamily& fam, const JWitnessNC& w,
                                std::uint64_t n_bound = 0) {
  if (w.t.empty() || w.a.size() != w.t.size() + 1) return false;
  for (std::size_t i = 1; i < w.t.size(); ++i)
    if (w.t[i - 1] >= w.t[i]) return false;
  if (w.t.front() <= n_bound) return false;
  for (const auto& f : fam.rules()) {
    if (!f.defined_at(w.t.back())) return false;
    auto r = s.try_compose(w.a.front(), f.eval(w.t.front()));
    if (!r) return false;
    bool bad = false;
    for (std::size_t j = 0; j + 1 < w.t.size() && !bad; ++j) {
      r = s.try_compose(*r, w.a[j + 1]);
      if (!r) { bad = true; break; }
      r = s.try_compose(*r, f.eval(w.t[j + 1]));
      if (!r) bad = true;
    }
    if (bad) return false;
    r = s.try_compose(*r, w.a.back());
    if (!r || !a_set.contains(*r)) return false;
  }
  return true;
}

namespace detail {

// Index sets H ⊆ (min_bound, max_index], |H| <= max_h, visited with the set
// maximum ascending and, for a fixed maximum, lexicographically on the
// ascending tuple. fn returning true stops the scan.
template <class Fn>
bool for_each_h(std::uint64_t min_bound, std::size_t max_h, std::uint64_t max_index, Fn&& fn) {
  if (max_h == 0) return false;
  std::vector<std::uint64_t> h;
  for (std::uint64_t maxv = min_bound + 1; maxv <= max_index; ++maxv) {
    auto rec = [&](auto&& self, std::uint64_t start) -> bool {
      if (h.size() + 1 < max_h) {
        for (std::uint64_t v = start; v < maxv; ++v) {
          h.push_back(v);
          if (self(self, v + 1)) return true;
          h.pop_back();
        }
      }
      h.push_back(maxv);
      bool stop = fn(static_cast<const std::vector<std::uint64_t>&>(h));
      h.pop_back();
      return stop;
    };
    if (rec(rec, min_bound + 1)) return true;
  }
  return false;
}

}  // namespace detail

// Exhaustive commutative search in canonical order. Returns the first
// witness, which is therefore deterministic.
inline std::optional<JWitness> find_j_witness_bruteforce(const SemigroupSpec& s, const Window& w,
                                                         const SubsetSpec& a_set,
                                                         const SequenceFamily& fam,
                                                         std::uint64_t min_bound,
                                                         std::size_t max_h,
                                                         std::uint64_t max_index) {
  if (!s.commutative())
    throw ContractError("exhaustive commutative search on a non-commutative semigroup");
  const std::uint64_t max_eff = std::min(max_index, fam.domain_end());
  auto elems = window_elements(s, w);

  std::optional<JWitness> hit;
  detail::for_each_h(min_bound, max_h, max_eff, [&](const std::vector<std::uint64_t>& h) {
    std::vector<Element> sums;
    sums.reserve(fam.size());
    for (const auto& f : fam.rules()) sums.push_back(sum_over(s, f, h));
    for (const auto& a : elems) {
      bool all = true;
      for (const auto& sum : sums) {
        auto total = s.try_compose(a, sum);
        if (!total || !a_set.contains(*total)) {
          all = false;
          break;
        }
      }
      if (all) {
        hit = JWitness{a, h};
        return true;
      }
    }
    return false;
  });
  return hit;
}

namespace detail {

inline std::string h_text(const std::vector<std::uint64_t>& h) {
  std::string out = "{";
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(h[i]);
  }
  return out + "}";
}

}  // namespace detail

// Constructive commutative search. translates is the finite set E whose
// preimage union ⋃_{t∈E} (-t + A) the product image must enter; it is the
// piecewise-syndetic certificate's F when A is piecewise syndetic.
inline std::optional<JWitness> find_j_witness_hj(const SemigroupSpec& s, const Window& w,
                                                 const SubsetSpec& a_set,
                                                 const SequenceFamily& fam,
                                                 const std::vector<Element>& translates,
                                                 std::uint64_t min_bound, std::size_t len_cap,
                                                 Transcript* tr = nullptr) {
  if (!s.commutative())
    throw ContractError("constructive commutative search on a non-commutative semigroup");
  if (translates.empty()) throw SchemaError("constructive search needs a nonempty translate set");
  for (const auto& t : translates) s.require_own(t, "translates");
  const std::size_t n = fam.size();
  if (n > 8) throw SchemaError("line-based search supports at most 8 sequences");
  auto elems = window_elements(s, w);

  auto log = [&](std::size_t att, int step, const char* name, bool ok, std::string detail) {
    if (tr) tr->add(att, step, name, ok, std::move(detail));
  };

  for (std::size_t len = 1; len <= len_cap; ++len) {
    if (fam.domain_end() < min_bound + len) {
      log(len, 1, "working-length", false, "family undefined beyond index " +
          std::to_string(fam.domain_end()));
      break;
    }
    log(len, 1, "working-length", true,
        "N=" + std::to_string(len) + ", alphabet " + std::to_string(n));

    const auto cube = static_cast<std::size_t>(pow_u64(n, len));
    if (cube > (std::size_t{1} << 18)) {
      log(len, 2, "product-map", false, "cube too large");
      break;
    }
    // values[j][i] = f_j(min_bound + i + 1)
    std::vector<std::vector<Element>> values(n, std::vector<Element>(len));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < len; ++i)
        values[j][i] = fam.rules()[j].eval(min_bound + i + 1);
    std::vector<Element> image(cube);
    bool overflow = false;
    for (std::size_t rank = 0; rank < cube && !overflow; ++rank) {
      std::size_t rest = rank;
      std::optional<Element> acc;
      for (std::size_t i = len; i-- > 0;) {
        const std::size_t j = rest % n;
        rest /= n;
        if (!acc) {
          acc = values[j][i];
        } else {
          auto next = s.try_compose(values[j][i], *acc);
          if (!next) {
            overflow = true;
            break;
          }
          acc = next;
        }
      }
      if (!overflow) image[rank] = *acc;
    }
    if (overflow) {
      log(len, 2, "product-map", false, "composition overflow");
      break;
    }
    log(len, 2, "product-map", true, std::to_string(cube) + " products over indices " +
        std::to_string(min_bound + 1) + ".." + std::to_string(min_bound + len));

    // least translate placing y inside A, as a coloring ingredient
    auto least_translate = [&](const Element& y) -> int {
      for (std::size_t i = 0; i < translates.size(); ++i) {
        auto z = s.try_compose(translates[i], y);
        if (z && a_set.contains(*z)) return static_cast<int>(i) + 1;
      }
      return 0;
    };

    std::optional<Element> base;
    std::vector<int> chi(cube, 0);
    for (const auto& b : elems) {
      bool all = true;
      for (std::size_t rank = 0; rank < cube; ++rank) {
        auto y = s.try_compose(b, image[rank]);
        const int c = y ? least_translate(*y) : 0;
        if (c == 0) {
          all = false;
          break;
        }
        chi[rank] = c;
      }
      if (all) {
        base = b;
        break;
      }
    }
    if (!base) {
      log(len, 3, "thickness", false, "no window element places the product image in the translate union");
      continue;
    }
    log(len, 3, "thickness", true, "base " + s.show(*base));
    log(len, 4, "coloring", true, std::to_string(translates.size()) + " colors by least translate");

    Coloring coloring(static_cast<int>(translates.size()),
                      [&](const Word& word) { return chi[word_rank(word, static_cast<std::uint8_t>(n))]; });
    auto line = find_monochromatic_line(static_cast<std::uint8_t>(n), len, coloring);
    if (!line) {
      log(len, 5, "line-search", false, "no monochromatic line at this length");
      continue;
    }
    const int color = coloring.color_of(instantiate(*line, 1, static_cast<std::uint8_t>(n)));
    log(len, 5, "line-search", true, "pattern " + pattern_text(*line) + ", color " +
        std::to_string(color));

    JWitness witness;
    std::vector<Element> fixed_parts;
    fixed_parts.push_back(translates[static_cast<std::size_t>(color) - 1]);
    fixed_parts.push_back(*base);
    for (std::size_t p = 0; p < len; ++p) {
      if (line->symbols[p] == 0)
        witness.h.push_back(min_bound + p + 1);
      else
        fixed_parts.push_back(values[line->symbols[p] - 1][p]);
    }
    witness.a = product_ordered(s, fixed_parts);
    if (!verify_j_witness(s, a_set, fam, witness, min_bound))
      throw std::logic_error("extracted witness failed re-verification");
    log(len, 6, "extraction", true,
        "a=" + s.show(witness.a) + ", H=" + detail::h_text(witness.h));
    if (tr) tr->summary = "witness extracted at working length " + std::to_string(len);
    return witness;
  }
  if (tr && tr->summary.empty()) tr->summary = "no witness within the length cap";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Noncommutative searches.

enum class JsetStrategy { BruteForce, HalesJewett };

struct NcBounds {
  std::uint64_t n_bound = 0;    // all indices must exceed this
  std::size_t max_m = 2;        // interleaving depth for the exhaustive search
  std::uint64_t max_index = 8;  // largest sequence index tried
  std::size_t len_cap = 8;      // working lengths for the constructive search
};

inline std::optional<JWitnessNC> find_j_witness_nc_bruteforce(const SemigroupSpec& s,
                                                              const Window& w,
                                                              const SubsetSpec& a_set,
                                                              const SequenceFamily& fam,
                                                              const NcBounds& bounds) {
  const std::uint64_t max_eff = std::min(bounds.max_index, fam.domain_end());
  auto elems = window_elements(s, w);
  if (elems.empty()) return std::nullopt;

  for (std::size_t m = 1; m <= bounds.max_m; ++m) {
    if (bounds.n_bound + m > max_eff) break;
    double rough = 1.0;
    for (std::size_t i = 0; i < m + 1; ++i) rough *= static_cast<double>(elems.size());
    for (std::size_t i = 0; i < m; ++i)
      rough *= static_cast<double>(max_eff - bounds.n_bound);
    if (rough > 5e7)
      throw SchemaError("noncommutative search bounds are too large for exhaustive enumeration");

    std::vector<std::uint64_t> t(m);
    std::vector<std::size_t> a_idx(m + 1, 0);
    auto t_rec = [&](auto&& self, std::size_t depth, std::uint64_t start) -> std::optional<JWitnessNC> {
      if (depth == m) {
        a_idx.assign(m + 1, 0);
        while (true) {
          JWitnessNC cand;
          cand.t = t;
          cand.a.reserve(m + 1);
          for (std::size_t i = 0; i <= m; ++i) cand.a.push_back(elems[a_idx[i]]);
          if (verify_j_witness_nc(s, a_set, fam, cand, bounds.n_bound)) return cand;
          std::size_t i = m + 1;
          bool carried = false;
          while (i > 0) {
            --i;
            if (a_idx[i] + 1 < elems.size()) {
              ++a_idx[i];
              for (std::size_t j = i + 1; j <= m; ++j) a_idx[j] = 0;
              carried = true;
              break;
            }
          }
          if (!carried) return std::nullopt;
        }
      }
      for (std::uint64_t v = start; v + (m - depth) <= max_eff + 1; ++v) {
        t[depth] = v;
        if (auto r = self(self, depth + 1, v + 1)) return r;
      }
      return std::nullopt;
    };
    if (auto r = t_rec(t_rec, 0, bounds.n_bound + 1)) return r;
  }
  return std::nullopt;
}

// Constructive noncommutative search. Variable positions of a usable line
// must be pairwise non-adjacent: the semigroup has no identity, so an empty
// block between two sequence factors cannot become an interleaved element.
// Lines violating this are skipped and the search moves on.
inline std::optional<JWitnessNC> find_j_witness_nc_hj(const SemigroupSpec& s, const Window& w,
                                                      const SubsetSpec& a_set,
                                                      const SequenceFamily& fam,
                                                      const std::vector<Element>& translates,
                                                      const NcBounds& bounds,
                                                      Transcript* tr = nullptr) {
  if (translates.empty()) throw SchemaError("constructive search needs a nonempty translate set");
  for (const auto& t : translates) s.require_own(t, "translates");
  const std::size_t n = fam.size();
  if (n > 8) throw SchemaError("line-based search supports at most 8 sequences");
  auto elems = window_elements(s, w);

  auto log = [&](std::size_t att, int step, const char* name, bool ok, std::string detail) {
    if (tr) tr->add(att, step, name, ok, std::move(detail));
  };

  for (std::size_t len = 1; len <= bounds.len_cap; ++len) {
    if (fam.domain_end() < bounds.n_bound + len) {
      log(len, 1, "working-length", false, "family undefined beyond index " +
          std::to_string(fam.domain_end()));
      break;
    }
    log(len, 1, "working-length", true,
        "N=" + std::to_string(len) + ", alphabet " + std::to_string(n));

    const auto cube = static_cast<std::size_t>(pow_u64(n, len));
    if (cube > (std::size_t{1} << 18)) {
      log(len, 2, "product-map", false, "cube too large");
      break;
    }
    std::vector<std::vector<Element>> values(n, std::vector<Element>(len));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < len; ++i)
        values[j][i] = fam.rules()[j].eval(bounds.n_bound + i + 1);
    std::vector<Element> image(cube);
    bool overflow = false;
    for (std::size_t rank = 0; rank < cube && !overflow; ++rank) {
      std::size_t rest = rank;
      std::vector<std::size_t> letters(len);
      for (std::size_t i = len; i-- > 0;) {
        letters[i] = rest % n;
        rest /= n;
      }
      std::optional<Element> acc;
      for (std::size_t i = 0; i < len; ++i) {
        if (!acc) {
          acc = values[letters[i]][i];
        } else {
          auto next = s.try_compose(*acc, values[letters[i]][i]);
          if (!next) {
            overflow = true;
            break;
          }
          acc = next;
        }
      }
      if (!overflow) image[rank] = *acc;
    }
    if (overflow) {
      log(len, 2, "product-map", false, "composition overflow");
      break;
    }
    log(len, 2, "product-map", true, std::to_string(cube) + " ordered products over indices " +
        std::to_string(bounds.n_bound + 1) + ".." + std::to_string(bounds.n_bound + len));

    auto least_translate = [&](const Element& y) -> int {
      for (std::size_t i = 0; i < translates.size(); ++i) {
        auto z = s.try_compose(translates[i], y);
        if (z && a_set.contains(*z)) return static_cast<int>(i) + 1;
      }
      return 0;
    };

    bool thickness_seen = false;
    std::optional<JWitnessNC> found;
    for (const auto& x : elems) {
      std::vector<int> chi(cube, 0);
      bool all = true;
      for (std::size_t rank = 0; rank < cube; ++rank) {
        auto y = s.try_compose(image[rank], x);
        const int c = y ? least_translate(*y) : 0;
        if (c == 0) {
          all = false;
          break;
        }
        chi[rank] = c;
      }
      if (!all) continue;
      if (!thickness_seen) {
        thickness_seen = true;
        log(len, 3, "thickness", true, "suffix " + s.show(x));
        log(len, 4, "coloring", true,
            std::to_string(translates.size()) + " colors by least translate");
      }

      for_each_line(static_cast<std::uint8_t>(n), len, [&](const VariableWord& v) {
        int c0 = -1;
        for (std::uint8_t l = 1; l <= static_cast<std::uint8_t>(n); ++l) {
          const int c = chi[word_rank(instantiate(v, l, static_cast<std::uint8_t>(n)), static_cast<std::uint8_t>(n))];
          if (c0 < 0)
            c0 = c;
          else if (c != c0)
            return false;
        }
        std::vector<std::size_t> vars;
        for (std::size_t p = 0; p < len; ++p)
          if (v.symbols[p] == 0) vars.push_back(p);
        for (std::size_t i = 1; i < vars.size(); ++i)
          if (vars[i] == vars[i - 1] + 1) return false;  // empty inner block, unusable

        log(len, 5, "line-search", true, "pattern " + pattern_text(v) + ", color " +
            std::to_string(c0));

        JWitnessNC witness;
        const std::size_t m = vars.size();
        witness.t.reserve(m);
        for (std::size_t p : vars) witness.t.push_back(bounds.n_bound + p + 1);
        auto block = [&](std::size_t from, std::size_t to) -> std::optional<Element> {
          std::optional<Element> acc;
          for (std::size_t p = from; p < to; ++p) {
            const Element& part = values[v.symbols[p] - 1][p];
            acc = acc ? s.compose(*acc, part) : part;
          }
          return acc;
        };
        auto lead = block(0, vars.front());
        witness.a.push_back(lead ? s.compose(translates[static_cast<std::size_t>(c0) - 1], *lead)
                                 : translates[static_cast<std::size_t>(c0) - 1]);
        for (std::size_t i = 0; i + 1 < m; ++i)
          witness.a.push_back(*block(vars[i] + 1, vars[i + 1]));
        auto trail = block(vars.back() + 1, len);
        witness.a.push_back(trail ? s.compose(*trail, x) : x);
        if (!verify_j_witness_nc(s, a_set, fam, witness, bounds.n_bound))
          throw std::logic_error("extracted witness failed re-verification");
        log(len, 6, "extraction", true, "m=" + std::to_string(m));
        found = std::move(witness);
        return true;
      });
      if (found) {
        if (tr) tr->summary = "witness extracted at working length " + std::to_string(len);
        return found;
      }
    }
    if (!thickness_seen)
      log(len, 3, "thickness", false,
          "no window element places the product image in the translate union");
    else
      log(len, 5, "line-search", false, "no usable monochromatic line at this length");
  }
  if (tr && tr->summary.empty()) tr->summary = "no witness within the length cap";
  return std::nullopt;
}

inline std::optional<JWitnessNC> find_j_witness_nc(const SemigroupSpec& s, const Window& w,
                                                   const SubsetSpec& a_set,
                                                   const SequenceFamily& fam,
                                                   JsetStrategy strategy, const NcBounds& bounds,
                                                   const std::vector<Element>& translates = {},
                                                   Transcript* tr = nullptr) {
  if (strategy == JsetStrategy::BruteForce)
    return find_j_witness_nc_bruteforce(s, w, a_set, fam, bounds);
  return find_j_witness_nc_hj(s, w, a_set, fam, translates, bounds, tr);
}

}  // namespace cstk
