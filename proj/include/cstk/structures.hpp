#pragma once

// Window-relative largeness checks (syndetic, thick, piecewise syndetic,
// collectionwise piecewise syndetic) and downward directed families with
// checked shift/meet resolvers.
//
// Verdict semantics: `holds` is exact and only ever reported for finite
// tables, where the window is the whole semigroup; infinite kinds get at
// best `holds-on-window`. Every positive certificate can be re-checked by
// membership tests alone; every negative one carries a concrete
// counterexample or failing probe.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semigroup.hpp"
#include "subset.hpp"

namespace cstk {

enum class Verdict { Holds, HoldsOnWindow, Fails };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::HoldsOnWindow: return "holds-on-window";
    case Verdict::Fails: return "fails";
  }
  return "?";
}

struct Certificate {
  std::string check;
  Verdict verdict = Verdict::Fails;
  std::optional<std::uint64_t> window_bound;

  // positive side
  std::vector<Element> translates;                                 // F
  std::vector<std::pair<std::vector<Element>, Element>> probe_map; // E -> x
  bool translates_within_bound = true;

  // negative side
  std::vector<Element> best_translates;
  std::optional<Element> counterexample;
  std::optional<std::vector<Element>> failing_probe;

  std::string note;
};

namespace detail {

class Bits {
public:
  explicit Bits(std::size_t n = 0) : n_(n), w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void or_with(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto v : w_) c += static_cast<std::size_t>(__builtin_popcountll(v));
    return c;
  }
  bool all() const { return count() == n_; }
  std::optional<std::size_t> first_clear() const {
    for (std::size_t i = 0; i < n_; ++i)
      if (!get(i)) return i;
    return std::nullopt;
  }
  std::size_t size() const { return n_; }

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic sample of k distinct indices from 0..n-1 (all of them when
// n <= k), in ascending order.
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> out;
  if (n <= k) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    return out;
  }
  std::uint64_t state = seed ^ 0xa076'1d64'78bd'642fULL;
  std::vector<bool> used(n, false);
  while (out.size() < k) {
    std::size_t i = static_cast<std::size_t>(splitmix64(state) % n);
    if (!used[i]) {
      used[i] = true;
      out.push_back(i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct CheckContext {
  const SemigroupSpec& s;
  const Window& w;
  std::vector<Element> elems;
  bool overflow_seen = false;

  CheckContext(const SemigroupSpec& s_, const Window& w_, std::size_t max_window)
      : s(s_), w(w_), elems(window_elements(s_, w_)) {
    if (elems.size() > max_window)
      throw SchemaError("window of " + std::to_string(elems.size()) +
                        " elements is too large for this check");
  }

  bool member_compose(const Element& t, const Element& y, const SubsetSpec& a) {
    auto r = s.try_compose(t, y);
    if (!r) {
      overflow_seen = true;
      return false;
    }
    return a.contains(*r);
  }

  // cover[i] over window positions j: t_i · s_j ∈ A
  std::vector<Bits> translate_covers(const SubsetSpec& a) {
    std::vector<Bits> cover(elems.size(), Bits(elems.size()));
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = 0; j < elems.size(); ++j)
        if (member_compose(elems[i], elems[j], a)) cover[i].set(j);
    return cover;
  }
};

// Lex-first minimal cover of size <= max_f, sizes tried ascending.
// Candidates that add nothing to the running union are skipped; at the
// minimal size no cover contains such a candidate, so lex order survives.
inline std::optional<std::vector<std::size_t>> minimal_cover(const std::vector<Bits>& cover,
                                                             std::size_t max_f) {
  const std::size_t n = cover.size();
  std::vector<std::size_t> chosen;
  for (std::size_t k = 1; k <= max_f; ++k) {
    chosen.clear();
    auto rec = [&](auto&& self, std::size_t start, const Bits& covered) -> bool {
      if (covered.all()) return true;
      if (chosen.size() == k) return false;
      const std::size_t remaining = k - chosen.size();
      if (start + remaining > n) return false;
      for (std::size_t i = start; i + remaining <= n; ++i) {
        Bits next = covered;
        next.or_with(cover[i]);
        if (next.count() == covered.count()) continue;
        chosen.push_back(i);
        if (self(self, i + 1, next)) return true;
        chosen.pop_back();
      }
      return false;
    };
    Bits empty(n);
    if (n == 0) return chosen;
    if (rec(rec, 0, empty)) return chosen;
  }
  return std::nullopt;
}

// Greedy cover attempt used for `fails` reports: best single addition first.
inline std::vector<std::size_t> greedy_cover(const std::vector<Bits>& cover, std::size_t max_f) {
  const std::size_t n = cover.size();
  std::vector<std::size_t> chosen;
  Bits covered(n);
  for (std::size_t step = 0; step < max_f; ++step) {
    std::size_t best = n;
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Bits next = covered;
      next.or_with(cover[i]);
      const std::size_t gain = next.count() - covered.count();
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best == n) break;
    chosen.push_back(best);
    covered.or_with(cover[best]);
    if (covered.all()) break;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace detail

inline constexpr std::size_t kMaxSyndeticWindow = 4096;
inline constexpr std::size_t kMaxPwsWindow = 2048;

// { s ∈ window : t·s ∈ A }, in window order. Exact: overflow under the
// free-word cap is an error here rather than a silent miss.
inline std::vector<Element> preimage_translate(const SemigroupSpec& s, const Window& w,
                                               const Element& t, const SubsetSpec& a) {
  s.require_own(t, "preimage");
  std::vector<Element> out;
  for (const auto& e : window_elements(s, w))
    if (a.contains(s.compose(t, e))) out.push_back(e);
  return out;
}

// Syndetic: some finite F (|F| <= max_f, F inside the window) has
// ⋃_{t∈F} t⁻¹A ⊇ window. For finite tables the verdict is exact because F
// may exhaust S; the reported F is the lex-first minimal one.
inline Certificate check_syndetic(const SemigroupSpec& s, const Window& w, const SubsetSpec& a,
                                  std::size_t max_f) {
  if (max_f == 0) throw SchemaError("syndetic check needs max_f >= 1");
  detail::CheckContext cx(s, w, kMaxSyndeticWindow);
  const bool finite = s.kind() == Kind::FiniteTable;

  Certificate cert;
  cert.check = "syndetic";
  cert.window_bound = w.bound();

  auto cover = cx.translate_covers(a);
  detail::Bits all_union(cx.elems.size());
  for (const auto& c : cover) all_union.or_with(c);

  if (!all_union.all()) {
    // No F of any size can cover the window; exact failure for finite tables.
    cert.verdict = Verdict::Fails;
    cert.counterexample = cx.elems[*all_union.first_clear()];
    auto greedy = detail::greedy_cover(cover, max_f);
    for (std::size_t i : greedy) cert.best_translates.push_back(cx.elems[i]);
    cert.note = finite ? "no set of translates covers the semigroup"
                       : "no set of window translates covers the window";
  } else if (auto chosen = detail::minimal_cover(cover, max_f)) {
    cert.verdict = finite ? Verdict::Holds : Verdict::HoldsOnWindow;
    for (std::size_t i : *chosen) cert.translates.push_back(cx.elems[i]);
  } else if (finite) {
    // The union over every translate covers S, so F = S certifies exactly.
    cert.verdict = Verdict::Holds;
    cert.translates = cx.elems;
    cert.translates_within_bound = false;
    cert.note = "covering set exceeds max_f; the full semigroup is the witness";
  } else {
    cert.verdict = Verdict::Fails;
    auto greedy = detail::greedy_cover(cover, max_f);
    detail::Bits covered(cx.elems.size());
    for (std::size_t i : greedy) {
      cert.best_translates.push_back(cx.elems[i]);
      covered.or_with(cover[i]);
    }
    cert.counterexample = cx.elems[*covered.first_clear()];
    cert.note = "no F within max_f covers the window";
  }
  if (cx.overflow_seen) cert.note += (cert.note.empty() ? "" : "; ") + std::string(
      "word cap limited some compositions");
  return cert;
}

// Thick: every probe E admits x with E·x ⊆ A. x is scanned in window order,
// so the certificate is canonical. Finite tables additionally test the
// implicit whole-semigroup probe, which makes the verdict exact.
inline Certificate check_thick(const SemigroupSpec& s, const Window& w, const SubsetSpec& a,
                               const std::vector<std::vector<Element>>& probes) {
  detail::CheckContext cx(s, w, kMaxSyndeticWindow);
  const bool finite = s.kind() == Kind::FiniteTable;

  Certificate cert;
  cert.check = "thick";
  cert.window_bound = w.bound();

  auto run_probe = [&](const std::vector<Element>& probe) -> std::optional<Element> {
    for (const auto& x : cx.elems) {
      bool ok = true;
      for (const auto& e : probe)
        if (!cx.member_compose(e, x, a)) {
          ok = false;
          break;
        }
      if (ok) return x;
    }
    return std::nullopt;
  };

  std::vector<std::vector<Element>> all = probes;
  std::size_t implicit_from = all.size();
  if (finite) all.push_back(cx.elems);  // E = S makes the verdict exact

  for (std::size_t pi = 0; pi < all.size(); ++pi) {
    const auto& probe = all[pi];
    if (probe.empty()) throw SchemaError("thick probe is empty");
    for (const auto& e : probe) {
      s.require_own(e, "thick probe");
      if (!window_contains(s, w, e)) throw SchemaError("thick probe leaves the window");
    }
    if (auto x = run_probe(probe)) {
      if (pi < implicit_from) cert.probe_map.emplace_back(probe, *x);
    } else {
      cert.verdict = Verdict::Fails;
      cert.failing_probe = probe;
      cert.note = pi >= implicit_from
                      ? "the whole semigroup as probe admits no x"
                      : "probe admits no x within the window";
      return cert;
    }
  }
  cert.verdict = finite ? Verdict::Holds : Verdict::HoldsOnWindow;
  if (cx.overflow_seen) cert.note = "word cap limited some compositions";
  return cert;
}

// Piecewise syndetic: some F (|F| <= max_f) makes ⋃_{t∈F} t⁻¹A thick.
// Candidates F are tried in size-then-lex order; each is tested against all
// probes, with membership in the union evaluated exactly (also for products
// that land beyond the window).
inline Certificate check_piecewise_syndetic(const SemigroupSpec& s, const Window& w,
                                            const SubsetSpec& a, std::size_t max_f,
                                            const std::vector<std::vector<Element>>& probes) {
  if (max_f == 0) throw SchemaError("piecewise syndetic check needs max_f >= 1");
  if (max_f > 4) throw SchemaError("piecewise syndetic check supports max_f <= 4");
  detail::CheckContext cx(s, w, kMaxPwsWindow);
  const bool finite = s.kind() == Kind::FiniteTable;
  const std::size_t n = cx.elems.size();

  Certificate cert;
  cert.check = "piecewise-syndetic";
  cert.window_bound = w.bound();

  std::vector<std::vector<Element>> all = probes;
  std::size_t implicit_from = all.size();
  if (finite) all.push_back(cx.elems);
  for (const auto& probe : all) {
    if (probe.empty()) throw SchemaError("probe is empty");
    for (const auto& e : probe) {
      s.require_own(e, "probe");
      if (!window_contains(s, w, e)) throw SchemaError("probe leaves the window");
    }
  }

  auto in_union = [&](const std::vector<std::size_t>& f, const Element& y) {
    for (std::size_t ti : f)
      if (cx.member_compose(cx.elems[ti], y, a)) return true;
    return false;
  };

  // probe map for a fixed F, or the first failing probe index
  auto try_f = [&](const std::vector<std::size_t>& f,
                   std::vector<std::pair<std::vector<Element>, Element>>& map_out)
      -> std::optional<std::size_t> {
    map_out.clear();
    for (std::size_t pi = 0; pi < all.size(); ++pi) {
      const auto& probe = all[pi];
      bool found = false;
      for (const auto& x : cx.elems) {
        bool ok = true;
        for (const auto& e : probe) {
          auto y = s.try_compose(e, x);
          if (!y || !in_union(f, *y)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          if (pi < implicit_from) map_out.emplace_back(probe, x);
          found = true;
          break;
        }
      }
      if (!found) return pi;
    }
    return std::nullopt;
  };

  std::vector<std::size_t> best_f;
  std::size_t best_passed = 0;
  std::optional<std::vector<Element>> best_failing;

  std::vector<std::size_t> f;
  std::vector<std::pair<std::vector<Element>, Element>> map_out;
  for (std::size_t k = 1; k <= std::min(max_f, n); ++k) {
    f.assign(k, 0);
    auto rec = [&](auto&& self, std::size_t depth, std::size_t start) -> bool {
      if (depth == k) {
        auto fail = try_f(f, map_out);
        if (!fail) return true;
        if (*fail > best_passed || best_f.empty()) {
          best_passed = *fail;
          best_f = f;
          best_failing = all[*fail];
        }
        return false;
      }
      for (std::size_t i = start; i + (k - depth) <= n; ++i) {
        f[depth] = i;
        if (self(self, depth + 1, i + 1)) return true;
      }
      return false;
    };
    if (rec(rec, 0, 0)) {
      cert.verdict = finite ? Verdict::Holds : Verdict::HoldsOnWindow;
      for (std::size_t i : f) cert.translates.push_back(cx.elems[i]);
      cert.probe_map = map_out;
      if (cx.overflow_seen) cert.note = "word cap limited some compositions";
      return cert;
    }
  }

  cert.verdict = Verdict::Fails;
  for (std::size_t i : best_f) cert.best_translates.push_back(cx.elems[i]);
  cert.failing_probe = best_failing;
  cert.note = "every F within max_f leaves some probe unplaceable";
  if (cx.overflow_seen) cert.note += "; word cap limited some compositions";
  return cert;
}

// ---------------------------------------------------------------------------
// Collectionwise piecewise syndetic, verification-only. The caller supplies
// the finite data: a labelled family of subsets, the translate map G, the
// placement map x, and test triples (F, 𝓕, 𝓗) with 𝓕 ⊆ 𝓗. The check
// confirms, for each triple and each u ∈ F, some t ∈ G(𝓕) with
// t·u·x ∈ ⋂𝓕. The x map is consulted first under its declared key
// (𝓗, F) and then under the applied key (𝓗, 𝓕).

struct CwpwsData {
  std::map<std::string, SubsetSpec> family;

  struct GEntry {
    std::vector<std::string> sets;  // 𝓕, sorted labels
    std::vector<Element> value;     // G(𝓕)
  };
  std::vector<GEntry> g;

  struct XEntry {
    std::vector<std::string> frame;        // 𝓗, sorted labels
    std::optional<std::vector<Element>> translated;  // declared key: F ∈ P_f(S)
    std::optional<std::vector<std::string>> sets;    // applied key: 𝓕
    Element value;                          // x(...)
  };
  std::vector<XEntry> x;

  struct Triple {
    std::vector<Element> f;          // F ∈ P_f(S)
    std::vector<std::string> sets;   // 𝓕
    std::vector<std::string> frame;  // 𝓗
  };
  std::vector<Triple> triples;
};

struct CwpwsViolation {
  std::size_t triple = 0;
  Element unplaced;          // the u ∈ F with no working translate
  std::string detail;
};

struct CwpwsReport {
  Verdict verdict = Verdict::Fails;
  std::size_t triples_checked = 0;
  std::optional<CwpwsViolation> violation;
};

inline CwpwsReport check_collectionwise_pws(const SemigroupSpec& s, const Window& w,
                                            const CwpwsData& data) {
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  auto require_labels = [&](const std::vector<std::string>& labels, const char* ctx) {
    if (labels.empty()) throw SchemaError(std::string(ctx) + ": empty set list");
    for (const auto& l : labels)
      if (!data.family.count(l))
        throw SchemaError(std::string(ctx) + ": label '" + l + "' is not in the family");
  };

  auto find_g = [&](const std::vector<std::string>& sets) -> const std::vector<Element>* {
    auto key = sorted(sets);
    for (const auto& e : data.g)
      if (sorted(e.sets) == key) return &e.value;
    return nullptr;
  };

  auto find_x = [&](const std::vector<std::string>& frame, const std::vector<Element>& f,
                    const std::vector<std::string>& sets) -> const Element* {
    auto fkey = sorted(frame);
    for (const auto& e : data.x)  // declared reading first: key is (𝓗, F)
      if (e.translated && sorted(e.frame) == fkey && *e.translated == f) return &e.value;
    auto skey = sorted(sets);
    for (const auto& e : data.x)  // applied reading: key is (𝓗, 𝓕)
      if (e.sets && sorted(e.frame) == fkey && sorted(*e.sets) == skey) return &e.value;
    return nullptr;
  };

  CwpwsReport rep;
  for (std::size_t ti = 0; ti < data.triples.size(); ++ti) {
    const auto& tr = data.triples[ti];
    require_labels(tr.sets, "triple");
    require_labels(tr.frame, "triple");
    if (tr.f.empty()) throw SchemaError("triple: empty translated set F");
    for (const auto& u : tr.f) s.require_own(u, "triple");
    {
      auto skey = sorted(tr.sets);
      auto fkey = sorted(tr.frame);
      if (!std::includes(fkey.begin(), fkey.end(), skey.begin(), skey.end()))
        throw SchemaError("triple: sets are not contained in the frame");
    }

    const auto* g = find_g(tr.sets);
    if (!g) throw SchemaError("no G entry for the triple's sets");
    if (g->empty()) throw SchemaError("G entry is empty");
    const auto* x = find_x(tr.frame, tr.f, tr.sets);
    if (!x) throw SchemaError("no x entry for the triple");
    s.require_own(*x, "x map");

    auto in_intersection = [&](const Element& y) {
      for (const auto& label : tr.sets)
        if (!data.family.at(label).contains(y)) return false;
      return true;
    };

    for (const auto& u : tr.f) {
      auto ux = s.try_compose(u, *x);
      bool placed = false;
      if (ux) {
        for (const auto& t : *g) {
          s.require_own(t, "G map");
          auto y = s.try_compose(t, *ux);
          if (y && in_intersection(*y)) {
            placed = true;
            break;
          }
        }
      }
      if (!placed) {
        rep.verdict = Verdict::Fails;
        rep.violation = CwpwsViolation{ti, u,
                                       "no translate in G places " + s.show(u) +
                                           "·x inside the intersection"};
        rep.triples_checked = ti + 1;
        return rep;
      }
    }
    ++rep.triples_checked;
  }
  rep.verdict = s.kind() == Kind::FiniteTable ? Verdict::Holds : Verdict::HoldsOnWindow;
  (void)w;
  return rep;
}

// ---------------------------------------------------------------------------
// Downward directed families ⟨A_N⟩ with resolvers. resolve_shift(N, x)
// returns M with A_M ⊆ x⁻¹A_N (equivalently -x + A_N); resolve_meet(idxs)
// returns M with A_M ⊆ ⋂ A_i. Both contracts are spot-checked on the window
// with a deterministic seeded sample; violations are hard errors naming the
// offending element.

struct ResolveOptions {
  std::size_t sample_k = 32;
  bool exhaustive = false;
  std::uint64_t seed = 0;
};

class DirectedFamily {
public:
  enum class BuiltinShift { None, Constant };
  enum class BuiltinMeet { None, Constant, ChainMin };

  struct ShiftEntry {
    std::string from;
    Element x;
    std::string to;
  };
  struct MeetEntry {
    std::vector<std::string> of;  // sorted
    std::string to;
  };

  DirectedFamily(SemigroupSpec s, std::vector<std::string> indices,
                 std::map<std::string, SubsetSpec> sets, SubsetSpec ambient)
      : spec_(std::move(s)), indices_(std::move(indices)), sets_(std::move(sets)),
        ambient_(std::move(ambient)) {
    if (indices_.empty()) throw SchemaError("directed family has no indices");
    for (const auto& idx : indices_)
      if (!sets_.count(idx)) throw SchemaError("directed family: no set for index '" + idx + "'");
    if (sets_.size() != indices_.size())
      throw SchemaError("directed family: sets without indices");
  }

  void set_shift_builtin(BuiltinShift b) { shift_builtin_ = b; }
  void set_meet_builtin(BuiltinMeet b) { meet_builtin_ = b; }
  void set_shift_table(std::vector<ShiftEntry> t) { shift_table_ = std::move(t); }
  void set_meet_table(std::vector<MeetEntry> t) {
    for (auto& e : t) std::sort(e.of.begin(), e.of.end());
    meet_table_ = std::move(t);
  }

  const SemigroupSpec& spec() const { return spec_; }
  const std::vector<std::string>& indices() const { return indices_; }
  const SubsetSpec& ambient() const { return ambient_; }
  BuiltinShift shift_builtin() const { return shift_builtin_; }
  BuiltinMeet meet_builtin() const { return meet_builtin_; }
  const std::vector<ShiftEntry>& shift_table() const { return shift_table_; }
  const std::vector<MeetEntry>& meet_table() const { return meet_table_; }

  const SubsetSpec& set_of(const std::string& idx) const {
    auto it = sets_.find(idx);
    if (it == sets_.end()) throw SchemaError("unknown family index '" + idx + "'");
    return it->second;
  }

  std::size_t position(const std::string& idx) const {
    for (std::size_t i = 0; i < indices_.size(); ++i)
      if (indices_[i] == idx) return i;
    throw SchemaError("unknown family index '" + idx + "'");
  }

  // Each A_N nonempty on the window and contained in the ambient set
  // (exhaustive one-pass check; windows here are small by construction).
  void validate_on(const Window& w) const {
    auto elems = window_elements(spec_, w);
    for (const auto& idx : indices_) {
      const auto& a = set_of(idx);
      bool nonempty = false;
      for (const auto& e : elems) {
        if (a.contains(e)) {
          nonempty = true;
          if (!ambient_.contains(e))
            throw ContractError("family member A_" + idx + " leaves the ambient set at " +
                                spec_.show(e));
        }
      }
      if (!nonempty)
        throw ContractError("family member A_" + idx + " is empty on the window");
    }
  }

  std::string resolve_shift(const Window& w, const std::string& n, const Element& x,
                            const ResolveOptions& opt) const {
    spec_.require_own(x, "resolve_shift");
    const auto& a_n = set_of(n);
    if (!a_n.contains(x))
      throw ContractError("resolve_shift: " + spec_.show(x) + " is not in A_" + n);

    std::string m;
    if (shift_builtin_ == BuiltinShift::Constant) {
      m = n;
    } else {
      const ShiftEntry* hit = nullptr;
      for (const auto& e : shift_table_)
        if (e.from == n && e.x == x) {
          hit = &e;
          break;
        }
      if (!hit)
        throw ContractError("resolve_shift: no table entry for (A_" + n + ", " + spec_.show(x) +
                            ")");
      m = hit->to;
    }
    const auto& a_m = set_of(m);

    // sampled containment: A_M ⊆ x⁻¹A_N on the window
    auto members = members_on(a_m, w);
    for (std::size_t i : pick(members.size(), opt)) {
      const auto& s_el = members[i];
      auto y = spec_.try_compose(x, s_el);
      if (!y || !a_n.contains(*y))
        throw ContractError("resolve_shift: A_" + m + " is not contained in the shift of A_" + n +
                            " (fails at " + spec_.show(s_el) + ")");
    }
    return m;
  }

  std::string resolve_meet(const Window& w, const std::vector<std::string>& idxs,
                           const ResolveOptions& opt) const {
    if (idxs.empty()) throw SchemaError("resolve_meet of no indices");
    for (const auto& i : idxs) (void)set_of(i);

    std::string m;
    switch (meet_builtin_) {
      case BuiltinMeet::Constant: {
        m = *std::min_element(idxs.begin(), idxs.end(),
                              [&](const std::string& a, const std::string& b) {
                                return position(a) < position(b);
                              });
        break;
      }
      case BuiltinMeet::ChainMin: {
        m = *std::max_element(idxs.begin(), idxs.end(),
                              [&](const std::string& a, const std::string& b) {
                                return position(a) < position(b);
                              });
        break;
      }
      case BuiltinMeet::None: {
        std::vector<std::string> key = idxs;
        std::sort(key.begin(), key.end());
        key.erase(std::unique(key.begin(), key.end()), key.end());
        const MeetEntry* hit = nullptr;
        for (const auto& e : meet_table_) {
          auto of = e.of;
          of.erase(std::unique(of.begin(), of.end()), of.end());
          if (of == key) {
            hit = &e;
            break;
          }
        }
        if (!hit) throw ContractError("resolve_meet: no table entry for the given indices");
        m = hit->to;
        break;
      }
    }

    const auto& a_m = set_of(m);
    auto members = members_on(a_m, w);
    for (std::size_t i : pick(members.size(), opt)) {
      const auto& s_el = members[i];
      for (const auto& idx : idxs)
        if (!set_of(idx).contains(s_el))
          throw ContractError("resolve_meet: A_" + m + " is not contained in A_" + idx +
                              " (fails at " + spec_.show(s_el) + ")");
    }
    return m;
  }

private:
  std::vector<Element> members_on(const SubsetSpec& a, const Window& w) const {
    std::vector<Element> out;
    for (const auto& e : window_elements(spec_, w))
      if (a.contains(e)) out.push_back(e);
    return out;
  }

  std::vector<std::size_t> pick(std::size_t n, const ResolveOptions& opt) const {
    if (opt.exhaustive) return detail::sample_indices(n, n, opt.seed);
    return detail::sample_indices(n, opt.sample_k, opt.seed);
  }

  SemigroupSpec spec_;
  std::vector<std::string> indices_;
  std::map<std::string, SubsetSpec> sets_;
  SubsetSpec ambient_;
  BuiltinShift shift_builtin_ = BuiltinShift::None;
  BuiltinMeet meet_builtin_ = BuiltinMeet::None;
  std::vector<ShiftEntry> shift_table_;
  std::vector<MeetEntry> meet_table_;
};

}  // namespace cstk
