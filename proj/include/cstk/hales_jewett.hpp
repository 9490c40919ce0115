#pragma once

// Combinatorial line machinery over the cube [t]^N and a small
// Hales-Jewett number search. Letters are 1..t; a variable word stores 0
// at wildcard positions and must contain at least one wildcard.
//
// Canonical orders, pinned here once:
//   words        lexicographic with position 1 most significant
//                (rank = mixed-radix value of letters-1)
//   lines        variable-position masks sorted by lowest variable
//                position descending, then by mask value ascending;
//                within a mask, fixed letters run as an ascending odometer
//   colorings    vectors indexed by word rank; "lex-least" refers to this
//                vector ordering with colors 1..r

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "semigroup.hpp"

namespace cstk {

struct Word {
  std::vector<std::uint8_t> letters;  // each in 1..t

  friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
};

struct VariableWord {
  std::vector<std::uint8_t> symbols;  // 0 = wildcard, otherwise a letter

  std::size_t wildcard_count() const {
    std::size_t c = 0;
    for (auto s : symbols)
      if (s == 0) ++c;
    return c;
  }

  friend bool operator==(const VariableWord& a, const VariableWord& b) {
    return a.symbols == b.symbols;
  }
};

inline std::string word_text(const Word& w) {
  std::string out;
  for (auto l : w.letters) out += static_cast<char>('0' + l);
  return out;
}

inline std::string pattern_text(const VariableWord& v) {
  std::string out;
  for (auto s : v.symbols) out += s == 0 ? '*' : static_cast<char>('0' + s);
  return out;
}

inline Word parse_word(const std::string& text, std::uint8_t t) {
  Word w;
  for (char c : text) {
    if (c < '1' || c > '0' + t) throw SchemaError("word letter out of range: " + text);
    w.letters.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (w.letters.empty()) throw SchemaError("empty word");
  return w;
}

inline Word instantiate(const VariableWord& v, std::uint8_t letter, std::uint8_t t) {
  if (letter < 1 || letter > t) throw SchemaError("instantiation letter out of range");
  if (v.wildcard_count() == 0) throw ContractError("variable word has no wildcard");
  Word w;
  w.letters.reserve(v.symbols.size());
  for (auto s : v.symbols) w.letters.push_back(s == 0 ? letter : s);
  return w;
}

// The t points of the combinatorial line given by a variable word.
inline std::vector<Word> line_words(const VariableWord& v, std::uint8_t t) {
  std::vector<Word> out;
  out.reserve(t);
  for (std::uint8_t l = 1; l <= t; ++l) out.push_back(instantiate(v, l, t));
  return out;
}

inline std::size_t word_rank(const Word& w, std::uint8_t t) {
  std::size_t r = 0;
  for (auto l : w.letters) r = r * t + static_cast<std::size_t>(l - 1);
  return r;
}

inline Word word_from_rank(std::size_t rank, std::uint8_t t, std::size_t n) {
  Word w;
  w.letters.assign(n, 1);
  for (std::size_t p = n; p-- > 0;) {
    w.letters[p] = static_cast<std::uint8_t>(rank % t + 1);
    rank /= t;
  }
  return w;
}

inline std::uint64_t pow_u64(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  while (exp--) {
    if (base != 0 && r > UINT64_MAX / base) throw SchemaError("cube is too large");
    r *= base;
  }
  return r;
}

inline std::uint64_t line_count(std::uint8_t t, std::size_t n) {
  return pow_u64(t + 1, n) - pow_u64(t, n);
}

// Visits lines in the canonical order; fn returning true stops early.
template <class Fn>
bool for_each_line(std::uint8_t t, std::size_t n, Fn&& fn) {
  if (t == 0 || n == 0) throw SchemaError("line enumeration needs t >= 1 and N >= 1");
  if (n > 24) throw SchemaError("line enumeration supports N <= 24");
  std::vector<std::uint32_t> masks;
  masks.reserve((std::uint32_t{1} << n) - 1);
  for (std::uint32_t m = 1; m < (std::uint32_t{1} << n); ++m) masks.push_back(m);
  // bit p-1 of the mask marks position p (1-based) as variable
  auto lowest_pos = [](std::uint32_t m) { return __builtin_ctz(m); };
  std::stable_sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (lowest_pos(a) != lowest_pos(b)) return lowest_pos(a) > lowest_pos(b);
    return a < b;
  });

  VariableWord v;
  v.symbols.assign(n, 0);
  for (std::uint32_t mask : masks) {
    std::vector<std::size_t> fixed;
    for (std::size_t p = 0; p < n; ++p) {
      if (mask & (std::uint32_t{1} << p)) {
        v.symbols[p] = 0;
      } else {
        v.symbols[p] = 1;
        fixed.push_back(p);
      }
    }
    while (true) {
      if (fn(static_cast<const VariableWord&>(v))) return true;
      std::size_t i = fixed.size();
      while (i > 0) {
        --i;
        if (v.symbols[fixed[i]] < t) {
          ++v.symbols[fixed[i]];
          for (std::size_t j = i + 1; j < fixed.size(); ++j) v.symbols[fixed[j]] = 1;
          break;
        }
        if (i == 0) goto next_mask;
      }
      if (fixed.empty()) break;
    }
  next_mask:;
  }
  return false;
}

inline std::vector<VariableWord> enumerate_lines(std::uint8_t t, std::size_t n) {
  std::vector<VariableWord> out;
  for_each_line(t, n, [&](const VariableWord& v) {
    out.push_back(v);
    return false;
  });
  return out;
}

// A total coloring of [t]^N with colors 1..r.
class Coloring {
public:
  Coloring(int colors, std::function<int(const Word&)> fn)
      : colors_(colors), fn_(std::move(fn)) {
    if (colors_ < 1) throw SchemaError("coloring needs at least one color");
  }

  static Coloring from_table(int colors, std::uint8_t t, std::size_t n, std::vector<int> by_rank) {
    const std::uint64_t cube = pow_u64(t, n);
    if (by_rank.size() != cube)
      throw SchemaError("coloring table covers " + std::to_string(by_rank.size()) +
                        " of " + std::to_string(cube) + " words");
    for (int c : by_rank)
      if (c < 1 || c > colors) throw SchemaError("coloring table value out of range");
    auto shared = std::make_shared<std::vector<int>>(std::move(by_rank));
    return Coloring(colors, [shared, t](const Word& w) { return (*shared)[word_rank(w, t)]; });
  }

  int colors() const { return colors_; }

  int color_of(const Word& w) const {
    int c = fn_(w);
    if (c < 1 || c > colors_)
      throw SchemaError("coloring is not total: word " + word_text(w) + " got color " +
                        std::to_string(c));
    return c;
  }

private:
  int colors_;
  std::function<int(const Word&)> fn_;
};

// First line (canonical order) whose t points share a color.
inline std::optional<VariableWord> find_monochromatic_line(std::uint8_t t, std::size_t n,
                                                           const Coloring& coloring) {
  std::optional<VariableWord> hit;
  for_each_line(t, n, [&](const VariableWord& v) {
    int c0 = 0;
    for (std::uint8_t l = 1; l <= t; ++l) {
      int c = coloring.color_of(instantiate(v, l, t));
      if (l == 1)
        c0 = c;
      else if (c != c0)
        return false;
    }
    hit = v;
    return true;
  });
  return hit;
}

// ---------------------------------------------------------------------------
// Hales-Jewett number search. For each N = 1..max_n decide whether an
// r-coloring of [t]^N without a monochromatic line exists; the least N with
// none is HJ(r,t). Avoiding-coloring existence is antitone in N (restrict
// to a subcube), so the scan is sound.

enum class HjStrategy { Backtrack, Exhaustive };

struct HjNumberResult {
  enum class Status { Exact, LowerBound, Exhausted } status = Status::Exhausted;
  std::size_t value = 0;  // Exact: HJ(r,t); otherwise: largest N certified avoidable
  std::vector<int> avoiding;  // witness coloring by word rank, length t^avoiding_len
  std::size_t avoiding_length = 0;
  std::uint64_t nodes = 0;
};

namespace detail {

struct LineIncidence {
  std::vector<std::vector<std::uint32_t>> line_members;   // per line: t word ranks
  std::vector<std::vector<std::uint32_t>> word_lines;     // per word: incident lines
};

inline LineIncidence build_incidence(std::uint8_t t, std::size_t n) {
  LineIncidence inc;
  inc.word_lines.resize(static_cast<std::size_t>(pow_u64(t, n)));
  for_each_line(t, n, [&](const VariableWord& v) {
    std::vector<std::uint32_t> members;
    members.reserve(t);
    for (std::uint8_t l = 1; l <= t; ++l)
      members.push_back(static_cast<std::uint32_t>(word_rank(instantiate(v, l, t), t)));
    const auto li = static_cast<std::uint32_t>(inc.line_members.size());
    for (auto wr : members) inc.word_lines[wr].push_back(li);
    inc.line_members.push_back(std::move(members));
    return false;
  });
  return inc;
}

// Lex-least avoiding coloring of [t]^n, or nullopt if none exists; throws
// SearchExhausted when the node budget runs out. Colors are introduced in
// first-use order, which prunes color permutations yet preserves the
// lex-least witness.
inline std::optional<std::vector<int>> find_avoiding_backtrack(int r, std::uint8_t t,
                                                               std::size_t n,
                                                               std::uint64_t& budget,
                                                               std::uint64_t& nodes) {
  const auto cube = static_cast<std::size_t>(pow_u64(t, n));
  auto inc = build_incidence(t, n);
  std::vector<int> color(cube, 0);
  // per line: how many members colored, and their common color (0 = mixed)
  std::vector<std::uint32_t> filled(inc.line_members.size(), 0);
  std::vector<int> uniform(inc.line_members.size(), 0);

  auto rec = [&](auto&& self, std::size_t w, int max_used) -> bool {
    if (w == cube) return true;
    for (int c = 1; c <= std::min(r, max_used + 1); ++c) {
      if (budget == 0) throw SearchExhausted("node budget exhausted");
      --budget;
      ++nodes;
      bool feasible = true;
      for (auto li : inc.word_lines[w]) {
        if (filled[li] + 1 == inc.line_members[li].size() &&
            (filled[li] == 0 || uniform[li] == c)) {
          feasible = false;  // would complete a monochromatic line
          break;
        }
      }
      if (!feasible) continue;
      color[w] = c;
      std::vector<std::pair<std::uint32_t, int>> touched;
      touched.reserve(inc.word_lines[w].size());
      for (auto li : inc.word_lines[w]) {
        touched.emplace_back(li, uniform[li]);
        if (filled[li] == 0)
          uniform[li] = c;
        else if (uniform[li] != c)
          uniform[li] = 0;
        ++filled[li];
      }
      if (self(self, w + 1, std::max(max_used, c))) return true;
      for (auto& [li, u] : touched) {
        --filled[li];
        uniform[li] = u;
      }
      color[w] = 0;
    }
    return false;
  };

  if (rec(rec, 0, 0)) return color;
  return std::nullopt;
}

// Same answer by brute force over all r^(t^n) colorings in lex order.
inline std::optional<std::vector<int>> find_avoiding_exhaustive(int r, std::uint8_t t,
                                                                std::size_t n,
                                                                std::uint64_t& budget,
                                                                std::uint64_t& nodes) {
  const auto cube = static_cast<std::size_t>(pow_u64(t, n));
  auto inc = build_incidence(t, n);
  std::vector<int> color(cube, 1);
  while (true) {
    if (budget == 0) throw SearchExhausted("node budget exhausted");
    --budget;
    ++nodes;
    bool mono = false;
    for (const auto& members : inc.line_members) {
      int c0 = color[members[0]];
      bool same = true;
      for (auto wr : members)
        if (color[wr] != c0) {
          same = false;
          break;
        }
      if (same) {
        mono = true;
        break;
      }
    }
    if (!mono) return color;
    std::size_t i = cube;
    while (i > 0) {
      --i;
      if (color[i] < r) {
        ++color[i];
        for (std::size_t j = i + 1; j < cube; ++j) color[j] = 1;
        break;
      }
      if (i == 0) return std::nullopt;
    }
  }
}

}  // namespace detail

inline HjNumberResult hj_number_search(int r, std::uint8_t t, std::size_t max_n,
                                       std::uint64_t budget,
                                       HjStrategy strategy = HjStrategy::Backtrack) {
  if (r < 1) throw SchemaError("hj search needs r >= 1");
  if (t < 1) throw SchemaError("hj search needs t >= 1");
  if (max_n < 1) throw SchemaError("hj search needs max_n >= 1");

  HjNumberResult res;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::optional<std::vector<int>> avoiding;
    try {
      avoiding = strategy == HjStrategy::Backtrack
                     ? detail::find_avoiding_backtrack(r, t, n, budget, res.nodes)
                     : detail::find_avoiding_exhaustive(r, t, n, budget, res.nodes);
    } catch (const SearchExhausted&) {
      res.status = HjNumberResult::Status::Exhausted;
      return res;  // keeps the largest certified lower bound gathered so far
    }
    if (!avoiding) {
      res.status = HjNumberResult::Status::Exact;
      res.value = n;
      return res;  // avoiding data of n-1 is the matching lower-bound witness
    }
    res.status = HjNumberResult::Status::LowerBound;
    res.value = n;
    res.avoiding = std::move(*avoiding);
    res.avoiding_length = n;
  }
  return res;
}

}  // namespace cstk
