#pragma once

// Semigroup presentations with exact composition and finite evaluation
// windows. Three kinds are supported:
//
//   finite-table  elements are indices 0..n-1, composition by table lookup
//   nat-add       elements are positive integers, composition is addition
//   free-word     elements are nonempty words over a generator alphabet,
//                 composition is concatenation (hard length cap, no
//                 silent truncation)
//
// Everything here is immutable after construction and safe to share
// across threads; all operations are pure functions of their inputs.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cstk {

// Malformed documents, out-of-range parameters, unusable configurations.
class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Violated caller promises: foreign elements, broken resolver contracts,
// word-length overflow, evaluation outside a sequence's domain.
class ContractError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A witness search ran out of candidates within its configured bounds.
class SearchExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Kind { FiniteTable, NatAdd, FreeWord };

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::FiniteTable: return "finite-table";
    case Kind::NatAdd: return "nat-add";
    case Kind::FreeWord: return "free-word";
  }
  return "?";
}

class SemigroupSpec;

// An element of exactly one SemigroupSpec. Default-constructed elements are
// invalid; real ones are minted by the owning spec and carry its id, so a
// spec rejects elements of any other spec (even a structurally equal one).
class Element {
public:
  Element() = default;

  bool valid() const { return spec_id_ != 0; }
  Kind kind() const { return kind_; }
  std::uint64_t spec_id() const { return spec_id_; }

  std::uint64_t nat() const { return num_; }
  std::size_t index() const { return static_cast<std::size_t>(num_); }
  const std::string& word() const { return word_; }

  friend bool operator==(const Element& a, const Element& b) {
    return a.spec_id_ == b.spec_id_ && a.num_ == b.num_ && a.word_ == b.word_;
  }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

private:
  friend class SemigroupSpec;
  Element(std::uint64_t spec_id, Kind k, std::uint64_t num, std::string word)
      : spec_id_(spec_id), kind_(k), num_(num), word_(std::move(word)) {}

  std::uint64_t spec_id_ = 0;
  Kind kind_ = Kind::NatAdd;
  std::uint64_t num_ = 0;
  std::string word_;
};

// Canonical order: integers ascending, table indices ascending, words by
// length then lexicographic. Only meaningful within one spec.
inline bool element_less(const Element& a, const Element& b) {
  if (a.kind() == Kind::FreeWord) {
    if (a.word().size() != b.word().size()) return a.word().size() < b.word().size();
    return a.word() < b.word();
  }
  return a.nat() < b.nat();
}

class SemigroupSpec {
public:
  static constexpr std::size_t kMaxTableSize = 256;
  static constexpr std::size_t kDefaultWordCap = 64;

  SemigroupSpec() = default;

  // Structural checks only; associativity is the job of validate() so that
  // a bad table can be loaded far enough to be reported.
  static SemigroupSpec finite_table(std::vector<std::vector<std::size_t>> table,
                                    bool declared_commutative) {
    const std::size_t n = table.size();
    if (n == 0) throw SchemaError("finite-table: empty composition table");
    if (n > kMaxTableSize) throw SchemaError("finite-table: table size exceeds " + std::to_string(kMaxTableSize));
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::FiniteTable;
    impl->commutative = declared_commutative;
    impl->n = n;
    impl->table.reserve(n * n);
    for (const auto& row : table) {
      if (row.size() != n) throw SchemaError("finite-table: table is not square");
      for (std::size_t v : row) {
        if (v >= n) throw SchemaError("finite-table: entry " + std::to_string(v) + " out of range");
        impl->table.push_back(v);
      }
    }
    impl->id = next_id();
    return SemigroupSpec(std::move(impl));
  }

  static SemigroupSpec nat_add() {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::NatAdd;
    impl->commutative = true;
    impl->id = next_id();
    return SemigroupSpec(std::move(impl));
  }

  static SemigroupSpec free_word(std::string alphabet, std::size_t word_cap = kDefaultWordCap,
                                 bool declared_commutative = false) {
    if (alphabet.empty()) throw SchemaError("free-word: empty generator alphabet");
    if (word_cap == 0) throw SchemaError("free-word: word cap must be positive");
    std::string sorted = alphabet;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw SchemaError("free-word: duplicate generator");
    if (declared_commutative && alphabet.size() >= 2)
      throw SchemaError("free-word: two or more generators cannot be declared commutative");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::FreeWord;
    impl->commutative = declared_commutative;
    impl->alphabet = std::move(sorted);
    impl->cap = word_cap;
    impl->id = next_id();
    return SemigroupSpec(std::move(impl));
  }

  bool valid() const { return impl_ != nullptr; }
  Kind kind() const { return impl_->kind; }
  bool commutative() const { return impl_->commutative; }
  std::uint64_t id() const { return impl_->id; }

  std::size_t table_size() const { return impl_->n; }
  std::size_t table_at(std::size_t i, std::size_t j) const { return impl_->table[i * impl_->n + j]; }
  const std::string& alphabet() const { return impl_->alphabet; }
  std::size_t word_cap() const { return impl_->cap; }

  Element nat(std::uint64_t n) const {
    require_kind(Kind::NatAdd, "nat element");
    if (n == 0) throw SchemaError("nat-add elements are positive integers");
    return Element(id(), Kind::NatAdd, n, {});
  }

  Element idx(std::size_t i) const {
    require_kind(Kind::FiniteTable, "table element");
    if (i >= impl_->n) throw SchemaError("table element index out of range");
    return Element(id(), Kind::FiniteTable, i, {});
  }

  Element word(std::string_view w) const {
    require_kind(Kind::FreeWord, "word element");
    if (w.empty()) throw SchemaError("free-word elements are nonempty");
    if (w.size() > impl_->cap) throw SchemaError("word exceeds the length cap");
    for (char c : w)
      if (impl_->alphabet.find(c) == std::string::npos)
        throw SchemaError(std::string("letter '") + c + "' is not a generator");
    return Element(id(), Kind::FreeWord, 0, std::string(w));
  }

  void require_own(const Element& x, const char* ctx) const {
    if (!x.valid() || x.spec_id() != id())
      throw ContractError(std::string(ctx) + ": element does not belong to this semigroup");
  }

  std::optional<Element> try_compose(const Element& x, const Element& y) const {
    require_own(x, "compose");
    require_own(y, "compose");
    switch (impl_->kind) {
      case Kind::FiniteTable:
        return Element(id(), Kind::FiniteTable, table_at(x.index(), y.index()), {});
      case Kind::NatAdd: {
        if (x.nat() > UINT64_MAX - y.nat()) return std::nullopt;
        return Element(id(), Kind::NatAdd, x.nat() + y.nat(), {});
      }
      case Kind::FreeWord: {
        if (x.word().size() + y.word().size() > impl_->cap) return std::nullopt;
        return Element(id(), Kind::FreeWord, 0, x.word() + y.word());
      }
    }
    return std::nullopt;
  }

  Element compose(const Element& x, const Element& y) const {
    auto r = try_compose(x, y);
    if (!r)
      throw ContractError(impl_->kind == Kind::FreeWord
                              ? "compose: word length cap exceeded"
                              : "compose: integer overflow");
    return *r;
  }

  std::string show(const Element& x) const {
    require_own(x, "show");
    switch (impl_->kind) {
      case Kind::FiniteTable: return "e" + std::to_string(x.index());
      case Kind::NatAdd: return std::to_string(x.nat());
      case Kind::FreeWord: return x.word();
    }
    return "?";
  }

  friend bool operator==(const SemigroupSpec& a, const SemigroupSpec& b) {
    return a.impl_ == b.impl_;
  }

private:
  struct Impl {
    std::uint64_t id = 0;
    Kind kind = Kind::NatAdd;
    bool commutative = false;
    std::size_t n = 0;
    std::vector<std::size_t> table;  // row-major
    std::string alphabet;
    std::size_t cap = 0;
  };

  explicit SemigroupSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
  }

  void require_kind(Kind k, const char* ctx) const {
    if (impl_->kind != k)
      throw SchemaError(std::string(ctx) + " is not available for " + kind_name(impl_->kind));
  }

  std::shared_ptr<const Impl> impl_;
};

struct ValidationReport {
  bool structural_ok = true;
  bool associative = true;
  bool commutative_ok = true;  // only checked when declared
  std::optional<std::array<std::size_t, 3>> assoc_witness;
  std::optional<std::array<std::size_t, 2>> comm_witness;
  std::string detail;

  bool valid() const { return structural_ok && associative && commutative_ok; }
};

// Exhaustive associativity (and, when declared, commutativity) check for
// finite tables; nat-add and free-word are associative by construction.
inline ValidationReport validate(const SemigroupSpec& s) {
  ValidationReport rep;
  if (s.kind() != Kind::FiniteTable) {
    rep.detail = std::string(kind_name(s.kind())) + ": associative by construction";
    return rep;
  }
  const std::size_t n = s.table_size();
  for (std::size_t x = 0; x < n && rep.associative; ++x)
    for (std::size_t y = 0; y < n && rep.associative; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (s.table_at(s.table_at(x, y), z) != s.table_at(x, s.table_at(y, z))) {
          rep.associative = false;
          rep.assoc_witness = {x, y, z};
          rep.detail = "associativity fails at (e" + std::to_string(x) + ",e" +
                       std::to_string(y) + ",e" + std::to_string(z) + ")";
          break;
        }
      }
  if (rep.associative && s.commutative()) {
    for (std::size_t x = 0; x < n && rep.commutative_ok; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        if (s.table_at(x, y) != s.table_at(y, x)) {
          rep.commutative_ok = false;
          rep.comm_witness = {x, y};
          rep.detail = "declared commutative but e" + std::to_string(x) + "·e" +
                       std::to_string(y) + " != e" + std::to_string(y) + "·e" + std::to_string(x);
          break;
        }
      }
  }
  if (rep.valid() && rep.detail.empty()) rep.detail = "table is associative";
  return rep;
}

// Left-to-right ordered product.
inline Element product_ordered(const SemigroupSpec& s, std::span<const Element> xs) {
  if (xs.empty()) throw SchemaError("product of an empty list");
  Element acc = xs.front();
  s.require_own(acc, "product");
  for (std::size_t i = 1; i < xs.size(); ++i) acc = s.compose(acc, xs[i]);
  return acc;
}

inline Element product_ordered(const SemigroupSpec& s, std::initializer_list<Element> xs) {
  return product_ordered(s, std::span<const Element>(xs.begin(), xs.size()));
}

// Finite evaluation window. For nat-add the bound W means elements 1..W;
// for free-word it is a maximal word length; finite tables are always
// enumerated whole and need no bound.
class Window {
public:
  Window() = default;
  explicit Window(std::uint64_t bound) : bound_(bound) {
    if (bound == 0) throw SchemaError("window bound must be positive");
  }

  std::optional<std::uint64_t> bound() const { return bound_; }

  Window doubled() const {
    if (!bound_) return *this;
    return Window(*bound_ * 2);
  }

private:
  std::optional<std::uint64_t> bound_;
};

inline constexpr std::size_t kMaxWindowElements = 1u << 20;

inline bool window_contains(const SemigroupSpec& s, const Window& w, const Element& x) {
  s.require_own(x, "window");
  switch (s.kind()) {
    case Kind::FiniteTable: return true;
    case Kind::NatAdd:
      if (!w.bound()) throw SchemaError("nat-add requires a window bound");
      return x.nat() >= 1 && x.nat() <= *w.bound();
    case Kind::FreeWord:
      if (!w.bound()) throw SchemaError("free-word requires a window bound");
      return x.word().size() <= *w.bound();
  }
  return false;
}

// Canonical enumeration: ascending integers, ascending table indices, words
// by length then lexicographic. Deterministic across runs.
inline std::vector<Element> window_elements(const SemigroupSpec& s, const Window& w) {
  std::vector<Element> out;
  switch (s.kind()) {
    case Kind::FiniteTable: {
      out.reserve(s.table_size());
      for (std::size_t i = 0; i < s.table_size(); ++i) out.push_back(s.idx(i));
      return out;
    }
    case Kind::NatAdd: {
      if (!w.bound()) throw SchemaError("nat-add requires a window bound");
      const std::uint64_t n = *w.bound();
      if (n > kMaxWindowElements) throw SchemaError("window too large to enumerate");
      out.reserve(static_cast<std::size_t>(n));
      for (std::uint64_t v = 1; v <= n; ++v) out.push_back(s.nat(v));
      return out;
    }
    case Kind::FreeWord: {
      if (!w.bound()) throw SchemaError("free-word requires a window bound");
      const std::uint64_t max_len = std::min<std::uint64_t>(*w.bound(), s.word_cap());
      const std::string& sigma = s.alphabet();
      std::vector<std::string> level;
      for (char c : sigma) level.push_back(std::string(1, c));
      for (std::uint64_t len = 1; len <= max_len; ++len) {
        if (out.size() + level.size() > kMaxWindowElements)
          throw SchemaError("window too large to enumerate");
        for (const auto& word : level) out.push_back(s.word(word));
        if (len == max_len) break;
        std::vector<std::string> next;
        next.reserve(level.size() * sigma.size());
        for (const auto& word : level)
          for (char c : sigma) next.push_back(word + c);
        level = std::move(next);
      }
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sequences f : N -> S given by rules, and finite families of them.

class SequenceRule {
public:
  enum class RKind { ExplicitPrefix, Affine, Periodic, Power };

  static SequenceRule explicit_prefix(const SemigroupSpec& s, std::vector<Element> values) {
    if (values.empty()) throw SchemaError("explicit sequence needs at least one value");
    for (const auto& v : values) s.require_own(v, "explicit sequence");
    auto impl = std::make_shared<Impl>();
    impl->spec = s;
    impl->kind = RKind::ExplicitPrefix;
    impl->items = std::move(values);
    impl->key = make_key(*impl);
    return SequenceRule(std::move(impl));
  }

  // f(n) = c + d*n on nat-add.
  static SequenceRule affine(const SemigroupSpec& s, std::uint64_t c, std::uint64_t d) {
    if (s.kind() != Kind::NatAdd) throw SchemaError("affine rules require nat-add");
    if (d == 0) throw SchemaError("affine rule needs slope d >= 1");
    auto impl = std::make_shared<Impl>();
    impl->spec = s;
    impl->kind = RKind::Affine;
    impl->c = c;
    impl->d = d;
    impl->key = make_key(*impl);
    return SequenceRule(std::move(impl));
  }

  // f(n) = row[(n-1) mod p] on a finite table.
  static SequenceRule periodic(const SemigroupSpec& s, std::vector<Element> row) {
    if (s.kind() != Kind::FiniteTable) throw SchemaError("periodic rules require a finite table");
    if (row.empty()) throw SchemaError("periodic rule needs a nonempty row");
    for (const auto& v : row) s.require_own(v, "periodic sequence");
    auto impl = std::make_shared<Impl>();
    impl->spec = s;
    impl->kind = RKind::Periodic;
    impl->items = std::move(row);
    impl->key = make_key(*impl);
    return SequenceRule(std::move(impl));
  }

  // f(n) = base repeated n times on free words.
  static SequenceRule power(const SemigroupSpec& s, std::string base) {
    if (s.kind() != Kind::FreeWord) throw SchemaError("power rules require free words");
    Element probe = s.word(base);  // validates letters and cap
    (void)probe;
    auto impl = std::make_shared<Impl>();
    impl->spec = s;
    impl->kind = RKind::Power;
    impl->base = std::move(base);
    impl->key = make_key(*impl);
    return SequenceRule(std::move(impl));
  }

  RKind rkind() const { return impl_->kind; }
  const SemigroupSpec& spec() const { return impl_->spec; }
  const std::string& key() const { return impl_->key; }
  const std::vector<Element>& items() const { return impl_->items; }
  std::uint64_t affine_c() const { return impl_->c; }
  std::uint64_t affine_d() const { return impl_->d; }
  const std::string& power_base() const { return impl_->base; }

  bool defined_at(std::uint64_t n) const {
    if (n == 0) return false;
    switch (impl_->kind) {
      case RKind::ExplicitPrefix: return n <= impl_->items.size();
      case RKind::Affine: return true;
      case RKind::Periodic: return true;
      case RKind::Power: return n * impl_->base.size() <= impl_->spec.word_cap();
    }
    return false;
  }

  // Largest n with 1..n inside the domain (0 if even n=1 is outside).
  std::uint64_t domain_end() const {
    switch (impl_->kind) {
      case RKind::ExplicitPrefix: return impl_->items.size();
      case RKind::Affine: return UINT64_MAX;
      case RKind::Periodic: return UINT64_MAX;
      case RKind::Power: return impl_->spec.word_cap() / impl_->base.size();
    }
    return 0;
  }

  Element eval(std::uint64_t n) const {
    if (!defined_at(n))
      throw ContractError("sequence evaluated outside its domain at n=" + std::to_string(n));
    switch (impl_->kind) {
      case RKind::ExplicitPrefix: return impl_->items[static_cast<std::size_t>(n - 1)];
      case RKind::Affine: return impl_->spec.nat(impl_->c + impl_->d * n);
      case RKind::Periodic:
        return impl_->items[static_cast<std::size_t>((n - 1) % impl_->items.size())];
      case RKind::Power: {
        std::string w;
        w.reserve(static_cast<std::size_t>(n) * impl_->base.size());
        for (std::uint64_t i = 0; i < n; ++i) w += impl_->base;
        return impl_->spec.word(w);
      }
    }
    throw ContractError("unreachable");
  }

  friend bool operator==(const SequenceRule& a, const SequenceRule& b) {
    return a.spec().id() == b.spec().id() && a.key() == b.key();
  }
  friend bool operator<(const SequenceRule& a, const SequenceRule& b) {
    return a.key() < b.key();
  }

private:
  struct Impl {
    SemigroupSpec spec;
    RKind kind = RKind::ExplicitPrefix;
    std::vector<Element> items;
    std::uint64_t c = 0, d = 0;
    std::string base;
    std::string key;
  };

  explicit SequenceRule(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  static std::string make_key(const Impl& impl) {
    switch (impl.kind) {
      case RKind::ExplicitPrefix: {
        std::string k = "explicit:";
        for (const auto& v : impl.items) k += impl.spec.show(v) + ",";
        return k;
      }
      case RKind::Affine:
        return "affine:" + std::to_string(impl.c) + "+" + std::to_string(impl.d) + "n";
      case RKind::Periodic: {
        std::string k = "periodic:";
        for (const auto& v : impl.items) k += impl.spec.show(v) + ",";
        return k;
      }
      case RKind::Power:
        return "power:" + impl.base;
    }
    return "?";
  }

  std::shared_ptr<const Impl> impl_;
};

// A finite, duplicate-free family of sequence rules in canonical (key)
// order. Inclusion between families is decided by rule identity.
class SequenceFamily {
public:
  explicit SequenceFamily(std::vector<SequenceRule> rules) : rules_(std::move(rules)) {
    if (rules_.empty()) throw SchemaError("sequence family is empty");
    const std::uint64_t sid = rules_.front().spec().id();
    for (const auto& r : rules_)
      if (r.spec().id() != sid)
        throw SchemaError("sequence family mixes semigroups");
    std::sort(rules_.begin(), rules_.end());
    for (std::size_t i = 1; i < rules_.size(); ++i)
      if (rules_[i - 1] == rules_[i]) throw SchemaError("duplicate rule in sequence family");
  }

  std::size_t size() const { return rules_.size(); }
  const std::vector<SequenceRule>& rules() const { return rules_; }
  const SemigroupSpec& spec() const { return rules_.front().spec(); }

  bool includes(const SequenceFamily& other) const {
    for (const auto& r : other.rules_)
      if (!std::binary_search(rules_.begin(), rules_.end(), r)) return false;
    return true;
  }

  bool strictly_includes(const SequenceFamily& other) const {
    return includes(other) && rules_.size() > other.rules_.size();
  }

  // Largest n with every member defined on 1..n.
  std::uint64_t domain_end() const {
    std::uint64_t end = UINT64_MAX;
    for (const auto& r : rules_) end = std::min(end, r.domain_end());
    return end;
  }

  friend bool operator==(const SequenceFamily& a, const SequenceFamily& b) {
    if (a.rules_.size() != b.rules_.size()) return false;
    for (std::size_t i = 0; i < a.rules_.size(); ++i)
      if (!(a.rules_[i] == b.rules_[i])) return false;
    return true;
  }

private:
  std::vector<SequenceRule> rules_;
};

}  // namespace cstk
