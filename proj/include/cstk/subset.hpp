#pragma once

// Finitely described subsets A ⊆ S with exact membership tests. A subset is
// an immutable expression tree; leaves are kind-specific descriptions and
// inner nodes are complement (relative to a window), union, intersection.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semigroup.hpp"

namespace cstk {

class SubsetSpec {
public:
  enum class SKind {
    Residue,       // nat-add: { n : n ≡ rem (mod m) }
    Explicit,      // finite list of elements
    Intervals,     // nat-add: union of closed intervals
    Prefix,        // free-word: words starting with a fixed prefix
    TableSubset,   // finite-table: set of indices
    Complement,    // window \ child
    Union,
    Intersection,
  };

  static SubsetSpec residue(const SemigroupSpec& s, std::uint64_t mod, std::uint64_t rem) {
    if (s.kind() != Kind::NatAdd) throw SchemaError("residue sets require nat-add");
    if (mod == 0) throw SchemaError("residue modulus must be positive");
    if (rem >= mod) throw SchemaError("residue must be smaller than the modulus");
    auto n = std::make_shared<Node>();
    n->kind = SKind::Residue;
    n->spec = s;
    n->mod = mod;
    n->rem = rem;
    return SubsetSpec(std::move(n));
  }

  static SubsetSpec explicit_set(const SemigroupSpec& s, std::vector<Element> elements) {
    for (const auto& e : elements) s.require_own(e, "explicit set");
    std::sort(elements.begin(), elements.end(), element_less);
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    auto n = std::make_shared<Node>();
    n->kind = SKind::Explicit;
    n->spec = s;
    n->elements = std::move(elements);
    return SubsetSpec(std::move(n));
  }

  static SubsetSpec intervals(const SemigroupSpec& s,
                              std::vector<std::pair<std::uint64_t, std::uint64_t>> ivs) {
    if (s.kind() != Kind::NatAdd) throw SchemaError("interval sets require nat-add");
    for (auto& [lo, hi] : ivs) {
      if (lo == 0) throw SchemaError("intervals live in the positive integers");
      if (hi < lo) throw SchemaError("interval upper end below lower end");
    }
    std::sort(ivs.begin(), ivs.end());
    auto n = std::make_shared<Node>();
    n->kind = SKind::Intervals;
    n->spec = s;
    n->ivs = std::move(ivs);
    return SubsetSpec(std::move(n));
  }

  static SubsetSpec prefix(const SemigroupSpec& s, std::string p) {
    if (s.kind() != Kind::FreeWord) throw SchemaError("prefix sets require free words");
    Element probe = s.word(p);  // validates letters
    (void)probe;
    auto n = std::make_shared<Node>();
    n->kind = SKind::Prefix;
    n->spec = s;
    n->prefix = std::move(p);
    return SubsetSpec(std::move(n));
  }

  static SubsetSpec table_subset(const SemigroupSpec& s, std::vector<std::size_t> indices) {
    if (s.kind() != Kind::FiniteTable) throw SchemaError("index sets require a finite table");
    for (std::size_t i : indices)
      if (i >= s.table_size()) throw SchemaError("index set entry out of range");
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    auto n = std::make_shared<Node>();
    n->kind = SKind::TableSubset;
    n->spec = s;
    n->indices = std::move(indices);
    return SubsetSpec(std::move(n));
  }

  static SubsetSpec complement(SubsetSpec inner, const Window& w) {
    auto n = std::make_shared<Node>();
    n->kind = SKind::Complement;
    n->spec = inner.spec();
    n->window = w;
    n->children.push_back(std::move(inner));
    return SubsetSpec(std::move(n));
  }

  static SubsetSpec set_union(std::vector<SubsetSpec> parts) {
    return combine(SKind::Union, std::move(parts));
  }

  static SubsetSpec set_intersection(std::vector<SubsetSpec> parts) {
    return combine(SKind::Intersection, std::move(parts));
  }

  SKind skind() const { return node_->kind; }
  const SemigroupSpec& spec() const { return node_->spec; }
  std::uint64_t mod() const { return node_->mod; }
  std::uint64_t rem() const { return node_->rem; }
  const std::vector<Element>& elements() const { return node_->elements; }
  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& interval_list() const { return node_->ivs; }
  const std::string& prefix_string() const { return node_->prefix; }
  const std::vector<std::size_t>& indices() const { return node_->indices; }
  const std::vector<SubsetSpec>& children() const { return node_->children; }
  const Window& complement_window() const { return *node_->window; }

  bool contains(const Element& x) const {
    node_->spec.require_own(x, "subset membership");
    switch (node_->kind) {
      case SKind::Residue:
        return x.nat() % node_->mod == node_->rem;
      case SKind::Explicit:
        return std::binary_search(node_->elements.begin(), node_->elements.end(), x,
                                  element_less);
      case SKind::Intervals:
        for (const auto& [lo, hi] : node_->ivs)
          if (lo <= x.nat() && x.nat() <= hi) return true;
        return false;
      case SKind::Prefix:
        return x.word().size() >= node_->prefix.size() &&
               x.word().compare(0, node_->prefix.size(), node_->prefix) == 0;
      case SKind::TableSubset:
        return std::binary_search(node_->indices.begin(), node_->indices.end(), x.index());
      case SKind::Complement:
        return window_contains(node_->spec, *node_->window, x) &&
               !node_->children.front().contains(x);
      case SKind::Union:
        for (const auto& c : node_->children)
          if (c.contains(x)) return true;
        return false;
      case SKind::Intersection:
        for (const auto& c : node_->children)
          if (!c.contains(x)) return false;
        return true;
    }
    return false;
  }

  // Structural equality of descriptions over the same semigroup.
  bool equals(const SubsetSpec& o) const {
    if (node_ == o.node_) return true;
    if (node_->spec.id() != o.node_->spec.id()) return false;
    if (node_->kind != o.node_->kind) return false;
    switch (node_->kind) {
      case SKind::Residue: return node_->mod == o.node_->mod && node_->rem == o.node_->rem;
      case SKind::Explicit: return node_->elements == o.node_->elements;
      case SKind::Intervals: return node_->ivs == o.node_->ivs;
      case SKind::Prefix: return node_->prefix == o.node_->prefix;
      case SKind::TableSubset: return node_->indices == o.node_->indices;
      case SKind::Complement:
        return node_->window->bound() == o.node_->window->bound() &&
               node_->children.front().equals(o.node_->children.front());
      case SKind::Union:
      case SKind::Intersection: {
        if (node_->children.size() != o.node_->children.size()) return false;
        for (std::size_t i = 0; i < node_->children.size(); ++i)
          if (!node_->children[i].equals(o.node_->children[i])) return false;
        return true;
      }
    }
    return false;
  }

  bool empty_on(const Window& w) const {
    for (const auto& e : window_elements(node_->spec, w))
      if (contains(e)) return false;
    return true;
  }

private:
  struct Node {
    SKind kind = SKind::Explicit;
    SemigroupSpec spec;
    std::uint64_t mod = 0, rem = 0;
    std::vector<Element> elements;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ivs;
    std::string prefix;
    std::vector<std::size_t> indices;
    std::optional<Window> window;
    std::vector<SubsetSpec> children;
  };

  explicit SubsetSpec(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static SubsetSpec combine(SKind kind, std::vector<SubsetSpec> parts) {
    if (parts.empty()) throw SchemaError("set combination needs at least one part");
    const std::uint64_t sid = parts.front().spec().id();
    for (const auto& p : parts)
      if (p.spec().id() != sid) throw SchemaError("set combination mixes semigroups");
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->spec = parts.front().spec();
    n->children = std::move(parts);
    return SubsetSpec(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace cstk
