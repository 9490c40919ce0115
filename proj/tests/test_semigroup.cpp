#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include <cstk/semigroup.hpp>

using namespace cstk;

namespace {

SemigroupSpec left_zero() {
  return SemigroupSpec::finite_table({{0, 0}, {1, 1}}, false);
}

SemigroupSpec z4() {
  std::vector<std::vector<std::size_t>> t(4, std::vector<std::size_t>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t[i][j] = (i + j) % 4;
  return SemigroupSpec::finite_table(t, true);
}

// Independent associativity scan, lexicographically first violation.
std::optional<std::array<std::size_t, 3>> assoc_violation(
    const std::vector<std::vector<std::size_t>>& t) {
  const std::size_t n = t.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (t[t[x][y]][z] != t[x][t[y][z]]) return std::array<std::size_t, 3>{x, y, z};
  return std::nullopt;
}

}  // namespace

TEST_CASE("compose matches each kind's rule") {
  auto nat = SemigroupSpec::nat_add();
  CHECK(nat.compose(nat.nat(3), nat.nat(4)) == nat.nat(7));

  auto lz = left_zero();
  CHECK(lz.compose(lz.idx(1), lz.idx(0)) == lz.idx(1));

  auto fw = SemigroupSpec::free_word("ab");
  CHECK(fw.compose(fw.word("ab"), fw.word("ba")) == fw.word("abba"));
}

TEST_CASE("compose rejects foreign elements, even structurally equal specs") {
  auto a = SemigroupSpec::nat_add();
  auto b = SemigroupSpec::nat_add();
  CHECK_THROWS_AS(a.compose(a.nat(1), b.nat(1)), ContractError);
  CHECK_THROWS_AS(a.compose(b.nat(1), a.nat(1)), ContractError);

  auto t1 = left_zero();
  auto t2 = left_zero();
  CHECK_THROWS_AS(t1.compose(t1.idx(0), t2.idx(0)), ContractError);
}

TEST_CASE("free-word composition signals cap overflow instead of truncating") {
  auto fw = SemigroupSpec::free_word("ab", 4);
  CHECK(fw.try_compose(fw.word("ab"), fw.word("ab")).has_value());
  CHECK_FALSE(fw.try_compose(fw.word("abb"), fw.word("ab")).has_value());
  CHECK_THROWS_AS(fw.compose(fw.word("abb"), fw.word("ab")), ContractError);
}

TEST_CASE("nat-add rejects zero and overflows explicitly") {
  auto nat = SemigroupSpec::nat_add();
  CHECK_THROWS_AS(nat.nat(0), SchemaError);
  CHECK_FALSE(nat.try_compose(nat.nat(UINT64_MAX), nat.nat(1)).has_value());
}

TEST_CASE("product_ordered folds left to right") {
  auto nat = SemigroupSpec::nat_add();
  CHECK(product_ordered(nat, {nat.nat(1), nat.nat(2), nat.nat(3)}) == nat.nat(6));

  auto lz = left_zero();
  CHECK(product_ordered(lz, {lz.idx(0), lz.idx(1), lz.idx(1)}) == lz.idx(0));

  auto fw = SemigroupSpec::free_word("ab");
  CHECK(product_ordered(fw, {fw.word("a"), fw.word("b"), fw.word("a")}) == fw.word("aba"));

  CHECK(product_ordered(nat, {nat.nat(5)}) == nat.nat(5));
  CHECK_THROWS_AS(product_ordered(nat, std::vector<Element>{}), SchemaError);
}

TEST_CASE("product_ordered is a fold homomorphism over random splits") {
  auto nat = SemigroupSpec::nat_add();
  auto fw = SemigroupSpec::free_word("ab", 256);
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    const std::size_t len = 2 + rng() % 6;
    std::vector<Element> nats, words;
    for (std::size_t i = 0; i < len; ++i) {
      nats.push_back(nat.nat(1 + rng() % 100));
      words.push_back(fw.word(rng() % 2 ? "a" : "ba"));
    }
    const std::size_t cut = 1 + rng() % (len - 1);
    auto split_eq = [&](const SemigroupSpec& s, const std::vector<Element>& xs) {
      std::vector<Element> lo(xs.begin(), xs.begin() + cut);
      std::vector<Element> hi(xs.begin() + cut, xs.end());
      return product_ordered(s, xs) ==
             s.compose(product_ordered(s, lo), product_ordered(s, hi));
    };
    CHECK(split_eq(nat, nats));
    CHECK(split_eq(fw, words));
  }
}

TEST_CASE("commutative specs make ordered products permutation-invariant") {
  auto nat = SemigroupSpec::nat_add();
  std::mt19937_64 rng(11);
  for (int round = 0; round < 30; ++round) {
    std::vector<Element> xs;
    for (std::size_t i = 0; i < 2 + rng() % 5; ++i) xs.push_back(nat.nat(1 + rng() % 50));
    auto shuffled = xs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(product_ordered(nat, xs) == product_ordered(nat, shuffled));
  }
}

TEST_CASE("validate certifies associative tables") {
  auto lz_report = validate(left_zero());
  CHECK(lz_report.valid());
  CHECK(lz_report.associative);

  // XNOR on {0,1}: 0·0=1, 0·1=0, 1·0=0, 1·1=1.
  auto xnor = SemigroupSpec::finite_table({{1, 0}, {0, 1}}, true);
  auto xnor_report = validate(xnor);
  CHECK(xnor_report.valid());
  CHECK(xnor_report.commutative_ok);
}

TEST_CASE("boolean OR table is associative despite looking subtraction-like") {
  // 0·0=0, 0·1=1, 1·0=1, 1·1=1. The exhaustive oracle finds no violating
  // triple, so this table cannot serve as a non-associativity example.
  std::vector<std::vector<std::size_t>> or_table{{0, 1}, {1, 1}};
  CHECK_FALSE(assoc_violation(or_table).has_value());
  auto report = validate(SemigroupSpec::finite_table(or_table, true));
  CHECK(report.valid());
}

TEST_CASE("validate pinpoints the first violating triple of a non-associative table") {
  // 0·0=1, 0·1=0, 1·0=0, 1·1=0: (0·0)·1 = 1·1 = 0 but 0·(0·1) = 0·0 = 1.
  std::vector<std::vector<std::size_t>> bad{{1, 0}, {0, 0}};
  auto expected = assoc_violation(bad);
  REQUIRE(expected.has_value());
  CHECK(*expected == std::array<std::size_t, 3>{0, 0, 1});

  auto report = validate(SemigroupSpec::finite_table(bad, false));
  CHECK_FALSE(report.valid());
  CHECK_FALSE(report.associative);
  REQUIRE(report.assoc_witness.has_value());
  CHECK((*report.assoc_witness)[0] == 0);
  CHECK((*report.assoc_witness)[1] == 0);
  CHECK((*report.assoc_witness)[2] == 1);
}

TEST_CASE("validate flags a falsely declared commutative table") {
  auto report = validate(SemigroupSpec::finite_table({{0, 0}, {1, 1}}, true));
  CHECK(report.associative);
  CHECK_FALSE(report.commutative_ok);
  REQUIRE(report.comm_witness.has_value());
  CHECK((*report.comm_witness)[0] == 0);
  CHECK((*report.comm_witness)[1] == 1);
}

TEST_CASE("sequence rules evaluate exactly within their domains") {
  auto nat = SemigroupSpec::nat_add();
  auto f = SequenceRule::affine(nat, 0, 2);
  CHECK(f.eval(3) == nat.nat(6));

  auto lz = left_zero();
  auto p = SequenceRule::periodic(lz, {lz.idx(0), lz.idx(1)});
  CHECK(p.eval(4) == lz.idx(1));

  auto fw = SemigroupSpec::free_word("ab");
  auto pw = SequenceRule::power(fw, "ab");
  CHECK(pw.eval(2) == fw.word("abab"));

  auto ex = SequenceRule::explicit_prefix(nat, {nat.nat(5), nat.nat(9)});
  CHECK(ex.eval(2) == nat.nat(9));
  CHECK_FALSE(ex.defined_at(3));
  CHECK_THROWS_AS(ex.eval(3), ContractError);
}

TEST_CASE("sequence rule kinds are tied to semigroup kinds") {
  auto nat = SemigroupSpec::nat_add();
  auto lz = left_zero();
  auto fw = SemigroupSpec::free_word("ab");
  CHECK_THROWS_AS(SequenceRule::affine(lz, 0, 1), SchemaError);
  CHECK_THROWS_AS(SequenceRule::periodic(nat, {nat.nat(1)}), SchemaError);
  CHECK_THROWS_AS(SequenceRule::power(nat, "a"), SchemaError);
  CHECK_THROWS_AS(SequenceRule::affine(nat, 0, 0), SchemaError);
  CHECK_NOTHROW(SequenceRule::power(fw, "a"));
}

TEST_CASE("window enumeration is canonical and deterministic") {
  auto nat = SemigroupSpec::nat_add();
  auto w4 = window_elements(nat, Window(4));
  REQUIRE(w4.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(w4[i] == nat.nat(i + 1));

  auto z3 = SemigroupSpec::finite_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, true);
  auto all = window_elements(z3, Window());
  REQUIRE(all.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(all[i] == z3.idx(i));

  auto fw = SemigroupSpec::free_word("ab");
  auto words = window_elements(fw, Window(2));
  std::vector<std::string> expect{"a", "b", "aa", "ab", "ba", "bb"};
  REQUIRE(words.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(words[i].word() == expect[i]);

  CHECK(window_elements(fw, Window(2)) == words);
  CHECK_THROWS_AS(window_elements(nat, Window()), SchemaError);
}

TEST_CASE("sequence families are canonical, duplicate-free, inclusion-comparable") {
  auto nat = SemigroupSpec::nat_add();
  auto f1 = SequenceRule::affine(nat, 0, 1);
  auto f2 = SequenceRule::affine(nat, 0, 2);
  SequenceFamily small({f1});
  SequenceFamily big({f2, f1});

  CHECK(big.rules().front().key() < big.rules().back().key());
  CHECK(big.includes(small));
  CHECK(big.strictly_includes(small));
  CHECK_FALSE(small.strictly_includes(small));
  CHECK(small.includes(small));

  CHECK_THROWS_AS(SequenceFamily({f1, f1}), SchemaError);
  CHECK_THROWS_AS(SequenceFamily(std::vector<SequenceRule>{}), SchemaError);

  auto other = SemigroupSpec::nat_add();
  auto g = SequenceRule::affine(other, 0, 1);
  CHECK_THROWS_AS(SequenceFamily({f1, g}), SchemaError);
}

TEST_CASE("element ordering is ascending for integers and length-lex for words") {
  auto nat = SemigroupSpec::nat_add();
  CHECK(element_less(nat.nat(2), nat.nat(10)));
  auto fw = SemigroupSpec::free_word("ab");
  CHECK(element_less(fw.word("b"), fw.word("aa")));
  CHECK(element_less(fw.word("ab"), fw.word("ba")));
}
