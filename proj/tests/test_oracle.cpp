#include <doctest.h>

#include "iwasawa/oracle.hpp"
#include "iwasawa/sampling.hpp"

using namespace iwasawa;

namespace {

EngineParams params(int n, std::uint32_t p, int K, int M, GroupKind kind = GroupKind::kSL) {
  return EngineParams{n, p, K, M, LowerOrder::kHeight, kind};
}

}  // namespace

TEST_CASE("quotient orders") {
  CHECK(FiniteQuotient(2, 5, 1).size() == 5);
  CHECK(FiniteQuotient(3, 5, 1).size() == 125);
  CHECK(FiniteQuotient(2, 5, 2).size() == 625);
  // GL adds the centre (1+p)I, trivial mod p
  CHECK(FiniteQuotient(2, 5, 1, GroupKind::kGL).size() == 5);
  CHECK(FiniteQuotient(2, 5, 2, GroupKind::kGL).size() == 625 * 5);
  CHECK_THROWS_AS(FiniteQuotient(3, 5, 2, GroupKind::kSL, LowerOrder::kHeight, 1000), std::length_error);
}

TEST_CASE("quotient closure and indexing") {
  FiniteQuotient q(3, 5, 1);
  for (std::size_t a = 0; a < q.size(); a += 7) {
    CHECK(q.mul(a, q.identity()) == a);
    CHECK(q.mul(q.identity(), a) == a);
    bool has_inverse = false;
    for (std::size_t b = 0; b < q.size(); ++b) has_inverse |= q.mul(a, b) == q.identity();
    CHECK(has_inverse);
  }
  for (std::size_t i = 1; i < q.size(); ++i) CHECK(q.element(i - 1) < q.element(i));
  // U and W generators die mod p
  auto vars = enumerate_vars(3);
  for (const Variable& v : vars) CHECK((q.generator(v.index) == q.identity()) == (v.kind != VarKind::V));
}

TEST_CASE("embedding of words") {
  FiniteQuotient q(2, 5, 2);
  auto sig = make_signature(params(2, 5, 2, 10));
  CHECK(embed(Word{}, q, 1) == GAElement::group(&q, 5, 1, q.identity()));
  const int u = 1;  // U(2,1)
  GAElement x = embed(Word(1, static_cast<char>(u)), q, 2);
  GAElement expect = GAElement::group(&q, 5, 2, q.generator(u)) - GAElement::group(&q, 5, 2, q.identity());
  CHECK(x == expect);
  Word uv{static_cast<char>(1), static_cast<char>(3)};
  CHECK(embed(uv, q, 2) == embed(Word(1, uv[0]), q, 2) * embed(Word(1, uv[1]), q, 2));
  // multiplicative on raw concatenations
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    Word a = random_normal_word(rng, *sig, 5), b = random_normal_word(rng, *sig, 5);
    CHECK(embed(a + b, q, 2) == embed(a, q, 2) * embed(b, q, 2));
  }
}

TEST_CASE("augmentation nilpotency") {
  auto c5 = FiniteQuotient::generated_by(2, 5, 1, {raw_x(make_context(5, 1), 2, Root{1, 2}, 1)});
  CHECK(c5.size() == 5);
  CHECK(aug_nilpotency(c5, 1).t == 5);
  auto triv = FiniteQuotient::generated_by(2, 5, 1, {});
  CHECK(triv.size() == 1);
  CHECK(aug_nilpotency(triv, 1).t == 1);

  auto prof = aug_nilpotency(FiniteQuotient(3, 5, 1), 1);
  CHECK(prof.t == 17);
  REQUIRE(prof.log_sizes.size() == static_cast<std::size_t>(prof.t + 1));
  CHECK(prof.log_sizes[0] == 125);
  CHECK(prof.log_sizes[1] == 124);
  CHECK(prof.log_sizes[prof.t - 1] > 0);
  CHECK(prof.log_sizes[prof.t] == 0);
  for (int k = 1; k <= prof.t; ++k) CHECK(prof.log_sizes[k] < prof.log_sizes[k - 1]);

  // over Z/p^2 the cyclic ideal is still nilpotent, just later
  auto c5k2 = aug_nilpotency(c5, 2);
  CHECK(c5k2.t > 5);
  CHECK(c5k2.log_sizes[c5k2.t - 1] > 0);
}

TEST_CASE("hom check") {
  FiniteQuotient q2(2, 5, 1);
  const int t2 = aug_nilpotency(q2, 1).t;
  CHECK(t2 == 5);
  auto rules = compile_rules(params(2, 5, 1, oracle_tight_bound(2, 1, t2)));
  auto sig = rules.signature();
  Multiplier mul(rules);
  Series v = Series::monomial(sig, Word(1, static_cast<char>(3)));
  Series u = Series::monomial(sig, Word(1, static_cast<char>(1)));
  CHECK(hom_check(v, u, q2, 1, t2, mul).pass);
  CHECK(hom_check(u, u, q2, 1, t2, mul).pass);

  auto small = compile_rules(params(2, 5, 1, 9));
  Multiplier mul_small(small);
  Series one = Series::one(small.signature());
  CHECK_THROWS_WITH_AS(hom_check(one, one, q2, 1, t2, mul_small), doctest::Contains("truncation not oracle-tight"),
                       std::invalid_argument);

  FiniteQuotient q3(3, 5, 1);
  auto rules3 = compile_rules(params(3, 5, 1, 51));
  auto sig3 = rules3.signature();
  Multiplier mul3(rules3);
  Rng rng(77);
  for (int i = 0; i < 8; ++i) {
    Series a = Series::monomial(sig3, random_normal_word(rng, *sig3, 6), 1 + rng() % 4);
    Series b = Series::monomial(sig3, random_normal_word(rng, *sig3, 6), 1 + rng() % 4);
    auto rep = hom_check(a, b, q3, 1, 17, mul3);
    CHECK(rep.pass);
    CHECK(rep.witnesses.empty());
  }
}

TEST_CASE("the quotient separates a wrong swap") {
  FiniteQuotient q(2, 5, 2);
  auto sig = make_signature(params(2, 5, 2, 10));
  Series v = Series::monomial(sig, Word{3});
  Series u = Series::monomial(sig, Word{1});
  CHECK(embed(Series::monomial(sig, Word{1, 3}), q, 1) == embed(u, q, 1) * embed(v, q, 1));
  CHECK_FALSE(embed(Series::monomial(sig, Word{1, 3}), q, 1) == embed(v, q, 1) * embed(u, q, 1));
}

TEST_CASE("independence") {
  FiniteQuotient q(2, 5, 2);
  CHECK(independence_check(q, 0).rank == 1);
  auto r1 = independence_check(q, 1);
  CHECK(r1.rank == 3);
  CHECK(r1.report.pass);
  CHECK(independence_check(q, 2).rank == 7);
  auto r4 = independence_check(q, 4);
  CHECK(r4.words == 22);
  CHECK(r4.rank == 22);
  CHECK(r4.report.pass);

  // mod p the U letters vanish, so depth 1 is already too shallow at m0 = 1
  auto shallow = independence_check(FiniteQuotient(2, 5, 1), 1);
  CHECK_FALSE(shallow.report.pass);
  REQUIRE(!shallow.report.witnesses.empty());
  CHECK(shallow.report.witnesses[0] == "quotient too shallow");
  CHECK(shallow.report.witnesses[1].find("kernel") == 0);
}

TEST_CASE("relation matrix sweep") {
  auto rep = relation_matrix_check(3, 5, 8, GroupKind::kSL);
  CHECK(rep.pass);
  CHECK(rep.witnesses.empty());
  CHECK(rep.params.at("instances.opposite") == "3");
  CHECK(rep.params.at("instances.upper-sum") == "1");
  CHECK(rep.params.at("instances.upper-sum-reversed") == "1");
  CHECK(rep.params.count("instances.central") == 0);

  auto n2 = relation_matrix_check(2, 5, 8, GroupKind::kGL);
  CHECK(n2.pass);
  CHECK(n2.params.at("instances.central") == "4");

  CHECK(relation_matrix_check(4, 7, 6, GroupKind::kGL).pass);
  CHECK_THROWS_WITH_AS(relation_matrix_check(3, 3, 4, GroupKind::kSL), doctest::Contains("Lazard"),
                       std::invalid_argument);
}
