#include <doctest.h>

#include "iwasawa/graded.hpp"
#include "iwasawa/normalize.hpp"
#include "iwasawa/sampling.hpp"

using namespace iwasawa;

namespace {

EngineParams params(int n, std::uint32_t p, int K, int M, GroupKind kind = GroupKind::kSL,
                    LowerOrder order = LowerOrder::kHeight) {
  return EngineParams{n, p, K, M, order, kind};
}

int idx(const Signature& sig, const std::string& tag) {
  for (const Variable& v : sig.vars())
    if (v.tag() == tag) return v.index;
  FAIL("no variable " << tag);
  return 0;
}

Word word(const Signature& sig, std::initializer_list<const char*> tags) {
  Word w;
  for (const char* t : tags) w.push_back(static_cast<char>(idx(sig, t)));
  return w;
}

}  // namespace

TEST_CASE("scaled valuation of terms") {
  auto sig = make_signature(params(3, 5, 3, 20));
  CHECK(*svar(*sig, word(*sig, {"U(3,1)"}), 1).exact == 1);
  CHECK(*svar(*sig, Word{}, 5).exact == 3);
  CHECK(svar(Series(sig)).capped());
  CHECK(*svar(*sig, word(*sig, {"W(1,2)", "V(1,3)"}), 25).exact == 3 + 2 + 6);
}

TEST_CASE("Lazard condition") {
  CHECK_THROWS_WITH_AS(compile_rules(params(3, 3, 2, 6)), doctest::Contains("Lazard condition violated"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(compile_rules(params(4, 5, 2, 6)), doctest::Contains("Lazard condition violated"),
                       std::invalid_argument);
  CHECK_NOTHROW(compile_rules(params(3, 5, 2, 6)));
}

TEST_CASE("torus against a root with zero pairing swaps") {
  auto rules4 = compile_rules(params(4, 7, 3, 10));
  const auto& sig4 = *rules4.signature();
  const auto& r = rules4.rule(idx(sig4, "W(1,2)"), idx(sig4, "U(4,3)"));
  CHECK(r.pair_case.relation == Relation::kTorusLower);
  CHECK(r.pair_case.pairing == 0);
  REQUIRE(r.rhs.size() == 1);
  CHECK(r.rhs[0].word == word(sig4, {"U(4,3)", "W(1,2)"}));
  CHECK(r.rhs[0].coeff == 1);
}

TEST_CASE("opposite roots produce the torus letter") {
  auto rules = compile_rules(params(2, 5, 3, 8));
  const auto& sig = *rules.signature();
  const auto& r = rules.rule(idx(sig, "V(1,2)"), idx(sig, "U(2,1)"));
  CHECK(r.pair_case.relation == Relation::kOpposite);
  Series rhs = rules.rhs_series(r);
  CHECK(rhs.coeff(Word{}) == 0);
  CHECK(rhs.coeff(word(sig, {"W(1,2)"})) == 1);
  // (1+p)^-2 in front of U V
  Integer expect = pow_one_plus_p(5, 3, -2);
  CHECK(rhs.coeff(word(sig, {"U(2,1)", "V(1,2)"})) == expect.convert_to<Coeff>());
}

TEST_CASE("two V letters with a root sum") {
  auto rules = compile_rules(params(3, 5, 2, 9));
  const auto& sig = *rules.signature();
  const auto& r = rules.rule(idx(sig, "V(1,2)"), idx(sig, "V(2,3)"));
  CHECK(r.pair_case.relation == Relation::kUpperSum);
  // (1+V13)(1+V23)(1+V12) - 1 - V12 - V23
  Series expect(rules.signature());
  expect.add(word(sig, {"V(1,3)"}), 1);
  expect.add(word(sig, {"V(2,3)", "V(1,2)"}), 1);
  expect.add(word(sig, {"V(1,3)", "V(2,3)"}), 1);
  expect.add(word(sig, {"V(1,3)", "V(1,2)"}), 1);
  expect.add(word(sig, {"V(1,3)", "V(2,3)", "V(1,2)"}), 1);
  CHECK(rules.rhs_series(r) == expect);
  int lowest = 0;
  for (const RhsTerm& t : r.rhs) lowest += t.svar == 2;
  CHECK(lowest == 2);
}

TEST_CASE("every rule passes its group check") {
  for (int n = 2; n <= 4; ++n)
    for (std::uint32_t p : {5u, 7u}) {
      if (p <= static_cast<std::uint32_t>(n + 1)) continue;
      for (auto kind : {GroupKind::kSL, GroupKind::kGL})
        for (auto order : {LowerOrder::kHeight, LowerOrder::kLex}) {
          auto rules = compile_rules(params(n, p, 3, 8, kind, order));
          for (const RewriteRule* r : rules.all()) CHECK(r->group_checked);
        }
    }
}

TEST_CASE("normalize examples") {
  auto rules = compile_rules(params(3, 5, 3, 10));
  auto sig = rules.signature();
  Word normal = word(*sig, {"U(3,1)", "W(1,2)", "V(1,2)"});
  CHECK(normalize(Series::monomial(sig, normal, 7), rules) == Series::monomial(sig, normal, 7));
  Series s = normalize(Series::monomial(sig, word(*sig, {"V(1,2)", "U(3,2)"})), rules);
  CHECK(s == Series::monomial(sig, word(*sig, {"U(3,2)", "V(1,2)"})));

  auto rules2 = compile_rules(params(2, 5, 3, 6));
  auto sig2 = rules2.signature();
  Series t = normalize(Series::monomial(sig2, word(*sig2, {"V(1,2)", "U(2,1)"})), rules2);
  CHECK(t.is_normal());
  CHECK(t.coeff(word(*sig2, {"W(1,2)"})) == 1);
  CHECK(sig2->valuation(t.coeff(word(*sig2, {"U(2,1)", "V(1,2)"}))) == 0);
}

TEST_CASE("multiply basics") {
  auto rules = compile_rules(params(3, 5, 3, 12));
  auto sig = rules.signature();
  Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    Series s = random_normal_series(rng, sig, 4, 6);
    CHECK(multiply(Series::one(sig), s, rules) == s);
    CHECK(multiply(s, Series::one(sig), rules) == s);
  }
  for (const Variable& v : sig->vars()) {
    Word x(1, static_cast<char>(v.index));
    Series a = Series::one(sig) + Series::monomial(sig, x);
    Series expect = Series::one(sig) + Series::monomial(sig, x, 2) + Series::monomial(sig, x + x);
    CHECK(multiply(a, a, rules) == expect);
  }
  auto other = compile_rules(params(3, 5, 3, 11));
  CHECK_THROWS_AS(multiply(Series::one(sig), Series::one(other.signature()), rules),
                  std::invalid_argument);
}

TEST_CASE("associativity, confluence and filtration on samples") {
  for (int n = 2; n <= 3; ++n)
    for (auto kind : {GroupKind::kSL, GroupKind::kGL}) {
      auto rules = compile_rules(params(n, 5, 3, 10, kind));
      auto sig = rules.signature();
      Rng rng(100 + n);
      NormalizeOptions right{Strategy::kRightmost, Measure::kRefined};
      for (int i = 0; i < 15; ++i) {
        Series a = random_normal_series(rng, sig, 3, 4);
        Series b = random_normal_series(rng, sig, 3, 4);
        Series c = random_normal_series(rng, sig, 3, 4);
        CHECK(multiply(multiply(a, b, rules), c, rules) == multiply(a, multiply(b, c, rules), rules));
        Series raw = a.concat(b).concat(c);
        CHECK(normalize(raw, rules) == normalize(raw, rules, right));
        auto sab = svar(multiply(a, b, rules));
        auto sa = svar(a), sb = svar(b);
        if (sab.exact && sa.exact && sb.exact) CHECK(*sab.exact >= *sa.exact + *sb.exact);
        CHECK(multiply(a, b + c, rules) == multiply(a, b, rules) + multiply(a, c, rules));
      }
    }
}

TEST_CASE("central letter commutes through multiplication") {
  auto rules = compile_rules(params(3, 5, 3, 12, GroupKind::kGL));
  auto sig = rules.signature();
  Series z = Series::monomial(sig, Word(1, static_cast<char>(sig->dim())));
  Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    Series s = random_normal_series(rng, sig, 4, 6);
    CHECK(multiply(z, s, rules) == multiply(s, z, rules));
  }
}

TEST_CASE("plain inversion count is not a termination measure over Z/p^K") {
  auto rules = compile_rules(params(3, 5, 3, 12));
  auto sig = rules.signature();
  Series s = Series::monomial(sig, word(*sig, {"V(1,3)", "U(3,2)", "V(1,3)"}));
  NormalizeOptions plain{Strategy::kLeftmost, Measure::kPlainInversion};
  CHECK_THROWS_AS(normalize(s, rules, plain), MeasureViolation);
  NormalizeStats stats;
  CHECK_NOTHROW(normalize(s, rules, {}, &stats));
  CHECK(stats.measure_checks > 0);
}

TEST_CASE("graded dimensions") {
  for (int n = 2; n <= 5; ++n) {
    CHECK(graded_dim(n, 0) == 1);
    CHECK(graded_dim(n, 1) == static_cast<std::uint64_t>(n));
  }
  CHECK(graded_dims(2, 4) == std::vector<std::uint64_t>{1, 2, 4, 6, 9});
  // brute force over a + 2b + c = m
  for (int m = 0; m <= 12; ++m) {
    std::uint64_t count = 0;
    for (int b = 0; 2 * b <= m; ++b) count += m - 2 * b + 1;
    CHECK(graded_dim(2, m) == count);
  }
  CHECK(graded_dim(2, 2, GroupKind::kGL) == 5);
}

TEST_CASE("graded basis") {
  CHECK(graded_basis(3, 0) == std::vector<Word>{Word{}});
  auto sig = make_signature(params(2, 5, 1, 4));
  CHECK(graded_basis(2, 1) == std::vector<Word>{word(*sig, {"U(2,1)"}), word(*sig, {"V(1,2)"})});
  auto b2 = graded_basis(2, 2);
  CHECK(b2 == std::vector<Word>{word(*sig, {"U(2,1)", "U(2,1)"}), word(*sig, {"U(2,1)", "V(1,2)"}),
                                word(*sig, {"W(1,2)"}), word(*sig, {"V(1,2)", "V(1,2)"})});
  for (int n = 2; n <= 3; ++n) {
    auto counts = enumerated_counts(n, 14);
    auto dims = graded_dims(n, 14);
    CHECK(counts == dims);
    for (int m = 0; m <= 8; ++m) CHECK(graded_basis(n, m).size() == dims[m]);
  }
}

TEST_CASE("front insertion agrees with the worklist") {
  for (auto kind : {GroupKind::kSL, GroupKind::kGL}) {
    auto rules = compile_rules(params(3, 5, 1, 20, kind));
    auto sig = rules.signature();
    Multiplier mul(rules);
    Rng rng(31);
    for (int i = 0; i < 6; ++i) {
      Series a = random_normal_series(rng, sig, 3, 6);
      Series b = random_normal_series(rng, sig, 3, 6);
      CHECK(mul.multiply(a, b) == multiply(a, b, rules));
      Series raw = b.concat(a);
      CHECK(mul.normalize(raw) == normalize(raw, rules));
    }
  }
  auto rules = compile_rules(params(2, 7, 3, 12));
  auto sig = rules.signature();
  Rng rng(5);
  NormalizeOptions front{Strategy::kFrontInsertion, Measure::kRefined};
  for (int i = 0; i < 10; ++i) {
    Series a = random_normal_series(rng, sig, 3, 5);
    Series b = random_normal_series(rng, sig, 3, 5);
    CHECK(multiply(a, b, rules, front) == multiply(a, b, rules));
  }
}
