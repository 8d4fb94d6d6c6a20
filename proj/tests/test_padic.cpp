#include <doctest.h>

#include <random>

#include "iwasawa/padic.hpp"

using namespace iwasawa;

namespace {

PadicInt num(std::uint32_t p, int k, long long v) { return PadicInt(make_context(p, k), v); }

// Pascal's triangle, exact.
Integer pascal(int q, int m) {
  std::vector<Integer> row{1};
  for (int i = 1; i <= q; ++i) {
    std::vector<Integer> next(i + 1, 1);
    for (int j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = next;
  }
  return row[m];
}

}  // namespace

TEST_CASE("valuation with cap") {
  CHECK(val_p(num(5, 4, 75)).exact == 2);
  CHECK(val_p(num(5, 4, 6)).exact == 0);
  auto z = val_p(num(5, 4, 0));
  CHECK(z.capped());
  CHECK(z.cap == 4);
  CHECK(z.to_string() == ">=4");
  CHECK(val_p(num(5, 4, 625)).capped());
}

TEST_CASE("inverse") {
  CHECK(invert(num(5, 2, 6)).residue() == 21);
  CHECK(invert(num(5, 2, 1)).residue() == 1);
  CHECK_THROWS_WITH_AS(invert(num(5, 2, 5)), "not invertible at this precision", std::domain_error);
  // brute force over all units mod 7^2
  for (int x = 1; x < 49; ++x) {
    if (x % 7 == 0) continue;
    int y = invert(num(7, 2, x)).residue().convert_to<int>();
    CHECK((x * y) % 49 == 1);
  }
}

TEST_CASE("powers of 1+p") {
  CHECK(pow_one_plus_p(num(5, 3, 0)).residue() == 1);
  CHECK(pow_one_plus_p(num(5, 3, 5)).residue() == 26);
  CHECK(pow_one_plus_p(num(5, 2, -1)).residue() == 21);
  // agrees with repeated multiplication
  for (int z = 0; z < 40; ++z) {
    long long v = 1;
    for (int i = 0; i < z; ++i) v = v * 8 % 2401;
    CHECK(pow_one_plus_p(num(7, 4, z)).residue() == v);
  }
}

TEST_CASE("powers of 1+p are additive in the exponent") {
  std::mt19937_64 rng(11);
  auto ctx = make_context(5, 7);
  for (int i = 0; i < 200; ++i) {
    PadicInt a(ctx, static_cast<long long>(rng() % 78125));
    PadicInt b(ctx, static_cast<long long>(rng() % 78125));
    CHECK(pow_one_plus_p(a + b) == pow_one_plus_p(a) * pow_one_plus_p(b));
  }
}

TEST_CASE("binomial coefficients") {
  CHECK(binom(num(5, 3, 17), 0).residue() == 1);
  CHECK(binom(num(5, 3, 17), 1).residue() == 17);
  CHECK(binom(num(5, 3, 6), 2).residue() == 15);
  for (int q = 0; q <= 30; ++q)
    for (int m = 0; m <= q; ++m) {
      auto ctx = make_context(5, 3 + factorial_valuation(5, m));
      CHECK(binom(PadicInt(ctx, q), m, 3).residue() == pascal(q, m) % 125);
    }
  // negative exponent: C(-1, m) = (-1)^m
  auto ctx = make_context(7, 6);
  for (int m = 0; m < 8; ++m)
    CHECK(binom(PadicInt(ctx, -1), m, 4).residue() == (m % 2 ? 2400 : 1));
}

TEST_CASE("binomials of exponents near one are divisible by p") {
  auto ctx = make_context(7, 6);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    PadicInt q(ctx, 1 + 7 * static_cast<long long>(rng() % 10000));
    for (std::uint64_t m = 2; m <= 6; ++m) {
      auto v = val_p(binom(q, m));
      CHECK((v.capped() || *v.exact >= 1));
    }
  }
}

TEST_CASE("discrete logarithm") {
  CHECK(dlog_one_plus_p(num(5, 3, 1)).residue() == 0);
  auto l = dlog_one_plus_p(num(5, 3, 26));
  CHECK(l.residue() == 5);
  CHECK(l.precision() == 2);
  CHECK(dlog_one_plus_p(num(5, 3, 6)).residue() == 1);
  CHECK_THROWS_WITH_AS(dlog_one_plus_p(num(5, 3, 2)), "not in the domain of the (1+p)-logarithm",
                       std::domain_error);
  auto ctx = make_context(5, 4);
  for (int z = 0; z < 125; ++z)
    CHECK(dlog_one_plus_p(pow_one_plus_p(PadicInt(ctx, z))).residue() == z);
}

TEST_CASE("ring axioms on samples") {
  auto ctx = make_context(11, 9);
  std::mt19937_64 rng(5);
  auto draw = [&] { return PadicInt(ctx, static_cast<long long>(rng() >> 2)); };
  for (int i = 0; i < 200; ++i) {
    auto a = draw(), b = draw(), c = draw();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == PadicInt(ctx, 0));
  }
}

TEST_CASE("parameter checks") {
  CHECK_THROWS_AS(make_context(6, 3), std::invalid_argument);
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK(factorial_valuation(5, 51) == 12);
}
