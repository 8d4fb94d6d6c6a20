#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace iwasawa {

using Integer = boost::multiprecision::cpp_int;

bool is_prime(std::uint64_t x);

// p^e as an exact integer.
Integer prime_power(std::uint32_t p, int e);

// Exact p-adic valuation of a nonzero integer.
int exact_valuation(const Integer& x, std::uint32_t p);

// Legendre's formula: v_p(m!).
int factorial_valuation(std::uint32_t p, std::uint64_t m);

// Arithmetic context for Z/p^K. Shared by value objects, never mutated.
class PadicContext {
 public:
  PadicContext(std::uint32_t p, int precision);

  std::uint32_t prime() const { return p_; }
  int precision() const { return k_; }
  const Integer& modulus() const { return modulus_; }

  // Canonical representative in [0, p^K).
  Integer reduce(const Integer& x) const;

 private:
  std::uint32_t p_;
  int k_;
  Integer modulus_;
};

using ContextPtr = std::shared_ptr<const PadicContext>;

ContextPtr make_context(std::uint32_t p, int precision);

// Either an exact valuation below the cap, or "at least cap".
struct Valuation {
  std::optional<int> exact;
  int cap = 0;

  bool capped() const { return !exact.has_value(); }
  std::string to_string() const;
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

class PadicInt {
 public:
  PadicInt(ContextPtr ctx, const Integer& value);
  PadicInt(ContextPtr ctx, long long value);

  const Integer& residue() const { return residue_; }
  const ContextPtr& context() const { return ctx_; }
  std::uint32_t prime() const { return ctx_->prime(); }
  int precision() const { return ctx_->precision(); }

  bool is_zero() const { return residue_ == 0; }
  bool is_unit() const;

  // Same residue read at another precision. Lifting uses the canonical
  // representative, so it is only meaningful when the caller knows the
  // extra digits.
  PadicInt with_context(ContextPtr ctx) const { return PadicInt(std::move(ctx), residue_); }

  PadicInt operator+(const PadicInt& o) const;
  PadicInt operator-(const PadicInt& o) const;
  PadicInt operator*(const PadicInt& o) const;
  PadicInt operator-() const;
  bool operator==(const PadicInt& o) const;

  std::string to_string() const;

 private:
  void check_same(const PadicInt& o) const;

  ContextPtr ctx_;
  Integer residue_;
};

Valuation val_p(const PadicInt& x);

PadicInt invert(const PadicInt& x);

// (1+p)^z for a p-adic exponent z. Only z mod p^(K-1) matters.
PadicInt pow_one_plus_p(const PadicInt& z);

// (1+p)^z mod p^K for an integer exponent of any sign.
Integer pow_one_plus_p(std::uint32_t p, int precision, const Integer& z);

// Generalized binomial C(q, m), returned mod p^out_precision. Needs
// q.precision() >= out_precision + v_p(m!).
PadicInt binom(const PadicInt& q, std::uint64_t m, int out_precision);

// C(q, m) at the largest precision q supports.
PadicInt binom(const PadicInt& q, std::uint64_t m);

// Base-(1+p) logarithm of u = 1 mod p, returned mod p^(K-1).
PadicInt dlog_one_plus_p(const PadicInt& u);

}  // namespace iwasawa
