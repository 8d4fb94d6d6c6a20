#include "iwasawa/padic.hpp"

#include <stdexcept>

namespace iwasawa {

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

Integer prime_power(std::uint32_t p, int e) {
  Integer r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

int exact_valuation(const Integer& x, std::uint32_t p) {
  if (x == 0) throw std::invalid_argument("valuation of zero is infinite");
  Integer y = x < 0 ? Integer(-x) : x;
  int v = 0;
  while (y % p == 0) {
    y /= p;
    ++v;
  }
  return v;
}

int factorial_valuation(std::uint32_t p, std::uint64_t m) {
  int v = 0;
  while (m > 0) {
    m /= p;
    v += static_cast<int>(m);
  }
  return v;
}

PadicContext::PadicContext(std::uint32_t p, int precision)
    : p_(p), k_(precision), modulus_(prime_power(p, precision)) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
  if (precision < 0) throw std::invalid_argument("precision must be nonnegative");
}

Integer PadicContext::reduce(const Integer& x) const {
  Integer r = x % modulus_;
  if (r < 0) r += modulus_;
  return r;
}

ContextPtr make_context(std::uint32_t p, int precision) {
  return std::make_shared<const PadicContext>(p, precision);
}

std::string Valuation::to_string() const {
  if (exact) return std::to_string(*exact);
  return ">=" + std::to_string(cap);
}

PadicInt::PadicInt(ContextPtr ctx, const Integer& value)
    : ctx_(std::move(ctx)), residue_(ctx_->reduce(value)) {}

PadicInt::PadicInt(ContextPtr ctx, long long value) : PadicInt(std::move(ctx), Integer(value)) {}

bool PadicInt::is_unit() const {
  if (ctx_->precision() == 0) return true;
  return residue_ % ctx_->prime() != 0;
}

void PadicInt::check_same(const PadicInt& o) const {
  if (ctx_ != o.ctx_ &&
      (ctx_->prime() != o.ctx_->prime() || ctx_->precision() != o.ctx_->precision()))
    throw std::invalid_argument("p-adic operands have different parameters");
}

PadicInt PadicInt::operator+(const PadicInt& o) const {
  check_same(o);
  return PadicInt(ctx_, residue_ + o.residue_);
}

PadicInt PadicInt::operator-(const PadicInt& o) const {
  check_same(o);
  return PadicInt(ctx_, residue_ - o.residue_);
}

PadicInt PadicInt::operator*(const PadicInt& o) const {
  check_same(o);
  return PadicInt(ctx_, residue_ * o.residue_);
}

PadicInt PadicInt::operator-() const { return PadicInt(ctx_, -residue_); }

bool PadicInt::operator==(const PadicInt& o) const {
  return prime() == o.prime() && precision() == o.precision() && residue_ == o.residue_;
}

std::string PadicInt::to_string() const { return residue_.str(); }

Valuation val_p(const PadicInt& x) {
  Valuation v;
  v.cap = x.precision();
  if (!x.is_zero()) v.exact = exact_valuation(x.residue(), x.prime());
  return v;
}

namespace {

// Inverse of a unit modulo m by the extended Euclidean algorithm.
Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw std::domain_error("not invertible at this precision");
  s0 %= m;
  if (s0 < 0) s0 += m;
  return s0;
}

}  // namespace

PadicInt invert(const PadicInt& x) {
  if (!x.is_unit()) throw std::domain_error("not invertible at this precision");
  if (x.precision() == 0) return x;
  return PadicInt(x.context(), inverse_mod(x.residue(), x.context()->modulus()));
}

Integer pow_one_plus_p(std::uint32_t p, int precision, const Integer& z) {
  if (precision == 0) return 0;
  Integer mod = prime_power(p, precision);
  // (1+p) has order dividing p^(K-1) in (Z/p^K)^*, p odd.
  Integer period = prime_power(p, precision - 1);
  Integer e = z % period;
  if (e < 0) e += period;
  return boost::multiprecision::powm(Integer(1 + p), e, mod);
}

PadicInt pow_one_plus_p(const PadicInt& z) {
  return PadicInt(z.context(), pow_one_plus_p(z.prime(), z.precision(), z.residue()));
}

PadicInt binom(const PadicInt& q, std::uint64_t m, int out_precision) {
  const std::uint32_t p = q.prime();
  const int v = factorial_valuation(p, m);
  if (q.precision() < out_precision + v)
    throw std::invalid_argument("binomial needs more input precision");
  auto out = make_context(p, out_precision);
  if (m == 0) return PadicInt(out, 1);
  const Integer& mod = q.context()->modulus();
  Integer num = 1, den = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    num = (num * (q.residue() - i)) % mod;
    den *= (i + 1);
  }
  if (num < 0) num += mod;
  Integer pv = prime_power(p, v);
  // num is congruent to C(q,m)*m! which is divisible by p^v.
  num /= pv;
  den /= pv;
  Integer mod_out = prime_power(p, out_precision);
  if (out_precision == 0) return PadicInt(out, 0);
  return PadicInt(out, num * inverse_mod(den % mod_out, mod_out));
}

PadicInt binom(const PadicInt& q, std::uint64_t m) {
  int out = q.precision() - factorial_valuation(q.prime(), m);
  return binom(q, m, out < 0 ? 0 : out);
}

PadicInt dlog_one_plus_p(const PadicInt& u) {
  const std::uint32_t p = u.prime();
  const int k = u.precision();
  if (p == 2) throw std::invalid_argument("the (1+p)-logarithm needs odd p");
  if (k >= 1 && u.residue() % p != 1 % p)
    throw std::domain_error("not in the domain of the (1+p)-logarithm");
  auto out = make_context(p, k >= 1 ? k - 1 : 0);
  Integer z = 0;
  Integer step = 1;
  for (int j = 2; j <= k; ++j) {
    Integer target = u.residue() % prime_power(p, j);
    bool found = false;
    for (std::uint32_t d = 0; d < p; ++d) {
      Integer cand = z + step * d;
      if (pow_one_plus_p(p, j, cand) == target) {
        z = cand;
        found = true;
        break;
      }
    }
    if (!found) throw std::domain_error("not in the domain of the (1+p)-logarithm");
    step *= p;
  }
  return PadicInt(out, z);
}

}  // namespace iwasawa
