#include "iwasawa/sampling.hpp"

#include <algorithm>

namespace iwasawa {

Integer random_residue(Rng& rng, std::uint32_t p, int digits) {
  Integer r = 0;
  for (int i = 0; i < digits; ++i) r = r * p + rng() % p;
  return r;
}

Integer random_spread_residue(Rng& rng, std::uint32_t p, int digits) {
  if (digits <= 0) return 0;
  std::uint64_t roll = rng() % 8;
  if (roll == 0) return 0;
  int shift = roll < 5 ? 0 : static_cast<int>(rng() % digits);
  Integer r = random_residue(rng, p, digits - shift);
  return (r * prime_power(p, shift)) % prime_power(p, digits);
}

BasisCoordinates random_coords(Rng& rng, int n, LowerOrder order, GroupKind kind,
                               const ContextPtr& ctx) {
  BasisCoordinates c;
  c.n = n;
  c.order = order;
  c.kind = kind;
  for (const Variable& v : enumerate_vars(n, order, kind)) {
    int digits = coordinate_precision(v.kind, ctx->precision());
    c.coords.emplace_back(ctx, random_spread_residue(rng, ctx->prime(), digits));
  }
  return c;
}

GroupElement random_element(Rng& rng, int n, GroupKind kind, const ContextPtr& ctx, int factors) {
  auto vars = enumerate_vars(n, LowerOrder::kHeight, kind);
  if (factors <= 0) factors = 2 * static_cast<int>(vars.size());
  GroupElement g(Matrix::identity(ctx, n), kind);
  for (int i = 0; i < factors; ++i) {
    const Variable& v = vars[rng() % vars.size()];
    PadicInt e(ctx, random_spread_residue(rng, ctx->prime(), ctx->precision()));
    if (rng() % 2) e = -e;
    g = g * gen_power(n, v, e, kind);
  }
  return g;
}

Word random_normal_word(Rng& rng, const Signature& sig, int max_deg) {
  for (;;) {
    int len = static_cast<int>(rng() % (max_deg + 1));
    std::vector<int> idx(len);
    for (int& i : idx) i = 1 + static_cast<int>(rng() % sig.dim());
    std::sort(idx.begin(), idx.end());
    Word w = make_word(idx);
    if (sig.degree(w) <= max_deg) return w;
  }
}

Series random_normal_series(Rng& rng, const SignaturePtr& sig, int terms, int max_deg) {
  Series s(sig);
  for (int t = 0; t < terms; ++t) {
    Coeff c = 1 + rng() % (sig->modulus() - 1);
    s.add(random_normal_word(rng, *sig, max_deg), c);
  }
  return s;
}

}  // namespace iwasawa
