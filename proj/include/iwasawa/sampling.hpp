#pragma once

#include <random>

#include "iwasawa/matgroup.hpp"
#include "iwasawa/series.hpp"

namespace iwasawa {

using Rng = std::mt19937_64;

// Uniform residue below p^digits.
Integer random_residue(Rng& rng, std::uint32_t p, int digits);

// Residue with a random valuation: often a unit, sometimes divisible by
// powers of p, occasionally zero.
Integer random_spread_residue(Rng& rng, std::uint32_t p, int digits);

// Coordinates reduced to the precision each kind carries.
BasisCoordinates random_coords(Rng& rng, int n, LowerOrder order, GroupKind kind,
                               const ContextPtr& ctx);

// Product of random generator powers taken in random order.
GroupElement random_element(Rng& rng, int n, GroupKind kind, const ContextPtr& ctx,
                            int factors = 0);

// Random normal-form word of degree <= max_deg.
Word random_normal_word(Rng& rng, const Signature& sig, int max_deg);

// Normal-form series with up to `terms` terms of degree <= max_deg.
Series random_normal_series(Rng& rng, const SignaturePtr& sig, int terms, int max_deg);

}  // namespace iwasawa
