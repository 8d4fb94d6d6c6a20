#pragma once

#include <cstdint>
#include <vector>

#include "iwasawa/series.hpp"

namespace iwasawa {

// Number of normal-form monomials of scaled degree exactly m: the
// coefficient of t^m in prod_vars 1/(1 - t^weight).
std::uint64_t graded_dim(int n, int m, GroupKind kind = GroupKind::kSL);
std::vector<std::uint64_t> graded_dims(int n, int max_m, GroupKind kind = GroupKind::kSL);

// Visits every normal-form word of degree <= max_deg once, in
// lexicographic order of index sequences. weights[k] is the weight of
// variable k+1. The visitor gets (letters, length, degree).
template <class Visit>
void for_each_normal_word(const std::vector<int>& weights, int max_deg, Visit&& visit) {
  const int d = static_cast<int>(weights.size());
  std::vector<char> letters(static_cast<size_t>(max_deg) + 1);
  visit(static_cast<const char*>(letters.data()), 0, 0);
  auto rec = [&](auto&& self, int len, int start, int deg) -> void {
    for (int k = start; k < d; ++k) {
      const int nd = deg + weights[k];
      if (nd > max_deg) continue;
      letters[len] = static_cast<char>(k + 1);
      visit(static_cast<const char*>(letters.data()), len + 1, nd);
      self(self, len + 1, k, nd);
    }
  };
  rec(rec, 0, 0, 0);
}

std::vector<int> variable_weights(int n, LowerOrder order = LowerOrder::kHeight,
                                  GroupKind kind = GroupKind::kSL);

// Normal-form words of degree exactly m, lexicographically ordered.
std::vector<Word> graded_basis(int n, int m, LowerOrder order = LowerOrder::kHeight,
                               GroupKind kind = GroupKind::kSL);

// Per-degree counts of enumerated normal-form words, degrees 0..max_m.
std::vector<std::uint64_t> enumerated_counts(int n, int max_m, LowerOrder order = LowerOrder::kHeight,
                                             GroupKind kind = GroupKind::kSL);

}  // namespace iwasawa
