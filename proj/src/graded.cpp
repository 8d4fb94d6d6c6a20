#include "iwasawa/graded.hpp"

#include <stdexcept>

namespace iwasawa {

std::vector<int> variable_weights(int n, LowerOrder order, GroupKind kind) {
  std::vector<int> w;
  for (const Variable& v : enumerate_vars(n, order, kind)) w.push_back(v.weight);
  return w;
}

std::vector<std::uint64_t> graded_dims(int n, int max_m, GroupKind kind) {
  if (max_m < 0) throw std::invalid_argument("degree must be nonnegative");
  std::vector<std::uint64_t> dp(max_m + 1, 0);
  dp[0] = 1;
  for (int w : variable_weights(n, LowerOrder::kHeight, kind))
    for (int s = w; s <= max_m; ++s) dp[s] += dp[s - w];
  return dp;
}

std::uint64_t graded_dim(int n, int m, GroupKind kind) { return graded_dims(n, m, kind)[m]; }

std::vector<Word> graded_basis(int n, int m, LowerOrder order, GroupKind kind) {
  if (m < 0) throw std::invalid_argument("degree must be nonnegative");
  std::vector<Word> out;
  for_each_normal_word(variable_weights(n, order, kind), m, [&](const char* w, int len, int deg) {
    if (deg == m) out.emplace_back(w, len);
  });
  return out;
}

std::vector<std::uint64_t> enumerated_counts(int n, int max_m, LowerOrder order, GroupKind kind) {
  std::vector<std::uint64_t> counts(max_m + 1, 0);
  for_each_normal_word(variable_weights(n, order, kind), max_m,
                       [&](const char*, int, int deg) { ++counts[deg]; });
  return counts;
}

}  // namespace iwasawa
