#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/normalize.hpp"
#include "iwasawa/report.hpp"

namespace iwasawa {

struct Config {
  int n = 3;
  std::uint32_t p = 5;
  int K = 3;
  // Unset means "the suite's own default" (the oracle-tight bound for oracle-hom).
  std::optional<int> M;
  LowerOrder order = LowerOrder::kHeight;
  GroupKind kind = GroupKind::kSL;
  Strategy strategy = Strategy::kLeftmost;

  int oracle_m = 1;    // quotient depth
  int oracle_kc = 1;   // oracle coefficient precision
  std::size_t oracle_bound = 1'000'000;
  int m0 = 4;          // independence degree bound
  int max_m = 30;      // graded-dims / graded suite bound

  int samples = 200;
  std::uint64_t seed = 1;
};

// Throws std::invalid_argument naming the first broken constraint.
void validate(const Config& c);

int truncation(const Config& c);  // M, defaulting to 12
EngineParams engine_params(const Config& c);

const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite.
Report run_suite(const std::string& name, const Config& c);

Report verify_relations(const Config& c);
Report verify_rules(const Config& c);
Report verify_roundtrip(const Config& c);
Report verify_valuation_min(const Config& c);
Report verify_associativity(const Config& c);
Report verify_confluence(const Config& c);
Report verify_graded(const Config& c);
Report verify_oracle_hom(const Config& c);
Report verify_independence(const Config& c);

}  // namespace iwasawa
