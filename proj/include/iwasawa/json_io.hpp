#pragma once

#include <json.hpp>
#include <optional>

#include "iwasawa/matgroup.hpp"
#include "iwasawa/report.hpp"
#include "iwasawa/rules.hpp"

namespace iwasawa {

using Json = nlohmann::json;

// Raised for malformed or inconsistent input documents.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Fallbacks for fields an input document leaves out.
struct Defaults {
  int n = 3;
  std::uint32_t p = 5;
  int K = 3;
  int M = 12;
  LowerOrder order = LowerOrder::kHeight;
  GroupKind kind = GroupKind::kSL;
};

Json to_json(const Matrix& m, GroupKind kind);
inline Json to_json(const GroupElement& g) { return to_json(g.matrix(), g.kind()); }
// Throws InputError, or std::domain_error when the matrix is outside G.
GroupElement group_element_from_json(const Json& j, const Defaults& d);

Json to_json(const BasisCoordinates& c);
BasisCoordinates coordinates_from_json(const Json& j, const Defaults& d);

Json to_json(const ScaledValuation& v);

Json to_json(const Series& s);
// The series is rebuilt over `sig` when given, else over the document's
// own parameters.
Series series_from_json(const Json& j, const Defaults& d, SignaturePtr sig = nullptr);
EngineParams series_params_from_json(const Json& j, const Defaults& d);

Json to_json(const RuleTable& rules);
Json to_json(const Report& r);

}  // namespace iwasawa
