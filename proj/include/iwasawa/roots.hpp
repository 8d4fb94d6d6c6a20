#pragma once

#include <optional>
#include <string>
#include <vector>

namespace iwasawa {

// e_i - e_j in type A_{n-1}, 1-based.
struct Root {
  int i = 0;
  int j = 0;

  bool positive() const { return i < j; }
  bool negative() const { return i > j; }
  bool simple() const { return j == i + 1; }
  int height() const { return j - i; }
  Root operator-() const { return {j, i}; }
  std::string to_string() const;
  friend bool operator==(const Root&, const Root&) = default;
  friend auto operator<=>(const Root&, const Root&) = default;
};

// Sum of two roots if it is a root.
std::optional<Root> root_sum(const Root& a, const Root& b);

// <root, delta> for a simple root delta = (k, k+1).
int pairing(const Root& root, const Root& delta);

enum class VarKind { U, W, V, Z };

enum class LowerOrder { kHeight, kLex };
enum class GroupKind { kSL, kGL };

const char* to_string(VarKind k);
const char* to_string(LowerOrder o);
const char* to_string(GroupKind g);
LowerOrder parse_order(const std::string& s);

struct Variable {
  VarKind kind = VarKind::U;
  Root root;     // unused for Z
  int index = 0; // 1-based
  int weight = 0;

  std::string tag() const;  // e.g. "U(3,1)"
};

// Ordered generators: U (lower unipotent order), W left to right, V in
// dual-lexicographic order, then Z for GL.
std::vector<Variable> enumerate_vars(int n, LowerOrder order = LowerOrder::kHeight,
                                     GroupKind kind = GroupKind::kSL);

// Negative roots in the chosen lower-unipotent order.
std::vector<Root> lower_roots(int n, LowerOrder order);
// Positive roots in dual-lexicographic order.
std::vector<Root> upper_roots(int n);

// Families of defining relations. Mixed = V against U; Sum/Diff say
// whether the lower root continues the upper one, beta = (j,k), or
// precedes it, beta = (k,i), for alpha = (i,j); Upper/Lower is the sign of
// the resulting root.
enum class Relation {
  kCentral,
  kTorusLower,
  kTorusUpper,
  kMixedCommute,
  kMixedSumUpper,
  kMixedSumLower,
  kMixedDiffUpper,
  kMixedDiffLower,
  kOpposite,
  kLowerCommute,
  kLowerSum,
  kLowerDiff,
  kTorusCommute,
  kUpperCommute,
  kUpperSum,
  kUpperSumReversed,
};

const char* to_string(Relation r);
std::vector<Relation> all_relations();

struct PairCase {
  Relation relation = Relation::kCentral;
  std::optional<Root> sum_root;  // alpha+beta when it is a root
  int pairing = 0;               // <root, delta> for the torus families
  std::vector<Root> w_chain;     // simple roots (i,i+1)..(j-1,j) for kOpposite

  bool is_swap() const;
};

// Governing relation for the wrong-ordered pair a·b (index(a) > index(b)).
PairCase classify_pair(const Variable& a, const Variable& b);

}  // namespace iwasawa
