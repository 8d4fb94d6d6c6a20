#include "iwasawa/roots.hpp"

#include <algorithm>
#include <stdexcept>

namespace iwasawa {

std::string Root::to_string() const {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::optional<Root> root_sum(const Root& a, const Root& b) {
  if (a.j == b.i && a.i != b.j) return Root{a.i, b.j};
  if (b.j == a.i && b.i != a.j) return Root{b.i, a.j};
  return std::nullopt;
}

int pairing(const Root& root, const Root& delta) {
  if (!delta.simple()) throw std::invalid_argument("pairing needs a simple root");
  const int k = delta.i;
  return (root.i == k) - (root.i == k + 1) - (root.j == k) + (root.j == k + 1);
}

const char* to_string(VarKind k) {
  switch (k) {
    case VarKind::U: return "U";
    case VarKind::W: return "W";
    case VarKind::V: return "V";
    case VarKind::Z: return "Z";
  }
  return "?";
}

const char* to_string(LowerOrder o) { return o == LowerOrder::kHeight ? "height" : "lex"; }
const char* to_string(GroupKind g) { return g == GroupKind::kSL ? "SL" : "GL"; }

LowerOrder parse_order(const std::string& s) {
  if (s == "height") return LowerOrder::kHeight;
  if (s == "lex") return LowerOrder::kLex;
  throw std::invalid_argument("unknown order '" + s + "' (expected height or lex)");
}

std::string Variable::tag() const {
  if (kind == VarKind::Z) return "Z";
  return std::string(to_string(kind)) + root.to_string();
}

std::vector<Root> lower_roots(int n, LowerOrder order) {
  std::vector<Root> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j < i; ++j) out.push_back({i, j});
  if (order == LowerOrder::kHeight) {
    // most negative height first; equal heights by increasing row
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
      if (a.height() != b.height()) return a.height() < b.height();
      return a.i < b.i;
    });
  }
  // kLex: rows top to bottom, columns left to right, as generated
  return out;
}

std::vector<Root> upper_roots(int n) {
  std::vector<Root> out;
  for (int i = n - 1; i >= 1; --i)
    for (int j = n; j > i; --j) out.push_back({i, j});
  return out;
}

std::vector<Variable> enumerate_vars(int n, LowerOrder order, GroupKind kind) {
  if (n < 2) throw std::invalid_argument("group size n must be at least 2");
  std::vector<Variable> vars;
  int idx = 1;
  for (const Root& r : lower_roots(n, order))
    vars.push_back({VarKind::U, r, idx++, n - r.i + r.j});
  for (int k = 1; k < n; ++k) vars.push_back({VarKind::W, {k, k + 1}, idx++, n});
  for (const Root& r : upper_roots(n)) vars.push_back({VarKind::V, r, idx++, r.j - r.i});
  if (kind == GroupKind::kGL) vars.push_back({VarKind::Z, {}, idx++, n});
  return vars;
}

bool PairCase::is_swap() const {
  switch (relation) {
    case Relation::kCentral:
    case Relation::kMixedCommute:
    case Relation::kLowerCommute:
    case Relation::kTorusCommute:
    case Relation::kUpperCommute:
      return true;
    case Relation::kTorusLower:
    case Relation::kTorusUpper:
      return pairing == 0;
    default:
      return false;
  }
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::kCentral: return "central";
    case Relation::kTorusLower: return "torus-lower";
    case Relation::kTorusUpper: return "torus-upper";
    case Relation::kMixedCommute: return "mixed-commute";
    case Relation::kMixedSumUpper: return "mixed-sum-upper";
    case Relation::kMixedSumLower: return "mixed-sum-lower";
    case Relation::kMixedDiffUpper: return "mixed-diff-upper";
    case Relation::kMixedDiffLower: return "mixed-diff-lower";
    case Relation::kOpposite: return "opposite";
    case Relation::kLowerCommute: return "lower-commute";
    case Relation::kLowerSum: return "lower-sum";
    case Relation::kLowerDiff: return "lower-diff";
    case Relation::kTorusCommute: return "torus-commute";
    case Relation::kUpperCommute: return "upper-commute";
    case Relation::kUpperSum: return "upper-sum";
    case Relation::kUpperSumReversed: return "upper-sum-reversed";
  }
  return "?";
}

std::vector<Relation> all_relations() {
  std::vector<Relation> out;
  for (int r = 0; r <= static_cast<int>(Relation::kUpperSumReversed); ++r) out.push_back(static_cast<Relation>(r));
  return out;
}

PairCase classify_pair(const Variable& a, const Variable& b) {
  if (a.index <= b.index)
    throw std::invalid_argument("classify_pair: " + a.tag() + " " + b.tag() +
                                " is not an inversion");
  PairCase pc;
  if (a.kind == VarKind::Z || b.kind == VarKind::Z) {
    pc.relation = Relation::kCentral;
    return pc;
  }
  const VarKind ka = a.kind, kb = b.kind;
  if (ka == VarKind::W && kb == VarKind::U) {
    pc.relation = Relation::kTorusLower;
    pc.pairing = pairing(b.root, a.root);
    return pc;
  }
  if (ka == VarKind::V && kb == VarKind::W) {
    pc.relation = Relation::kTorusUpper;
    pc.pairing = pairing(a.root, b.root);
    return pc;
  }
  if (ka == VarKind::W && kb == VarKind::W) {
    pc.relation = Relation::kTorusCommute;
    return pc;
  }
  if (ka == VarKind::V && kb == VarKind::U) {
    const Root al = a.root, be = b.root;
    if (al == -be) {
      pc.relation = Relation::kOpposite;
      for (int t = al.i; t < al.j; ++t) pc.w_chain.push_back({t, t + 1});
      return pc;
    }
    pc.sum_root = root_sum(al, be);
    if (!pc.sum_root) {
      pc.relation = Relation::kMixedCommute;
      return pc;
    }
    // alpha = (i,j)
    if (be.i == al.j) {
      pc.relation = al.i < be.j ? Relation::kMixedSumUpper : Relation::kMixedSumLower;  // beta = (j,k)
    } else {
      pc.relation = be.i < al.j ? Relation::kMixedDiffUpper : Relation::kMixedDiffLower;  // beta = (k,i)
    }
    return pc;
  }
  if (ka == VarKind::U && kb == VarKind::U) {
    pc.sum_root = root_sum(a.root, b.root);
    if (!pc.sum_root) pc.relation = Relation::kLowerCommute;
    else pc.relation = a.root.j == b.root.i ? Relation::kLowerSum : Relation::kLowerDiff;
    return pc;
  }
  if (ka == VarKind::V && kb == VarKind::V) {
    pc.sum_root = root_sum(a.root, b.root);
    if (!pc.sum_root) {
      pc.relation = Relation::kUpperCommute;
      return pc;
    }
    if (a.root.j != b.root.i)
      throw std::logic_error("unexpected V pair orientation " + a.tag() + " " + b.tag());
    pc.relation = Relation::kUpperSum;
    return pc;
  }
  throw std::invalid_argument("classify_pair: " + a.tag() + " " + b.tag() + " is not an inversion");
}

}  // namespace iwasawa
