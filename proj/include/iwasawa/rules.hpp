#pragma once

#include <string>
#include <vector>

#include "iwasawa/series.hpp"

namespace iwasawa {

// A p-adic exponent that can be evaluated at any precision: either the
// integer k or (1+p)^k.
struct Exponent {
  bool one_plus_p_power = false;
  int k = 1;

  PadicInt at(const ContextPtr& ctx) const;
  std::string to_string() const;
};

// (1 + x_var)^exponent on the algebra side, g_var^exponent on the group side.
struct Factor {
  int var = 0;  // variable index
  Exponent exponent;
};

// How a single rewrite term relates to the pair it replaces.
enum class StepKind {
  kRaisesSvar,    // strictly larger svar
  kShortens,      // same svar, fewer letters
  kSwap,          // same svar, the pair in the right order
};

struct RhsTerm {
  Word word;
  Coeff coeff = 0;
  int svar = 0;
  StepKind kind = StepKind::kRaisesSvar;
};

struct RewriteRule {
  int a = 0;  // left letter, index(a) > index(b)
  int b = 0;
  PairCase pair_case;
  // g_a g_b = product of these factors, in order
  std::vector<Factor> factors;
  std::vector<RhsTerm> rhs;
  bool group_checked = false;

  std::string name(const Signature& sig) const;
};

class RuleTable {
 public:
  RuleTable(SignaturePtr sig, int work_precision);

  const SignaturePtr& signature() const { return sig_; }
  const EngineParams& params() const { return sig_->params(); }
  int work_precision() const { return kwork_; }

  const RewriteRule& rule(int a, int b) const { return rules_[a * stride_ + b]; }
  RewriteRule& rule(int a, int b) { return rules_[a * stride_ + b]; }
  // All rules in (a, b) order.
  std::vector<const RewriteRule*> all() const;

  // The rule's right-hand side as a series.
  Series rhs_series(const RewriteRule& r) const;

 private:
  SignaturePtr sig_;
  int kwork_;
  int stride_;
  std::vector<RewriteRule> rules_;
};

// Precision used for binomial expansion: K + v_p(M!).
int work_precision(const EngineParams& params);

// Factor list for the pair a·b, read off from its governing relation.
std::vector<Factor> relation_factors(const Signature& sig, int a, int b, const PairCase& pc);

// g_a g_b against the product of the factors, as matrices mod p^precision.
bool group_identity_holds(const Signature& sig, int a, int b, const std::vector<Factor>& factors,
                          int precision);

// Throws "Lazard condition violated" when p <= n+1, std::logic_error when a
// rule fails its group-side check or the termination measure.
RuleTable compile_rules(const EngineParams& params);

}  // namespace iwasawa
