#include "iwasawa/rules.hpp"

#include <algorithm>
#include <stdexcept>

namespace iwasawa {

PadicInt Exponent::at(const ContextPtr& ctx) const {
  if (one_plus_p_power) return PadicInt(ctx, pow_one_plus_p(ctx->prime(), ctx->precision(), k));
  return PadicInt(ctx, static_cast<long long>(k));
}

std::string Exponent::to_string() const {
  if (one_plus_p_power) return "(1+p)^" + std::to_string(k);
  return std::to_string(k);
}

std::string RewriteRule::name(const Signature& sig) const {
  return sig.var(a).tag() + "*" + sig.var(b).tag() + " (" + to_string(pair_case.relation) + ")";
}

RuleTable::RuleTable(SignaturePtr sig, int work_precision)
    : sig_(std::move(sig)), kwork_(work_precision), stride_(sig_->dim() + 1) {
  rules_.resize(stride_ * stride_);
}

std::vector<const RewriteRule*> RuleTable::all() const {
  std::vector<const RewriteRule*> out;
  for (int a = 1; a <= sig_->dim(); ++a)
    for (int b = 1; b < a; ++b) out.push_back(&rule(a, b));
  return out;
}

Series RuleTable::rhs_series(const RewriteRule& r) const {
  Series s(sig_);
  for (const RhsTerm& t : r.rhs) s.add(t.word, t.coeff);
  return s;
}

int work_precision(const EngineParams& params) {
  return params.K + factorial_valuation(params.p, static_cast<std::uint64_t>(params.M));
}

namespace {

int find_var(const Signature& sig, VarKind kind, const Root& root) {
  for (const Variable& v : sig.vars())
    if (v.kind == kind && v.root == root) return v.index;
  throw std::logic_error("no variable for root " + root.to_string());
}

// scale s with x_root(s) = g^1: p for U, 1 for V
int root_scale(const Variable& v, std::uint32_t p) { return v.kind == VarKind::U ? static_cast<int>(p) : 1; }

}  // namespace

std::vector<Factor> relation_factors(const Signature& sig, int a, int b, const PairCase& pc) {
  const Variable& va = sig.var(a);
  const Variable& vb = sig.var(b);
  const std::uint32_t p = sig.params().p;
  auto plain = [](int var, int k) { return Factor{var, Exponent{false, k}}; };
  auto power = [](int var, int k) { return Factor{var, Exponent{true, k}}; };
  switch (pc.relation) {
    case Relation::kCentral:
    case Relation::kMixedCommute:
    case Relation::kLowerCommute:
    case Relation::kTorusCommute:
    case Relation::kUpperCommute:
      return {plain(b, 1), plain(a, 1)};
    case Relation::kTorusLower:
      // h x_beta(p) h^-1 = x_beta((1+p)^<beta,delta> p)
      return {power(b, pc.pairing), plain(a, 1)};
    case Relation::kTorusUpper:
      return {plain(b, 1), power(a, -pc.pairing)};
    case Relation::kOpposite: {
      std::vector<Factor> f{power(b, -1)};
      for (const Root& d : pc.w_chain) f.push_back(plain(find_var(sig, VarKind::W, d), 1));
      f.push_back(power(a, -1));
      return f;
    }
    case Relation::kMixedSumUpper:
    case Relation::kMixedSumLower:
    case Relation::kMixedDiffUpper:
    case Relation::kMixedDiffLower:
    case Relation::kLowerSum:
    case Relation::kLowerDiff:
    case Relation::kUpperSum: {
      const Root c = *pc.sum_root;
      const int ci = find_var(sig, c.negative() ? VarKind::U : VarKind::V, c);
      // [x_(i,j)(s), x_(j,k)(t)] = x_(i,k)(st), [x_(i,j)(s), x_(k,i)(t)] = x_(k,j)(-st)
      const int sign = va.root.j == vb.root.i ? 1 : -1;
      const int e = sign * root_scale(va, p) * root_scale(vb, p) / root_scale(sig.var(ci), p);
      return {plain(ci, e), plain(b, 1), plain(a, 1)};
    }
    default:
      throw std::logic_error(std::string("no factor list for relation ") + to_string(pc.relation));
  }
}

bool group_identity_holds(const Signature& sig, int a, int b, const std::vector<Factor>& factors,
                          int precision) {
  const auto& params = sig.params();
  auto ctx = make_context(params.p, precision);
  PadicInt one(ctx, 1);
  GroupElement lhs = gen_power(params.n, sig.var(a), one, params.kind) *
                     gen_power(params.n, sig.var(b), one, params.kind);
  GroupElement rhs(Matrix::identity(ctx, params.n), params.kind);
  for (const Factor& f : factors)
    rhs = rhs * gen_power(params.n, sig.var(f.var), f.exponent.at(ctx), params.kind);
  return lhs == rhs;
}

namespace {

// (1 + x)^e truncated at svar <= M.
Series binomial_series(const SignaturePtr& sig, const Factor& f, const ContextPtr& work) {
  const auto& params = sig->params();
  PadicInt e = f.exponent.at(work);
  Series s(sig);
  const int w = sig->weight(f.var);
  Word word;
  for (int m = 0; m * w <= params.M; ++m) {
    PadicInt c = binom(e, static_cast<std::uint64_t>(m), params.K);
    s.add(word, c.residue().convert_to<Coeff>());
    word.push_back(static_cast<char>(f.var));
  }
  return s;
}

}  // namespace

RuleTable compile_rules(const EngineParams& params) {
  if (params.p <= static_cast<std::uint32_t>(params.n + 1))
    throw std::invalid_argument("Lazard condition violated: need p > n+1, got p=" +
                                std::to_string(params.p) + ", n=" + std::to_string(params.n));
  auto sig = make_signature(params);
  RuleTable table(sig, work_precision(params));
  auto work = make_context(params.p, table.work_precision());
  const int check_precision = std::max(params.K, 6);

  for (int a = 1; a <= sig->dim(); ++a)
    for (int b = 1; b < a; ++b) {
      RewriteRule& r = table.rule(a, b);
      r.a = a;
      r.b = b;
      r.pair_case = classify_pair(sig->var(a), sig->var(b));
      r.factors = relation_factors(*sig, a, b, r.pair_case);
      if (!group_identity_holds(*sig, a, b, r.factors, check_precision))
        throw std::logic_error("group-side check failed for rule " + r.name(*sig));
      r.group_checked = true;

      Series prod = Series::one(sig);
      for (const Factor& f : r.factors) prod = prod.concat(binomial_series(sig, f, work));
      Series lin = Series::one(sig) + Series::monomial(sig, Word(1, static_cast<char>(a))) +
                   Series::monomial(sig, Word(1, static_cast<char>(b)));
      Series rhs = prod - lin;

      const int lhs_svar = sig->weight(a) + sig->weight(b);
      const Word swapped{static_cast<char>(b), static_cast<char>(a)};
      for (const auto& [w, c] : rhs.sorted_terms()) {
        RhsTerm t{w, c, sig->svar(w, c), StepKind::kRaisesSvar};
        if (t.svar > lhs_svar) t.kind = StepKind::kRaisesSvar;
        else if (t.svar == lhs_svar && w.size() < 2) t.kind = StepKind::kShortens;
        else if (t.svar == lhs_svar && w == swapped) t.kind = StepKind::kSwap;
        else
          throw std::logic_error("termination measure violated by rule " + r.name(*sig) +
                                 " at term " + word_to_string(*sig, w));
        r.rhs.push_back(std::move(t));
      }
    }
  return table;
}

}  // namespace iwasawa
