#include "iwasawa/verify.hpp"

#include <functional>
#include <map>
#include <stdexcept>

#include "iwasawa/graded.hpp"
#include "iwasawa/oracle.hpp"
#include "iwasawa/sampling.hpp"

namespace iwasawa {

namespace {

std::string str(long long x) { return std::to_string(x); }

void base_params(Report& r, const Config& c) {
  r.params["n"] = str(c.n);
  r.params["p"] = str(c.p);
  r.params["K"] = str(c.K);
  r.params["kind"] = to_string(c.kind);
  r.params["order"] = to_string(c.order);
}

void fail(Report& r, const std::string& witness) {
  r.pass = false;
  if (r.witnesses.size() < 50) r.witnesses.push_back(witness);
}

// Arbitrary (not necessarily normal) word of degree <= max_deg.
Word random_word(Rng& rng, const Signature& sig, int max_len, int max_deg) {
  for (;;) {
    Word w;
    const int len = static_cast<int>(rng() % (max_len + 1));
    for (int i = 0; i < len; ++i) w.push_back(static_cast<char>(1 + rng() % sig.dim()));
    if (sig.degree(w) <= max_deg) return w;
  }
}

}  // namespace

void validate(const Config& c) {
  if (c.n < 2) throw std::invalid_argument("n must be at least 2");
  if (!is_prime(c.p)) throw std::invalid_argument("p = " + std::to_string(c.p) + " is not prime");
  if (c.p <= static_cast<std::uint32_t>(c.n + 1))
    throw std::invalid_argument("Lazard condition violated: need p > n+1, got p=" + std::to_string(c.p) +
                                ", n=" + std::to_string(c.n));
  if (c.K < 1) throw std::invalid_argument("K must be at least 1");
  if (c.M && *c.M < 0) throw std::invalid_argument("M must be nonnegative");
  if (c.oracle_m < 1) throw std::invalid_argument("oracle depth must be at least 1");
  if (c.oracle_kc < 1) throw std::invalid_argument("oracle precision must be at least 1");
  if (c.m0 < 0 || c.max_m < 0) throw std::invalid_argument("degree bounds must be nonnegative");
  if (c.samples < 0) throw std::invalid_argument("samples must be nonnegative");
}

int truncation(const Config& c) { return c.M.value_or(12); }

EngineParams engine_params(const Config& c) {
  return EngineParams{c.n, c.p, c.K, truncation(c), c.order, c.kind};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"relations",     "rules",      "roundtrip",
                                              "valuation-min", "associativity", "confluence",
                                              "graded",        "oracle-hom", "independence"};
  return names;
}

Report run_suite(const std::string& name, const Config& c) {
  static const std::map<std::string, std::function<Report(const Config&)>> table{
      {"relations", verify_relations},         {"rules", verify_rules},
      {"roundtrip", verify_roundtrip},         {"valuation-min", verify_valuation_min},
      {"associativity", verify_associativity}, {"confluence", verify_confluence},
      {"graded", verify_graded},               {"oracle-hom", verify_oracle_hom},
      {"independence", verify_independence}};
  auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
    throw std::invalid_argument("unknown suite '" + name + "' (known: " + known + ")");
  }
  if (name == "graded") {
    if (c.n < 2) throw std::invalid_argument("n must be at least 2");
    if (c.max_m < 0) throw std::invalid_argument("degree bounds must be nonnegative");
  } else {
    validate(c);
  }
  return it->second(c);
}

Report verify_relations(const Config& c) {
  Report r = relation_matrix_check(c.n, c.p, c.K, c.kind);
  r.params["order"] = to_string(c.order);
  return r;
}

Report verify_rules(const Config& c) {
  Report r;
  r.check = "rules";
  base_params(r, c);
  r.params["M"] = str(truncation(c));
  try {
    RuleTable rules = compile_rules(engine_params(c));
    std::map<std::string, int> families;
    int checked = 0, total = 0;
    for (const RewriteRule* rule : rules.all()) {
      ++total;
      ++families[to_string(rule->pair_case.relation)];
      if (rule->group_checked) ++checked;
      else fail(r, "unchecked rule " + rule->name(*rules.signature()));
    }
    r.params["rules"] = str(total);
    r.params["group_checked"] = str(checked);
    for (const auto& [f, k] : families) r.params["family." + f] = str(k);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const std::invalid_argument*>(&e)) throw;
    fail(r, e.what());
  }
  return r;
}

Report verify_roundtrip(const Config& c) {
  Report r;
  r.check = "roundtrip";
  base_params(r, c);
  r.params["samples"] = str(c.samples);
  r.params["seed"] = str(static_cast<long long>(c.seed));
  auto ctx = make_context(c.p, c.K);
  auto lower = make_context(c.p, c.K - 1);
  Rng rng(c.seed);
  int bad_group = 0, bad_coords = 0;
  for (int s = 0; s < c.samples; ++s) {
    GroupElement g = random_element(rng, c.n, c.kind, ctx);
    GroupElement back = compose_from_coords(decompose(g, c.order));
    if (!(back.matrix().reduced(lower) == g.matrix().reduced(lower))) {
      ++bad_group;
      fail(r, "compose(decompose(g)) != g for g = " + g.matrix().to_string());
    }
    BasisCoordinates x = random_coords(rng, c.n, c.order, c.kind, ctx);
    BasisCoordinates y = decompose(compose_from_coords(x), c.order);
    if (y.coords != x.coords) {
      ++bad_coords;
      fail(r, "decompose(compose(x)) != x for sample " + std::to_string(s));
    }
  }
  r.params["group_mismatches"] = str(bad_group);
  r.params["coordinate_mismatches"] = str(bad_coords);
  r.params["group_precision"] = str(c.K - 1);
  return r;
}

Report verify_valuation_min(const Config& c) {
  Report r;
  r.check = "valuation-min";
  base_params(r, c);
  r.params.erase("order");
  r.params["orders"] = "height,lex";
  r.params["samples"] = str(c.samples);
  r.params["seed"] = str(static_cast<long long>(c.seed));
  auto ctx = make_context(c.p, c.K);
  Rng rng(c.seed);
  int mismatches = 0, capped = 0;
  for (int s = 0; s < c.samples; ++s) {
    GroupElement g = random_element(rng, c.n, c.kind, ctx);
    const ScaledValuation direct = omega(g);
    if (direct.capped()) ++capped;
    for (LowerOrder order : {LowerOrder::kHeight, LowerOrder::kLex}) {
      const ScaledValuation via = omega_via_min(decompose(g, order));
      if (!(via == direct)) {
        ++mismatches;
        fail(r, std::string(to_string(order)) + ": omega " + direct.to_string() + " vs min " + via.to_string() +
                    " for " + g.matrix().to_string());
      }
    }
    for (LowerOrder order : {LowerOrder::kHeight, LowerOrder::kLex}) {
      BasisCoordinates x = random_coords(rng, c.n, order, c.kind, ctx);
      const ScaledValuation direct2 = omega(compose_from_coords(x));
      const ScaledValuation via2 = omega_via_min(x);
      if (!(via2 == direct2)) {
        ++mismatches;
        fail(r, std::string(to_string(order)) + ": omega " + direct2.to_string() + " vs min " + via2.to_string() +
                    " on sampled coordinates " + std::to_string(s));
      }
    }
  }
  r.params["mismatches"] = str(mismatches);
  r.params["capped_samples"] = str(capped);
  return r;
}

Report verify_associativity(const Config& c) {
  Report r;
  r.check = "associativity";
  base_params(r, c);
  const EngineParams ep = engine_params(c);
  r.params["M"] = str(ep.M);
  r.params["samples"] = str(c.samples);
  r.params["seed"] = str(static_cast<long long>(c.seed));
  r.params["strategy"] = to_string(c.strategy);
  RuleTable rules = compile_rules(ep);
  auto sig = rules.signature();
  const NormalizeOptions opts{c.strategy, Measure::kRefined};
  const int max_deg = std::max(1, ep.M / 3);
  Rng rng(c.seed);
  NormalizeStats stats;
  int bad_assoc = 0, bad_filtration = 0, bad_unit = 0;
  const Series one = Series::one(sig);
  int violations = 0;
  for (int s = 0; s < c.samples; ++s) {
    Series a = random_normal_series(rng, sig, 3, max_deg);
    Series b = random_normal_series(rng, sig, 3, max_deg);
    Series d = random_normal_series(rng, sig, 3, max_deg);
    try {
      Series ab = multiply(a, b, rules, opts, &stats);
      Series left = multiply(ab, d, rules, opts, &stats);
      Series right = multiply(a, multiply(b, d, rules, opts, &stats), rules, opts, &stats);
      if (!(left == right)) {
        ++bad_assoc;
        fail(r, "(ab)c != a(bc) at sample " + std::to_string(s));
      }
      auto sab = svar(ab), sa = svar(a), sb = svar(b);
      if (sab.exact && sa.exact && sb.exact && *sab.exact < *sa.exact + *sb.exact) {
        ++bad_filtration;
        fail(r, "svar(ab) < svar(a) + svar(b) at sample " + std::to_string(s));
      }
      if (!(multiply(one, a, rules, opts, &stats) == a) || !(multiply(a, one, rules, opts, &stats) == a)) {
        ++bad_unit;
        fail(r, "unit law fails at sample " + std::to_string(s));
      }
    } catch (const MeasureViolation& e) {
      ++violations;
      fail(r, e.what());
    }
  }
  r.params["associativity_failures"] = str(bad_assoc);
  r.params["filtration_failures"] = str(bad_filtration);
  r.params["unit_failures"] = str(bad_unit);
  r.params["rewrite_steps"] = str(static_cast<long long>(stats.steps));
  r.params["measure_checks"] = str(static_cast<long long>(stats.measure_checks));
  r.params["measure_violations"] = str(violations);
  return r;
}

Report verify_confluence(const Config& c) {
  Report r;
  r.check = "confluence";
  base_params(r, c);
  const EngineParams ep = engine_params(c);
  r.params["M"] = str(ep.M);
  r.params["samples"] = str(c.samples);
  r.params["seed"] = str(static_cast<long long>(c.seed));
  r.params["strategies"] = "leftmost,rightmost,front";
  RuleTable rules = compile_rules(ep);
  auto sig = rules.signature();
  Rng rng(c.seed);
  NormalizeStats stats;
  int mismatches = 0, violations = 0;
  for (int s = 0; s < c.samples; ++s) {
    Series x(sig);
    for (int t = 0; t < 3; ++t) x.add(random_word(rng, *sig, 6, ep.M), 1 + rng() % (sig->modulus() - 1));
    try {
      Series left = normalize(x, rules, {Strategy::kLeftmost, Measure::kRefined}, &stats);
      Series right = normalize(x, rules, {Strategy::kRightmost, Measure::kRefined}, &stats);
      Series front = normalize(x, rules, {Strategy::kFrontInsertion, Measure::kRefined}, &stats);
      if (!left.is_normal() || !(left == right) || !(left == front)) {
        ++mismatches;
        fail(r, "strategies disagree at sample " + std::to_string(s));
      }
    } catch (const MeasureViolation& e) {
      ++violations;
      fail(r, e.what());
    }
  }
  r.params["mismatches"] = str(mismatches);
  r.params["rewrite_steps"] = str(static_cast<long long>(stats.steps));
  r.params["measure_checks"] = str(static_cast<long long>(stats.measure_checks));
  r.params["measure_violations"] = str(violations);
  return r;
}

Report verify_graded(const Config& c) {
  Report r;
  r.check = "graded";
  r.params["n"] = str(c.n);
  r.params["kind"] = to_string(c.kind);
  r.params["max_m"] = str(c.max_m);
  const auto dims = graded_dims(c.n, c.max_m, c.kind);
  const auto counts = enumerated_counts(c.n, c.max_m, c.order, c.kind);
  std::string prefix;
  for (int m = 0; m <= c.max_m && m < 10; ++m) prefix += (m ? "," : "") + std::to_string(dims[m]);
  r.params["dims_prefix"] = prefix;
  for (int m = 0; m <= c.max_m; ++m)
    if (dims[m] != counts[m])
      fail(r, "m=" + std::to_string(m) + ": generating function " + std::to_string(dims[m]) + ", enumeration " +
                  std::to_string(counts[m]));
  if (c.max_m >= 1 && dims[1] != static_cast<std::uint64_t>(c.n))
    fail(r, "d_1 = " + std::to_string(dims[1]) + ", expected n = " + std::to_string(c.n));
  return r;
}

Report verify_oracle_hom(const Config& c) {
  FiniteQuotient q(c.n, c.p, c.oracle_m, c.kind, c.order, c.oracle_bound);
  const AugIdealProfile prof = aug_nilpotency(q, c.oracle_kc);
  const int bound = oracle_tight_bound(c.n, c.oracle_kc, prof.t);
  EngineParams ep{c.n, c.p, c.oracle_kc, c.M.value_or(bound), c.order, c.kind};
  RuleTable rules = compile_rules(ep);
  auto sig = rules.signature();
  Multiplier mul(rules);

  Report r;
  r.check = "oracle-hom";
  base_params(r, c);
  r.params["K"] = str(ep.K);
  r.params["M"] = str(ep.M);
  r.params["m"] = str(c.oracle_m);
  r.params["Kc"] = str(c.oracle_kc);
  r.params["t"] = str(prof.t);
  r.params["quotient_order"] = str(static_cast<long long>(q.size()));
  r.params["samples"] = str(c.samples);
  r.params["seed"] = str(static_cast<long long>(c.seed));
  // svar bound on the words of the random pairs
  constexpr int kSampleDegree = 2;
  r.params["sample_degree"] = str(kSampleDegree);

  auto run = [&](const Series& a, const Series& b, const std::string& label) {
    Report one = hom_check(a, b, q, c.oracle_kc, prof.t, mul);
    if (!one.pass) {
      std::string w = label + ":";
      for (const auto& x : one.witnesses) w += " " + x;
      fail(r, w);
    }
  };
  int pairs = 0;
  for (const RewriteRule* rule : rules.all()) {
    run(Series::monomial(sig, Word(1, static_cast<char>(rule->a))),
        Series::monomial(sig, Word(1, static_cast<char>(rule->b))), "rule " + rule->name(*sig));
    ++pairs;
  }
  Rng rng(c.seed);
  for (int s = 0; s < c.samples; ++s) {
    Series a = random_normal_series(rng, sig, 2, kSampleDegree);
    Series b = random_normal_series(rng, sig, 2, kSampleDegree);
    run(a, b, "random pair " + std::to_string(s));
    ++pairs;
  }
  r.params["pairs"] = str(pairs);
  return r;
}

Report verify_independence(const Config& c) {
  FiniteQuotient q(c.n, c.p, c.oracle_m, c.kind, c.order, c.oracle_bound);
  IndependenceReport ir = independence_check(q, c.m0);
  return ir.report;
}

}  // namespace iwasawa
