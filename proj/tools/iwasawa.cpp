#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "iwasawa/graded.hpp"
#include "iwasawa/json_io.hpp"
#include "iwasawa/verify.hpp"

using namespace iwasawa;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

Json read_json(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Defaults defaults_of(const Config& c) {
  return Defaults{c.n, c.p, c.K, truncation(c), c.order, c.kind};
}

int cmd_basis(const Config& c) {
  validate(c);
  auto ctx = make_context(c.p, std::max(c.K, 2));
  Json gens = Json::array();
  PadicInt one(ctx, 1);
  for (const Variable& v : enumerate_vars(c.n, c.order, c.kind)) {
    Json root = v.kind == VarKind::Z ? Json(nullptr) : Json{v.root.i, v.root.j};
    gens.push_back(Json{{"index", v.index},
                        {"tag", v.tag()},
                        {"type", to_string(v.kind)},
                        {"root", root},
                        {"weight", v.weight},
                        {"scaled_valuation", to_json(omega(gen_power(c.n, v, one, c.kind)))}});
  }
  emit(Json{{"n", c.n},
            {"p", c.p},
            {"K", ctx->precision()},
            {"order", to_string(c.order)},
            {"kind", to_string(c.kind)},
            {"dimension", gens.size()},
            {"generators", std::move(gens)}});
  return 0;
}

int cmd_decompose(const Config& c, const std::string& file) {
  GroupElement g = group_element_from_json(read_json(file), defaults_of(c));
  BasisCoordinates coords = decompose(g, c.order);
  const int K = g.context()->precision();
  auto lower = make_context(g.context()->prime(), K - 1);
  const bool ok = compose_from_coords(coords).matrix().reduced(lower) == g.matrix().reduced(lower);
  Json out = to_json(coords);
  out["roundtrip"] = Json{{"statement", "compose(decompose(g)) = g mod p^(K-1)"},
                          {"torus_precision", K - 1},
                          {"holds", ok}};
  emit(out);
  return ok ? 0 : kExitFail;
}

int cmd_compose(const Config& c, const std::string& file) {
  BasisCoordinates coords = coordinates_from_json(read_json(file), defaults_of(c));
  emit(to_json(compose_from_coords(coords)));
  return 0;
}

int cmd_valuation(const Config& c, const std::string& file) {
  GroupElement g = group_element_from_json(read_json(file), defaults_of(c));
  const ScaledValuation direct = omega(g);
  BasisCoordinates coords = decompose(g, c.order);
  MinBreakdown br = omega_breakdown(coords);
  const auto vars = enumerate_vars(g.size(), c.order, g.kind());
  Json terms = Json::array();
  for (std::size_t i = 0; i < vars.size(); ++i)
    terms.push_back(Json{{"tag", vars[i].tag()}, {"coordinate", coords.coords[i].residue().str()},
                         {"value", to_json(br.terms[i])}});
  const bool agree = br.total == direct;
  emit(Json{{"p", g.context()->prime()},
            {"K", g.context()->precision()},
            {"n", g.size()},
            {"kind", to_string(g.kind())},
            {"order", to_string(c.order)},
            {"omega", to_json(direct)},
            {"min_formula", Json{{"terms", std::move(terms)}, {"total", to_json(br.total)}}},
            {"agree", agree}});
  return agree ? 0 : kExitFail;
}

RuleTable rules_for(const EngineParams& params) {
  try {
    return compile_rules(params);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

int cmd_multiply(const Config& c, const std::string& fa, const std::string& fb) {
  const Json ja = read_json(fa), jb = read_json(fb);
  const EngineParams pa = series_params_from_json(ja, defaults_of(c));
  const EngineParams pb = series_params_from_json(jb, defaults_of(c));
  if (!(pa == pb)) throw InputError("the two series were written for different parameters");
  RuleTable rules = rules_for(pa);
  Series a = series_from_json(ja, defaults_of(c), rules.signature());
  Series b = series_from_json(jb, defaults_of(c), rules.signature());
  if (!a.is_normal() || !b.is_normal()) {
    a = normalize(a, rules, {c.strategy, Measure::kRefined});
    b = normalize(b, rules, {c.strategy, Measure::kRefined});
  }
  emit(to_json(multiply(a, b, rules, {c.strategy, Measure::kRefined})));
  return 0;
}

int cmd_normalize(const Config& c, const std::string& file) {
  const Json j = read_json(file);
  RuleTable rules = rules_for(series_params_from_json(j, defaults_of(c)));
  Series s = series_from_json(j, defaults_of(c), rules.signature());
  emit(to_json(normalize(s, rules, {c.strategy, Measure::kRefined})));
  return 0;
}

int cmd_rules(const Config& c) {
  validate(c);
  emit(to_json(rules_for(engine_params(c))));
  return 0;
}

int cmd_verify(const Config& c, const std::string& suite) {
  Report r = run_suite(suite, c);
  emit(to_json(r));
  return r.pass ? 0 : kExitFail;
}

int cmd_graded_dims(const Config& c) {
  if (c.n < 2) throw InputError("n must be at least 2");
  if (c.max_m < 0) throw InputError("max-m must be nonnegative");
  emit(Json{{"n", c.n}, {"kind", to_string(c.kind)}, {"max_m", c.max_m}, {"dims", graded_dims(c.n, c.max_m, c.kind)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal-form computations in the Iwasawa algebra of the pro-p Iwahori subgroup of SL_n / GL_n"};
  app.set_config("--config", "", "key=value file with default option values");
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  int M = 0;
  std::string order = "height", strategy = "leftmost";
  bool gl = false;
  app.add_option("-n,--n", cfg.n, "matrix size")->capture_default_str();
  app.add_option("-p,--p", cfg.p, "prime")->capture_default_str();
  app.add_option("-K,--K", cfg.K, "p-adic precision")->capture_default_str();
  auto* m_opt = app.add_option("-M,--M", M, "truncation bound on svar (default 12, or the oracle-tight bound)");
  app.add_option("--order", order, "lower-unipotent ordering: height or lex")->capture_default_str();
  app.add_flag("--gl", gl, "use GL_n instead of SL_n");
  app.add_option("--strategy", strategy, "normalizer: leftmost, rightmost or front")->capture_default_str();
  app.add_option("--oracle-m", cfg.oracle_m, "finite quotient depth")->capture_default_str();
  app.add_option("--oracle-kc", cfg.oracle_kc, "oracle coefficient precision")->capture_default_str();
  app.add_option("--oracle-bound", cfg.oracle_bound, "largest quotient to enumerate")->capture_default_str();
  app.add_option("--m0", cfg.m0, "independence degree bound")->capture_default_str();
  app.add_option("--max-m", cfg.max_m, "largest degree for graded dimensions")->capture_default_str();
  app.add_option("--samples", cfg.samples, "random samples per suite")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();

  std::string file_a, file_b, suite;
  auto* basis = app.add_subcommand("basis", "list the ordered generators");
  auto* dec = app.add_subcommand("decompose", "matrix JSON -> basis coordinates");
  dec->add_option("matrix", file_a, "matrix JSON file, or - for stdin")->required();
  auto* comp = app.add_subcommand("compose", "basis coordinates -> matrix JSON");
  comp->add_option("coords", file_a, "coordinates JSON file, or - for stdin")->required();
  auto* val = app.add_subcommand("valuation", "scaled valuation and its min-formula breakdown");
  val->add_option("matrix", file_a, "matrix JSON file, or - for stdin")->required();
  auto* mul = app.add_subcommand("multiply", "product of two series in normal form");
  mul->add_option("a", file_a, "series JSON")->required();
  mul->add_option("b", file_b, "series JSON")->required();
  auto* nor = app.add_subcommand("normalize", "normal form of a series");
  nor->add_option("series", file_a, "series JSON file, or - for stdin")->required();
  auto* rul = app.add_subcommand("rules", "export the compiled rewrite rules");
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite, "relations, rules, roundtrip, valuation-min, associativity, confluence, graded, "
                                  "oracle-hom or independence")
      ->required();
  auto* gd = app.add_subcommand("graded-dims", "graded dimensions d_0..d_max-m");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (m_opt->count() > 0) cfg.M = M;
    cfg.order = parse_order(order);
    cfg.kind = gl ? GroupKind::kGL : GroupKind::kSL;
    cfg.strategy = parse_strategy(strategy);

    if (*basis) return cmd_basis(cfg);
    if (*dec) return cmd_decompose(cfg, file_a);
    if (*comp) return cmd_compose(cfg, file_a);
    if (*val) return cmd_valuation(cfg, file_a);
    if (*mul) return cmd_multiply(cfg, file_a, file_b);
    if (*nor) return cmd_normalize(cfg, file_a);
    if (*rul) return cmd_rules(cfg);
    if (*ver) return cmd_verify(cfg, suite);
    if (*gd) return cmd_graded_dims(cfg);
  } catch (const MeasureViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "error: internal check failed: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
