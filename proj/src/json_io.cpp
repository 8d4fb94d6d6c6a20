#include "iwasawa/json_io.hpp"

#include <algorithm>

namespace iwasawa {

namespace {

template <typename T>
T field_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

GroupKind kind_or(const Json& j, GroupKind fallback) {
  if (!j.contains("kind")) return fallback;
  const std::string k = field_or<std::string>(j, "kind", "");
  if (k == "SL") return GroupKind::kSL;
  if (k == "GL") return GroupKind::kGL;
  throw InputError("kind must be \"SL\" or \"GL\", got \"" + k + "\"");
}

LowerOrder order_or(const Json& j, LowerOrder fallback) {
  if (!j.contains("order")) return fallback;
  try {
    return parse_order(field_or<std::string>(j, "order", ""));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

// Decimal string or JSON integer, reduced into the context.
PadicInt residue_from_json(const Json& v, const ContextPtr& ctx) {
  Integer x;
  if (v.is_number_integer()) {
    x = v.get<long long>();
  } else if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() == start || !std::all_of(s.begin() + start, s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw InputError("not a decimal integer: \"" + s + "\"");
    x = Integer(s);
  } else {
    throw InputError("expected a decimal string, got " + v.dump());
  }
  return PadicInt(ctx, x);
}

std::string dec(const Integer& x) { return x.str(); }

void check_prime_precision(std::uint32_t p, int K) {
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
  if (K < 1) throw InputError("K must be at least 1");
}

}  // namespace

Json to_json(const Matrix& m, GroupKind kind) {
  Json rows = Json::array();
  for (int r = 0; r < m.size(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.size(); ++c) row.push_back(dec(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return Json{{"p", m.context()->prime()},
              {"K", m.context()->precision()},
              {"n", m.size()},
              {"kind", to_string(kind)},
              {"entries", std::move(rows)}};
}

GroupElement group_element_from_json(const Json& j, const Defaults& d) {
  if (!j.is_object() || !j.contains("entries")) throw InputError("matrix document needs an \"entries\" array");
  const auto p = field_or<std::uint32_t>(j, "p", d.p);
  const int K = field_or<int>(j, "K", d.K);
  check_prime_precision(p, K);
  const Json& rows = j.at("entries");
  if (!rows.is_array() || rows.empty()) throw InputError("\"entries\" must be a non-empty array of rows");
  const int n = field_or<int>(j, "n", static_cast<int>(rows.size()));
  if (n != static_cast<int>(rows.size())) throw InputError("\"n\" disagrees with the number of rows");
  auto ctx = make_context(p, K);
  Matrix m(ctx, n);
  for (int r = 0; r < n; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n)
      throw InputError("row " + std::to_string(r) + " does not have " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) m.set(r, c, residue_from_json(rows[r][c], ctx).residue());
  }
  return GroupElement(std::move(m), kind_or(j, d.kind));
}

Json to_json(const BasisCoordinates& c) {
  const auto& ctx = c.coords.at(0).context();
  Json coords = Json::array(), tags = Json::array(), prec = Json::array();
  const auto vars = enumerate_vars(c.n, c.order, c.kind);
  for (std::size_t i = 0; i < c.coords.size(); ++i) {
    coords.push_back(dec(c.coords[i].residue()));
    tags.push_back(vars[i].tag());
    prec.push_back(coordinate_precision(vars[i].kind, ctx->precision()));
  }
  return Json{{"p", ctx->prime()},     {"K", ctx->precision()}, {"n", c.n},
              {"kind", to_string(c.kind)}, {"order", to_string(c.order)}, {"coords", std::move(coords)},
              {"tags", std::move(tags)}, {"precision", std::move(prec)}};
}

BasisCoordinates coordinates_from_json(const Json& j, const Defaults& d) {
  if (!j.is_object() || !j.contains("coords") || !j.at("coords").is_array())
    throw InputError("coordinates document needs a \"coords\" array");
  const auto p = field_or<std::uint32_t>(j, "p", d.p);
  const int K = field_or<int>(j, "K", d.K);
  check_prime_precision(p, K);
  BasisCoordinates c;
  c.n = field_or<int>(j, "n", d.n);
  c.order = order_or(j, d.order);
  c.kind = kind_or(j, d.kind);
  if (c.n < 2) throw InputError("n must be at least 2");
  const auto vars = enumerate_vars(c.n, c.order, c.kind);
  const Json& arr = j.at("coords");
  if (arr.size() != vars.size())
    throw InputError("expected " + std::to_string(vars.size()) + " coordinates, got " + std::to_string(arr.size()));
  auto ctx = make_context(p, K);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    PadicInt z = residue_from_json(arr[i], ctx);
    // reduce to the precision the coordinate carries
    Integer mod = prime_power(p, coordinate_precision(vars[i].kind, K));
    c.coords.emplace_back(ctx, Integer(z.residue() % mod));
  }
  return c;
}

Json to_json(const ScaledValuation& v) {
  if (v.capped()) return Json{{"capped", true}, {"at_least", v.cap}};
  return Json{{"capped", false}, {"value", *v.exact}};
}

Json to_json(const Series& s) {
  const auto& pr = s.params();
  Json terms = Json::array();
  for (const auto& [w, c] : s.sorted_terms())
    terms.push_back(Json{{"word", word_indices(w)}, {"coeff", std::to_string(c)}});
  return Json{{"n", pr.n},
              {"p", pr.p},
              {"K", pr.K},
              {"M", pr.M},
              {"order", to_string(pr.order)},
              {"kind", to_string(pr.kind)},
              {"terms", std::move(terms)}};
}

EngineParams series_params_from_json(const Json& j, const Defaults& d) {
  if (!j.is_object()) throw InputError("series document must be a JSON object");
  EngineParams pr;
  pr.n = field_or<int>(j, "n", d.n);
  pr.p = field_or<std::uint32_t>(j, "p", d.p);
  pr.K = field_or<int>(j, "K", d.K);
  pr.M = field_or<int>(j, "M", d.M);
  pr.order = order_or(j, d.order);
  pr.kind = kind_or(j, d.kind);
  check_prime_precision(pr.p, pr.K);
  if (pr.n < 2) throw InputError("n must be at least 2");
  if (pr.M < 0) throw InputError("M must be nonnegative");
  return pr;
}

Series series_from_json(const Json& j, const Defaults& d, SignaturePtr sig) {
  const EngineParams pr = series_params_from_json(j, d);
  if (!sig) {
    try {
      sig = make_signature(pr);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  } else if (!(sig->params() == pr)) {
    throw InputError("series parameters differ from the ones in use");
  }
  Series s(sig);
  if (!j.contains("terms")) return s;
  const Json& terms = j.at("terms");
  if (!terms.is_array()) throw InputError("\"terms\" must be an array");
  auto ctx = make_context(pr.p, pr.K);
  for (const Json& t : terms) {
    if (!t.is_object() || !t.contains("word") || !t.at("word").is_array())
      throw InputError("each term needs a \"word\" array");
    std::vector<int> idx;
    for (const Json& x : t.at("word")) {
      if (!x.is_number_integer()) throw InputError("word letters must be integers");
      const int i = x.get<int>();
      if (i < 1 || i > sig->dim())
        throw InputError("letter " + std::to_string(i) + " is outside 1.." + std::to_string(sig->dim()));
      idx.push_back(i);
    }
    const Json c = t.contains("coeff") ? t.at("coeff") : Json("1");
    s.add(make_word(idx), residue_from_json(c, ctx).residue().convert_to<Coeff>());
  }
  return s;
}

Json to_json(const RuleTable& rules) {
  const auto& sig = *rules.signature();
  Json out = to_json(Series(rules.signature()));
  out.erase("terms");
  Json arr = Json::array();
  for (const RewriteRule* r : rules.all()) {
    Json rhs = to_json(rules.rhs_series(*r)).at("terms");
    arr.push_back(Json{{"lhs", {r->a, r->b}},
                       {"lhs_tags", {sig.var(r->a).tag(), sig.var(r->b).tag()}},
                       {"relation", to_string(r->pair_case.relation)},
                       {"group_checked", r->group_checked},
                       {"terms", std::move(rhs)}});
  }
  out["rules"] = std::move(arr);
  return out;
}

Json to_json(const Report& r) {
  return Json{{"check", r.check}, {"params", r.params}, {"pass", r.pass}, {"witnesses", r.witnesses}};
}

}  // namespace iwasawa
