#include "iwasawa/series.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace iwasawa {

Word make_word(const std::vector<int>& indices) {
  Word w;
  w.reserve(indices.size());
  for (int i : indices) {
    if (i < 1 || i > 127) throw std::invalid_argument("variable index out of range");
    w.push_back(static_cast<char>(i));
  }
  return w;
}

std::vector<int> word_indices(const Word& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (char c : w) out.push_back(static_cast<unsigned char>(c));
  return out;
}

int inversions(const Word& w) {
  int inv = 0;
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = i + 1; j < w.size(); ++j) inv += w[i] > w[j];
  return inv;
}

bool is_normal(const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] > w[i + 1]) return false;
  return true;
}

Signature::Signature(const EngineParams& params)
    : params_(params), vars_(enumerate_vars(params.n, params.order, params.kind)) {
  if (!is_prime(params.p)) throw std::invalid_argument("p must be prime");
  if (params.K < 1) throw std::invalid_argument("K must be at least 1");
  if (params.M < 0) throw std::invalid_argument("M must be nonnegative");
  Integer mod = prime_power(params.p, params.K);
  if (mod >= (Integer(1) << 62))
    throw std::invalid_argument("p^K must stay below 2^62 for the rewriting engine");
  mod_ = mod.convert_to<Coeff>();
  weight_.assign(vars_.size() + 1, 0);
  for (const Variable& v : vars_) weight_[v.index] = v.weight;
  trunc_mod_.assign(params.M + 1, 1);
  for (int d = 0; d <= params.M; ++d) {
    int t = std::min(params.K, (params.M - d) / params.n + 1);
    for (int i = 0; i < t; ++i) trunc_mod_[d] *= params.p;
  }
}

Coeff Signature::truncation_modulus(int degree) const {
  return degree <= params_.M ? trunc_mod_[degree] : 1;
}

int Signature::degree(const Word& w) const {
  int d = 0;
  for (char c : w) d += weight_[static_cast<unsigned char>(c)];
  return d;
}

int Signature::valuation(Coeff c) const {
  int v = 0;
  while (c % params_.p == 0) {
    c /= params_.p;
    ++v;
  }
  return v;
}

Coeff Signature::reduce(long long x) const {
  long long m = static_cast<long long>(mod_);
  long long r = x % m;
  return static_cast<Coeff>(r < 0 ? r + m : r);
}

SignaturePtr make_signature(const EngineParams& params) {
  return std::make_shared<const Signature>(params);
}

Series Series::one(SignaturePtr sig) { return monomial(std::move(sig), Word{}, 1); }

Series Series::monomial(SignaturePtr sig, const Word& w, Coeff c) {
  Series s(std::move(sig));
  s.add(w, c);
  return s;
}

void Series::add(const Word& w, Coeff c) {
  const Coeff m = sig_->truncation_modulus(sig_->degree(w));
  c %= m;
  if (c == 0) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second = (it->second + c) % m;
  if (it->second == 0) terms_.erase(it);
}

Coeff Series::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0 : it->second;
}

namespace {

void check_compatible(const Series& a, const Series& b) {
  if (!(a.params() == b.params())) throw std::invalid_argument("series parameters differ");
}

}  // namespace

Series Series::operator+(const Series& o) const {
  check_compatible(*this, o);
  Series r = *this;
  for (const auto& [w, c] : o.terms_) r.add(w, c);
  return r;
}

Series Series::operator-(const Series& o) const {
  check_compatible(*this, o);
  Series r = *this;
  for (const auto& [w, c] : o.terms_) r.add(w, sig_->neg(c));
  return r;
}

Series Series::scaled(Coeff c) const {
  Series r(sig_);
  for (const auto& [w, x] : terms_) r.add(w, sig_->mul(x, c));
  return r;
}

Series Series::concat(const Series& o) const {
  check_compatible(*this, o);
  Series r(sig_);
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : o.terms_) r.add(w1 + w2, sig_->mul(c1, c2));
  return r;
}

bool Series::is_normal() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return iwasawa::is_normal(t.first); });
}

std::vector<std::pair<Word, Coeff>> Series::sorted_terms() const {
  std::vector<std::pair<int, std::pair<Word, Coeff>>> tmp;
  tmp.reserve(terms_.size());
  for (const auto& t : terms_) tmp.push_back({sig_->degree(t.first), t});
  std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second.first < b.second.first;
  });
  std::vector<std::pair<Word, Coeff>> out;
  out.reserve(tmp.size());
  for (auto& t : tmp) out.push_back(std::move(t.second));
  return out;
}

bool Series::operator==(const Series& o) const {
  return params() == o.params() && terms_ == o.terms_;
}

ScaledValuation svar(const Signature& sig, const Word& w, Coeff c) {
  ScaledValuation v;
  v.cap = sig.params().n * sig.params().K;
  if (c % sig.modulus() != 0) v.exact = sig.svar(w, c % sig.modulus());
  return v;
}

ScaledValuation svar(const Series& s) {
  ScaledValuation v;
  v.cap = s.params().n * s.params().K;
  for (const auto& [w, c] : s.terms()) {
    int x = s.signature()->svar(w, c);
    if (!v.exact || x < *v.exact) v.exact = x;
  }
  return v;
}

std::string word_to_string(const Signature& sig, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (char c : w) {
    if (!out.empty()) out += " ";
    out += sig.var(static_cast<unsigned char>(c)).tag();
  }
  return out;
}

}  // namespace iwasawa
