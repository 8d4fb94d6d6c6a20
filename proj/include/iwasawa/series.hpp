#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "iwasawa/matgroup.hpp"
#include "iwasawa/roots.hpp"

namespace iwasawa {

struct EngineParams {
  int n = 2;
  std::uint32_t p = 5;
  int K = 1;
  int M = 0;  // terms with svar > M are discarded
  LowerOrder order = LowerOrder::kHeight;
  GroupKind kind = GroupKind::kSL;

  friend bool operator==(const EngineParams&, const EngineParams&) = default;
};

// Letters are variable indices stored as chars, so std::string gives
// small-buffer storage and hashing for free.
using Word = std::string;

Word make_word(const std::vector<int>& indices);
std::vector<int> word_indices(const Word& w);
int inversions(const Word& w);
bool is_normal(const Word& w);

using Coeff = std::uint64_t;

// Everything a series needs to know about its ambient algebra.
class Signature {
 public:
  explicit Signature(const EngineParams& params);

  const EngineParams& params() const { return params_; }
  const std::vector<Variable>& vars() const { return vars_; }
  int dim() const { return static_cast<int>(vars_.size()); }
  int weight(int index) const { return weight_[index]; }
  const Variable& var(int index) const { return vars_[index - 1]; }
  Coeff modulus() const { return mod_; }

  int degree(const Word& w) const;
  // p-adic valuation of a nonzero coefficient
  int valuation(Coeff c) const;
  int svar(const Word& w, Coeff c) const { return params_.n * valuation(c) + degree(w); }

  Coeff reduce(long long x) const;
  // Coefficients of a degree-d word only matter modulo p^t with
  // n*(t-1) + d <= M; this is that p^t (1 when the word is past M).
  Coeff truncation_modulus(int degree) const;
  Coeff add(Coeff a, Coeff b) const { return (a + b) % mod_; }
  Coeff sub(Coeff a, Coeff b) const { return (a + mod_ - b) % mod_; }
  Coeff mul(Coeff a, Coeff b) const {
    return static_cast<Coeff>(static_cast<unsigned __int128>(a) * b % mod_);
  }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : mod_ - a; }

 private:
  EngineParams params_;
  std::vector<Variable> vars_;
  std::vector<int> weight_;  // indexed by variable index
  Coeff mod_;
  std::vector<Coeff> trunc_mod_;  // indexed by degree 0..M
};

using SignaturePtr = std::shared_ptr<const Signature>;
SignaturePtr make_signature(const EngineParams& params);

// Truncated noncommutative series: word -> nonzero coefficient mod p^K,
// every term with svar <= M.
class Series {
 public:
  explicit Series(SignaturePtr sig) : sig_(std::move(sig)) {}
  static Series one(SignaturePtr sig);
  static Series monomial(SignaturePtr sig, const Word& w, Coeff c = 1);

  const SignaturePtr& signature() const { return sig_; }
  const EngineParams& params() const { return sig_->params(); }
  const std::unordered_map<Word, Coeff>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  // Adds c*w. Coefficients are kept reduced modulo the truncation
  // modulus of their word, which makes the representation canonical.
  void add(const Word& w, Coeff c);
  Coeff coeff(const Word& w) const;

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series scaled(Coeff c) const;
  // Concatenation product without normal ordering.
  Series concat(const Series& o) const;

  bool is_normal() const;
  // Sorted by (degree, word).
  std::vector<std::pair<Word, Coeff>> sorted_terms() const;

  bool operator==(const Series& o) const;

 private:
  SignaturePtr sig_;
  std::unordered_map<Word, Coeff> terms_;
};

// n*val(c) + deg(w); capped at the scaled precision cap for zero.
ScaledValuation svar(const Signature& sig, const Word& w, Coeff c);
ScaledValuation svar(const Series& s);

std::string word_to_string(const Signature& sig, const Word& w);

}  // namespace iwasawa
