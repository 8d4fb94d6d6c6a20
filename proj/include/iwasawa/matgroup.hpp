#pragma once

#include <vector>

#include "iwasawa/padic.hpp"
#include "iwasawa/roots.hpp"

namespace iwasawa {

// Square matrix over Z/p^K with no group constraint. Used for the
// intermediate products (Weyl elements, LDU factors) that leave G.
class Matrix {
 public:
  Matrix(ContextPtr ctx, int n);
  static Matrix identity(ContextPtr ctx, int n);
  static Matrix scalar(ContextPtr ctx, int n, const Integer& c);

  int size() const { return n_; }
  const ContextPtr& context() const { return ctx_; }
  const Integer& at(int r, int c) const { return a_[r * n_ + c]; }  // 0-based
  void set(int r, int c, const Integer& v) { a_[r * n_ + c] = ctx_->reduce(v); }

  Matrix operator*(const Matrix& o) const;
  bool operator==(const Matrix& o) const;

  // Gauss-Jordan; throws if the matrix is not invertible mod p.
  Matrix inverse() const;
  Integer det() const;

  // Same entries reduced to a lower precision.
  Matrix reduced(ContextPtr lower) const;

  std::string to_string() const;

 private:
  ContextPtr ctx_;
  int n_;
  std::vector<Integer> a_;
};

// Element of the pro-p Iwahori subgroup of SL_n or GL_n mod p^K.
class GroupElement {
 public:
  // Validates membership; throws std::domain_error otherwise.
  GroupElement(Matrix m, GroupKind kind);

  const Matrix& matrix() const { return m_; }
  GroupKind kind() const { return kind_; }
  int size() const { return m_.size(); }
  const ContextPtr& context() const { return m_.context(); }

  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const;
  bool operator==(const GroupElement& o) const { return kind_ == o.kind_ && m_ == o.m_; }

 private:
  Matrix m_;
  GroupKind kind_;
};

// Reason m fails to lie in the pro-p Iwahori, or empty.
std::string membership_problem(const Matrix& m, GroupKind kind);

// n times the p-valuation; integral. Capped values mean ">= cap".
using ScaledValuation = Valuation;

// Smallest scaled value that can hide behind a capped entry: n(K-1)+1.
int scaled_cap(int n, int precision);

struct BasisCoordinates {
  int n = 0;
  LowerOrder order = LowerOrder::kHeight;
  GroupKind kind = GroupKind::kSL;
  std::vector<PadicInt> coords;  // indexed by variable index - 1
};

// Precision (in p-digits) to which a coordinate of this kind is determined.
int coordinate_precision(VarKind kind, int precision);

Matrix raw_x(ContextPtr ctx, int n, const Root& root, const Integer& t);

GroupElement gen_x(int n, const Root& root, const PadicInt& t);
GroupElement gen_h(int n, const Root& delta, const PadicInt& lam);
// h_delta(lam) built from Weyl elements w(lam) w(1)^-1.
Matrix gen_h_from_weyl(int n, const Root& delta, const PadicInt& lam);
GroupElement central_z(int n, GroupKind kind, const PadicInt& power);

// g^e for the generator attached to a variable and a p-adic exponent e.
GroupElement gen_power(int n, const Variable& var, const PadicInt& e, GroupKind kind);

ScaledValuation omega(const GroupElement& g);

// Literal ordered product of generator powers.
GroupElement compose_from_coords(const BasisCoordinates& c);
// XZY assembled entrywise from the coordinates.
GroupElement compose_closed_form(const BasisCoordinates& c);

BasisCoordinates decompose(const GroupElement& g, LowerOrder order = LowerOrder::kHeight);

struct MinBreakdown {
  std::vector<ScaledValuation> terms;  // weight + n*val(z_i), per variable
  ScaledValuation total;
};

MinBreakdown omega_breakdown(const BasisCoordinates& c);
ScaledValuation omega_via_min(const BasisCoordinates& c);

}  // namespace iwasawa
