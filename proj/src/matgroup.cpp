#include "iwasawa/matgroup.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace iwasawa {

Matrix::Matrix(ContextPtr ctx, int n) : ctx_(std::move(ctx)), n_(n), a_(n * n, Integer(0)) {}

Matrix Matrix::identity(ContextPtr ctx, int n) { return scalar(std::move(ctx), n, 1); }

Matrix Matrix::scalar(ContextPtr ctx, int n, const Integer& c) {
  Matrix m(std::move(ctx), n);
  for (int i = 0; i < n; ++i) m.set(i, i, c);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (n_ != o.n_) throw std::invalid_argument("matrix size mismatch");
  Matrix r(ctx_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      Integer s = 0;
      for (int k = 0; k < n_; ++k) s += at(i, k) * o.at(k, j);
      r.set(i, j, s);
    }
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return n_ == o.n_ && ctx_->prime() == o.ctx_->prime() &&
         ctx_->precision() == o.ctx_->precision() && a_ == o.a_;
}

Matrix Matrix::inverse() const {
  const Integer& mod = ctx_->modulus();
  const std::uint32_t p = ctx_->prime();
  Matrix a = *this;
  Matrix inv = identity(ctx_, n_);
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int r = c; r < n_; ++r)
      if (a.at(r, c) % p != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("matrix not invertible at this precision");
    if (piv != c)
      for (int k = 0; k < n_; ++k) {
        std::swap(a.a_[piv * n_ + k], a.a_[c * n_ + k]);
        std::swap(inv.a_[piv * n_ + k], inv.a_[c * n_ + k]);
      }
    Integer s = invert(PadicInt(ctx_, a.at(c, c))).residue();
    for (int k = 0; k < n_; ++k) {
      a.set(c, k, a.at(c, k) * s);
      inv.set(c, k, inv.at(c, k) * s);
    }
    for (int r = 0; r < n_; ++r) {
      if (r == c || a.at(r, c) == 0) continue;
      Integer f = a.at(r, c);
      for (int k = 0; k < n_; ++k) {
        a.set(r, k, a.at(r, k) - f * a.at(c, k));
        inv.set(r, k, inv.at(r, k) - f * inv.at(c, k));
      }
    }
  }
  (void)mod;
  return inv;
}

Integer Matrix::det() const {
  // Bareiss elimination over the integers, then reduce.
  std::vector<Integer> m = a_;
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n_ - 1; ++k) {
    if (m[k * n_ + k] == 0) {
      int r = k + 1;
      while (r < n_ && m[r * n_ + k] == 0) ++r;
      if (r == n_) return 0;
      for (int c = 0; c < n_; ++c) std::swap(m[k * n_ + c], m[r * n_ + c]);
      sign = -sign;
    }
    for (int i = k + 1; i < n_; ++i)
      for (int j = k + 1; j < n_; ++j)
        m[i * n_ + j] = (m[i * n_ + j] * m[k * n_ + k] - m[i * n_ + k] * m[k * n_ + j]) / prev;
    prev = m[k * n_ + k];
  }
  return ctx_->reduce(sign * m[n_ * n_ - 1]);
}

Matrix Matrix::reduced(ContextPtr lower) const {
  Matrix r(std::move(lower), n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.set(i, j, at(i, j));
  return r;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    os << "[";
    for (int j = 0; j < n_; ++j) os << (j ? " " : "") << at(i, j);
    os << "]";
  }
  return os.str();
}

std::string membership_problem(const Matrix& m, GroupKind kind) {
  const std::uint32_t p = m.context()->prime();
  const int n = m.size();
  if (m.context()->precision() < 1) return "precision must be at least 1";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i > j && m.at(i, j) % p != 0)
        return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
               ") is not divisible by p";
      if (i == j && m.at(i, i) % p != 1 % p)
        return "diagonal entry " + std::to_string(i + 1) + " is not 1 mod p";
    }
  if (kind == GroupKind::kSL && m.det() != m.context()->reduce(1))
    return "determinant is not 1";
  return {};
}

GroupElement::GroupElement(Matrix m, GroupKind kind) : m_(std::move(m)), kind_(kind) {
  std::string why = membership_problem(m_, kind_);
  if (!why.empty()) throw std::domain_error("matrix is outside the pro-p Iwahori: " + why);
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  if (kind_ != o.kind_) throw std::invalid_argument("mixing SL and GL elements");
  return GroupElement(m_ * o.m_, kind_);
}

GroupElement GroupElement::inverse() const { return GroupElement(m_.inverse(), kind_); }

int scaled_cap(int n, int precision) { return n * (precision - 1) + 1; }

int coordinate_precision(VarKind kind, int precision) {
  return kind == VarKind::V ? precision : precision - 1;
}

Matrix raw_x(ContextPtr ctx, int n, const Root& root, const Integer& t) {
  Matrix m = Matrix::identity(std::move(ctx), n);
  m.set(root.i - 1, root.j - 1, t);
  return m;
}

GroupElement gen_x(int n, const Root& root, const PadicInt& t) {
  if (root.i < 1 || root.j < 1 || root.i > n || root.j > n || root.i == root.j)
    throw std::invalid_argument("not a root of SL_" + std::to_string(n) + ": " + root.to_string());
  if (root.negative() && t.residue() % t.prime() != 0)
    throw std::domain_error("leaves pro-p Iwahori: x" + root.to_string() + " with a unit argument");
  return GroupElement(raw_x(t.context(), n, root, t.residue()), GroupKind::kSL);
}

Matrix gen_h_from_weyl(int n, const Root& delta, const PadicInt& lam) {
  const auto& ctx = lam.context();
  auto w = [&](const Integer& l, const Integer& linv) {
    return raw_x(ctx, n, delta, l) * raw_x(ctx, n, -delta, -linv) * raw_x(ctx, n, delta, l);
  };
  Integer linv = invert(lam).residue();
  // w(1)^-1 = w(-1)
  return w(lam.residue(), linv) * w(-1, -1);
}

GroupElement gen_h(int n, const Root& delta, const PadicInt& lam) {
  if (!delta.simple() || delta.j > n) throw std::invalid_argument("h needs a simple root");
  if (!lam.is_unit()) throw std::domain_error("h_delta needs a unit argument");
  Matrix m = Matrix::identity(lam.context(), n);
  m.set(delta.i - 1, delta.i - 1, lam.residue());
  m.set(delta.j - 1, delta.j - 1, invert(lam).residue());
  if (!(m == gen_h_from_weyl(n, delta, lam)))
    throw std::logic_error("diagonal h disagrees with the Weyl-element product");
  return GroupElement(std::move(m), GroupKind::kSL);
}

GroupElement central_z(int n, GroupKind kind, const PadicInt& power) {
  if (kind != GroupKind::kGL) throw std::invalid_argument("central element needs the GL variant");
  return GroupElement(Matrix::scalar(power.context(), n, pow_one_plus_p(power).residue()),
                      GroupKind::kGL);
}

GroupElement gen_power(int n, const Variable& var, const PadicInt& e, GroupKind kind) {
  const auto& ctx = e.context();
  switch (var.kind) {
    case VarKind::U: {
      Matrix m = raw_x(ctx, n, var.root, e.residue() * ctx->prime());
      return GroupElement(std::move(m), kind);
    }
    case VarKind::V:
      return GroupElement(raw_x(ctx, n, var.root, e.residue()), kind);
    case VarKind::W: {
      GroupElement h = gen_h(n, var.root, pow_one_plus_p(e));
      return GroupElement(h.matrix(), kind);
    }
    case VarKind::Z:
      return central_z(n, kind, e);
  }
  throw std::logic_error("unknown variable kind");
}

ScaledValuation omega(const GroupElement& g) {
  const int n = g.size();
  const int k = g.context()->precision();
  const std::uint32_t p = g.context()->prime();
  const int cap = scaled_cap(n, k);
  int best = cap;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Integer a = g.matrix().at(i, j);
      if (i == j) a = g.context()->reduce(a - 1);
      if (a == 0) continue;
      int v = (i == j ? 0 : j - i) + n * exact_valuation(a, p);
      best = std::min(best, v);
    }
  ScaledValuation r;
  r.cap = cap;
  if (best < cap) r.exact = best;
  return r;
}

namespace {

void check_coords(const BasisCoordinates& c, const std::vector<Variable>& vars) {
  if (c.coords.size() != vars.size())
    throw std::invalid_argument("expected " + std::to_string(vars.size()) + " coordinates, got " +
                                std::to_string(c.coords.size()));
}

}  // namespace

GroupElement compose_from_coords(const BasisCoordinates& c) {
  auto vars = enumerate_vars(c.n, c.order, c.kind);
  check_coords(c, vars);
  const auto& ctx = c.coords.front().context();
  GroupElement g(Matrix::identity(ctx, c.n), c.kind);
  for (size_t i = 0; i < vars.size(); ++i)
    if (!c.coords[i].is_zero()) g = g * gen_power(c.n, vars[i], c.coords[i], c.kind);
  return g;
}

GroupElement compose_closed_form(const BasisCoordinates& c) {
  auto vars = enumerate_vars(c.n, c.order, c.kind);
  check_coords(c, vars);
  const int n = c.n;
  const auto& ctx = c.coords.front().context();
  const Integer p = ctx->prime();
  // x[i][j], 1-based; diagonal holds the torus exponents, x[0][0] = x[n][n] = 0
  std::vector<std::vector<Integer>> x(n + 1, std::vector<Integer>(n + 1, 0));
  Integer central = 0;
  for (size_t k = 0; k < vars.size(); ++k) {
    const Variable& v = vars[k];
    const Integer& z = c.coords[k].residue();
    if (v.kind == VarKind::W) x[v.root.i][v.root.i] = z;
    else if (v.kind == VarKind::Z) central = z;
    else x[v.root.i][v.root.j] = z;
  }
  const int K = ctx->precision();
  std::vector<Integer> t(n + 1);
  for (int k = 1; k <= n; ++k) t[k] = pow_one_plus_p(p.convert_to<std::uint32_t>(), K, x[k][k] - x[k - 1][k - 1]);
  Integer zc = pow_one_plus_p(p.convert_to<std::uint32_t>(), K, central);
  Matrix m(ctx, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Integer s = 0;
      for (int k = 1; k < std::min(i, j); ++k) s += p * x[i][k] * x[k][j] * t[k];
      if (i > j) s += p * x[i][j] * t[j];
      else if (i < j) s += x[i][j] * t[i];
      else s += t[i];
      m.set(i - 1, j - 1, s * zc);
    }
  return GroupElement(std::move(m), c.kind);
}

BasisCoordinates decompose(const GroupElement& g, LowerOrder order) {
  const int n = g.size();
  const ContextPtr& ctx = g.context();
  const int K = ctx->precision();
  const std::uint32_t p = ctx->prime();
  auto vars = enumerate_vars(n, order, g.kind());

  BasisCoordinates out;
  out.n = n;
  out.order = order;
  out.kind = g.kind();
  out.coords.assign(vars.size(), PadicInt(ctx, 0));

  Matrix a = g.matrix();
  if (g.kind() == GroupKind::kGL) {
    // det = (1+p)^(n c) for the central part
    PadicInt l = dlog_one_plus_p(PadicInt(ctx, a.det()));
    auto low = l.context();
    PadicInt c = l * invert(PadicInt(low, n));
    out.coords.back() = PadicInt(ctx, c.residue());
    Integer s = pow_one_plus_p(p, K, -c.residue());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a.set(i, j, a.at(i, j) * s);
  }

  // Doolittle split a = L D U
  Matrix L = Matrix::identity(ctx, n), U = Matrix::identity(ctx, n);
  std::vector<Integer> D(n);
  for (int k = 0; k < n; ++k) {
    Integer s = a.at(k, k);
    for (int r = 0; r < k; ++r) s -= L.at(k, r) * D[r] * U.at(r, k);
    D[k] = ctx->reduce(s);
    Integer dinv = invert(PadicInt(ctx, D[k])).residue();
    for (int j = k + 1; j < n; ++j) {
      Integer u = a.at(k, j);
      for (int r = 0; r < k; ++r) u -= L.at(k, r) * D[r] * U.at(r, j);
      U.set(k, j, u * dinv);
      Integer l = a.at(j, k);
      for (int r = 0; r < k; ++r) l -= L.at(j, r) * D[r] * U.at(r, k);
      L.set(j, k, l * dinv);
    }
  }

  auto lower = lower_roots(n, order);
  std::vector<Integer> z(lower.size(), 0);
  auto lower_product = [&] {
    Matrix prod = Matrix::identity(ctx, n);
    for (size_t k = 0; k < lower.size(); ++k)
      if (z[k] != 0) prod = prod * raw_x(ctx, n, lower[k], z[k] * p);
    return prod;
  };
  for (int h = 1; h < n; ++h) {
    Matrix prod = lower_product();
    for (size_t k = 0; k < lower.size(); ++k) {
      const Root& r = lower[k];
      if (r.i - r.j != h) continue;
      Integer diff = ctx->reduce(L.at(r.i - 1, r.j - 1) - prod.at(r.i - 1, r.j - 1));
      if (diff % p != 0) throw std::logic_error("lower factor lost p-divisibility");
      z[k] = diff / p;
    }
  }
  if (!(lower_product() == L)) throw std::logic_error("lower-unipotent solve failed");

  Integer running = 1;
  std::vector<Integer> torus(n, 0);
  for (int k = 0; k + 1 < n; ++k) {
    running = ctx->reduce(running * D[k]);
    torus[k] = dlog_one_plus_p(PadicInt(ctx, running)).residue();
  }

  for (size_t k = 0; k < vars.size(); ++k) {
    const Variable& v = vars[k];
    switch (v.kind) {
      case VarKind::U: {
        auto it = std::find(lower.begin(), lower.end(), v.root);
        out.coords[k] = PadicInt(ctx, z[it - lower.begin()]);
        break;
      }
      case VarKind::W:
        out.coords[k] = PadicInt(ctx, torus[v.root.i - 1]);
        break;
      case VarKind::V:
        out.coords[k] = PadicInt(ctx, U.at(v.root.i - 1, v.root.j - 1));
        break;
      case VarKind::Z:
        break;
    }
  }
  return out;
}

MinBreakdown omega_breakdown(const BasisCoordinates& c) {
  auto vars = enumerate_vars(c.n, c.order, c.kind);
  check_coords(c, vars);
  const int K = c.coords.front().precision();
  const std::uint32_t p = c.coords.front().prime();
  const int cap = scaled_cap(c.n, K);
  MinBreakdown out;
  int best = cap;
  for (size_t k = 0; k < vars.size(); ++k) {
    const int prec = coordinate_precision(vars[k].kind, K);
    Integer z = c.coords[k].residue() % prime_power(p, prec);
    ScaledValuation t;
    t.cap = vars[k].weight + c.n * prec;
    if (z != 0) {
      t.exact = vars[k].weight + c.n * exact_valuation(z, p);
      best = std::min(best, *t.exact);
    }
    out.terms.push_back(t);
  }
  out.total.cap = cap;
  if (best < cap) out.total.exact = best;
  return out;
}

ScaledValuation omega_via_min(const BasisCoordinates& c) { return omega_breakdown(c).total; }

}  // namespace iwasawa
