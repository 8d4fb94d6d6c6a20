#include "iwasawa/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "iwasawa/graded.hpp"

namespace iwasawa {

namespace {

using u128 = unsigned __int128;

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

int val(std::uint64_t x, std::uint32_t p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (x % p == 0) x /= p, ++v;
  return v;
}

// inverse of a unit mod m
std::uint64_t inv_unit(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, nt = 1, r = m, nr = a % m;
  while (nr != 0) {
    __int128 q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw std::logic_error("inv_unit: not a unit");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

// Submodule of (Z/p^k)^dim in Howell-style echelon form: one row per pivot
// column, pivot entry p^v, closed under multiplication by p.
class Span {
 public:
  Span(std::uint32_t p, int k, std::size_t dim) : p_(p), k_(k), mod_(ipow(p, k)), dim_(dim) {}

  // True when v enlarges the span.
  bool insert(std::vector<std::uint64_t> v) {
    bool grew = false;
    std::deque<std::vector<std::uint64_t>> todo{std::move(v)};
    while (!todo.empty()) {
      std::vector<std::uint64_t> w = std::move(todo.front());
      todo.pop_front();
      grew |= reduce_in(std::move(w), todo);
    }
    return grew;
  }

  // log_p of the number of elements
  int log_size() const {
    int s = 0;
    for (const auto& [c, r] : rows_) s += k_ - r.v;
    return s;
  }
  bool empty() const { return rows_.empty(); }
  std::vector<std::vector<std::uint64_t>> rows() const {
    std::vector<std::vector<std::uint64_t>> out;
    for (const auto& [c, r] : rows_) out.push_back(r.e);
    return out;
  }

 private:
  struct Row {
    std::vector<std::uint64_t> e;
    int v;
  };

  bool reduce_in(std::vector<std::uint64_t> w, std::deque<std::vector<std::uint64_t>>& todo) {
    for (std::size_t c = 0; c < dim_; ++c) {
      if (w[c] == 0) continue;
      const int b = val(w[c], p_, k_);
      auto it = rows_.find(c);
      if (it != rows_.end() && b >= it->second.v) {
        const std::uint64_t f = w[c] / ipow(p_, it->second.v);
        for (std::size_t j = c; j < dim_; ++j)
          w[j] = (w[j] + mod_ - mulmod(f, it->second.e[j], mod_)) % mod_;
        continue;
      }
      // w becomes the pivot row at c
      const std::uint64_t pb = ipow(p_, b);
      const std::uint64_t u = inv_unit(w[c] / pb, mod_);
      for (std::size_t j = c; j < dim_; ++j) w[j] = mulmod(w[j], u, mod_);
      if (it != rows_.end()) {
        todo.push_back(std::move(it->second.e));
        rows_.erase(it);
      }
      if (b > 0) {
        std::vector<std::uint64_t> kill(dim_);
        const std::uint64_t f = ipow(p_, k_ - b);
        for (std::size_t j = c; j < dim_; ++j) kill[j] = mulmod(w[j], f, mod_);
        todo.push_back(std::move(kill));
      }
      rows_.emplace(c, Row{std::move(w), b});
      return true;
    }
    return false;
  }

  std::uint32_t p_;
  int k_;
  std::uint64_t mod_;
  std::size_t dim_;
  std::map<std::size_t, Row> rows_;
};

std::string str(long long x) { return std::to_string(x); }

}  // namespace

// ---- FiniteQuotient ----

FiniteQuotient::FiniteQuotient(Empty, int n, std::uint32_t p, int m, GroupKind kind, LowerOrder order)
    : n_(n), p_(p), m_(m), modulus_(static_cast<std::uint32_t>(ipow(p, m))), kind_(kind), order_(order) {
  if (m < 1) throw std::invalid_argument("quotient depth must be at least 1");
  if (ipow(p, m) >= (1ull << 31)) throw std::invalid_argument("quotient modulus too large");
}

FiniteQuotient::FiniteQuotient(int n, std::uint32_t p, int m, GroupKind kind, LowerOrder order,
                               std::size_t bound)
    : FiniteQuotient(Empty{}, n, p, m, kind, order) {
  auto ctx = make_context(p, m);
  std::vector<Entries> gens;
  for (const Variable& v : enumerate_vars(n, order, kind))
    gens.push_back(entries_of(gen_power(n, v, PadicInt(ctx, 1), kind).matrix()));
  close(gens, bound);
}

FiniteQuotient FiniteQuotient::generated_by(int n, std::uint32_t p, int m, const std::vector<Matrix>& gens,
                                            std::size_t bound) {
  FiniteQuotient q(Empty{}, n, p, m, GroupKind::kGL, LowerOrder::kHeight);
  std::vector<Entries> g;
  for (const Matrix& x : gens) {
    if (x.size() != n || x.context()->precision() != m)
      throw std::invalid_argument("generator does not match the quotient shape");
    g.push_back(entries_of(x));
  }
  q.close(g, bound);
  return q;
}

FiniteQuotient::Entries FiniteQuotient::entries_of(const Matrix& m) {
  Entries e;
  for (int r = 0; r < m.size(); ++r)
    for (int c = 0; c < m.size(); ++c) e.push_back(m.at(r, c).convert_to<std::uint32_t>());
  return e;
}

FiniteQuotient::Entries FiniteQuotient::product(const Entries& a, const Entries& b) const {
  Entries c(a.size());
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      std::uint64_t s = 0;
      for (int k = 0; k < n_; ++k) s += static_cast<std::uint64_t>(a[i * n_ + k]) * b[k * n_ + j] % modulus_;
      c[i * n_ + j] = static_cast<std::uint32_t>(s % modulus_);
    }
  return c;
}

void FiniteQuotient::close(const std::vector<Entries>& gens, std::size_t bound) {
  Entries id(n_ * n_, 0);
  for (int i = 0; i < n_; ++i) id[i * n_ + i] = 1 % modulus_;
  std::map<Entries, bool> seen{{id, true}};
  std::deque<Entries> queue{id};
  while (!queue.empty()) {
    Entries x = std::move(queue.front());
    queue.pop_front();
    for (const Entries& g : gens) {
      Entries y = product(x, g);
      if (seen.emplace(y, true).second) {
        if (seen.size() > bound)
          throw std::length_error("quotient exceeds the size bound of " + std::to_string(bound) + " elements");
        queue.push_back(std::move(y));
      }
    }
  }
  elements_.reserve(seen.size());
  for (auto& [e, unused] : seen) {
    index_.emplace(e, elements_.size());
    elements_.push_back(e);
  }
  identity_ = index_of(id);
  for (const Entries& g : gens) gen_index_.push_back(index_of(g));
  const std::size_t sz = elements_.size();
  if (sz <= 4096) {
    table_.resize(sz * sz);
    for (std::size_t a = 0; a < sz; ++a)
      for (std::size_t b = 0; b < sz; ++b)
        table_[a * sz + b] = static_cast<std::uint32_t>(index_of(product(elements_[a], elements_[b])));
  }
}

std::size_t FiniteQuotient::index_of(const Entries& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw std::out_of_range("matrix is not in the quotient");
  return it->second;
}

std::size_t FiniteQuotient::mul(std::size_t a, std::size_t b) const {
  if (!table_.empty()) return table_[a * elements_.size() + b];
  return index_of(product(elements_[a], elements_[b]));
}

// ---- GAElement ----

GAElement::GAElement(const FiniteQuotient* q, std::uint32_t p, int kc)
    : q_(q), p_(p), kc_(kc), modulus_(ipow(p, kc)) {
  if (kc < 1) throw std::invalid_argument("oracle coefficient precision must be at least 1");
}

GAElement GAElement::group(const FiniteQuotient* q, std::uint32_t p, int kc, std::size_t g) {
  GAElement e(q, p, kc);
  e.add(g, 1);
  return e;
}

void GAElement::add(std::size_t g, std::uint64_t c) {
  c %= modulus_;
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(g, c);
  if (fresh) return;
  it->second = (it->second + c) % modulus_;
  if (it->second == 0) terms_.erase(it);
}

GAElement GAElement::operator+(const GAElement& o) const {
  GAElement r = *this;
  for (const auto& [g, c] : o.terms_) r.add(g, c);
  return r;
}

GAElement GAElement::operator-(const GAElement& o) const {
  GAElement r = *this;
  for (const auto& [g, c] : o.terms_) r.add(g, modulus_ - c);
  return r;
}

GAElement GAElement::operator*(const GAElement& o) const {
  GAElement r(q_, p_, kc_);
  for (const auto& [g, c] : terms_)
    for (const auto& [h, d] : o.terms_) r.add(q_->mul(g, h), mulmod(c, d, modulus_));
  return r;
}

GAElement GAElement::scaled(std::uint64_t c) const {
  GAElement r(q_, p_, kc_);
  for (const auto& [g, d] : terms_) r.add(g, mulmod(c % modulus_, d, modulus_));
  return r;
}

GAElement embed(const Word& w, const FiniteQuotient& q, int kc) {
  GAElement e = GAElement::group(&q, q.p(), kc, q.identity());
  for (char ch : w) {
    const std::size_t g = q.generator(static_cast<unsigned char>(ch));
    if (g == q.identity()) return GAElement(&q, q.p(), kc);
    GAElement next(&q, q.p(), kc);
    for (const auto& [h, c] : e.terms()) {
      next.add(q.mul(h, g), c);
      next.add(h, e.modulus() - c);
    }
    e = std::move(next);
    if (e.is_zero()) break;
  }
  return e;
}

GAElement embed(const Series& s, const FiniteQuotient& q, int kc) {
  const auto& params = s.params();
  if (params.n != q.n() || params.p != q.p() || params.kind != q.kind() || params.order != q.order())
    throw std::invalid_argument("series and quotient were built for different groups");
  if (kc > params.K) throw std::invalid_argument("oracle precision exceeds the series precision");
  GAElement out(&q, q.p(), kc);
  for (const auto& [w, c] : s.sorted_terms()) {
    if (c % out.modulus() == 0) continue;
    out = out + embed(w, q, kc).scaled(c);
  }
  return out;
}

// ---- augmentation ideal ----

AugIdealProfile aug_nilpotency(const FiniteQuotient& q, int kc) {
  const std::size_t sz = q.size();
  const std::uint64_t mod = ipow(q.p(), kc);
  std::vector<std::size_t> gens;
  for (std::size_t g : q.generators())
    if (g != q.identity() && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);

  auto times = [&](const std::vector<std::uint64_t>& x, std::size_t s, bool minus_one) {
    std::vector<std::uint64_t> y(sz, 0);
    for (std::size_t h = 0; h < sz; ++h) {
      if (x[h] == 0) continue;
      std::size_t hs = q.mul(h, s);
      y[hs] = (y[hs] + x[h]) % mod;
      if (minus_one) y[h] = (y[h] + mod - x[h]) % mod;
    }
    return y;
  };

  AugIdealProfile prof;
  prof.log_sizes.push_back(kc * static_cast<int>(sz));
  // I^1
  Span cur(q.p(), kc, sz);
  for (std::size_t g = 0; g < sz; ++g) {
    if (g == q.identity()) continue;
    std::vector<std::uint64_t> v(sz, 0);
    v[g] = 1;
    v[q.identity()] = mod - 1;
    cur.insert(std::move(v));
  }
  int k = 1;
  while (!cur.empty()) {
    prof.log_sizes.push_back(cur.log_size());
    // I^(k+1): right ideal generated by x (s - 1)
    Span next(q.p(), kc, sz);
    std::deque<std::vector<std::uint64_t>> queue;
    for (const auto& x : cur.rows())
      for (std::size_t s : gens) queue.push_back(times(x, s, true));
    while (!queue.empty()) {
      auto v = std::move(queue.front());
      queue.pop_front();
      if (!next.insert(v)) continue;
      for (std::size_t s : gens) queue.push_back(times(v, s, false));
    }
    cur = std::move(next);
    ++k;
  }
  prof.log_sizes.push_back(0);
  prof.t = k;
  return prof;
}

int oracle_tight_bound(int n, int kc, int t) { return n * (kc - 1) + n * t; }

// ---- checks ----

namespace {

std::map<std::string, std::string> quotient_params(const FiniteQuotient& q) {
  return {{"n", str(q.n())}, {"p", str(q.p())}, {"m", str(q.depth())}, {"kind", to_string(q.kind())},
          {"order", to_string(q.order())}, {"quotient_order", str(static_cast<long long>(q.size()))}};
}

std::string entries_string(const FiniteQuotient::Entries& e) {
  std::string s = "[";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + "]";
}

}  // namespace

Report hom_check(const Series& a, const Series& b, const FiniteQuotient& q, int kc, int t,
                       Multiplier& mul) {
  const auto& params = a.params();
  const int need = oracle_tight_bound(params.n, kc, t);
  if (params.M < need)
    throw std::invalid_argument("truncation not oracle-tight: need M >= " + std::to_string(need) +
                                ", got M = " + std::to_string(params.M));
  Report rep;
  rep.check = "oracle-hom";
  rep.params = quotient_params(q);
  rep.params["Kc"] = str(kc);
  rep.params["t"] = str(t);
  rep.params["M"] = str(params.M);
  rep.params["K"] = str(params.K);
  GAElement lhs = embed(mul.multiply(a, b), q, kc);
  GAElement rhs = embed(a, q, kc) * embed(b, q, kc);
  GAElement diff = lhs - rhs;
  rep.pass = diff.is_zero();
  for (const auto& [g, c] : diff.terms()) {
    if (rep.witnesses.size() >= 20) break;
    rep.witnesses.push_back(entries_string(q.element(g)) + " -> " + std::to_string(c));
  }
  return rep;
}

IndependenceReport independence_check(const FiniteQuotient& q, int m0) {
  IndependenceReport out;
  out.report.check = "independence";
  out.report.params = quotient_params(q);
  out.report.params["m0"] = str(m0);
  out.report.params["Kc"] = "1";
  const std::uint64_t p = q.p();
  const std::size_t sz = q.size();

  std::vector<Word> words;
  for (int m = 0; m <= m0; ++m)
    for (Word& w : graded_basis(q.n(), m, q.order(), q.kind())) words.push_back(std::move(w));
  const std::size_t nw = words.size();
  out.words = static_cast<int>(nw);

  // rows: embedding | identity, eliminated over F_p
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < nw; ++i) {
    std::vector<std::uint64_t> r(sz + nw, 0);
    const GAElement img = embed(words[i], q, 1);
    for (const auto& [g, c] : img.terms()) r[g] = c;
    r[sz + i] = 1;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const std::uint64_t f = r[pivots[k]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < r.size(); ++j) r[j] = (r[j] + (p - f) * rows[k][j]) % p;
    }
    std::size_t piv = 0;
    while (piv < sz && r[piv] == 0) ++piv;
    if (piv == sz) {
      std::string kernel;
      for (std::size_t j = 0; j < nw; ++j)
        if (r[sz + j]) {
          if (!kernel.empty()) kernel += " + ";
          kernel += std::to_string(r[sz + j]) + "*[" ;
          auto idx = word_indices(words[j]);
          for (std::size_t l = 0; l < idx.size(); ++l) kernel += (l ? "," : "") + std::to_string(idx[l]);
          kernel += "]";
        }
      if (out.report.witnesses.size() < 20) out.report.witnesses.push_back("kernel: " + kernel);
      continue;
    }
    const std::uint64_t u = inv_unit(r[piv], p);
    for (auto& x : r) x = x * u % p;
    rows.push_back(std::move(r));
    pivots.push_back(piv);
  }
  out.rank = static_cast<int>(rows.size());
  out.report.pass = out.rank == out.words;
  out.report.params["words"] = str(out.words);
  out.report.params["rank"] = str(out.rank);
  if (!out.report.pass) out.report.witnesses.insert(out.report.witnesses.begin(), "quotient too shallow");
  return out;
}

Report relation_matrix_check(int n, std::uint32_t p, int K, GroupKind kind) {
  if (p <= static_cast<std::uint32_t>(n + 1))
    throw std::invalid_argument("Lazard condition violated: need p > n+1, got p=" + std::to_string(p) +
                                ", n=" + std::to_string(n));
  Report rep;
  rep.check = "relations";
  rep.params = {{"n", str(n)}, {"p", str(p)}, {"K", str(K)}, {"kind", to_string(kind)}};
  auto ctx = make_context(p, K);
  const PadicInt one(ctx, 1), pp(ctx, static_cast<long long>(p));
  const PadicInt r = pow_one_plus_p(PadicInt(ctx, -1));  // (1+p)^-1
  auto x = [&](int i, int j, const PadicInt& t) { return gen_x(n, Root{i, j}, t); };
  auto h = [&](int k) { return gen_h(n, Root{k, k + 1}, pow_one_plus_p(one)); };
  // <(i,j), (k,k+1)>
  auto pair = [](int i, int j, int k) {
    return (i == k) - (i == k + 1) - (j == k) + (j == k + 1);
  };
  auto is_root = [&](int i, int j) { return i != j && i >= 1 && j >= 1 && i <= n && j <= n; };

  std::map<std::string, std::pair<int, int>> tally;  // family -> (instances, failures)
  auto record = [&](Relation rel, bool ok, const std::string& what) {
    auto& [cnt, bad] = tally[to_string(rel)];
    ++cnt;
    if (!ok) {
      ++bad;
      if (rep.witnesses.size() < 50) rep.witnesses.push_back(std::string(to_string(rel)) + ": " + what);
    }
  };
  auto rs = [](int i, int j) { return Root{i, j}.to_string(); };

  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const bool lower = i > j;
      for (int k = 1; k < n; ++k) {
        const PadicInt q = pow_one_plus_p(PadicInt(ctx, pair(i, j, k)));
        const PadicInt s = lower ? pp : one;
        record(lower ? Relation::kTorusLower : Relation::kTorusUpper,
               h(k) * x(i, j, s) == x(i, j, s * q) * h(k), "h" + rs(k, k + 1) + " x" + rs(i, j));
      }
    }

  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)      // alpha = (i,j) positive
      for (int a = 1; a <= n; ++a)
        for (int b = 1; b < a; ++b) {     // beta = (a,b) negative
          const auto lhs = x(i, j, one) * x(a, b, pp);
          const std::string what = "x" + rs(i, j) + " x" + rs(a, b);
          if (a == j && b == i) {
            auto rhs = x(a, b, pp * r);
            for (int t = i; t < j; ++t) rhs = rhs * h(t);
            record(Relation::kOpposite, lhs == rhs * x(i, j, r), what);
          } else if (a == j) {            // beta = (j,k), k = b
            const int k = b;
            const auto c = x(i, k, pp);   // (1+V_(i,k))^p and (1+U_(i,k)) both give x_(i,k)(p)
            record(i < k ? Relation::kMixedSumUpper : Relation::kMixedSumLower,
                   lhs == c * x(a, b, pp) * x(i, j, one), what);
          } else if (b == i) {            // beta = (k,i), k = a
            const int k = a;
            const auto c = x(k, j, PadicInt(ctx, -static_cast<long long>(p)));
            record(k < j ? Relation::kMixedDiffUpper : Relation::kMixedDiffLower,
                   lhs == c * x(a, b, pp) * x(i, j, one), what);
          } else {
            record(Relation::kMixedCommute, lhs == x(a, b, pp) * x(i, j, one), what);
          }
        }

  const PadicInt p2 = pp * pp;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j < i; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l < k; ++l) {
          if (i == k && j == l) continue;
          const auto lhs = x(i, j, pp) * x(k, l, pp);
          const auto swapped = x(k, l, pp) * x(i, j, pp);
          const std::string what = "x" + rs(i, j) + " x" + rs(k, l);
          if (j == k && is_root(i, l)) {
            record(Relation::kLowerSum, lhs == x(i, l, p2) * swapped, what);
          } else if (l == i && is_root(k, j)) {
            record(Relation::kLowerDiff, lhs == x(k, j, PadicInt(ctx, 0) - p2) * swapped, what);
          } else {
            record(Relation::kLowerCommute, lhs == swapped, what);
          }
        }

  for (int k = 1; k < n; ++k)
    for (int l = 1; l < n; ++l)
      if (k != l) record(Relation::kTorusCommute, h(k) * h(l) == h(l) * h(k), "h" + rs(k, k + 1) + " h" + rs(l, l + 1));

  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
          if (i == k && j == l) continue;
          const auto lhs = x(i, j, one) * x(k, l, one);
          const auto swapped = x(k, l, one) * x(i, j, one);
          const std::string what = "x" + rs(i, j) + " x" + rs(k, l);
          if (j == k) {
            record(Relation::kUpperSum, lhs == x(i, l, one) * swapped, what);
          } else if (l == i) {
            // alpha1 = (i,j), alpha2 = (k,i): x_alpha2 x_alpha1 = x_(k,j) x_alpha1 x_alpha2
            record(Relation::kUpperSumReversed, swapped == x(k, j, one) * lhs, what);
          } else {
            record(Relation::kUpperCommute, lhs == swapped, what);
          }
        }

  if (kind == GroupKind::kGL) {
    const auto z = central_z(n, kind, one);
    for (const Variable& v : enumerate_vars(n, LowerOrder::kHeight, kind)) {
      const auto g = gen_power(n, v, one, kind);
      record(Relation::kCentral, z * g == g * z, "z " + v.tag());
    }
  }

  rep.pass = true;
  for (const auto& [fam, ct] : tally) {
    rep.params["instances." + fam] = str(ct.first);
    if (ct.second) rep.pass = false;
  }
  return rep;
}

}  // namespace iwasawa
