#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "iwasawa/matgroup.hpp"
#include "iwasawa/normalize.hpp"
#include "iwasawa/report.hpp"

namespace iwasawa {

// Image of the pro-p Iwahori in GL_n(Z/p^m), enumerated by closing the
// generator images under multiplication. Elements are indexed by the
// lexicographic order of their entry vectors.
class FiniteQuotient {
 public:
  using Entries = std::vector<std::uint32_t>;  // row-major residues mod p^m

  FiniteQuotient(int n, std::uint32_t p, int m, GroupKind kind = GroupKind::kSL,
                 LowerOrder order = LowerOrder::kHeight, std::size_t bound = 1'000'000);
  // Subgroup generated by the given matrices (all at precision m).
  static FiniteQuotient generated_by(int n, std::uint32_t p, int m, const std::vector<Matrix>& gens,
                                     std::size_t bound = 1'000'000);

  int n() const { return n_; }
  std::uint32_t p() const { return p_; }
  int depth() const { return m_; }
  GroupKind kind() const { return kind_; }
  LowerOrder order() const { return order_; }
  std::size_t size() const { return elements_.size(); }
  std::size_t identity() const { return identity_; }

  const Entries& element(std::size_t i) const { return elements_[i]; }
  std::size_t index_of(const Entries& e) const;
  std::size_t mul(std::size_t a, std::size_t b) const;
  // Image of the generator attached to a variable index (1-based).
  std::size_t generator(int var) const { return gen_index_.at(var - 1); }
  const std::vector<std::size_t>& generators() const { return gen_index_; }

 private:
  struct Empty {};
  FiniteQuotient(Empty, int n, std::uint32_t p, int m, GroupKind kind, LowerOrder order);
  void close(const std::vector<Entries>& gens, std::size_t bound);
  Entries product(const Entries& a, const Entries& b) const;
  static Entries entries_of(const Matrix& m);

  int n_;
  std::uint32_t p_;
  int m_;
  std::uint32_t modulus_;
  GroupKind kind_;
  LowerOrder order_;
  std::vector<Entries> elements_;
  std::map<Entries, std::size_t> index_;
  std::vector<std::uint32_t> table_;  // full table when small, else empty
  std::size_t identity_ = 0;
  std::vector<std::size_t> gen_index_;
};

// Element of (Z/p^Kc)[quotient], sparse and ordered by element index.
class GAElement {
 public:
  GAElement(const FiniteQuotient* q, std::uint32_t p, int kc);

  static GAElement group(const FiniteQuotient* q, std::uint32_t p, int kc, std::size_t g);

  const std::map<std::size_t, std::uint64_t>& terms() const { return terms_; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_zero() const { return terms_.empty(); }

  void add(std::size_t g, std::uint64_t c);
  GAElement operator+(const GAElement& o) const;
  GAElement operator-(const GAElement& o) const;
  GAElement operator*(const GAElement& o) const;
  GAElement scaled(std::uint64_t c) const;
  bool operator==(const GAElement& o) const { return terms_ == o.terms_; }

 private:
  const FiniteQuotient* q_;
  std::uint32_t p_;
  int kc_;
  std::uint64_t modulus_;
  std::map<std::size_t, std::uint64_t> terms_;
};

// Letter x_i goes to [g_i] - [1].
GAElement embed(const Word& w, const FiniteQuotient& q, int kc);
GAElement embed(const Series& s, const FiniteQuotient& q, int kc);

struct AugIdealProfile {
  int t = 0;                      // I^t = 0, I^(t-1) != 0
  std::vector<int> log_sizes;     // log_p |I^k| for k = 0 .. t
};

AugIdealProfile aug_nilpotency(const FiniteQuotient& q, int kc);

// Smallest truncation that makes the engine exactly comparable with q.
int oracle_tight_bound(int n, int kc, int t);

// Throws std::invalid_argument "truncation not oracle-tight" if M is too small.
Report hom_check(const Series& a, const Series& b, const FiniteQuotient& q, int kc, int t,
                       Multiplier& mul);

struct IndependenceReport {
  int words = 0;
  int rank = 0;
  Report report;
};

IndependenceReport independence_check(const FiniteQuotient& q, int m0);

// Every relation instance as an exact matrix identity mod p^K.
Report relation_matrix_check(int n, std::uint32_t p, int K, GroupKind kind);

}  // namespace iwasawa
