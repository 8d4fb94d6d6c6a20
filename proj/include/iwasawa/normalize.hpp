#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "iwasawa/rules.hpp"

namespace iwasawa {

// kLeftmost / kRightmost rewrite the chosen adjacent inversion of any
// pending word. kFrontInsertion builds each word from the right by
// inserting one letter at a time into a normal word, memoizing
// letter * (normal word).
enum class Strategy { kLeftmost, kRightmost, kFrontInsertion };

Strategy parse_strategy(const std::string& s);
const char* to_string(Strategy s);

// kRefined orders terms by (svar up, length down, inversions down).
// kPlainInversion drops the length component; it is not a valid measure
// over Z/p^K and exists to show where it breaks.
enum class Measure { kRefined, kPlainInversion };

struct NormalizeOptions {
  Strategy strategy = Strategy::kLeftmost;
  Measure measure = Measure::kRefined;
};

struct NormalizeStats {
  std::uint64_t steps = 0;
  std::uint64_t measure_checks = 0;
  std::uint64_t peak_pending = 0;

  NormalizeStats& operator+=(const NormalizeStats& o);
};

class MeasureViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Memo-backed left multiplication by single letters. Not thread-safe;
// use one per executor. Needs at most 32 variables and M <= 255.
class Multiplier {
 public:
  explicit Multiplier(const RuleTable& rules, Measure measure = Measure::kRefined);

  Series multiply(const Series& a, const Series& b);
  // Normal form of an arbitrary series.
  Series normalize(const Series& s);
  // letter * s for a normal series s.
  Series left_multiply(int letter, const Series& s);

  const NormalizeStats& stats() const { return stats_; }
  size_t memo_size() const;

 private:
  // A normal word as its exponent vector; byte i-1 is the exponent of letter i.
  struct Mono {
    std::array<std::uint64_t, 4> lane{};

    int exponent(int letter) const {
      return static_cast<int>((lane[(letter - 1) >> 3] >> (8 * ((letter - 1) & 7))) & 0xff);
    }
    void bump(int letter, int by = 1) {
      lane[(letter - 1) >> 3] += static_cast<std::uint64_t>(by) << (8 * ((letter - 1) & 7));
    }
    int first() const;  // smallest letter present, 0 for the empty word
    bool empty() const { return (lane[0] | lane[1] | lane[2] | lane[3]) == 0; }
    Mono operator+(const Mono& o) const;
    bool operator==(const Mono&) const = default;
  };
  struct MonoHash {
    size_t operator()(const Mono& m) const;
  };
  using Term = std::pair<Mono, Coeff>;
  using Terms = std::vector<Term>;
  // Sorted by degree. Coefficients may carry more precision than asked for.
  struct Product {
    int budget;
    Terms terms;
    std::vector<int> degrees;
  };
  // Right-hand side of a rule as a trie on reversed words.
  struct TrieNode {
    int letter = 0;
    Coeff coeff = 0;
    int slack = 0;    // least svar still to come to the left, over terms below
    int min_deg = 0;  // least word degree over terms below
    std::vector<int> kids;
  };
  struct ActiveKey {
    Mono mono;
    int letter;
    int budget;
    bool operator==(const ActiveKey&) const = default;
  };
  struct ActiveHash {
    size_t operator()(const ActiveKey& k) const;
  };

  // letter * normal, terms of degree <= budget. A product computed for a
  // larger budget is reused.
  std::span<const Term> product(int letter, const Mono& normal, int budget);
  // Memo miss: applies a rule (or the upper split) and files the result.
  std::span<const Term> compute(int letter, const Mono& normal, int budget);
  Terms split_upper(int letter, const Mono& normal, int budget);
  // out = z * cur, consolidated and reduced to reach.
  void insert_letter(int z, const Terms& cur, int reach, Terms& out);
  // Merges equal monomials and drops what the reach does not keep.
  void consolidate(Terms& v, int reach) const;
  // Reduces acc to the budget and files it under normal.
  std::span<const Term> store(std::unordered_map<Mono, Product, MonoHash>& memo, const Mono& normal, int budget,
                              Terms acc);
  void check_front(const RewriteRule& rule, const RhsTerm& t, const Mono& rest);
  Coeff budget_modulus(int budget, int degree) const;
  int degree(const Mono& m) const;
  Mono below(const Mono& m, int letter) const;  // letters <= letter
  Mono above(const Mono& m, int letter) const;  // letters > letter
  Mono to_mono(const Word& w) const;
  Word to_word(const Mono& m) const;
  void accumulate(Series& out, int letter, const Series& s);

  const RuleTable& rules_;
  const Signature& sig_;
  Measure measure_;
  NormalizeStats stats_;
  int dim_;
  std::vector<int> weight_;
  std::vector<Coeff> pow_;
  std::vector<std::array<std::uint64_t, 4>> low_mask_;  // letters <= L
  // limit_[a]: least L >= a such that letters 1..L span a subalgebra
  std::vector<int> limit_;
  int upper_ = 0;  // least H >= 2 such that letters >= H span a subalgebra, else 0
  std::vector<std::vector<TrieNode>> tries_;  // by a * (dim + 1) + b
  std::vector<std::unordered_map<Mono, Product, MonoHash>> memo_;  // by letter
  std::unordered_set<ActiveKey, ActiveHash> active_;
  std::vector<Term> scratch_;  // results that are not memoized
};

Series normalize(const Series& s, const RuleTable& rules, const NormalizeOptions& opts = {},
                 NormalizeStats* stats = nullptr);

Series multiply(const Series& a, const Series& b, const RuleTable& rules,
                const NormalizeOptions& opts = {}, NormalizeStats* stats = nullptr);

}  // namespace iwasawa
