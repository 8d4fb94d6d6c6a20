#include "iwasawa/normalize.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <tuple>

namespace iwasawa {

NormalizeStats& NormalizeStats::operator+=(const NormalizeStats& o) {
  steps += o.steps;
  measure_checks += o.measure_checks;
  peak_pending = std::max(peak_pending, o.peak_pending);
  return *this;
}

namespace {

// The rewrite w -> next at position i must move strictly down the
// termination order.
void check_step(const Signature& sig, Measure measure, const Word& w, int svar_old, int inv_old,
                size_t i, const Word& next, Coeff c, const RewriteRule& rule) {
  const int sv = sig.svar(next, c);
  bool ok = sv > svar_old;
  if (!ok && sv == svar_old) {
    if (measure == Measure::kPlainInversion) {
      ok = inversions(next) < inv_old;
    } else if (next.size() < w.size()) {
      ok = true;
    } else if (next.size() == w.size()) {
      // only an adjacent swap of the inverted pair keeps svar and length
      ok = next.compare(0, i, w, 0, i) == 0 && next[i] == w[i + 1] && next[i + 1] == w[i] &&
           next.compare(i + 2, Word::npos, w, i + 2, Word::npos) == 0;
    }
  }
  if (!ok)
    throw MeasureViolation("termination measure violated by rule " + rule.name(sig) + ": " +
                           word_to_string(sig, w) + " -> " + word_to_string(sig, next));
}

struct Key {
  int svar;
  int len;
  int inv;
  Word word;

  // Pops come from the front: smallest svar, then longest, then most
  // inverted. Every rewrite moves strictly towards the back, so a word is
  // complete once it reaches the front.
  bool operator<(const Key& o) const {
    return std::tie(svar, o.len, o.inv, word) < std::tie(o.svar, len, inv, o.word);
  }
};

struct Entry {
  Coeff coeff;
  int svar;
  int inv;
};

class Normalizer {
 public:
  Normalizer(const RuleTable& rules, const NormalizeOptions& opts, NormalizeStats& stats)
      : rules_(rules), sig_(*rules.signature()), opts_(opts), stats_(stats),
        result_(rules.signature()) {}

  void push(const Word& w, Coeff c) {
    const Coeff m = sig_.truncation_modulus(sig_.degree(w));
    c %= m;
    if (c == 0) return;
    if (is_normal(w)) {
      result_.add(w, c);
      return;
    }
    auto it = pending_.find(w);
    if (it == pending_.end()) {
      int inv = inversions(w);
      int sv = sig_.svar(w, c);
      pending_.emplace(w, Entry{c, sv, inv});
      queue_.insert(Key{sv, static_cast<int>(w.size()), inv, w});
      stats_.peak_pending = std::max<std::uint64_t>(stats_.peak_pending, pending_.size());
      return;
    }
    Entry& e = it->second;
    queue_.erase(Key{e.svar, static_cast<int>(w.size()), e.inv, w});
    e.coeff = (e.coeff + c) % m;
    if (e.coeff == 0) {
      pending_.erase(it);
      return;
    }
    e.svar = sig_.svar(w, e.coeff);
    queue_.insert(Key{e.svar, static_cast<int>(w.size()), e.inv, w});
  }

  Series run() {
    while (!queue_.empty()) {
      auto node = queue_.extract(queue_.begin());
      Word w = std::move(node.value().word);
      auto it = pending_.find(w);
      const Entry e = it->second;
      pending_.erase(it);
      step(w, e);
    }
    return std::move(result_);
  }

 private:
  size_t pick(const Word& w) const {
    if (opts_.strategy == Strategy::kLeftmost) {
      for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] > w[i + 1]) return i;
    } else {
      for (size_t i = w.size() - 1; i > 0; --i)
        if (w[i - 1] > w[i]) return i - 1;
    }
    throw std::logic_error("normalizer picked a normal word");
  }

  void step(const Word& w, const Entry& e) {
    ++stats_.steps;
    const size_t i = pick(w);
    const int a = static_cast<unsigned char>(w[i]);
    const int b = static_cast<unsigned char>(w[i + 1]);
    const RewriteRule& rule = rules_.rule(a, b);
    Word next;
    for (const RhsTerm& t : rule.rhs) {
      Coeff c = sig_.mul(e.coeff, t.coeff);
      next.assign(w, 0, i);
      next += t.word;
      next.append(w, i + 2, Word::npos);
      c %= sig_.truncation_modulus(sig_.degree(next));
      if (c == 0) continue;
      ++stats_.measure_checks;
      check_step(sig_, opts_.measure, w, e.svar, e.inv, i, next, c, rule);
      push(next, c);
    }
  }

  const RuleTable& rules_;
  const Signature& sig_;
  const NormalizeOptions& opts_;
  NormalizeStats& stats_;
  Series result_;
  std::unordered_map<Word, Entry> pending_;
  std::set<Key> queue_;
};

}  // namespace

Strategy parse_strategy(const std::string& s) {
  if (s == "leftmost") return Strategy::kLeftmost;
  if (s == "rightmost") return Strategy::kRightmost;
  if (s == "front") return Strategy::kFrontInsertion;
  throw std::invalid_argument("unknown strategy '" + s + "' (expected leftmost, rightmost or front)");
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::kLeftmost: return "leftmost";
    case Strategy::kRightmost: return "rightmost";
    case Strategy::kFrontInsertion: return "front";
  }
  return "?";
}

int Multiplier::Mono::first() const {
  for (int i = 0; i < 4; ++i)
    if (lane[i] != 0) return 8 * i + std::countr_zero(lane[i]) / 8 + 1;
  return 0;
}

Multiplier::Mono Multiplier::Mono::operator+(const Mono& o) const {
  Mono r;
  for (int i = 0; i < 4; ++i) r.lane[i] = lane[i] + o.lane[i];
  return r;
}

size_t Multiplier::MonoHash::operator()(const Mono& m) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t x : m.lane) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return static_cast<size_t>(h ^ (h >> 33));
}

size_t Multiplier::ActiveHash::operator()(const ActiveKey& k) const {
  return MonoHash{}(k.mono) ^ (static_cast<size_t>(k.letter) * 0x100000001b3ULL + static_cast<size_t>(k.budget));
}

Multiplier::Multiplier(const RuleTable& rules, Measure measure)
    : rules_(rules), sig_(*rules.signature()), measure_(measure), dim_(sig_.dim()) {
  const auto& params = sig_.params();
  if (dim_ > 32 || params.M > 255)
    throw std::invalid_argument("front insertion supports at most 32 variables and M <= 255");
  pow_.assign(params.K + 1, 1);
  for (int i = 1; i <= params.K; ++i) pow_[i] = pow_[i - 1] * params.p;
  weight_.assign(dim_ + 1, 0);
  for (int a = 1; a <= dim_; ++a) weight_[a] = sig_.weight(a);
  low_mask_.assign(dim_ + 1, {});
  for (int L = 1; L <= dim_; ++L) {
    low_mask_[L] = low_mask_[L - 1];
    low_mask_[L][(L - 1) >> 3] |= 0xffULL << (8 * ((L - 1) & 7));
  }

  std::vector<int> top(dim_ + 1, 0), bottom(dim_ + 1, dim_ + 1);
  for (const RewriteRule* r : rules_.all())
    for (const RhsTerm& t : r->rhs)
      for (char c : t.word) {
        const int z = static_cast<unsigned char>(c);
        top[r->a] = std::max(top[r->a], z);
        bottom[r->b] = std::min(bottom[r->b], z);
      }
  limit_.assign(dim_ + 1, dim_);
  for (int L = dim_; L >= 1; --L) {
    int reach = 0;
    for (int a = 1; a <= L; ++a) reach = std::max(reach, top[a]);
    if (reach <= L)
      for (int a = 1; a <= L; ++a) limit_[a] = L;
  }
  for (int H = dim_, low = dim_ + 1; H >= 2; --H) {
    low = std::min(low, bottom[H]);
    if (low >= H) upper_ = H;
  }

  tries_.resize((dim_ + 1) * (dim_ + 1));
  for (const RewriteRule* r : rules_.all()) {
    auto& trie = tries_[r->a * (dim_ + 1) + r->b];
    const int big = std::numeric_limits<int>::max();
    trie.assign(1, TrieNode{0, 0, big, big, {}});
    for (const RhsTerm& t : r->rhs) {
      const int vn = params.n * sig_.valuation(t.coeff);
      const int tdeg = sig_.degree(t.word);
      int pre = tdeg, at = 0;
      trie[0].slack = std::min(trie[0].slack, pre + vn);
      trie[0].min_deg = std::min(trie[0].min_deg, tdeg);
      for (auto z = t.word.rbegin(); z != t.word.rend(); ++z) {
        const int zi = static_cast<unsigned char>(*z);
        pre -= weight_[zi];
        int next = -1;
        for (int k : trie[at].kids)
          if (trie[k].letter == zi) next = k;
        if (next < 0) {
          next = static_cast<int>(trie.size());
          trie[at].kids.push_back(next);
          trie.push_back(TrieNode{zi, 0, big, big, {}});
        }
        at = next;
        trie[at].slack = std::min(trie[at].slack, pre + vn);
        trie[at].min_deg = std::min(trie[at].min_deg, tdeg);
      }
      trie[at].coeff = sig_.add(trie[at].coeff, t.coeff);
    }
  }
  memo_.resize(dim_ + 1);
}

size_t Multiplier::memo_size() const {
  size_t total = 0;
  for (const auto& m : memo_) total += m.size();
  return total;
}

Coeff Multiplier::budget_modulus(int budget, int degree) const {
  if (degree > budget) return 1;
  const auto& params = sig_.params();
  int t = std::min(params.K, (budget - degree) / params.n + 1);
  return pow_[t];
}

int Multiplier::degree(const Mono& m) const {
  int d = 0;
  for (int i = 0; i < 4; ++i)
    for (std::uint64_t x = m.lane[i]; x != 0;) {
      const int byte = std::countr_zero(x) / 8;
      d += static_cast<int>((x >> (8 * byte)) & 0xff) * weight_[8 * i + byte + 1];
      x &= ~(0xffULL << (8 * byte));
    }
  return d;
}

Multiplier::Mono Multiplier::below(const Mono& m, int letter) const {
  Mono r;
  for (int i = 0; i < 4; ++i) r.lane[i] = m.lane[i] & low_mask_[letter][i];
  return r;
}

Multiplier::Mono Multiplier::above(const Mono& m, int letter) const {
  Mono r;
  for (int i = 0; i < 4; ++i) r.lane[i] = m.lane[i] & ~low_mask_[letter][i];
  return r;
}

Multiplier::Mono Multiplier::to_mono(const Word& w) const {
  Mono m;
  for (char c : w) m.bump(static_cast<unsigned char>(c));
  return m;
}

Word Multiplier::to_word(const Mono& m) const {
  Word w;
  for (int a = 1; a <= dim_; ++a) w.append(static_cast<size_t>(m.exponent(a)), static_cast<char>(a));
  return w;
}

void Multiplier::check_front(const RewriteRule& rule, const RhsTerm& t, const Mono& rest) {
  ++stats_.measure_checks;
  const int lhs_svar = weight_[rule.a] + weight_[rule.b];
  bool ok;
  if (measure_ == Measure::kPlainInversion) {
    const Word lhs = static_cast<char>(rule.a) + (static_cast<char>(rule.b) + to_word(rest));
    ok = t.svar > lhs_svar || (t.svar == lhs_svar && inversions(t.word + to_word(rest)) < inversions(lhs));
  } else {
    ok = t.svar > lhs_svar ||
         (t.svar == lhs_svar && (t.word.size() < 2 || (t.word.size() == 2 && t.word[0] == rule.b && t.word[1] == rule.a)));
  }
  if (!ok) {
    const Word rw = to_word(rest);
    throw MeasureViolation("termination measure violated by rule " + rule.name(sig_) + ": " +
                           word_to_string(sig_, static_cast<char>(rule.a) + (static_cast<char>(rule.b) + rw)) +
                           " -> " + word_to_string(sig_, t.word + rw));
  }
}

void Multiplier::consolidate(Terms& v, int reach) const {
  std::sort(v.begin(), v.end(), [](const Term& x, const Term& y) { return x.first.lane < y.first.lane; });
  size_t out = 0;
  for (size_t i = 0; i < v.size();) {
    size_t j = i + 1;
    Coeff c = v[i].second;
    for (; j < v.size() && v[j].first == v[i].first; ++j) c = sig_.add(c, v[j].second);
    c %= budget_modulus(reach, degree(v[i].first));
    if (c != 0) v[out++] = {v[i].first, c};
    i = j;
  }
  v.resize(out);
}

void Multiplier::insert_letter(int z, const Terms& cur, int reach, Terms& out) {
  const int n = sig_.params().n;
  out.clear();
  for (const auto& [u, cu] : cur) {
    const int f = u.first();
    if (f == 0 || f >= z) {
      Mono v = u;
      v.bump(z);
      out.emplace_back(v, cu);
      continue;
    }
    for (const auto& [v, d] : product(z, u, reach - n * sig_.valuation(cu))) out.emplace_back(v, sig_.mul(cu, d));
  }
  consolidate(out, reach);
}

// letter * (x y) = sum of r_low (r_high y) over the terms r = r_low r_high of
// letter * x, where y and r_high only use letters >= upper_.
Multiplier::Terms Multiplier::split_upper(int letter, const Mono& normal, int budget) {
  const Mono x = below(normal, upper_ - 1), y = above(normal, upper_ - 1);
  const auto head_span = product(letter, x, budget - degree(y));
  const Terms head(head_span.begin(), head_span.end());
  Terms acc, cur, nxt;
  for (const auto& [r, cr] : head) {
    const Mono low = below(r, upper_ - 1);
    int pre = degree(r);
    cur.assign(1, {y, cr});
    for (int z = dim_; z >= upper_; --z)
      for (int k = r.exponent(z); k > 0; --k) {
        pre -= weight_[z];
        insert_letter(z, cur, budget - pre, nxt);
        std::swap(cur, nxt);
      }
    for (const auto& [v, c] : cur) acc.emplace_back(low + v, c);
  }
  return acc;
}

std::span<const Multiplier::Term> Multiplier::product(int letter, const Mono& normal, int budget) {
  const int deg = degree(normal) + weight_[letter];
  if (deg > budget) return {};

  // letter * (x y) = (letter * x) y when y only has letters above limit_[letter]
  const Mono tail = above(normal, limit_[letter]);
  const Mono head = below(normal, limit_[letter]);
  if (!tail.empty() && !head.empty()) {
    Terms out;
    for (const auto& [r, c] : product(letter, head, budget - degree(tail))) out.emplace_back(r + tail, c);
    scratch_ = std::move(out);
    return scratch_;
  }
  const int f = normal.first();
  if (f == 0 || f >= letter) {
    scratch_.clear();
    if (1 % budget_modulus(budget, deg) != 0) {
      Mono m = normal;
      m.bump(letter);
      scratch_.emplace_back(m, 1);
    }
    return scratch_;
  }
  auto& memo = memo_[letter];
  if (auto it = memo.find(normal); it != memo.end()) {
    const Product& pr = it->second;
    if (pr.budget >= budget) {
      const auto end = std::upper_bound(pr.degrees.begin(), pr.degrees.end(), budget);
      return {pr.terms.data(), static_cast<size_t>(end - pr.degrees.begin())};
    }
  }
  return compute(letter, normal, budget);
}

std::span<const Multiplier::Term> Multiplier::compute(int letter, const Mono& normal, int budget) {
  auto& memo = memo_[letter];
  const int f = normal.first();
  const int deg = degree(normal) + weight_[letter];
  if (upper_ > 0 && f < upper_ && !above(normal, upper_ - 1).empty())
    return store(memo, normal, budget, split_upper(letter, normal, budget));

  const ActiveKey key{normal, letter, budget};
  if (!active_.insert(key).second)
    throw std::logic_error("front insertion revisited " + word_to_string(sig_, static_cast<char>(letter) + to_word(normal)));
  const RewriteRule& rule = rules_.rule(letter, f);
  Mono rest = normal;
  rest.bump(f, -1);
  const int rest_deg = deg - weight_[letter] - weight_[f];
  const int n = sig_.params().n;
  ++stats_.steps;
  for (const RhsTerm& t : rule.rhs)
    if (t.svar - n * sig_.valuation(t.coeff) + rest_deg <= budget) check_front(rule, t, rest);

  const auto& trie = tries_[letter * (dim_ + 1) + f];
  Terms acc;
  auto walk = [&](auto& self, int at, const Terms& cur) -> void {
    const TrieNode& node = trie[at];
    if (node.coeff != 0)
      for (const auto& [r, c] : cur) acc.emplace_back(r, sig_.mul(node.coeff, c));
    Terms nxt;
    for (int k : node.kids) {
      if (trie[k].min_deg + rest_deg > budget) continue;
      insert_letter(trie[k].letter, cur, budget - trie[k].slack, nxt);
      if (!nxt.empty()) self(self, k, nxt);
    }
  };
  walk(walk, 0, Terms{{rest, 1}});
  active_.erase(key);
  return store(memo, normal, budget, std::move(acc));
}

std::span<const Multiplier::Term> Multiplier::store(std::unordered_map<Mono, Product, MonoHash>& memo,
                                                    const Mono& normal, int budget, Terms acc) {
  consolidate(acc, budget);
  std::vector<std::pair<int, size_t>> order;
  order.reserve(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) order.emplace_back(degree(acc[i].first), i);
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Product pr{budget, {}, {}};
  pr.terms.reserve(acc.size());
  pr.degrees.reserve(acc.size());
  for (const auto& [d, i] : order) {
    pr.degrees.push_back(d);
    pr.terms.push_back(acc[i]);
  }
  Product& slot = memo[normal];
  slot = std::move(pr);
  return slot.terms;
}

void Multiplier::accumulate(Series& out, int letter, const Series& s) {
  const int M = sig_.params().M;
  const int n = sig_.params().n;
  for (const auto& [w, c] : s.terms())
    for (const auto& [u, d] : product(letter, to_mono(w), M - n * sig_.valuation(c)))
      out.add(to_word(u), sig_.mul(c, d));
}

Series Multiplier::left_multiply(int letter, const Series& s) {
  Series out(rules_.signature());
  accumulate(out, letter, s);
  return out;
}

Series Multiplier::multiply(const Series& a, const Series& b) {
  if (!(a.params() == b.params()) || !(a.params() == rules_.params()))
    throw std::invalid_argument("series parameters differ");
  Series out(rules_.signature());
  for (const auto& [w, c] : a.sorted_terms()) {
    Series s = b;
    for (auto z = w.rbegin(); z != w.rend(); ++z) s = left_multiply(static_cast<unsigned char>(*z), s);
    for (const auto& [u, d] : s.terms()) out.add(u, sig_.mul(c, d));
  }
  return out;
}

Series Multiplier::normalize(const Series& s) {
  if (!(s.params() == rules_.params()))
    throw std::invalid_argument("series and rule table were built for different parameters");
  Series out(rules_.signature());
  for (const auto& [w, c] : s.sorted_terms()) {
    Series acc = Series::one(rules_.signature());
    for (auto z = w.rbegin(); z != w.rend(); ++z) acc = left_multiply(static_cast<unsigned char>(*z), acc);
    for (const auto& [u, d] : acc.terms()) out.add(u, sig_.mul(c, d));
  }
  return out;
}

Series normalize(const Series& s, const RuleTable& rules, const NormalizeOptions& opts,
                 NormalizeStats* stats) {
  if (!(s.params() == rules.params()))
    throw std::invalid_argument("series and rule table were built for different parameters");
  if (opts.strategy == Strategy::kFrontInsertion) {
    Multiplier m(rules, opts.measure);
    Series out = m.normalize(s);
    if (stats) *stats += m.stats();
    return out;
  }
  NormalizeStats local;
  Normalizer nz(rules, opts, stats ? *stats : local);
  for (const auto& [w, c] : s.sorted_terms()) nz.push(w, c);
  return nz.run();
}

Series multiply(const Series& a, const Series& b, const RuleTable& rules,
                const NormalizeOptions& opts, NormalizeStats* stats) {
  if (!(a.params() == b.params())) throw std::invalid_argument("series parameters differ");
  if (opts.strategy == Strategy::kFrontInsertion) {
    Multiplier m(rules, opts.measure);
    Series out = m.multiply(a, b);
    if (stats) *stats += m.stats();
    return out;
  }
  return normalize(a.concat(b), rules, opts, stats);
}

}  // namespace iwasawa
