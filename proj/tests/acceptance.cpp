// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli_runner.hpp"
#include "iwasawa/json_io.hpp"
#include "iwasawa/sampling.hpp"
#include "iwasawa/verify.hpp"

using namespace iwasawa;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// measure violations seen by any suite run below
long long g_violations = 0;
std::vector<std::string> g_violation_sources;

Report suite(const std::string& name, const Config& c) {
  Report r = run_suite(name, c);
  if (auto it = r.params.find("measure_violations"); it != r.params.end() && it->second != "0") {
    g_violations += std::stoll(it->second);
    g_violation_sources.push_back(name + " n=" + std::to_string(c.n));
  }
  return r;
}

Config base(int n, std::uint32_t p, int K) {
  Config c;
  c.n = n;
  c.p = p;
  c.K = K;
  return c;
}

void note_failure(Outcome& o, const Report& r, const std::string& where) {
  o.pass = false;
  o.detail += (o.detail.empty() ? "" : "; ") + r.check + " " + where;
  if (!r.witnesses.empty()) o.detail += ": " + r.witnesses.front();
}

Outcome relations() {
  Outcome o;
  int runs = 0;
  for (auto [n, p] : std::vector<std::pair<int, std::uint32_t>>{{2, 5}, {3, 5}, {3, 7}, {4, 7}, {5, 7}})
    for (GroupKind kind : {GroupKind::kSL, GroupKind::kGL}) {
      Config c = base(n, p, 8);
      c.kind = kind;
      Report r = suite("relations", c);
      ++runs;
      if (!r.pass) note_failure(o, r, "n=" + std::to_string(n) + " p=" + std::to_string(p) + " " + to_string(kind));
    }
  if (o.pass) o.detail = std::to_string(runs) + " (n,p,kind) runs at K=8";
  return o;
}

Outcome rules() {
  Outcome o;
  long long total = 0;
  std::string refused;
  for (int n = 2; n <= 4; ++n)
    for (std::uint32_t p : {5u, 7u}) {
      Config c = base(n, p, 6);
      if (p <= static_cast<std::uint32_t>(n + 1)) {
        // outside p > n+1 nothing may be compiled; the compiler must refuse
        try {
          suite("rules", c);
          o.pass = false;
          o.detail += "n=" + std::to_string(n) + " p=" + std::to_string(p) + " compiled despite p <= n+1; ";
        } catch (const std::invalid_argument&) {
          refused += " (" + std::to_string(n) + "," + std::to_string(p) + ")";
        }
        continue;
      }
      Report r = suite("rules", c);
      total += std::stoll(r.params.at("rules"));
      if (!r.pass || r.params.at("rules") != r.params.at("group_checked"))
        note_failure(o, r, "n=" + std::to_string(n) + " p=" + std::to_string(p));
    }
  if (o.pass) o.detail = std::to_string(total) + " rules group-checked; refused by p > n+1:" + refused;
  return o;
}

Outcome sampled(const std::string& name, const std::string& counters) {
  Outcome o;
  for (auto [n, p] : std::vector<std::pair<int, std::uint32_t>>{{2, 5}, {3, 5}}) {
    Config c = base(n, p, 6);
    c.samples = 1000;
    Report r = suite(name, c);
    if (!r.pass) note_failure(o, r, "n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "1000 samples each at (2,5) and (3,5), K=6, zero " + counters;
  return o;
}

Outcome ring_laws() {
  Outcome o;
  for (int n : {2, 3}) {
    Config c = base(n, 5, 3);
    c.M = 12;
    c.samples = 200;
    for (const char* name : {"associativity", "confluence"}) {
      Report r = suite(name, c);
      if (!r.pass) note_failure(o, r, "n=" + std::to_string(n));
    }
  }
  if (o.pass) o.detail = "200 triples and 200 series per n in {2,3}, M=12";
  return o;
}

Outcome graded() {
  Outcome o;
  for (int n = 2; n <= 4; ++n)
    for (GroupKind kind : {GroupKind::kSL, GroupKind::kGL}) {
      Config c = base(n, 5, 3);
      c.kind = kind;
      c.max_m = 30;
      Report r = suite("graded", c);
      if (!r.pass) note_failure(o, r, "n=" + std::to_string(n) + " " + to_string(kind));
      if (n == 2 && kind == GroupKind::kSL && r.params.at("dims_prefix").rfind("1,2,4,6,9,", 0) != 0) {
        o.pass = false;
        o.detail += "n=2 prefix " + r.params.at("dims_prefix") + "; ";
      }
    }
  if (o.pass) o.detail = "n=2..4, SL and GL, m<=30; n=2 prefix 1,2,4,6,9";
  return o;
}

Outcome oracle_hom() {
  Outcome o;
  Config c = base(3, 5, 1);
  c.samples = 50;
  Report r = suite("oracle-hom", c);
  const int M = std::stoi(r.params.at("M")), t = std::stoi(r.params.at("t"));
  if (!r.pass) note_failure(o, r, "");
  if (M < 3 * t) {
    o.pass = false;
    o.detail += "M=" + std::to_string(M) + " below 3t=" + std::to_string(3 * t);
  }
  if (o.pass)
    o.detail = r.params.at("pairs") + " pairs (" + r.params.at("samples") + " random of degree <= " +
               r.params.at("sample_degree") + ") at M=" + std::to_string(M) + ", t=" + std::to_string(t);
  return o;
}

Outcome independence() {
  Outcome o;
  Config c = base(2, 5, 1);
  c.oracle_m = 2;
  c.m0 = 4;
  Report r = suite("independence", c);
  const std::string rank = r.params.at("rank");
  o.pass = r.pass && rank == "22" && r.params.at("words") == "22";
  o.detail = "rank " + rank + " of " + r.params.at("words") + " words";
  return o;
}

Outcome measure() {
  Outcome o;
  o.pass = g_violations == 0;
  o.detail = std::to_string(g_violations) + " violations";
  for (const auto& s : g_violation_sources) o.detail += "; " + s;
  return o;
}

Outcome determinism() {
  const auto dir = clitest::scratch_dir("iwasawa_acceptance");
  auto ctx = make_context(5, 4);
  Rng rng(11);
  const GroupElement g = random_element(rng, 3, GroupKind::kSL, ctx);
  const std::string mat = clitest::write_file(dir / "g.json", to_json(g).dump());
  const std::string coords = clitest::write_file(dir / "c.json", to_json(decompose(g, LowerOrder::kHeight)).dump());
  auto sig = make_signature(EngineParams{3, 5, 3, 10, LowerOrder::kHeight, GroupKind::kSL});
  const std::string a = clitest::write_file(dir / "a.json", to_json(random_normal_series(rng, sig, 3, 3)).dump());
  const std::string b = clitest::write_file(dir / "b.json", to_json(random_normal_series(rng, sig, 3, 3)).dump());
  Series raw(sig);
  raw.add(make_word({8, 7, 3, 1}), 2);
  raw.add(make_word({6, 2}), 1);
  const std::string s = clitest::write_file(dir / "s.json", to_json(raw).dump());

  std::vector<std::string> commands{"basis -n 3",
                                    "basis -n 3 --order lex --gl",
                                    "decompose " + mat,
                                    "compose " + coords,
                                    "valuation " + mat,
                                    "multiply " + a + " " + b,
                                    "normalize " + s,
                                    "normalize --strategy front " + s,
                                    "rules -n 3 -M 8",
                                    "graded-dims -n 3 --max-m 20"};
  for (const auto& name : suite_names())
    commands.push_back("verify " + name + (name == "oracle-hom" ? " --samples 5" : " --samples 20 --max-m 10 -M 10"));

  Outcome o;
  for (const auto& cmd : commands) {
    const auto first = clitest::run_cli(cmd), second = clitest::run_cli(cmd);
    if (first.out != second.out || first.code != second.code || first.out.empty()) {
      o.pass = false;
      o.detail += "'" + cmd + "' differs; ";
    }
  }
  if (o.pass) o.detail = std::to_string(commands.size()) + " commands, each run twice";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit_s;  // 0: no runtime target
    std::function<Outcome()> run;
  };
  // 6 aggregates the violations counted while the others run, so it goes last
  const std::vector<Criterion> criteria{
      {1, "relation suite", 60, relations},
      {2, "rule compiler self-check", 0, rules},
      {3, "ordered-basis round trip", 30, [] { return sampled("roundtrip", "mismatches"); }},
      {4, "valuation identity, both orderings", 0, [] { return sampled("valuation-min", "mismatches"); }},
      {5, "ring laws and confluence", 120, ring_laws},
      {7, "graded dimensions", 5, graded},
      {8, "oracle homomorphism", 600, oracle_hom},
      {9, "linear independence", 0, independence},
      {10, "determinism", 0, determinism},
      {6, "termination measure", 0, measure},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      o.pass = false;
      o.detail += " over the " + std::to_string(static_cast<int>(c.limit_s)) + " s target";
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << " ["
         << secs << " s]";
    std::cout << line.str() << std::endl;
    all &= o.pass;
  }
  return all ? 0 : 1;
}
