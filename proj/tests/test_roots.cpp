#include <doctest.h>

#include <stdexcept>

#include "iwasawa/roots.hpp"

using namespace iwasawa;

TEST_CASE("variables for n=2") {
  auto v = enumerate_vars(2);
  REQUIRE(v.size() == 3);
  CHECK(v[0].tag() == "U(2,1)");
  CHECK(v[1].tag() == "W(1,2)");
  CHECK(v[2].tag() == "V(1,2)");
  CHECK(v[0].weight == 1);
  CHECK(v[1].weight == 2);
  CHECK(v[2].weight == 1);
  int light = 0;
  for (auto& x : v) light += x.weight == 1;
  CHECK(light == 2);
}

TEST_CASE("variables for n=3") {
  auto v = enumerate_vars(3);
  REQUIRE(v.size() == 8);
  std::vector<std::string> tags;
  for (auto& x : v) tags.push_back(x.tag());
  CHECK(tags == std::vector<std::string>{"U(3,1)", "U(2,1)", "U(3,2)", "W(1,2)", "W(2,3)",
                                         "V(2,3)", "V(1,3)", "V(1,2)"});
  CHECK(v[0].weight == 1);
  CHECK(v[1].weight == 2);
  CHECK(v[2].weight == 2);
  for (size_t i = 0; i < v.size(); ++i) CHECK(v[i].index == static_cast<int>(i) + 1);
}

TEST_CASE("lex lower order and GL") {
  auto v = enumerate_vars(3, LowerOrder::kLex);
  CHECK(v[0].tag() == "U(2,1)");
  CHECK(v[1].tag() == "U(3,1)");
  CHECK(v[2].tag() == "U(3,2)");
  auto g = enumerate_vars(3, LowerOrder::kHeight, GroupKind::kGL);
  REQUIRE(g.size() == 9);
  CHECK(g.back().kind == VarKind::Z);
  CHECK(g.back().weight == 3);
  CHECK(g.back().index == 9);
  CHECK_THROWS_AS(enumerate_vars(1), std::invalid_argument);
}

TEST_CASE("variable count is n^2-1") {
  for (int n = 2; n <= 7; ++n) {
    CHECK(enumerate_vars(n).size() == static_cast<size_t>(n * n - 1));
    CHECK(enumerate_vars(n).front().tag() == "U(" + std::to_string(n) + ",1)");
    CHECK(enumerate_vars(n).back().tag() == "V(1,2)");
  }
}

TEST_CASE("pairing values") {
  CHECK(pairing({1, 2}, {1, 2}) == 2);
  CHECK(pairing({2, 1}, {1, 2}) == -2);
  CHECK(pairing({1, 3}, {2, 3}) == 1);
  CHECK(pairing({1, 4}, {2, 3}) == 0);
  CHECK_THROWS(pairing({1, 2}, {1, 3}));
}

TEST_CASE("pair classification examples") {
  auto v3 = enumerate_vars(3);
  auto find = [](const std::vector<Variable>& vs, const std::string& t) {
    for (auto& v : vs)
      if (v.tag() == t) return v;
    FAIL("missing " << t);
    return vs[0];
  };
  CHECK(classify_pair(find(v3, "V(1,2)"), find(v3, "U(3,2)")).relation == Relation::kMixedCommute);
  CHECK(classify_pair(find(v3, "W(2,3)"), find(v3, "W(1,2)")).relation == Relation::kTorusCommute);
  CHECK(classify_pair(find(v3, "V(1,2)"), find(v3, "V(2,3)")).relation == Relation::kUpperSum);
  CHECK(*classify_pair(find(v3, "V(1,2)"), find(v3, "V(2,3)")).sum_root == Root{1, 3});
  CHECK(classify_pair(find(v3, "V(1,2)"), find(v3, "U(2,1)")).relation == Relation::kOpposite);

  auto v2 = enumerate_vars(2);
  auto pc = classify_pair(v2[2], v2[0]);
  CHECK(pc.relation == Relation::kOpposite);
  CHECK(pc.w_chain == std::vector<Root>{{1, 2}});
  CHECK_THROWS_AS(classify_pair(v2[0], v2[2]), std::invalid_argument);
}

TEST_CASE("four V-U cases with a root sum") {
  auto v = enumerate_vars(3);
  auto find = [&](const std::string& t) {
    for (auto& x : v)
      if (x.tag() == t) return x;
    return v[0];
  };
  CHECK(classify_pair(find("V(1,3)"), find("U(3,2)")).relation == Relation::kMixedSumUpper);
  CHECK(classify_pair(find("V(2,3)"), find("U(3,1)")).relation == Relation::kMixedSumLower);
  CHECK(classify_pair(find("V(1,3)"), find("U(2,1)")).relation == Relation::kMixedDiffUpper);
  CHECK(classify_pair(find("V(1,2)"), find("U(3,1)")).relation == Relation::kMixedDiffLower);
  CHECK(*classify_pair(find("V(1,3)"), find("U(2,1)")).sum_root == Root{2, 3});
  CHECK(classify_pair(find("V(2,3)"), find("U(2,1)")).relation == Relation::kMixedCommute);
}

TEST_CASE("classification is total for n up to 6") {
  for (auto order : {LowerOrder::kHeight, LowerOrder::kLex})
    for (int n = 2; n <= 6; ++n)
      for (auto kind : {GroupKind::kSL, GroupKind::kGL}) {
        auto v = enumerate_vars(n, order, kind);
        size_t count = 0;
        for (auto& a : v)
          for (auto& b : v)
            if (a.index > b.index) {
              CHECK_NOTHROW(classify_pair(a, b));
              ++count;
            }
        CHECK(count == v.size() * (v.size() - 1) / 2);
      }
}
