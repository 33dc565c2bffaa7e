#include <set>

#include "doctest.h"
#include "hsplab/oracle.hpp"
#include "json.hpp"

using namespace hsp;

TEST_CASE("canonical labels on Z4") {
  FiniteGroup z4 = FiniteGroup::abelian_product({4});
  HidingOracle o(z4, generated_subgroup(z4, {2}));
  CHECK(o.query(0) == 0);
  CHECK(o.query(2) == 0);
  CHECK(o.query(1) == 1);
  CHECK(o.query(3) == 1);
  CHECK(o.query_count() == 4);
  CHECK(o.transcript().size() == 4);
  CHECK(o.transcript()[1].element == 2);
  CHECK(o.transcript()[1].label == 0);
}

TEST_CASE("trivial subgroup gives the injective oracle") {
  FiniteGroup z8 = FiniteGroup::abelian_product({8});
  HidingOracle o(z8, trivial_subgroup(z8));
  for (int i = 0; i < 8; ++i) CHECK(o.query(i) == i);
}

TEST_CASE("Z8 mod <4> has four distinct labels") {
  FiniteGroup z8 = FiniteGroup::abelian_product({8});
  HidingOracle o(z8, generated_subgroup(z8, {4}));
  std::set<int> labels;
  for (int i = 0; i < 8; ++i) labels.insert(o.query(i));
  CHECK(labels == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("repeat queries are re-counted; reset clears") {
  FiniteGroup z4 = FiniteGroup::abelian_product({4});
  HidingOracle o(z4, trivial_subgroup(z4));
  o.query(1);
  o.query(1);
  o.query(1);
  CHECK(o.query_count() == 3);
  o.reset();
  CHECK(o.query_count() == 0);
  CHECK(o.transcript().empty());
}

TEST_CASE("foreign elements and non-subgroups are rejected") {
  FiniteGroup z4 = FiniteGroup::abelian_product({4});
  HidingOracle o(z4, trivial_subgroup(z4));
  CHECK_THROWS_AS(o.query(4), Error);
  CHECK_THROWS_AS(o.query(-1), Error);

  Subgroup bogus = trivial_subgroup(z4);
  bogus.elements = {0, 1};  // not closed
  CHECK_THROWS_AS(HidingOracle(z4, bogus), Error);
}

TEST_CASE("hiding property holds exhaustively") {
  for (const char* spec : {"Z12", "Z2xZ2xZ2", "D6", "Q8", "S4"}) {
    FiniteGroup g = FiniteGroup::parse_spec(spec);
    for (const auto& h : enumerate_subgroups(g)) {
      HidingOracle o(g, h);
      std::vector<int> label(g.order());
      for (int x = 0; x < g.order(); ++x) label[x] = o.query(x);
      for (int x = 0; x < g.order(); ++x)
        for (int y = 0; y < g.order(); ++y) {
          bool same = label[x] == label[y];
          bool related = h.contains(g.compose(g.invert(x), y));
          CHECK(same == related);
        }
    }
  }
}

TEST_CASE("quotient oracle costs one base query and hides H/H1") {
  FiniteGroup z8 = FiniteGroup::abelian_product({8});
  Subgroup h = generated_subgroup(z8, {2});
  HidingOracle base(z8, h);
  Subgroup h1 = generated_subgroup(z8, {4});
  QuotientOracle q(base, h1);
  CHECK(q.group().order() == 4);
  long before = base.query_count();
  q.query(0);
  CHECK(base.query_count() == before + 1);
  // f1 hides H/H1, which has order 2 -> exactly 2 distinct labels
  std::set<int> labels;
  for (int i = 0; i < 4; ++i) labels.insert(q.query(i));
  CHECK(labels.size() == 2);
}

TEST_CASE("trivial quotient behaves identically to the base") {
  FiniteGroup z6 = FiniteGroup::abelian_product({6});
  Subgroup h = generated_subgroup(z6, {3});
  HidingOracle base(z6, h);
  QuotientOracle q(base, trivial_subgroup(z6));
  CHECK(q.group().order() == 6);
  for (int i = 0; i < 6; ++i) {
    int expect = HidingOracle(z6, h).query(i);
    CHECK(q.query(i) == expect);
  }
}

TEST_CASE("dedup layer never repeats a base query") {
  FiniteGroup z6 = FiniteGroup::abelian_product({6});
  HidingOracle base(z6, generated_subgroup(z6, {3}));
  DedupOracle d(base);
  d.query(2);
  d.query(2);
  d.query(2);
  d.query(5);
  CHECK(d.query_count() == 4);     // wrapper logs every call
  CHECK(base.query_count() == 2);  // base sees distinct elements only
  d.reset();
  d.query(2);
  CHECK(base.query_count() == 3);
}

TEST_CASE("transcript exports as JSON") {
  FiniteGroup z4 = FiniteGroup::abelian_product({4});
  HidingOracle o(z4, generated_subgroup(z4, {2}));
  o.query(3);
  o.query(2);
  auto arr = nlohmann::json::parse(o.transcript_json());
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 2);
  CHECK(arr[0]["element"] == 3);
  CHECK(arr[0]["label"] == 1);
  CHECK(arr[1]["element"] == 2);
  CHECK(arr[1]["label"] == 0);
}
