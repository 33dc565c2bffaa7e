#include <cmath>

#include "doctest.h"
#include "hsplab/genpair.hpp"

using namespace hsp;

namespace {

void check_covers(const GeneratingPair& p) {
  CHECK(verify_pair(p.group, p.s1, p.s2));
  CHECK(static_cast<double>(p.max_size()) <= p.size_bound + 1e-9);
}

long ceil_sqrt(long n) {
  long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r * r < n) ++r;
  return r;
}

}  // namespace

TEST_CASE("cyclic pairs cover and meet the division-algorithm sizes") {
  for (long n = 2; n <= 60; ++n) {
    GeneratingPair p = cyclic_pair(n);
    CHECK(p.provenance == PairProvenance::Cyclic);
    CHECK(static_cast<long>(p.s1.size()) == ceil_sqrt(n));
    check_covers(p);
  }
  CHECK_THROWS_AS(cyclic_pair(1), Error);
}

TEST_CASE("odd prime power pairs are balanced") {
  for (auto [p, k, l] : {std::tuple{3L, 3, 1}, {2L, 1, 1}, {5L, 1, 1},
                         {2L, 3, 3}, {3L, 1, 1}, {2L, 5, 1}}) {
    GeneratingPair gp = odd_prime_power_pair(p, k, l);
    long q = static_cast<long>(std::llround(std::pow(double(p), (k + l) / 2)));
    CHECK(static_cast<long>(gp.s1.size()) == q);
    CHECK(static_cast<long>(gp.s2.size()) == q);
    check_covers(gp);
  }
  CHECK_THROWS_AS(odd_prime_power_pair(4, 1, 1), Error);  // not prime
  CHECK_THROWS_AS(odd_prime_power_pair(3, 2, 1), Error);  // even exponent
}

TEST_CASE("product pairs multiply") {
  GeneratingPair a = cyclic_pair(6);
  GeneratingPair b = cyclic_pair(10);
  GeneratingPair p = product_pair(a, b);
  CHECK(p.group.order() == 60);
  CHECK(p.s1.size() == a.s1.size() * b.s1.size());
  check_covers(p);
}

TEST_CASE("abelian recursive pairs stay within 2 sqrt n") {
  for (const char* spec : {"Z2", "Z7", "Z12", "Z2xZ2xZ2xZ2", "Z9xZ3", "Z8xZ4",
                           "Z27", "Z36", "Z4xZ50", "Z30xZ2"}) {
    FiniteGroup g = FiniteGroup::parse_spec(spec);
    GeneratingPair p = abelian_pair(g);
    CHECK(p.provenance == PairProvenance::AbelianRecursive);
    CHECK(p.size_bound ==
          doctest::Approx(2.0 * std::sqrt(static_cast<double>(g.order()))));
    check_covers(p);
  }
  CHECK_THROWS_AS(abelian_pair(FiniteGroup::builtin(Family::Symmetric, 3)), Error);
}

TEST_CASE("random pairs verify, are sized, and are seed-deterministic") {
  for (const char* spec : {"S4", "D8", "Q8", "Z24", "A4"}) {
    FiniteGroup g = FiniteGroup::parse_spec(spec);
    const long n = g.order();
    long t = std::min<long>(
        n, static_cast<long>(std::ceil(std::sqrt(
               static_cast<double>(n) * std::log(static_cast<double>(n))))));
    GeneratingPair p = random_pair(g, 3);
    CHECK(static_cast<long>(p.s1.size()) == t);
    CHECK(static_cast<long>(p.s2.size()) == t);
    CHECK(p.attempts >= 1);
    check_covers(p);
    GeneratingPair q = random_pair(g, 3);
    CHECK(p.s1 == q.s1);
    CHECK(p.s2 == q.s2);
    GeneratingPair r = random_pair(g, 4);
    CHECK(verify_pair(g, r.s1, r.s2));
  }
}

TEST_CASE("coset pairs") {
  FiniteGroup z12 = FiniteGroup::abelian_product({12});
  Subgroup h = generated_subgroup(z12, {6});
  GeneratingPair p = coset_pair(z12, h);
  CHECK(p.s1 == h.elements);
  CHECK(p.s2.size() == 6);
  check_covers(p);

  FiniteGroup s4 = FiniteGroup::builtin(Family::Symmetric, 4);
  Subgroup a4 = generated_subgroup(
      s4, {parse_cycles(s4, "(1 2 3)"), parse_cycles(s4, "(1 2)(3 4)")});
  CHECK(a4.order() == 12);
  check_covers(coset_pair(s4, a4));
}

TEST_CASE("best pair dispatches sensibly") {
  CHECK(best_pair(FiniteGroup::parse_spec("Z16")).provenance ==
        PairProvenance::AbelianRecursive);
  GeneratingPair p = best_pair(FiniteGroup::parse_spec("S4"));
  check_covers(p);
  GeneratingPair t = best_pair(FiniteGroup::from_cayley({{0}}));
  CHECK(t.max_size() == 1);
}

TEST_CASE("verify_pair rejects non-covering sets") {
  FiniteGroup z6 = FiniteGroup::abelian_product({6});
  CHECK(verify_pair(z6, {0, 1, 2}, {0, 3}));
  CHECK_FALSE(verify_pair(z6, {0, 2, 4}, {0, 2}));
}

TEST_CASE("exhaustive minimal pairs") {
  for (const char* spec : {"Z4", "Z5", "Z6", "Z12", "S3", "D4", "Q8"}) {
    FiniteGroup g = FiniteGroup::parse_spec(spec);
    GeneratingPair p = exhaustive_minimal_pair(g);
    CHECK(verify_pair(g, p.s1, p.s2));
    CHECK(p.max_size() >= ceil_sqrt(g.order()));
    CHECK(p.max_size() <= best_pair(g).max_size());
  }
  CHECK_THROWS_AS(exhaustive_minimal_pair(FiniteGroup::parse_spec("Z30")), Error);
}

TEST_CASE("pairs for subgroups cover exactly the subgroup") {
  FiniteGroup z24 = FiniteGroup::abelian_product({24});
  for (long d : {1L, 2L, 4L, 8L, 12L}) {
    Subgroup h = subgroup_of_order(z24, d);
    GeneratingPair p = pair_for_subgroup(z24, h);
    CHECK(set_product(z24, p.s1, p.s2) == h.elements);
    if (d >= 2)
      CHECK(static_cast<double>(p.max_size()) <=
            2.0 * std::sqrt(static_cast<double>(d)) + 1e-9);
  }

  FiniteGroup s4 = FiniteGroup::builtin(Family::Symmetric, 4);
  for (const auto& h : enumerate_subgroups(s4)) {
    GeneratingPair p = pair_for_subgroup(s4, h);
    CHECK(set_product(s4, p.s1, p.s2) == h.elements);
    if (h.order() >= 2) {
      double cap = std::ceil(std::sqrt(static_cast<double>(h.order()) *
                                       std::log(static_cast<double>(h.order()))));
      CHECK(static_cast<double>(p.max_size()) <= cap + 1e-9);
    }
  }
}
