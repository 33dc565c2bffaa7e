// Acceptance gate: one line per criterion, [PASS]/[FAIL], nonzero exit on
// any failure. Each check is exhaustive over its stated family.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "hsplab/bench.hpp"

using namespace hsp;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool ok, double seconds) {
  std::printf("[%s] %2d %s (%.1fs)\n", ok ? "PASS" : "FAIL", index,
              name.c_str(), seconds);
  if (!ok) ++failures;
}

template <typename F>
void criterion(int index, const std::string& name, F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = f();
  } catch (const std::exception& e) {
    std::printf("       exception: %s\n", e.what());
  }
  auto t1 = std::chrono::steady_clock::now();
  report(index, name, ok, std::chrono::duration<double>(t1 - t0).count());
}

constexpr double kEps = 1e-9;
constexpr double kAbelianFc = 12.0 * (1.0 + 1.4142135623730951);

FiniteGroup z2k(int k) {
  return FiniteGroup::abelian_product(std::vector<long>(k, 2));
}

// 1. Exact Simon query counts, k = 2..10, every hidden s plus injective.
bool c1_simon() {
  for (int k = 2; k <= 10; ++k) {
    FiniteGroup g = z2k(k);
    const long expect = (1L << (k / 2)) + (1L << (k - k / 2));
    for (int s = 0; s < (1 << k); ++s) {
      Subgroup h = s == 0 ? trivial_subgroup(g) : generated_subgroup(g, {s});
      HidingOracle o(g, h);
      AlgorithmReport rep = simon_solve(k, o);
      if (rep.queries != expect) return false;
      if (s == 0) {
        if (rep.outcome.kind != OutcomeKind::Injective) return false;
      } else {
        if (rep.outcome.kind != OutcomeKind::Collision) return false;
        if (rep.outcome.generators != std::vector<int>{s}) return false;
      }
    }
  }
  return true;
}

// 2. Abelian pairs: coverage and the 2 sqrt n size bound, all orders <= 128.
bool c2_pairs() {
  for (const auto& moduli : abelian_moduli_upto(128)) {
    FiniteGroup g = FiniteGroup::abelian_product(moduli);
    GeneratingPair p = abelian_pair(g);
    if (!verify_pair(g, p.s1, p.s2)) return false;
    if (static_cast<double>(p.max_size()) >
        2.0 * std::sqrt(static_cast<double>(g.order())) + kEps)
      return false;
  }
  return true;
}

// 3. detect_abelian correct with queries <= 4 sqrt n, every subgroup of
// every abelian group of order <= 128.
bool c3_detect() {
  for (const auto& moduli : abelian_moduli_upto(128)) {
    FiniteGroup g = FiniteGroup::abelian_product(moduli);
    for (const auto& h : enumerate_subgroups(g)) {
      HidingOracle o(g, h);
      AlgorithmReport rep = detect_abelian(g, o);
      if (static_cast<double>(rep.queries) >
          4.0 * std::sqrt(static_cast<double>(g.order())) + kEps)
        return false;
      if (h.order() == 1) {
        if (rep.outcome.kind != OutcomeKind::Injective) return false;
      } else {
        if (rep.outcome.kind != OutcomeKind::Generators) return false;
        if (rep.outcome.generators != h.elements) return false;
      }
    }
  }
  return true;
}

// 4. find_collision correct with the abelian Thm bound on the same family.
bool c4_fc_abelian() {
  for (const auto& moduli : abelian_moduli_upto(128)) {
    FiniteGroup g = FiniteGroup::abelian_product(moduli);
    for (const auto& h : enumerate_subgroups(g)) {
      HidingOracle o(g, h);
      AlgorithmReport rep = find_collision(g, o);
      const long m2 = std::max<long>(h.order(), 2);
      double bound = kAbelianFc * std::sqrt(static_cast<double>(g.order()) / m2);
      if (static_cast<double>(rep.queries) > bound + kEps) return false;
      if (h.order() == 1) {
        if (rep.outcome.kind != OutcomeKind::Injective) return false;
      } else {
        if (rep.outcome.kind != OutcomeKind::Collision) return false;
        int d = g.compose(g.invert(rep.outcome.a), rep.outcome.b);
        if (d == FiniteGroup::kIdentity || !h.contains(d)) return false;
      }
    }
  }
  return true;
}

// 5. find_abelian_subgroup: exact recovery, iteration and query bounds.
bool c5_fas() {
  for (const auto& moduli : abelian_moduli_upto(128)) {
    FiniteGroup g = FiniteGroup::abelian_product(moduli);
    for (const auto& h : enumerate_subgroups(g)) {
      HidingOracle o(g, h);
      AlgorithmReport rep = find_abelian_subgroup(g, o);
      const long m = h.order();
      if (m == 1) {
        if (rep.outcome.kind != OutcomeKind::Injective) return false;
      } else {
        if (rep.outcome.kind != OutcomeKind::Generators) return false;
        if (generated_subgroup(g, rep.outcome.generators).elements != h.elements)
          return false;
      }
      long log2m = 0;
      while ((1L << log2m) < m) ++log2m;
      long collisions = 0;
      for (const auto& it : rep.trace) collisions += it.collision_found ? 1 : 0;
      if (collisions > log2m) return false;
      double bound = static_cast<double>(log2m + 1) * kAbelianFc *
                     std::sqrt(static_cast<double>(g.order()) / m);
      if (static_cast<double>(rep.queries) > bound + kEps) return false;
    }
  }
  return true;
}

// 6. Randomized pairs on builtin non-abelian groups of order <= 200.
bool c6_random_pairs() {
  std::vector<std::string> specs = {"S3", "S4", "S5", "A4", "A5", "Q8"};
  for (int p = 3; 2 * p <= 200; ++p) specs.push_back("D" + std::to_string(p));
  for (const auto& spec : specs) {
    FiniteGroup g = FiniteGroup::parse_spec(spec);
    const long n = g.order();
    double cap = std::ceil(std::sqrt(static_cast<double>(n) *
                                     std::log(static_cast<double>(n))));
    for (uint64_t seed = 0; seed < 10; ++seed) {
      GeneratingPair p = random_pair(g, seed);
      if (!verify_pair(g, p.s1, p.s2)) return false;
      if (static_cast<double>(p.max_size()) > cap + kEps) return false;
    }
  }
  return true;
}

// 7. Non-abelian find_collision under the kappa bound, dihedral <= 64.
bool c7_fc_dihedral() {
  for (int p = 3; 2 * p <= 64; ++p) {
    FiniteGroup g = FiniteGroup::parse_spec("D" + std::to_string(p));
    for (const auto& h : enumerate_subgroups(g)) {
      HidingOracle o(g, h);
      AlgorithmReport rep = find_collision(g, o);
      if (h.order() == 1) {
        if (rep.outcome.kind != OutcomeKind::Injective) return false;
      } else {
        if (rep.outcome.kind != OutcomeKind::Collision) return false;
        int d = g.compose(g.invert(rep.outcome.a), rep.outcome.b);
        if (d == FiniteGroup::kIdentity || !h.contains(d)) return false;
      }
      double kappa = 0;
      double bound = bound_for("find-collision", g, h.order(), &kappa);
      if (static_cast<double>(rep.queries) > bound + kEps) return false;
    }
  }
  return true;
}

// 8. Bicrossed instance: S4 with H = <(1 2 3 4)>.
bool c8_bicrossed() {
  FiniteGroup s4 = FiniteGroup::builtin(Family::Symmetric, 4);
  Subgroup h = generated_subgroup(s4, {parse_cycles(s4, "(1 2 3 4)")});
  if (h.order() != 4) return false;
  HidingOracle o(s4, h);
  AlgorithmReport rep = find_subgroup(s4, o);
  if (rep.outcome.kind != OutcomeKind::Generators) return false;
  return generated_subgroup(s4, rep.outcome.generators).elements == h.elements;
}

// 9. A4 subgroup orders are exactly {1, 2, 3, 4, 12}.
bool c9_a4_lattice() {
  FiniteGroup a4 = FiniteGroup::builtin(Family::Alternating, 4);
  std::set<long> orders;
  for (const auto& s : enumerate_subgroups(a4)) orders.insert(s.order());
  return orders == std::set<long>{1, 2, 3, 4, 12};
}

// 10. Birthday baseline on Z2^8 with |H| = 2: >= 70% of 1000 seeded trials
// find a collision within budget 2^{k/2+1} = 32.
bool c10_baseline() {
  FiniteGroup g = z2k(8);
  Subgroup h = generated_subgroup(g, {171});
  long hits = 0;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    HidingOracle o(g, h);
    AlgorithmReport rep = randomized_baseline(g, o, seed, 32);
    if (rep.outcome.kind == OutcomeKind::Collision) ++hits;
  }
  return hits >= 700;
}

}  // namespace

int main() {
  criterion(1, "Simon exact query count, k = 2..10, all periods", c1_simon);
  criterion(2, "abelian generating pairs cover with sizes <= 2*sqrt(n), n <= 128",
            c2_pairs);
  criterion(3, "detect_abelian exhaustive, queries <= 4*sqrt(n)", c3_detect);
  criterion(4, "find_collision abelian bound 12(1+sqrt(2))*sqrt(n/m)",
            c4_fc_abelian);
  criterion(5, "find_abelian_subgroup recovery, iteration and query bounds",
            c5_fas);
  criterion(6, "randomized pairs on non-abelian builtins <= 200, 10 seeds",
            c6_random_pairs);
  criterion(7, "dihedral find_collision within the kappa bound, order <= 64",
            c7_fc_dihedral);
  criterion(8, "find_subgroup on S4 with H = <(1 2 3 4)>", c8_bicrossed);
  criterion(9, "A4 subgroup orders {1,2,3,4,12}", c9_a4_lattice);
  criterion(10, "birthday baseline >= 70% over 1000 trials", c10_baseline);
  if (failures) {
    std::printf("%d criteria FAILED\n", failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
