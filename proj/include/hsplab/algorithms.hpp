#pragma once

#include <cstdint>
#include <vector>

#include "hsplab/genpair.hpp"
#include "hsplab/oracle.hpp"

namespace hsp {

enum class OutcomeKind {
  Injective,
  Collision,
  Generators,
  NoNewCollision,
  Inconclusive,
};

struct Outcome {
  OutcomeKind kind = OutcomeKind::Injective;
  int a = -1, b = -1;           // collision witnesses, a < b
  std::vector<int> generators;  // sorted, Generators outcome only
};

/// One window iteration of the collision searches (or one outer iteration
/// of the subgroup finders, where h1_order is set instead of k).
struct IterationTrace {
  int k = 0;
  long g1_order = 0;  // 0 when no subgroup fit the window
  long s1_size = 0, s2_size = 0;
  int g = -1;  // shift element; -1 when the iteration issued no queries
  long queries = 0;
  bool collision_found = false;
  long h1_order = -1;  // outer-loop iterations only
};

struct AlgorithmReport {
  Outcome outcome;
  long queries = 0;
  /// Closed-form query bound when the algorithm can state one without
  /// knowing |H| (Simon, detectors, baseline budget); 0 otherwise — the
  /// harness computes instance bounds from the known hidden subgroup.
  double bound = 0;
  std::vector<IterationTrace> trace;
  int ell = -1;  // initial window exponent, collision searches only
  int k0 = 0;    // stopping exponent
  uint64_t seed = 0;
  bool used_seed = false;
  bool hypothesis_certified = true;  // find_subgroup only
};

/// Deterministic Simon solver over Z_2^k: queries the two axis-aligned
/// half-cubes, exactly 2^floor(k/2) + 2^ceil(k/2) queries (the shared
/// all-zero point is queried twice). Collision outcome carries the hidden
/// period s in generators.
AlgorithmReport simon_solve(int k, Oracle& oracle);

/// One-shot abelian detector: queries x^-1 for x in S1 and all of S2 for
/// the recursive pair; outputs every element of H. <= 4 sqrt(n) queries.
AlgorithmReport detect_abelian(const FiniteGroup& g, Oracle& oracle);

/// Same scheme over any group with a randomized pair;
/// <= 2 ceil(sqrt(n ln n)) queries.
AlgorithmReport detect_general(const FiniteGroup& g, Oracle& oracle,
                               uint64_t seed = kDefaultPairSeed);

/// Window search over subgroup orders; returns the first collision under
/// the deterministic scan order, or injective.
AlgorithmReport find_collision(const FiniteGroup& g, Oracle& oracle,
                               uint64_t seed = kDefaultPairSeed);

/// Quotient-oracle reduction: grows <S> by one new element of H per
/// collision; at most ceil(log2 m) collision iterations.
AlgorithmReport find_abelian_subgroup(const FiniteGroup& g, Oracle& oracle);

/// Window search constrained to G1 with trivial intersection against the
/// known subgroup h1; any returned collision (a,b) has a^-1 b outside h1.
AlgorithmReport find_new_collision(const FiniteGroup& g, const Subgroup& h1,
                                   Oracle& oracle,
                                   uint64_t seed = kDefaultPairSeed);

/// Repeats find_new_collision, accumulating generators until no new
/// collision. `hypothesis_certified` reports whether the subgroup lattice
/// contains G0 of order n/|<S>| meeting <S> trivially.
AlgorithmReport find_subgroup(const FiniteGroup& g, Oracle& oracle,
                              uint64_t seed = kDefaultPairSeed);

/// Birthday-paradox baseline: iid uniform samples until a collision or the
/// budget runs out (budget <= 0 selects ceil(2 sqrt(n))). Inconclusive on
/// exhaustion.
AlgorithmReport randomized_baseline(const FiniteGroup& g, Oracle& oracle,
                                    uint64_t seed, long budget = 0);

}  // namespace hsp
