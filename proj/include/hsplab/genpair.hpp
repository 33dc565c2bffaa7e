#pragma once

#include <cstdint>
#include <vector>

#include "hsplab/subgroup.hpp"

namespace hsp {

enum class PairProvenance {
  Cyclic,
  OddPrimePower,
  Product,
  AbelianRecursive,
  Randomized,
  Coset,
  ExhaustiveMinimal,
};

/// Subsets S1, S2 with S1 S2 = G. `size_bound` records the constructive
/// bound the provenance guarantees for max(|S1|, |S2|).
struct GeneratingPair {
  FiniteGroup group;
  std::vector<int> s1, s2;  // sorted element indices
  PairProvenance provenance;
  double size_bound = 0;
  uint64_t seed = 0;    // randomized provenance only
  int attempts = 0;     // randomized provenance only
  long max_size() const {
    return static_cast<long>(std::max(s1.size(), s2.size()));
  }
};

inline constexpr uint64_t kDefaultPairSeed = 0;
inline constexpr int kPairRetryCap = 64;

/// Division-algorithm pair for Z_n: S1 = {0..m-1}, S2 = {mi : i < n/m},
/// m = ceil(sqrt(n)).
GeneratingPair cyclic_pair(long n);

/// Pair for Z_{p^k} x Z_{p^l} with p prime and k, l odd; both sides have
/// size exactly p^{(k+l)/2}.
GeneratingPair odd_prime_power_pair(long p, int k, int l);

/// Componentwise Cartesian pair over the direct product.
GeneratingPair product_pair(const GeneratingPair& a, const GeneratingPair& b);

/// Recursive construction over the prime-power cyclic decomposition;
/// max size <= 2 sqrt(n).
GeneratingPair abelian_pair(const FiniteGroup& g);

/// Las Vegas pair with both sides of size t = ceil(sqrt(n ln n)); the
/// output is always verified, only the attempt count is random.
GeneratingPair random_pair(const FiniteGroup& g, uint64_t seed = kDefaultPairSeed,
                           int retry_cap = kPairRetryCap);

/// S1 = H, S2 = right-coset representatives of H; always a valid pair.
GeneratingPair coset_pair(const FiniteGroup& g, const Subgroup& h);

/// Dispatcher: abelian construction when G is abelian, otherwise the
/// smaller of a coset pair (order nearest sqrt(n)) and a seeded random
/// pair. Not an exact minimizer.
GeneratingPair best_pair(const FiniteGroup& g);

bool verify_pair(const FiniteGroup& g, const std::vector<int>& s1,
                 const std::vector<int>& s2);

/// Branch-and-bound exact minimizer of max(|S1|, |S2|); diagnostic only,
/// capped at n <= 24.
GeneratingPair exhaustive_minimal_pair(const FiniteGroup& g);

/// Pair for a subgroup of G, with both sets in G's coordinates and the
/// product covering exactly the subgroup. Used by the collision searches.
/// Abelian ambient groups use the recursive construction; otherwise the
/// smaller of the abelian (when the subgroup is abelian) and random
/// candidates, so max size stays within ceil(sqrt(m ln m)).
GeneratingPair pair_for_subgroup(const FiniteGroup& g, const Subgroup& h,
                                 uint64_t seed = kDefaultPairSeed);

/// Abelian construction applied to an explicit decomposition, producing
/// sets in the ambient group's coordinates.
GeneratingPair pair_from_decomp(const FiniteGroup& g, const AbelianDecomp& d);

}  // namespace hsp
