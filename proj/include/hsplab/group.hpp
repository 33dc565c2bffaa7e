#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsplab/errors.hpp"

namespace hsp {

enum class GroupKind { AbelianProduct, CayleyTable, Permutation };
enum class Family { Dihedral, Symmetric, Alternating, Quaternion };

/// A direct-sum decomposition of an abelian group (or abelian subgroup):
/// the group is the internal direct product of the cyclic subgroups
/// generated by `generators`, with `orders[i]` the order of generators[i].
struct AbelianDecomp {
  std::vector<int> generators;
  std::vector<long> orders;
};

namespace detail {

struct SubgroupSet {
  std::vector<std::vector<int>> elements;    // sorted element index sets
  std::vector<std::vector<int>> generators;  // witness generators per subgroup
};

struct DivisorPair {
  std::vector<int> subgroup;  // sorted elements of the chosen subgroup of order d
  std::vector<int> s1, s2;    // generating pair for it, in parent coordinates
};

// Per-group lazily populated caches. Single-writer under `mu`; consumers
// copy or hold the group alive while reading.
struct GroupCache {
  std::mutex mu;
  std::vector<int> dense;    // n*n composition table, n <= kDenseCap
  std::vector<int> inverse;  // inverse index per element
  std::optional<SubgroupSet> subgroups;
  std::optional<AbelianDecomp> decomp;
  std::map<long, DivisorPair> divisor_pairs;
  std::map<std::pair<std::vector<int>, unsigned long long>,
           std::pair<std::vector<int>, std::vector<int>>>
      subgroup_pairs;
};

}  // namespace detail

class FiniteGroup;

namespace detail {
// Quotient/table construction paths build tables that are groups by
// construction; this skips re-validation.
FiniteGroup make_cayley_unchecked(std::vector<std::vector<int>> table,
                                  bool abelian, std::string label);
}  // namespace detail

/// Immutable finite group with elements addressed by canonical indices
/// 0..n-1. The identity is always index 0.
class FiniteGroup {
 public:
  static constexpr int kIdentity = 0;
  static constexpr long kCatalogCap = 5040;  // builtin permutation families
  static constexpr long kProductCap = 2048;  // materialized product tables
  static constexpr long kDenseCap = 512;     // lazy dense composition table

  /// Direct product of cyclic groups Z_{m0} x Z_{m1} x ...; element index i
  /// encodes the mixed-radix digits with the first modulus most significant.
  static FiniteGroup abelian_product(const std::vector<long>& moduli);

  /// Group from an explicit n x n composition table of element indices.
  /// Validates the group axioms and relabels so the identity is index 0.
  static FiniteGroup from_cayley(const std::vector<std::vector<int>>& table);
  static FiniteGroup from_cayley_file(const std::string& path);

  static FiniteGroup builtin(Family family, int parameter);

  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

  /// Group-spec grammar: Z<n>, D<n>, S<n>, A<n>, Q8, x-joined products
  /// (e.g. Z4xZ2xZ2), or cayley:<path>.
  static FiniteGroup parse_spec(const std::string& spec);

  long order() const;
  GroupKind kind() const;
  bool abelian() const;
  const std::string& label() const;

  int compose(int a, int b) const;
  int invert(int a) const;
  int power(int g, long e) const;
  long element_order(int g) const;

  const std::vector<long>& moduli() const;  // AbelianProduct kind only
  std::vector<long> decode(int index) const;
  int encode(const std::vector<long>& digits) const;

  int degree() const;  // Permutation kind only
  const std::vector<uint8_t>& permutation(int index) const;
  int index_of(const std::vector<uint8_t>& perm) const;

  /// Dense composition table (row-major, n*n), built lazily for
  /// n <= kDenseCap; nullptr for larger groups.
  const int* dense_table() const;

  bool same(const FiniteGroup& other) const { return impl_ == other.impl_; }

  detail::GroupCache& cache() const;

  struct Impl;

 private:
  explicit FiniteGroup(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  friend FiniteGroup detail::make_cayley_unchecked(std::vector<std::vector<int>>,
                                                   bool, std::string);
  std::shared_ptr<Impl> impl_;
};

/// Exhaustive axiom check for n <= 64, sampled (>= 10^4 triples) above.
/// Throws Error{NotAGroup} naming the failing axiom and a witness.
void validate_group_axioms(const FiniteGroup& g);

/// Parse cycle notation like "(1 2 3 4)(5 6)" (1-based) into an element
/// index of a permutation-kind group.
int parse_cycles(const FiniteGroup& g, const std::string& text);

}  // namespace hsp
