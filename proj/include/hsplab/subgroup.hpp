#pragma once

#include <optional>
#include <vector>

#include "hsplab/group.hpp"

namespace hsp {

/// Element subset closed under composition and inversion, with a witness
/// generating set. `decomp`, when present, is a direct-sum decomposition of
/// the subgroup (abelian subgroups only) in parent coordinates.
struct Subgroup {
  FiniteGroup group;
  std::vector<int> elements;    // sorted
  std::vector<int> generators;  // minimal-found witness
  std::optional<AbelianDecomp> decomp;

  long order() const { return static_cast<long>(elements.size()); }
  bool contains(int g) const;
};

Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup full_subgroup(const FiniteGroup& g);

/// Smallest subgroup containing the seeds; empty seeds give the trivial one.
Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<int>& seeds);

/// All subgroups, sorted by (order, lexicographic element set). Cached per
/// group; throws Error{Capacity} above the enumeration cap (512).
std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g);
constexpr long kEnumerationCap = 512;

/// Some subgroup of order exactly d, built from the cyclic decomposition
/// without enumeration. Deterministic. Abelian groups only.
Subgroup subgroup_of_order(const FiniteGroup& g, long d);

struct CosetPartition {
  std::vector<int> rep_of;  // element index -> minimum index in its left coset
  long coset_count = 0;
};

CosetPartition left_cosets(const FiniteGroup& g, const Subgroup& h);
std::vector<int> left_coset_representatives(const FiniteGroup& g, const Subgroup& h);
std::vector<int> right_coset_representatives(const FiniteGroup& g, const Subgroup& h);

/// Quotient G/H on canonical left-coset representatives. `to_quotient` maps
/// a G index to a quotient index; `rep_of` maps back to the representative.
/// For trivial H the quotient shares G's representation.
struct Quotient {
  FiniteGroup group;
  std::vector<int> to_quotient;
  std::vector<int> rep_of;
};

Quotient quotient_group(const FiniteGroup& g, const Subgroup& h);

/// {xy : x in a, y in b}, sorted.
std::vector<int> set_product(const FiniteGroup& g, const std::vector<int>& a,
                             const std::vector<int>& b);

Subgroup intersection(const Subgroup& h, const Subgroup& k);

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elements);

/// Greedy minimal-found generating set for a known subgroup element set.
std::vector<int> find_generators(const FiniteGroup& g, const std::vector<int>& elements);

/// Direct-sum decomposition of an abelian group; cached per group.
AbelianDecomp abelian_decomposition(const FiniteGroup& g);

/// Decomposition of an abelian subgroup given by its (closed) element set,
/// returned in parent coordinates.
AbelianDecomp subgroup_decomposition(const FiniteGroup& g, const std::vector<int>& elements);

}  // namespace hsp
