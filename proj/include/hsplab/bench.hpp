#pragma once

#include <string>
#include <vector>

#include "hsplab/algorithms.hpp"

namespace hsp {

struct InstanceSpec {
  std::string group_spec;
  std::string hidden = "trivial";  // generator list, "trivial", or perm:... tokens
  std::string known = "trivial";   // find-new-collision's H1
  std::string algorithm;
  uint64_t seed = 0;
  bool dedupe = false;
  bool assert_bounds = true;
  long budget = 0;  // randomized-baseline only; 0 = default
};

struct BenchRow {
  std::string group;
  long n = 0, m = 0;
  std::string algorithm;
  std::string outcome;
  long queries = 0;
  double bound = 0;
  double bound_ratio = 0;
  double kappa = 0;  // 0 = not computed
  uint64_t seed = 0;
  double wall_ms = 0;
  bool bound_ok = true;
  bool outcome_ok = true;
  bool bound_asserted = false;
};

inline constexpr const char* kCsvHeader =
    "group,n,m,algorithm,outcome,queries,bound,bound_ratio,kappa,seed,wall_ms";

/// "trivial" (or empty), or a comma-separated list of generators: element
/// indices, or perm:(a b c)(d e) cycles for permutation groups.
Subgroup parse_hidden(const FiniteGroup& g, const std::string& text);

/// kappa = min{ n1 m / n : proper subgroup order n1 >= n/m }, from the
/// subgroup lattice; 0 when no subgroup qualifies or the lattice is
/// unavailable.
double compute_kappa(const FiniteGroup& g, long m);

/// Closed-form query bound for the named algorithm on an instance with
/// known |H| = m; fills kappa when it enters the formula. Returns 0 when
/// no bound is asserted for the algorithm.
double bound_for(const std::string& algorithm, const FiniteGroup& g, long m,
                 double* kappa);

const char* outcome_name(OutcomeKind kind);

/// Checks the report against the known hidden subgroup; `known` is the
/// find-new-collision H1 when applicable.
bool check_outcome(const std::string& algorithm, const AlgorithmReport& report,
                   const FiniteGroup& g, const Subgroup& hidden,
                   const Subgroup* known = nullptr);

/// Runs one instance end to end; wall_ms is the only nondeterministic
/// field. `report_out` may be null. The second form reuses a pre-parsed
/// group (and its caches) across many instances.
BenchRow run_instance(const InstanceSpec& spec, AlgorithmReport* report_out = nullptr);
BenchRow run_instance(const InstanceSpec& spec, const FiniteGroup& g,
                      AlgorithmReport* report_out = nullptr);

std::string csv_row(const BenchRow& row);
std::string json_row(const BenchRow& row, const AlgorithmReport* report);

/// Moduli vectors (descending prime powers) of every abelian group of
/// order 2..N, one per isomorphism class, ordered by (n, lex moduli).
std::vector<std::vector<long>> abelian_moduli_upto(long n_max);

}  // namespace hsp
