#include "hsplab/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace hsp {

namespace {

constexpr double kAbelianFcConstant = 12.0 * (1.0 + 1.4142135623730951);

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

long ceil_log2(long m) {
  long k = 0;
  while ((1L << k) < m) ++k;
  return k;
}

double sqrt_nlogn(long n) {
  return std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(n)));
}

// Thm bound for one collision search; abelian and non-abelian forms.
double collision_bound(const FiniteGroup& g, long m, double* kappa_out) {
  const long n = g.order();
  const long m2 = std::max<long>(m, 2);
  if (g.abelian())
    return kAbelianFcConstant * std::sqrt(static_cast<double>(n) / m2);
  double kappa = compute_kappa(g, m2);
  if (kappa_out) *kappa_out = kappa;
  double ratio;  // kappa * n / m2, the largest window the search pays for
  bool fell_through = kappa <= 0;
  ratio = fell_through ? static_cast<double>(n)
                       : kappa * static_cast<double>(n) / m2;
  double bound = 6.0 + 3.0 * std::log2(ratio) +
                 3.0 * (2.0 + 1.4142135623730951) *
                     std::sqrt(2.0 * ratio * std::log(2.0 * ratio));
  if (m <= 1 || fell_through) bound += 2.0 * std::ceil(sqrt_nlogn(n));
  return bound;
}

}  // namespace

Subgroup parse_hidden(const FiniteGroup& g, const std::string& text) {
  std::string t = trim(text);
  if (t.empty() || t == "trivial") return trivial_subgroup(g);
  std::vector<int> gens;
  std::stringstream ss(t);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    if (token.rfind("perm:", 0) == 0) {
      gens.push_back(parse_cycles(g, token.substr(5)));
    } else {
      try {
        size_t used = 0;
        int idx = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        if (idx < 0 || idx >= g.order())
          throw Error(Errc::Parse, "generator index out of range: " + token);
        gens.push_back(idx);
      } catch (const std::invalid_argument&) {
        throw Error(Errc::Parse, "bad generator token: " + token);
      } catch (const std::out_of_range&) {
        throw Error(Errc::Parse, "bad generator token: " + token);
      }
    }
  }
  return generated_subgroup(g, gens);
}

namespace {

bool meets_trivially(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out.size() == 1;
}

// Thm hypothesis for the subgroup finder: some G0 of order n/m meeting the
// hidden subgroup only in the identity.
bool g0_hypothesis(const FiniteGroup& g, const Subgroup& hidden) {
  const long n = g.order();
  const long m = hidden.order();
  if (n % m != 0) return false;
  try {
    for (const auto& s : enumerate_subgroups(g))
      if (s.order() == n / m && meets_trivially(s.elements, hidden.elements))
        return true;
  } catch (const Error&) {
  }
  return false;
}

}  // namespace

double compute_kappa(const FiniteGroup& g, long m) {
  const long n = g.order();
  if (m < 1 || n % m != 0) return 0;
  try {
    double best = 0;
    for (const auto& s : enumerate_subgroups(g)) {
      if (s.order() >= n || s.order() * m < n) continue;
      double kappa = static_cast<double>(s.order()) * m / n;
      if (best == 0 || kappa < best) best = kappa;
    }
    return best;
  } catch (const Error&) {
    return 0;
  }
}

double bound_for(const std::string& algorithm, const FiniteGroup& g, long m,
                 double* kappa) {
  const long n = g.order();
  if (algorithm == "simon") {
    const int k = static_cast<int>(g.moduli().size());
    return static_cast<double>((1L << (k / 2)) + (1L << (k - k / 2)));
  }
  if (algorithm == "detect-abelian")
    return 4.0 * std::sqrt(static_cast<double>(n));
  if (algorithm == "detect-general") return 2.0 * std::ceil(sqrt_nlogn(n));
  if (algorithm == "find-collision" || algorithm == "find-new-collision")
    return collision_bound(g, m, kappa);
  if (algorithm == "find-abelian-subgroup" || algorithm == "find-subgroup")
    return static_cast<double>(ceil_log2(std::max<long>(m, 1)) + 1) *
           collision_bound(g, m, kappa);
  return 0;
}

const char* outcome_name(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Injective: return "injective";
    case OutcomeKind::Collision: return "collision";
    case OutcomeKind::Generators: return "generators";
    case OutcomeKind::NoNewCollision: return "no-new-collision";
    case OutcomeKind::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

bool check_outcome(const std::string& algorithm, const AlgorithmReport& report,
                   const FiniteGroup& g, const Subgroup& hidden,
                   const Subgroup* known) {
  const long m = hidden.order();
  switch (report.outcome.kind) {
    case OutcomeKind::Injective:
      return m == 1;
    case OutcomeKind::Inconclusive:
      return algorithm == "randomized-baseline";
    case OutcomeKind::NoNewCollision:
      return known && known->elements == hidden.elements;
    case OutcomeKind::Collision: {
      int a = report.outcome.a, b = report.outcome.b;
      if (a == b) return false;
      int d = g.compose(g.invert(a), b);
      if (d == FiniteGroup::kIdentity || !hidden.contains(d)) return false;
      if (known && known->contains(d)) return false;
      if (algorithm == "simon") {
        // the collision must determine s: generators carries {s} = H \ {e}
        return report.outcome.generators.size() == 1 &&
               hidden.contains(report.outcome.generators[0]);
      }
      return true;
    }
    case OutcomeKind::Generators: {
      if (algorithm == "detect-abelian" || algorithm == "detect-general")
        return report.outcome.generators == hidden.elements;
      return generated_subgroup(g, report.outcome.generators).elements ==
             hidden.elements;
    }
  }
  return false;
}

BenchRow run_instance(const InstanceSpec& spec, AlgorithmReport* report_out) {
  return run_instance(spec, FiniteGroup::parse_spec(spec.group_spec), report_out);
}

BenchRow run_instance(const InstanceSpec& spec, const FiniteGroup& g,
                      AlgorithmReport* report_out) {
  Subgroup hidden = parse_hidden(g, spec.hidden);
  Subgroup known = parse_hidden(g, spec.known);
  if (spec.algorithm == "find-new-collision")
    for (int x : known.elements)
      if (!hidden.contains(x))
        throw Error(Errc::Instance, "known subgroup is not contained in H");
  HidingOracle base(g, hidden);
  DedupOracle dedup(base);
  Oracle& oracle = spec.dedupe ? static_cast<Oracle&>(dedup) : base;

  const auto t0 = std::chrono::steady_clock::now();
  AlgorithmReport report;
  const std::string& alg = spec.algorithm;
  if (alg == "simon") {
    report = simon_solve(static_cast<int>(g.moduli().size()), oracle);
  } else if (alg == "detect-abelian") {
    report = detect_abelian(g, oracle);
  } else if (alg == "detect-general") {
    report = detect_general(g, oracle, spec.seed);
  } else if (alg == "find-collision") {
    report = find_collision(g, oracle, spec.seed);
  } else if (alg == "find-abelian-subgroup") {
    report = find_abelian_subgroup(g, oracle);
  } else if (alg == "find-new-collision") {
    report = find_new_collision(g, known, oracle, spec.seed);
  } else if (alg == "find-subgroup") {
    report = find_subgroup(g, oracle, spec.seed);
  } else if (alg == "randomized-baseline") {
    report = randomized_baseline(g, oracle, spec.seed, spec.budget);
  } else {
    throw Error(Errc::Parse, "unknown algorithm: " + alg);
  }
  const auto t1 = std::chrono::steady_clock::now();

  BenchRow row;
  row.group = g.label();
  row.n = g.order();
  row.m = hidden.order();
  row.algorithm = alg;
  row.outcome = outcome_name(report.outcome.kind);
  row.queries = spec.dedupe ? base.query_count() : report.queries;
  row.seed = spec.seed;
  row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  double kappa = 0;
  row.bound = alg == "randomized-baseline" ? report.bound
                                           : bound_for(alg, g, row.m, &kappa);
  row.kappa = kappa;
  if (row.bound > 0)
    row.bound_ratio = static_cast<double>(row.queries) / row.bound;

  bool assertable = row.bound > 0;
  bool outcome_required = true;
  if (alg == "find-subgroup" || alg == "find-new-collision") {
    // Thm guarantees only apply when a complement G0 exists in the lattice.
    bool hyp = g0_hypothesis(g, hidden);
    assertable = assertable && hyp;
    outcome_required = hyp;
  }
  if ((alg == "find-collision" || alg == "find-new-collision" ||
       alg == "find-subgroup") &&
      !g.abelian())
    assertable = assertable && kappa > 0;
  row.bound_asserted = spec.assert_bounds && assertable;
  row.bound_ok = !row.bound_asserted ||
                 static_cast<double>(row.queries) <= row.bound + 1e-9;
  row.outcome_ok = !outcome_required ||
                   check_outcome(alg, report, g, hidden,
                                 alg == "find-new-collision" ? &known : nullptr);
  if (report_out) *report_out = std::move(report);
  return row;
}

namespace {

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string csv_row(const BenchRow& row) {
  std::string out;
  out += row.group + "," + std::to_string(row.n) + "," + std::to_string(row.m);
  out += "," + row.algorithm + "," + row.outcome + "," + std::to_string(row.queries);
  out += "," + fmt(row.bound, 4) + "," + fmt(row.bound_ratio, 4);
  out += "," + (row.kappa > 0 ? fmt(row.kappa, 4) : std::string());
  out += "," + std::to_string(row.seed) + "," + fmt(row.wall_ms, 3);
  return out;
}

std::string json_row(const BenchRow& row, const AlgorithmReport* report) {
  nlohmann::json j;
  j["schema"] = 1;
  j["group"] = row.group;
  j["n"] = row.n;
  j["m"] = row.m;
  j["algorithm"] = row.algorithm;
  j["outcome"] = row.outcome;
  j["queries"] = row.queries;
  j["bound"] = row.bound;
  j["bound_ratio"] = row.bound_ratio;
  if (row.kappa > 0)
    j["kappa"] = row.kappa;
  else
    j["kappa"] = nullptr;
  j["seed"] = row.seed;
  j["wall_ms"] = row.wall_ms;
  j["bound_ok"] = row.bound_ok;
  j["outcome_ok"] = row.outcome_ok;
  if (report) {
    if (report->outcome.kind == OutcomeKind::Collision)
      j["collision"] = {report->outcome.a, report->outcome.b};
    if (!report->outcome.generators.empty())
      j["generators"] = report->outcome.generators;
    if (row.algorithm == "find-subgroup")
      j["hypothesis_certified"] = report->hypothesis_certified;
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& it : report->trace) {
      nlohmann::json t;
      t["k"] = it.k;
      t["g1_order"] = it.g1_order;
      t["s1"] = it.s1_size;
      t["s2"] = it.s2_size;
      t["g"] = it.g;
      t["queries"] = it.queries;
      t["collision"] = it.collision_found;
      if (it.h1_order >= 0) t["h1_order"] = it.h1_order;
      trace.push_back(t);
    }
    j["trace"] = trace;
  }
  return j.dump();
}

namespace {

void partitions_of(int e, int max_part, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (e == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(e, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_of(e - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<long>> abelian_moduli_upto(long n_max) {
  std::vector<std::vector<long>> all;
  for (long n = 2; n <= n_max; ++n) {
    // factor n, then choose a partition of each prime's exponent
    std::vector<std::pair<long, int>> primes;
    long rest = n;
    for (long p = 2; rest > 1; ++p) {
      if (p * p > rest) p = rest;
      if (rest % p != 0) continue;
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      primes.push_back({p, e});
    }
    std::vector<std::vector<long>> combos{{}};
    for (const auto& [p, e] : primes) {
      std::vector<std::vector<int>> parts;
      std::vector<int> cur;
      partitions_of(e, e, cur, parts);
      std::vector<std::vector<long>> next;
      for (const auto& base : combos)
        for (const auto& part : parts) {
          std::vector<long> moduli = base;
          for (int x : part) {
            long q = 1;
            for (int i = 0; i < x; ++i) q *= p;
            moduli.push_back(q);
          }
          next.push_back(std::move(moduli));
        }
      combos = std::move(next);
    }
    for (auto& moduli : combos)
      std::sort(moduli.begin(), moduli.end(), std::greater<long>());
    std::sort(combos.begin(), combos.end());
    for (auto& moduli : combos) all.push_back(std::move(moduli));
  }
  return all;
}

}  // namespace hsp
