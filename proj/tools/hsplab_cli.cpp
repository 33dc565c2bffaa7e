#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hsplab/bench.hpp"

namespace {

using namespace hsp;

constexpr int kExitBound = 2;
constexpr int kExitOutcome = 3;
constexpr int kExitParse = 4;
constexpr int kExitCapacity = 5;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::Capacity:
      return kExitCapacity;
    case Errc::Parse:
    case Errc::InvalidSpec:
    case Errc::NotAGroup:
    case Errc::Domain:
    case Errc::InvalidDivisor:
    case Errc::Normality:
    case Errc::Unsupported:
    case Errc::Instance:
      return kExitParse;
    default:
      return 1;
  }
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw Error(Errc::Parse, "cannot open output file: " + path);
  return file;
}

bool algorithm_applies(const std::string& alg, const FiniteGroup& g) {
  if (alg == "detect-abelian" || alg == "find-abelian-subgroup")
    return g.abelian();
  if (alg == "simon") {
    if (g.kind() != GroupKind::AbelianProduct) return false;
    for (long m : g.moduli())
      if (m != 2) return false;
    return true;
  }
  return true;
}

std::string hidden_spec_for(const Subgroup& h) {
  if (h.order() == 1) return "trivial";
  std::string out;
  for (size_t i = 0; i < h.generators.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(h.generators[i]);
  }
  return out;
}

std::vector<std::string> family_groups(const std::string& family, long max_n,
                                       const std::vector<std::string>& groups) {
  if (family == "all-abelian") {
    if (max_n > 256)
      throw Error(Errc::Capacity, "all-abelian sweeps are capped at N <= 256");
    std::vector<std::string> out;
    for (const auto& moduli : abelian_moduli_upto(max_n)) {
      std::string spec;
      for (size_t i = 0; i < moduli.size(); ++i) {
        if (i) spec += "x";
        spec += "Z" + std::to_string(moduli[i]);
      }
      out.push_back(spec);
    }
    return out;
  }
  if (family == "list" || family.empty()) return groups;
  throw Error(Errc::Parse, "unknown family: " + family);
}

int cmd_run(const InstanceSpec& spec, const std::string& format,
            const std::string& out_path) {
  AlgorithmReport report;
  BenchRow row = run_instance(spec, &report);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  if (format == "csv")
    out << kCsvHeader << "\n" << csv_row(row) << "\n";
  else
    out << json_row(row, &report) << "\n";
  if (!row.outcome_ok) return kExitOutcome;
  if (!row.bound_ok) return kExitBound;
  return 0;
}

int cmd_sweep(const std::string& family, long max_n,
              const std::vector<std::string>& groups,
              const std::vector<std::string>& algs, uint64_t seed,
              bool assert_bounds, bool list_orders, const std::string& out_path) {
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  std::vector<std::string> specs = family_groups(family, max_n, groups);
  if (list_orders) {
    for (const auto& spec : specs) {
      FiniteGroup g = FiniteGroup::parse_spec(spec);
      std::set<long> orders;
      for (const auto& s : enumerate_subgroups(g)) orders.insert(s.order());
      out << spec;
      for (long o : orders) out << "," << o;
      out << "\n";
    }
    return 0;
  }
  out << kCsvHeader << "\n";
  double max_ratio = 0;
  long failures = 0, capacity_skips = 0;
  bool bound_failure = false, outcome_failure = false;
  for (const auto& gspec : specs) {
    FiniteGroup g = FiniteGroup::parse_spec(gspec);
    std::vector<Subgroup> subs;
    try {
      subs = enumerate_subgroups(g);
    } catch (const Error& e) {
      if (e.code() != Errc::Capacity) throw;
      ++capacity_skips;
      continue;
    }
    for (const auto& h : subs) {
      for (const auto& alg : algs) {
        if (!algorithm_applies(alg, g)) continue;
        InstanceSpec spec;
        spec.group_spec = gspec;
        spec.hidden = hidden_spec_for(h);
        spec.algorithm = alg;
        spec.seed = seed;
        spec.assert_bounds = assert_bounds;
        try {
          BenchRow row = run_instance(spec, g);
          out << csv_row(row) << "\n";
          max_ratio = std::max(max_ratio, row.bound_ratio);
          if (!row.bound_ok) {
            ++failures;
            bound_failure = true;
            out << "# FAIL bound " << gspec << " hidden=" << spec.hidden
                << " alg=" << alg << "\n";
          }
          if (!row.outcome_ok) {
            ++failures;
            outcome_failure = true;
            out << "# FAIL outcome " << gspec << " hidden=" << spec.hidden
                << " alg=" << alg << "\n";
          }
        } catch (const Error& e) {
          if (e.code() != Errc::Capacity) throw;
          ++capacity_skips;
        }
      }
    }
  }
  char summary[128];
  std::snprintf(summary, sizeof(summary),
                "# max_bound_ratio=%.4f failures=%ld capacity_skips=%ld",
                max_ratio, failures, capacity_skips);
  out << summary << "\n";
  if (outcome_failure) return kExitOutcome;
  if (bound_failure) return kExitBound;
  return 0;
}

int cmd_verify_pairs(const std::string& family, long max_n,
                     const std::vector<std::string>& groups,
                     const std::string& construction, int seeds,
                     const std::string& out_path) {
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  std::vector<std::string> specs = family_groups(family, max_n, groups);
  long checked = 0;
  for (const auto& gspec : specs) {
    FiniteGroup g = FiniteGroup::parse_spec(gspec);
    const long n = g.order();
    if (n < 2) continue;
    std::vector<GeneratingPair> pairs;
    if (construction == "abelian-recursive") {
      if (!g.abelian()) continue;
      pairs.push_back(abelian_pair(g));
    } else if (construction == "randomized") {
      for (int s = 0; s < seeds; ++s) pairs.push_back(random_pair(g, s));
    } else if (construction == "best") {
      pairs.push_back(best_pair(g));
    } else {
      throw Error(Errc::Parse, "unknown construction: " + construction);
    }
    for (const auto& p : pairs) {
      ++checked;
      bool covers = verify_pair(g, p.s1, p.s2);
      bool sized = static_cast<double>(p.max_size()) <= p.size_bound + 1e-9;
      if (!covers || !sized) {
        out << "FAIL " << gspec << " construction=" << construction
            << " seed=" << p.seed << " max_size=" << p.max_size()
            << " bound=" << p.size_bound << (covers ? "" : " (no coverage)")
            << "\n";
        return kExitBound;
      }
    }
  }
  out << "OK " << checked << " pairs verified (" << construction << ")\n";
  return 0;
}

int cmd_plotdata(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) throw Error(Errc::Parse, "cannot open sweep CSV: " + in_path);
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw Error(Errc::Parse, "unrecognized CSV header in " + in_path);
  struct Agg {
    double queries = 0, bound = 0;
    long count = 0;
  };
  std::map<long, Agg> by_ratio;  // key: n/m
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) cols.push_back(col);
    if (cols.size() < 11) throw Error(Errc::Parse, "short CSV row: " + line);
    long n = std::stol(cols[1]);
    long m = std::stol(cols[2]);
    if (m == 0 || n % m != 0) continue;
    Agg& a = by_ratio[n / m];
    a.queries += std::stod(cols[5]);
    a.bound += std::stod(cols[6]);
    ++a.count;
  }
  out << "n_over_m,mean_queries,mean_bound\n";
  char buf[64];
  for (const auto& [ratio, a] : by_ratio) {
    std::snprintf(buf, sizeof(buf), "%ld,%.4f,%.4f", ratio,
                  a.queries / a.count, a.bound / a.count);
    out << buf << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic hidden-subgroup laboratory"};
  app.require_subcommand(1);

  InstanceSpec spec;
  std::string format = "json", out_path;
  auto* run = app.add_subcommand("run", "Run one algorithm on one instance");
  run->add_option("--group", spec.group_spec, "Group spec (Z8, D6, S4, Z4xZ2, cayley:<path>)")
      ->required();
  run->add_option("--hidden", spec.hidden, "Hidden subgroup generators");
  run->add_option("--known", spec.known, "Known subgroup H1 (find-new-collision)");
  run->add_option("--alg", spec.algorithm, "Algorithm name")->required();
  run->add_option("--seed", spec.seed, "RNG seed");
  run->add_option("--budget", spec.budget, "Query budget (randomized-baseline)");
  run->add_flag("--assert-bounds,!--no-assert-bounds", spec.assert_bounds,
                "Fail on bound violations");
  run->add_flag("--dedupe", spec.dedupe, "Memoize repeated oracle queries");
  run->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--out", out_path, "Output file (default stdout)");

  std::string family = "list";
  long max_n = 32;
  std::vector<std::string> groups, algs{"find-collision"};
  uint64_t sweep_seed = 0;
  bool sweep_assert = true, list_orders = false;
  auto* sweep = app.add_subcommand("sweep", "Exhaustive family sweep");
  sweep->add_option("--family", family, "all-abelian or list");
  sweep->add_option("--max-n", max_n, "Order cap for all-abelian (<= 256)");
  sweep->add_option("--groups", groups, "Group specs for --family list");
  sweep->add_option("--algs", algs, "Algorithms to run");
  sweep->add_option("--seed", sweep_seed, "RNG seed");
  sweep->add_flag("--assert-bounds,!--no-assert-bounds", sweep_assert,
                  "Fail on bound violations");
  sweep->add_flag("--list-subgroup-orders", list_orders,
                  "Print subgroup orders per group instead of running");
  sweep->add_option("--out", out_path, "Output file (default stdout)");

  std::string construction = "abelian-recursive";
  int seeds = 10;
  auto* verify = app.add_subcommand("verify-pairs", "Verify generating pairs");
  verify->add_option("--family", family, "all-abelian or list");
  verify->add_option("--max-n", max_n, "Order cap for all-abelian");
  verify->add_option("--groups", groups, "Group specs for --family list");
  verify->add_option("--construction", construction,
                     "abelian-recursive, randomized, or best");
  verify->add_option("--seeds", seeds, "Seed count for randomized");
  verify->add_option("--out", out_path, "Output file (default stdout)");

  std::string in_path;
  auto* plot = app.add_subcommand("plotdata", "Aggregate a sweep CSV");
  plot->add_option("--in", in_path, "Sweep CSV path")->required();
  plot->add_option("--out", out_path, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(spec, format, out_path);
    if (sweep->parsed())
      return cmd_sweep(family, max_n, groups, algs, sweep_seed, sweep_assert,
                       list_orders, out_path);
    if (verify->parsed())
      return cmd_verify_pairs(family, max_n, groups, construction, seeds,
                              out_path);
    if (plot->parsed()) return cmd_plotdata(in_path, out_path);
  } catch (const hsp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
