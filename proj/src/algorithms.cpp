#include "hsplab/algorithms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>

namespace hsp {

namespace {

// d lies in [n/2^{k+1}, n/(floor(2^k)+1)], evaluated in exact integers.
bool window_contains(long d, int k, long n) {
  const long pow_hi = 1L << (k + 1);
  const long pow_lo = k >= 0 ? (1L << k) : 0;
  return d * pow_hi >= n && d * (pow_lo + 1) <= n;
}

int ceil_log2(long m) {
  return m <= 1 ? 0 : std::bit_width(static_cast<unsigned long>(m - 1));
}

// Cached (subgroup, pair) for the canonical abelian subgroup of order d.
detail::DivisorPair divisor_pair(const FiniteGroup& g, long d) {
  auto& cache = g.cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.divisor_pairs.find(d);
    if (it != cache.divisor_pairs.end()) return it->second;
  }
  detail::DivisorPair dp;
  Subgroup sub = subgroup_of_order(g, d);
  dp.subgroup = sub.elements;
  if (d >= 2) {
    GeneratingPair pair = pair_from_decomp(g, *sub.decomp);
    dp.s1 = pair.s1;
    dp.s2 = pair.s2;
  } else {
    dp.s1 = {FiniteGroup::kIdentity};
    dp.s2 = {FiniteGroup::kIdentity};
  }
  std::lock_guard<std::mutex> lock(cache.mu);
  return cache.divisor_pairs.emplace(d, std::move(dp)).first->second;
}

bool trivially_intersects(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out.size() == 1;  // both contain the identity
}

struct WindowChoice {
  std::vector<int> elements;
  std::vector<int> s1, s2;
  bool randomized = false;
};

// Largest-order subgroup in the window for this k, with its generating
// pair; `avoid` constrains G1 to meet it trivially. Ties break to the
// lexicographically smallest element set.
std::optional<WindowChoice> select_window_subgroup(const FiniteGroup& g, int k,
                                                   const Subgroup* avoid,
                                                   uint64_t seed) {
  const long n = g.order();
  if (g.abelian() && !avoid) {
    for (long d = n; d >= 1; --d) {
      if (n % d != 0 || !window_contains(d, k, n)) continue;
      detail::DivisorPair dp = divisor_pair(g, d);
      return WindowChoice{dp.subgroup, dp.s1, dp.s2, false};
    }
    return std::nullopt;
  }
  const auto& subs = enumerate_subgroups(g);
  const Subgroup* best = nullptr;
  for (const auto& s : subs) {
    if (!window_contains(s.order(), k, n)) continue;
    if (avoid && !trivially_intersects(s.elements, avoid->elements)) continue;
    if (!best || s.order() > best->order()) best = &s;
  }
  if (!best) return std::nullopt;
  if (best->order() == 1)
    return WindowChoice{{FiniteGroup::kIdentity},
                        {FiniteGroup::kIdentity},
                        {FiniteGroup::kIdentity},
                        false};
  GeneratingPair pair = pair_for_subgroup(g, *best, seed);
  return WindowChoice{best->elements, pair.s1, pair.s2,
                      pair.provenance == PairProvenance::Randomized};
}

std::vector<int> query_set(const FiniteGroup& g, const std::vector<int>& s1,
                           const std::vector<int>& s2, int shift) {
  std::vector<int> r;
  r.reserve(2 * s1.size() + s2.size());
  for (int x : s1) r.push_back(g.invert(x));
  for (int y : s2) r.push_back(y);
  for (int x : s1) r.push_back(g.compose(g.invert(x), shift));
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

int smallest_outside(long n, const std::vector<int>& sorted_set) {
  int expect = 0;
  for (int e : sorted_set) {
    if (e != expect) break;
    ++expect;
  }
  if (expect >= n) return FiniteGroup::kIdentity;
  return expect;
}

/// Shared window loop of Algorithms 1 and 3; `h1` null means Algorithm 1.
AlgorithmReport window_search(const FiniteGroup& g, const Subgroup* h1,
                              Oracle& oracle, uint64_t seed) {
  const long n = g.order();
  if (n < 2) throw Error(Errc::InvalidSpec, "window search needs n >= 2");
  AlgorithmReport rep;
  rep.ell = std::bit_width(static_cast<unsigned long>(n - 1)) - 1;
  rep.seed = seed;
  long m1 = 1;
  if (h1) {
    m1 = h1->order();
    if (g.abelian()) m1 = std::max<long>(2, m1);
    rep.k0 = ceil_log2(m1) - 1;
  } else {
    rep.k0 = g.abelian() ? 0 : -1;
  }
  const bool trivial_h1 = !h1 || h1->order() == 1;
  const long start = oracle.query_count();
  for (int k = rep.ell; k >= rep.k0; --k) {
    IterationTrace it;
    it.k = k;
    auto choice = select_window_subgroup(g, k, trivial_h1 ? nullptr : h1, seed);
    if (!choice) {
      rep.trace.push_back(it);
      continue;
    }
    rep.used_seed = rep.used_seed || choice->randomized;
    it.g1_order = static_cast<long>(choice->elements.size());
    it.s1_size = static_cast<long>(choice->s1.size());
    it.s2_size = static_cast<long>(choice->s2.size());

    std::vector<int> reach = trivial_h1
                                 ? choice->elements
                                 : set_product(g, choice->elements, h1->elements);
    int shift = static_cast<long>(reach.size()) < n
                    ? smallest_outside(n, reach)
                    : FiniteGroup::kIdentity;
    it.g = shift;

    std::vector<int> r = query_set(g, choice->s1, choice->s2, shift);
    std::vector<int> labels(r.size());
    for (size_t i = 0; i < r.size(); ++i) labels[i] = oracle.query(r[i]);
    it.queries = static_cast<long>(r.size());

    for (size_t i = 0; i < r.size(); ++i)
      for (size_t j = i + 1; j < r.size(); ++j) {
        if (labels[i] != labels[j]) continue;
        if (h1) {
          int diff = g.compose(g.invert(r[i]), r[j]);
          if (std::binary_search(h1->elements.begin(), h1->elements.end(), diff))
            continue;
        }
        it.collision_found = true;
        rep.trace.push_back(it);
        rep.outcome.kind = OutcomeKind::Collision;
        rep.outcome.a = r[i];
        rep.outcome.b = r[j];
        rep.queries = oracle.query_count() - start;
        return rep;
      }
    rep.trace.push_back(it);
  }
  rep.outcome.kind = h1 ? OutcomeKind::NoNewCollision : OutcomeKind::Injective;
  rep.queries = oracle.query_count() - start;
  return rep;
}

}  // namespace

AlgorithmReport simon_solve(int k, Oracle& oracle) {
  const FiniteGroup& g = oracle.group();
  bool shape_ok = k >= 1 && g.kind() == GroupKind::AbelianProduct &&
                  static_cast<int>(g.moduli().size()) == k;
  if (shape_ok)
    for (long m : g.moduli()) shape_ok = shape_ok && m == 2;
  if (!shape_ok)
    throw Error(Errc::Instance, "Simon solver needs an oracle over Z_2^" +
                                    std::to_string(k));
  const int lo = k / 2;        // floor(k/2)
  const int hi = k - lo;       // ceil(k/2)
  const long start = oracle.query_count();
  std::vector<int> elems;
  std::vector<int> labels;
  for (long u = 0; u < (1L << lo); ++u) {
    int e = static_cast<int>(u << hi);
    elems.push_back(e);
    labels.push_back(oracle.query(e));
  }
  for (long v = 0; v < (1L << hi); ++v) {
    int e = static_cast<int>(v);
    elems.push_back(e);
    labels.push_back(oracle.query(e));
  }
  AlgorithmReport rep;
  rep.queries = oracle.query_count() - start;
  rep.bound = static_cast<double>((1L << lo) + (1L << hi));

  std::vector<std::pair<int, int>> sorted;
  for (size_t i = 0; i < elems.size(); ++i) sorted.push_back({elems[i], labels[i]});
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (size_t i = 0; i < sorted.size(); ++i)
    for (size_t j = i + 1; j < sorted.size(); ++j)
      if (sorted[i].second == sorted[j].second) {
        rep.outcome.kind = OutcomeKind::Collision;
        rep.outcome.a = sorted[i].first;
        rep.outcome.b = sorted[j].first;
        rep.outcome.generators = {g.compose(sorted[i].first, sorted[j].first)};
        return rep;
      }
  rep.outcome.kind = OutcomeKind::Injective;
  return rep;
}

namespace {

AlgorithmReport detect_with_pair(const FiniteGroup& g, Oracle& oracle,
                                 const GeneratingPair& pair, double bound) {
  AlgorithmReport rep;
  rep.bound = bound;
  const long start = oracle.query_count();
  std::vector<int> lx, ly;
  for (int x : pair.s1) lx.push_back(oracle.query(g.invert(x)));
  for (int y : pair.s2) ly.push_back(oracle.query(y));
  std::vector<int> h;
  for (size_t i = 0; i < pair.s1.size(); ++i)
    for (size_t j = 0; j < pair.s2.size(); ++j)
      if (lx[i] == ly[j]) h.push_back(g.compose(pair.s1[i], pair.s2[j]));
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  rep.queries = oracle.query_count() - start;
  if (h.size() <= 1) {
    rep.outcome.kind = OutcomeKind::Injective;
  } else {
    rep.outcome.kind = OutcomeKind::Generators;
    rep.outcome.generators = std::move(h);
  }
  return rep;
}

}  // namespace

AlgorithmReport detect_abelian(const FiniteGroup& g, Oracle& oracle) {
  if (!g.abelian()) throw Error(Errc::Domain, "detect_abelian needs an abelian group");
  if (g.order() < 2) {
    AlgorithmReport rep;
    rep.outcome.kind = OutcomeKind::Injective;
    return rep;
  }
  return detect_with_pair(g, oracle, abelian_pair(g),
                          4.0 * std::sqrt(static_cast<double>(g.order())));
}

AlgorithmReport detect_general(const FiniteGroup& g, Oracle& oracle, uint64_t seed) {
  const long n = g.order();
  if (n < 2) throw Error(Errc::InvalidSpec, "detect_general needs n >= 2");
  GeneratingPair pair = random_pair(g, seed);
  double bound = 2.0 * std::ceil(std::sqrt(static_cast<double>(n) *
                                           std::log(static_cast<double>(n))));
  AlgorithmReport rep = detect_with_pair(g, oracle, pair, bound);
  rep.seed = seed;
  rep.used_seed = true;
  return rep;
}

AlgorithmReport find_collision(const FiniteGroup& g, Oracle& oracle, uint64_t seed) {
  return window_search(g, nullptr, oracle, seed);
}

AlgorithmReport find_new_collision(const FiniteGroup& g, const Subgroup& h1,
                                   Oracle& oracle, uint64_t seed) {
  if (!g.same(h1.group) || !is_subgroup(g, h1.elements))
    throw Error(Errc::Domain, "known set is not a subgroup of G");
  return window_search(g, &h1, oracle, seed);
}

AlgorithmReport find_abelian_subgroup(const FiniteGroup& g, Oracle& oracle) {
  if (!g.abelian())
    throw Error(Errc::Domain, "find_abelian_subgroup needs an abelian group");
  const long n = g.order();
  AlgorithmReport rep;
  if (n < 2) {
    rep.outcome.kind = OutcomeKind::Injective;
    return rep;
  }
  const long start = oracle.query_count();
  std::vector<int> s;
  while (true) {
    Subgroup h1 = generated_subgroup(g, s);
    if (h1.order() == n) break;
    QuotientOracle qo(oracle, h1);
    AlgorithmReport inner = find_collision(qo.group(), qo);
    IterationTrace it;
    it.h1_order = h1.order();
    it.queries = inner.queries;
    it.collision_found = inner.outcome.kind == OutcomeKind::Collision;
    rep.trace.push_back(it);
    if (inner.outcome.kind != OutcomeKind::Collision) break;
    int g1 = qo.quotient().rep_of[inner.outcome.a];
    int g2 = qo.quotient().rep_of[inner.outcome.b];
    s.push_back(g.compose(g.invert(g1), g2));
  }
  rep.queries = oracle.query_count() - start;
  if (s.empty()) {
    rep.outcome.kind = OutcomeKind::Injective;
  } else {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    rep.outcome.kind = OutcomeKind::Generators;
    rep.outcome.generators = std::move(s);
  }
  return rep;
}

AlgorithmReport find_subgroup(const FiniteGroup& g, Oracle& oracle, uint64_t seed) {
  const long n = g.order();
  if (n < 2) throw Error(Errc::InvalidSpec, "find_subgroup needs n >= 2");
  AlgorithmReport rep;
  rep.seed = seed;
  const long start = oracle.query_count();
  std::vector<int> s;
  while (true) {
    Subgroup h1 = generated_subgroup(g, s);
    AlgorithmReport inner = find_new_collision(g, h1, oracle, seed);
    rep.used_seed = rep.used_seed || inner.used_seed;
    IterationTrace it;
    it.h1_order = h1.order();
    it.queries = inner.queries;
    it.collision_found = inner.outcome.kind == OutcomeKind::Collision;
    rep.trace.push_back(it);
    if (inner.outcome.kind != OutcomeKind::Collision) break;
    s.push_back(g.compose(g.invert(inner.outcome.a), inner.outcome.b));
  }
  rep.queries = oracle.query_count() - start;
  Subgroup found = generated_subgroup(g, s);
  // Certify the G0 hypothesis post hoc from the lattice: some subgroup of
  // order n/|<S>| meeting <S> only in the identity.
  rep.hypothesis_certified = false;
  if (n % found.order() == 0) {
    try {
      for (const auto& sub : enumerate_subgroups(g))
        if (sub.order() == n / found.order() &&
            trivially_intersects(sub.elements, found.elements)) {
          rep.hypothesis_certified = true;
          break;
        }
    } catch (const Error&) {
      // lattice unavailable at this size; leave uncertified
    }
  }
  if (s.empty()) {
    rep.outcome.kind = OutcomeKind::Injective;
  } else {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    rep.outcome.kind = OutcomeKind::Generators;
    rep.outcome.generators = std::move(s);
  }
  return rep;
}

AlgorithmReport randomized_baseline(const FiniteGroup& g, Oracle& oracle,
                                    uint64_t seed, long budget) {
  const long n = g.order();
  if (n < 2) throw Error(Errc::InvalidSpec, "baseline needs n >= 2");
  if (budget <= 0)
    budget = static_cast<long>(std::ceil(2.0 * std::sqrt(static_cast<double>(n))));
  AlgorithmReport rep;
  rep.seed = seed;
  rep.used_seed = true;
  rep.bound = static_cast<double>(budget);
  const long start = oracle.query_count();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
  std::map<int, int> seen;  // element -> label
  for (long t = 0; t < budget; ++t) {
    int e = pick(rng);
    int label = oracle.query(e);
    for (const auto& [prev, prev_label] : seen) {
      if (prev == e || prev_label != label) continue;
      rep.outcome.kind = OutcomeKind::Collision;
      rep.outcome.a = std::min(prev, e);
      rep.outcome.b = std::max(prev, e);
      rep.queries = oracle.query_count() - start;
      return rep;
    }
    seen.emplace(e, label);
  }
  rep.outcome.kind = OutcomeKind::Inconclusive;
  rep.queries = oracle.query_count() - start;
  return rep;
}

}  // namespace hsp
