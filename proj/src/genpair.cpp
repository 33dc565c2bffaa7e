#include "hsplab/genpair.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>

namespace hsp {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

long ceil_sqrt(long n) {
  long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r * r < n) ++r;
  while ((r - 1) * (r - 1) >= n) --r;
  return r;
}

long random_pair_size(long n) {
  return std::min<long>(
      n, static_cast<long>(std::ceil(std::sqrt(
             static_cast<double>(n) * std::log(static_cast<double>(n))))));
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// One prime-power cyclic factor of a decomposition: <gen> of order p^k.
struct PrimeFactor {
  int gen;
  long p;
  int k;
  long q;  // p^k
};

struct Block {
  std::vector<int> s1, s2;
};

// Division-algorithm pair inside the cyclic subgroup <gen> of order ord.
Block cyclic_block(const FiniteGroup& g, int gen, long ord) {
  Block b;
  const long m = ceil_sqrt(ord);
  int x = FiniteGroup::kIdentity;
  for (long t = 0; t < m; ++t) {
    b.s1.push_back(x);
    x = g.compose(x, gen);
  }
  int step = g.power(gen, m);
  x = FiniteGroup::kIdentity;
  for (long i = 0; i * m < ord; ++i) {
    b.s2.push_back(x);
    x = g.compose(x, step);
  }
  return b;
}

// Pair inside <gen1> x <gen2>, orders p^k1 >= p^k2, both exponents odd.
Block odd_pair_block(const FiniteGroup& g, const PrimeFactor& a, const PrimeFactor& b) {
  const PrimeFactor& hi = a.k >= b.k ? a : b;
  const PrimeFactor& lo = a.k >= b.k ? b : a;
  long q = 1;
  for (int i = 0; i < (hi.k + lo.k) / 2; ++i) q *= hi.p;
  Block blk;
  int x = FiniteGroup::kIdentity;
  for (long t = 0; t < q; ++t) {
    blk.s1.push_back(x);
    x = g.compose(x, hi.gen);
  }
  int step = g.power(hi.gen, q);
  for (long i = 0; i * q < hi.q; ++i) {
    int base = g.power(step, i);
    int y = base;
    for (long j = 0; j < lo.q; ++j) {
      blk.s2.push_back(y);
      y = g.compose(y, lo.gen);
    }
  }
  return blk;
}

std::vector<int> compose_sets(const FiniteGroup& g, const std::vector<int>& a,
                              const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() * b.size());
  for (int x : a)
    for (int y : b) out.push_back(g.compose(x, y));
  return sorted_unique(std::move(out));
}

}  // namespace

GeneratingPair pair_from_decomp(const FiniteGroup& g, const AbelianDecomp& d) {
  // refine into prime-power cyclic factors, ascending by order
  std::vector<PrimeFactor> factors;
  long n = 1;
  for (size_t i = 0; i < d.orders.size(); ++i) {
    long rest = d.orders[i];
    n *= rest;
    for (long p = 2; rest > 1; ++p) {
      if (p * p > rest) p = rest;
      if (rest % p != 0) continue;
      long q = 1;
      int k = 0;
      while (rest % p == 0) {
        rest /= p;
        q *= p;
        ++k;
      }
      factors.push_back({g.power(d.generators[i], d.orders[i] / q), p, k, q});
    }
  }
  if (n < 2) throw Error(Errc::InvalidSpec, "trivial group has no generating pair");
  std::sort(factors.begin(), factors.end(), [](const PrimeFactor& a, const PrimeFactor& b) {
    if (a.q != b.q) return a.q < b.q;
    return a.p < b.p;
  });

  std::vector<Block> blocks;
  std::map<long, std::vector<PrimeFactor>> odd_by_prime;
  for (const auto& f : factors) {
    if (f.k % 2 == 0) {
      blocks.push_back(cyclic_block(g, f.gen, f.q));  // perfect square order
    } else {
      odd_by_prime[f.p].push_back(f);
    }
  }
  std::vector<PrimeFactor> crt_leftovers;
  for (auto& [p, fs] : odd_by_prime) {
    size_t i = 0;
    for (; i + 1 < fs.size(); i += 2) blocks.push_back(odd_pair_block(g, fs[i], fs[i + 1]));
    if (i < fs.size()) crt_leftovers.push_back(fs[i]);
  }
  if (!crt_leftovers.empty()) {
    // distinct primes: the product of the generators is cyclic of the
    // product order
    int gen = FiniteGroup::kIdentity;
    long ord = 1;
    for (const auto& f : crt_leftovers) {
      gen = g.compose(gen, f.gen);
      ord *= f.q;
    }
    if (ord >= 2) blocks.push_back(cyclic_block(g, gen, ord));
  }

  GeneratingPair pair{g, {FiniteGroup::kIdentity}, {FiniteGroup::kIdentity},
                      PairProvenance::AbelianRecursive};
  for (const auto& b : blocks) {
    pair.s1 = compose_sets(g, pair.s1, b.s1);
    pair.s2 = compose_sets(g, pair.s2, b.s2);
  }
  pair.size_bound = 2.0 * std::sqrt(static_cast<double>(n));
  return pair;
}

GeneratingPair cyclic_pair(long n) {
  if (n < 2) throw Error(Errc::InvalidSpec, "cyclic pair needs n >= 2");
  FiniteGroup g = FiniteGroup::abelian_product({n});
  const long m = ceil_sqrt(n);
  GeneratingPair pair{g, {}, {}, PairProvenance::Cyclic};
  for (long t = 0; t < m; ++t) pair.s1.push_back(static_cast<int>(t));
  for (long i = 0; i * m < n; ++i) pair.s2.push_back(static_cast<int>(i * m));
  pair.size_bound = static_cast<double>(std::max<long>(m, n / m + 1));
  return pair;
}

GeneratingPair odd_prime_power_pair(long p, int k, int l) {
  if (!is_prime(p)) throw Error(Errc::InvalidSpec, "p must be prime");
  if (k < 1 || l < 1 || k % 2 == 0 || l % 2 == 0)
    throw Error(Errc::InvalidSpec, "exponents must be positive odd integers");
  if (k < l) std::swap(k, l);
  long pk = 1, pl = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  for (int i = 0; i < l; ++i) pl *= p;
  FiniteGroup g = FiniteGroup::abelian_product({pk, pl});
  long q = 1;
  for (int i = 0; i < (k + l) / 2; ++i) q *= p;
  GeneratingPair pair{g, {}, {}, PairProvenance::OddPrimePower};
  for (long t = 0; t < q; ++t) pair.s1.push_back(static_cast<int>(t * pl));
  for (long i = 0; i * q < pk; ++i)
    for (long j = 0; j < pl; ++j) pair.s2.push_back(static_cast<int>(i * q * pl + j));
  std::sort(pair.s2.begin(), pair.s2.end());
  pair.size_bound = static_cast<double>(q);
  return pair;
}

GeneratingPair product_pair(const GeneratingPair& a, const GeneratingPair& b) {
  FiniteGroup g = FiniteGroup::product(a.group, b.group);
  const long n2 = b.group.order();
  GeneratingPair pair{g, {}, {}, PairProvenance::Product};
  for (int x : a.s1)
    for (int y : b.s1) pair.s1.push_back(static_cast<int>(x * n2 + y));
  for (int x : a.s2)
    for (int y : b.s2) pair.s2.push_back(static_cast<int>(x * n2 + y));
  std::sort(pair.s1.begin(), pair.s1.end());
  std::sort(pair.s2.begin(), pair.s2.end());
  pair.size_bound = a.size_bound * b.size_bound;
  return pair;
}

GeneratingPair abelian_pair(const FiniteGroup& g) {
  if (!g.abelian()) throw Error(Errc::Unsupported, "group is not abelian");
  if (g.order() < 2) throw Error(Errc::InvalidSpec, "trivial group");
  return pair_from_decomp(g, abelian_decomposition(g));
}

namespace {

// Sample a t-subset of `pool` and test whether prefix x sample covers it.
GeneratingPair random_pair_over(const FiniteGroup& g, const std::vector<int>& pool,
                                uint64_t seed, int retry_cap) {
  const long m = static_cast<long>(pool.size());
  const long t = random_pair_size(m);
  GeneratingPair pair{g, {}, {}, PairProvenance::Randomized};
  pair.seed = seed;
  pair.s1.assign(pool.begin(), pool.begin() + t);
  std::mt19937_64 rng(seed);
  std::vector<int> scratch = pool;
  for (int attempt = 1; attempt <= retry_cap; ++attempt) {
    for (long i = 0; i < t; ++i) {
      std::uniform_int_distribution<long> d(i, m - 1);
      std::swap(scratch[i], scratch[d(rng)]);
    }
    std::vector<int> s2(scratch.begin(), scratch.begin() + t);
    std::sort(s2.begin(), s2.end());
    if (set_product(g, pair.s1, s2) == pool) {
      pair.s2 = std::move(s2);
      pair.attempts = attempt;
      pair.size_bound = static_cast<double>(t);
      return pair;
    }
  }
  throw Error(Errc::UnluckySeed,
              "no covering sample within " + std::to_string(retry_cap) +
                  " attempts (seed " + std::to_string(seed) + ")");
}

}  // namespace

GeneratingPair random_pair(const FiniteGroup& g, uint64_t seed, int retry_cap) {
  if (g.order() < 2) throw Error(Errc::InvalidSpec, "random pair needs n >= 2");
  std::vector<int> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return random_pair_over(g, all, seed, retry_cap);
}

GeneratingPair coset_pair(const FiniteGroup& g, const Subgroup& h) {
  if (!g.same(h.group)) throw Error(Errc::Domain, "subgroup of a different group");
  GeneratingPair pair{g, h.elements, right_coset_representatives(g, h),
                      PairProvenance::Coset};
  pair.size_bound = static_cast<double>(pair.max_size());
  return pair;
}

GeneratingPair best_pair(const FiniteGroup& g) {
  const long n = g.order();
  if (n == 1)
    return GeneratingPair{g,
                          {FiniteGroup::kIdentity},
                          {FiniteGroup::kIdentity},
                          PairProvenance::Coset,
                          1.0};
  if (g.abelian()) return abelian_pair(g);
  GeneratingPair best = random_pair(g, kDefaultPairSeed);
  if (n <= kEnumerationCap) {
    auto subs = enumerate_subgroups(g);
    const double root = std::sqrt(static_cast<double>(n));
    const Subgroup* pick = nullptr;
    double dist = 0;
    for (const auto& s : subs) {
      double dd = std::abs(static_cast<double>(s.order()) - root);
      if (!pick || dd < dist) {
        pick = &s;
        dist = dd;
      }
    }
    GeneratingPair cp = coset_pair(g, *pick);
    if (cp.max_size() <= best.max_size()) best = std::move(cp);
  }
  return best;
}

bool verify_pair(const FiniteGroup& g, const std::vector<int>& s1,
                 const std::vector<int>& s2) {
  return static_cast<long>(set_product(g, s1, s2).size()) == g.order();
}

GeneratingPair exhaustive_minimal_pair(const FiniteGroup& g) {
  const long n = g.order();
  if (n > 24) throw Error(Errc::Capacity, "exhaustive pair search capped at n <= 24");
  if (n == 1)
    return GeneratingPair{g,
                          {FiniteGroup::kIdentity},
                          {FiniteGroup::kIdentity},
                          PairProvenance::ExhaustiveMinimal,
                          1.0};
  const GeneratingPair guess = best_pair(g);
  // WLOG e in S1 (translate otherwise) and |S1| padded up to the cap; for
  // each S1 the cover search picks y whose translate S1*y hits the lowest
  // uncovered element, so branching stays <= cap per level.
  for (long size_cap = ceil_sqrt(n);; ++size_cap) {
    if (guess.max_size() == size_cap) {
      GeneratingPair out = guess;
      out.provenance = PairProvenance::ExhaustiveMinimal;
      out.size_bound = static_cast<double>(size_cap);
      return out;
    }
    std::vector<int> members(n - 1);
    std::iota(members.begin(), members.end(), 1);
    std::vector<int> s1(size_cap);
    s1[0] = FiniteGroup::kIdentity;
    GeneratingPair found{g, {}, {}, PairProvenance::ExhaustiveMinimal};
    bool ok = false;
    std::function<bool(long, long)> search = [&](long idx, long from) -> bool {
      if (idx == size_cap - 1) {
        std::vector<uint32_t> mask(n, 0);
        for (int y = 0; y < n; ++y)
          for (long i = 0; i < size_cap; ++i)
            mask[y] |= uint32_t{1} << g.compose(s1[i], y);
        const uint32_t full = n == 32 ? ~uint32_t{0} : (uint32_t{1} << n) - 1;
        std::vector<int> s2;
        std::function<bool(uint32_t, long)> cover = [&](uint32_t covered,
                                                        long budget) -> bool {
          if (covered == full) return true;
          if (budget == 0) return false;
          int missing = std::countr_one(covered);
          for (long i = 0; i < size_cap; ++i) {
            int y = g.compose(g.invert(s1[i]), missing);
            if ((mask[y] >> missing) & 1) {
              s2.push_back(y);
              if (cover(covered | mask[y], budget - 1)) return true;
              s2.pop_back();
            }
          }
          return false;
        };
        if (cover(0, size_cap)) {
          found.s1 = s1;
          std::sort(found.s1.begin(), found.s1.end());
          found.s2 = sorted_unique(s2);
          found.size_bound = static_cast<double>(size_cap);
          ok = true;
          return true;
        }
        return false;
      }
      for (long j = from; j < static_cast<long>(members.size()); ++j) {
        s1[idx + 1] = members[j];
        if (search(idx + 1, j + 1)) return true;
      }
      return false;
    };
    search(0, 0);
    if (ok) return found;
  }
}

GeneratingPair pair_for_subgroup(const FiniteGroup& g, const Subgroup& h,
                                 uint64_t seed) {
  const long m = h.order();
  if (m == 1)
    return GeneratingPair{g,
                          {FiniteGroup::kIdentity},
                          {FiniteGroup::kIdentity},
                          PairProvenance::Coset,
                          1.0};
  auto& cache = g.cache();
  auto key = std::make_pair(h.elements, static_cast<unsigned long long>(seed));
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.subgroup_pairs.find(key);
    if (it != cache.subgroup_pairs.end()) {
      GeneratingPair pair{g, it->second.first, it->second.second,
                          g.abelian() ? PairProvenance::AbelianRecursive
                                      : PairProvenance::Randomized};
      pair.seed = seed;
      pair.size_bound = g.abelian()
                            ? 2.0 * std::sqrt(static_cast<double>(m))
                            : static_cast<double>(random_pair_size(m));
      return pair;
    }
  }

  bool sub_abelian = true;
  {
    const int* t = g.dense_table();
    const long n = g.order();
    for (size_t i = 0; i < h.elements.size() && sub_abelian; ++i)
      for (size_t j = i + 1; j < h.elements.size() && sub_abelian; ++j) {
        int a = h.elements[i], b = h.elements[j];
        sub_abelian = t ? t[a * n + b] == t[b * n + a]
                        : g.compose(a, b) == g.compose(b, a);
      }
  }

  GeneratingPair result{g, {}, {}, PairProvenance::Randomized};
  if (g.abelian() || sub_abelian) {
    AbelianDecomp d = h.decomp ? *h.decomp : subgroup_decomposition(g, h.elements);
    result = pair_from_decomp(g, d);
  }
  if (!g.abelian()) {
    GeneratingPair rnd = random_pair_over(g, h.elements, seed, kPairRetryCap);
    if (result.s1.empty() || rnd.max_size() < result.max_size()) result = std::move(rnd);
    result.size_bound = static_cast<double>(random_pair_size(m));
  }
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    cache.subgroup_pairs.emplace(key, std::make_pair(result.s1, result.s2));
  }
  return result;
}

}  // namespace hsp
