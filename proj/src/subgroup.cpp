#include "hsplab/subgroup.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

namespace hsp {

namespace {

// Composition functor; uses the dense table when the group is small enough.
struct Mul {
  const FiniteGroup* g;
  const int* t;
  long n;
  explicit Mul(const FiniteGroup& grp)
      : g(&grp), t(grp.dense_table()), n(grp.order()) {}
  int operator()(int a, int b) const {
    return t ? t[a * n + b] : g->compose(a, b);
  }
};

using Bits = std::vector<uint64_t>;

Bits make_bits(long n) { return Bits((n + 63) / 64, 0); }
void bit_set(Bits& b, int i) { b[i >> 6] |= uint64_t{1} << (i & 63); }
bool bit_get(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1; }
bool bits_subset(const Bits& a, const Bits& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

struct BitsHash {
  size_t operator()(const Bits& b) const {
    size_t h = 1469598103934665603ull;
    for (uint64_t w : b) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// BFS closure of a generator set, starting from the identity.
std::vector<int> closure(const Mul& mul, const std::vector<int>& gens, Bits* out_bits) {
  Bits seen = make_bits(mul.n);
  bit_set(seen, FiniteGroup::kIdentity);
  std::vector<int> elems{FiniteGroup::kIdentity};
  for (size_t head = 0; head < elems.size(); ++head) {
    int x = elems[head];
    for (int g : gens) {
      int y = mul(x, g);
      if (!bit_get(seen, y)) {
        bit_set(seen, y);
        elems.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  if (out_bits) *out_bits = std::move(seen);
  return elems;
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_same_group(const Subgroup& h, const Subgroup& k) {
  if (!h.group.same(k.group))
    throw Error(Errc::Domain, "subgroups belong to different groups");
}

void ensure_closed(const FiniteGroup& g, const std::vector<int>& elems) {
  if (!is_subgroup(g, elems))
    throw Error(Errc::NotAGroup, "element set is not a subgroup");
}

// Generic direct-sum decomposition of an abelian composition structure on
// local indices 0..n-1 with identity 0. Splits off a maximal-order cyclic
// factor and recurses on the quotient, lifting quotient generators to
// representatives of the right order.
std::vector<std::pair<int, long>> decompose_rec(
    long n, const std::function<int(int, int)>& mul) {
  if (n == 1) return {};
  std::vector<long> ord(n, 1);
  int gmax = 0;
  long omax = 1;
  for (int x = 1; x < n; ++x) {
    long o = 1;
    int y = x;
    while (y != 0) {
      y = mul(y, x);
      ++o;
    }
    ord[x] = o;
    if (o > omax) {
      omax = o;
      gmax = x;
    }
  }
  const long m = omax;
  std::vector<int> cyc(m);
  std::unordered_map<int, long> dlog;
  {
    int y = 0;
    for (long s = 0; s < m; ++s) {
      cyc[s] = y;
      dlog[y] = s;
      y = mul(y, gmax);
    }
  }
  // left cosets of <gmax>; first unassigned index is the minimum of its coset
  std::vector<int> rep_of(n, -1), reps;
  std::vector<int> qindex(n, -1);
  for (int x = 0; x < n; ++x) {
    if (rep_of[x] >= 0) continue;
    qindex[x] = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int c : cyc) rep_of[mul(x, c)] = x;
  }
  const long qn = n / m;
  auto qmul = [&](int i, int j) { return qindex[rep_of[mul(reps[i], reps[j])]]; };
  auto sub = decompose_rec(qn, qmul);

  auto pow_local = [&](int b, long e) {
    int acc = 0;
    for (long i = 0; i < e; ++i) acc = mul(acc, b);
    return acc;
  };
  std::vector<std::pair<int, long>> result{{gmax, m}};
  for (auto [qg, r] : sub) {
    int y = reps[qg];
    long s = dlog.at(pow_local(y, r));
    // r | s because the exponent of the group equals m
    long t = (m - s / r) % m;
    int lifted = mul(y, pow_local(gmax, t));
    result.emplace_back(lifted, r);
  }
  return result;
}

}  // namespace

bool Subgroup::contains(int g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

Subgroup trivial_subgroup(const FiniteGroup& g) {
  return Subgroup{g, {FiniteGroup::kIdentity}, {}, std::nullopt};
}

Subgroup full_subgroup(const FiniteGroup& g) {
  std::vector<int> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup{g, std::move(all), find_generators(g, {}), std::nullopt};
}

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<int>& seeds) {
  for (int s : seeds)
    if (s < 0 || s >= g.order())
      throw Error(Errc::Domain, "seed element out of range");
  Mul mul(g);
  auto elems = closure(mul, seeds, nullptr);
  return Subgroup{g, std::move(elems), sorted_unique(seeds), std::nullopt};
}

std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g) {
  const long n = g.order();
  if (n > kEnumerationCap)
    throw Error(Errc::Capacity,
                "subgroup enumeration capped at order " +
                    std::to_string(kEnumerationCap) +
                    "; use the direct abelian constructions instead");
  auto& cache = g.cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    if (cache.subgroups) {
      std::vector<Subgroup> out;
      out.reserve(cache.subgroups->elements.size());
      for (size_t i = 0; i < cache.subgroups->elements.size(); ++i)
        out.push_back(Subgroup{g, cache.subgroups->elements[i],
                               cache.subgroups->generators[i], std::nullopt});
      return out;
    }
  }

  Mul mul(g);
  struct Node {
    Bits bits;
    std::vector<int> elems;
    std::vector<int> gens;
  };
  std::vector<Node> nodes;
  std::unordered_map<Bits, int, BitsHash> seen;
  auto add_node = [&](Node nd) -> bool {
    auto [it, fresh] = seen.emplace(nd.bits, static_cast<int>(nodes.size()));
    (void)it;
    if (fresh) nodes.push_back(std::move(nd));
    return fresh;
  };

  {
    Node triv;
    triv.bits = make_bits(n);
    bit_set(triv.bits, 0);
    triv.elems = {0};
    add_node(std::move(triv));
  }
  // cyclic layer; keep the minimal generator per distinct cyclic subgroup
  std::vector<std::pair<int, Bits>> cyclics;  // (min generator, bits)
  for (int x = 1; x < n; ++x) {
    Node nd;
    nd.gens = {x};
    nd.elems = closure(mul, nd.gens, &nd.bits);
    if (add_node(nd)) cyclics.emplace_back(x, nd.bits);
  }
  // close under joining with cyclic subgroups
  for (size_t head = 0; head < nodes.size(); ++head) {
    for (const auto& [c, cbits] : cyclics) {
      if (bits_subset(cbits, nodes[head].bits)) continue;
      Node nd;
      nd.gens = nodes[head].gens;
      nd.gens.push_back(c);
      nd.elems = closure(mul, nd.gens, &nd.bits);
      add_node(std::move(nd));
    }
  }

  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
    return a.elems < b.elems;
  });

  detail::SubgroupSet set;
  for (auto& nd : nodes) {
    set.elements.push_back(std::move(nd.elems));
    set.generators.push_back(sorted_unique(std::move(nd.gens)));
  }
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    if (!cache.subgroups) cache.subgroups = std::move(set);
  }
  return enumerate_subgroups(g);
}

AbelianDecomp abelian_decomposition(const FiniteGroup& g) {
  if (!g.abelian())
    throw Error(Errc::Unsupported, "decomposition requires an abelian group");
  auto& cache = g.cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    if (cache.decomp) return *cache.decomp;
  }
  AbelianDecomp d;
  if (g.kind() == GroupKind::AbelianProduct) {
    const auto& mods = g.moduli();
    for (size_t i = 0; i < mods.size(); ++i) {
      std::vector<long> digits(mods.size(), 0);
      digits[i] = 1;
      d.generators.push_back(g.encode(digits));
      d.orders.push_back(mods[i]);
    }
  } else {
    Mul mul(g);
    for (auto [gen, ord] : decompose_rec(g.order(), mul)) {
      d.generators.push_back(gen);
      d.orders.push_back(ord);
    }
  }
  std::lock_guard<std::mutex> lock(cache.mu);
  if (!cache.decomp) cache.decomp = d;
  return d;
}

AbelianDecomp subgroup_decomposition(const FiniteGroup& g,
                                     const std::vector<int>& elements) {
  Mul mul(g);
  const auto& el = elements;  // sorted
  auto local_of = [&](int x) {
    return static_cast<int>(std::lower_bound(el.begin(), el.end(), x) - el.begin());
  };
  auto lmul = [&](int i, int j) { return local_of(mul(el[i], el[j])); };
  AbelianDecomp d;
  for (auto [gen, ord] : decompose_rec(static_cast<long>(el.size()), lmul)) {
    d.generators.push_back(el[gen]);
    d.orders.push_back(ord);
  }
  return d;
}

Subgroup subgroup_of_order(const FiniteGroup& g, long d) {
  if (!g.abelian())
    throw Error(Errc::Unsupported,
                "direct subgroup construction requires an abelian group");
  const long n = g.order();
  if (d < 1 || n % d != 0)
    throw Error(Errc::InvalidDivisor, std::to_string(d) + " does not divide " +
                                          std::to_string(n));
  AbelianDecomp base = abelian_decomposition(g);
  const size_t k = base.orders.size();
  // per-factor target orders d_i with prod d_i = d, d_i | m_i:
  // distribute each prime of d greedily over the factors in ascending order
  std::vector<long> target(k, 1);
  long rest = d;
  for (long p = 2; rest > 1; ++p) {
    if (p * p > rest) p = rest;
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (size_t i = 0; i < k && e > 0; ++i) {
      long avail = 0, m = base.orders[i] / target[i];
      while (m % p == 0) {
        m /= p;
        ++avail;
      }
      long take = std::min<long>(avail, e);
      for (long j = 0; j < take; ++j) target[i] *= p;
      e -= static_cast<int>(take);
    }
  }
  AbelianDecomp sub;
  for (size_t i = 0; i < k; ++i) {
    if (target[i] == 1) continue;
    sub.generators.push_back(g.power(base.generators[i], base.orders[i] / target[i]));
    sub.orders.push_back(target[i]);
  }
  // enumerate the direct sum exactly
  std::vector<int> elems{FiniteGroup::kIdentity};
  for (size_t i = 0; i < sub.orders.size(); ++i) {
    std::vector<int> next;
    next.reserve(elems.size() * sub.orders[i]);
    int p = FiniteGroup::kIdentity;
    for (long e = 0; e < sub.orders[i]; ++e) {
      for (int x : elems) next.push_back(g.compose(x, p));
      p = g.compose(p, sub.generators[i]);
    }
    elems = std::move(next);
  }
  std::sort(elems.begin(), elems.end());
  return Subgroup{g, std::move(elems), sub.generators, sub};
}

CosetPartition left_cosets(const FiniteGroup& g, const Subgroup& h) {
  if (!g.same(h.group)) throw Error(Errc::Domain, "subgroup of a different group");
  ensure_closed(g, h.elements);
  const long n = g.order();
  CosetPartition part;
  part.rep_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (part.rep_of[x] >= 0) continue;
    ++part.coset_count;
    for (int hh : h.elements) part.rep_of[g.compose(x, hh)] = x;
  }
  return part;
}

std::vector<int> left_coset_representatives(const FiniteGroup& g, const Subgroup& h) {
  auto part = left_cosets(g, h);
  std::vector<int> reps;
  for (long x = 0; x < g.order(); ++x)
    if (part.rep_of[x] == x) reps.push_back(static_cast<int>(x));
  return reps;
}

std::vector<int> right_coset_representatives(const FiniteGroup& g, const Subgroup& h) {
  const long n = g.order();
  std::vector<int> rep_of(n, -1), reps;
  for (int x = 0; x < n; ++x) {
    if (rep_of[x] >= 0) continue;
    reps.push_back(x);
    for (int hh : h.elements) rep_of[g.compose(hh, x)] = x;
  }
  return reps;
}

Quotient quotient_group(const FiniteGroup& g, const Subgroup& h) {
  if (!g.same(h.group)) throw Error(Errc::Domain, "subgroup of a different group");
  ensure_closed(g, h.elements);
  const long n = g.order();
  if (h.order() == 1) {
    Quotient q{g, std::vector<int>(n), std::vector<int>(n)};
    std::iota(q.to_quotient.begin(), q.to_quotient.end(), 0);
    std::iota(q.rep_of.begin(), q.rep_of.end(), 0);
    return q;
  }
  if (!g.abelian()) {
    for (long x = 0; x < n; ++x)
      for (int hh : h.elements) {
        int conj = g.compose(g.compose(static_cast<int>(x), hh),
                             g.invert(static_cast<int>(x)));
        if (!h.contains(conj))
          throw Error(Errc::Normality,
                      "subgroup is not normal: witness g=" + std::to_string(x) +
                          " h=" + std::to_string(hh));
      }
  }
  auto part = left_cosets(g, h);
  std::vector<int> reps, qindex(n, -1);
  for (int x = 0; x < n; ++x)
    if (part.rep_of[x] == x) {
      qindex[x] = static_cast<int>(reps.size());
      reps.push_back(x);
    }
  const long qn = part.coset_count;
  std::vector<std::vector<int>> table(qn, std::vector<int>(qn));
  for (long i = 0; i < qn; ++i)
    for (long j = 0; j < qn; ++j)
      table[i][j] = qindex[part.rep_of[g.compose(reps[i], reps[j])]];
  FiniteGroup qg = detail::make_cayley_unchecked(
      std::move(table), g.abelian(), g.label() + "/" + std::to_string(h.order()));
  Quotient q{qg, std::vector<int>(n), reps};
  for (long x = 0; x < n; ++x) q.to_quotient[x] = qindex[part.rep_of[x]];
  return q;
}

std::vector<int> set_product(const FiniteGroup& g, const std::vector<int>& a,
                             const std::vector<int>& b) {
  Mul mul(g);
  Bits seen = make_bits(g.order() > 0 ? g.order() : 1);
  std::vector<int> out;
  for (int x : a)
    for (int y : b) {
      int z = mul(x, y);
      if (!bit_get(seen, z)) {
        bit_set(seen, z);
        out.push_back(z);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup intersection(const Subgroup& h, const Subgroup& k) {
  check_same_group(h, k);
  std::vector<int> elems;
  std::set_intersection(h.elements.begin(), h.elements.end(), k.elements.begin(),
                        k.elements.end(), std::back_inserter(elems));
  return Subgroup{h.group, elems, find_generators(h.group, elems), std::nullopt};
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elements) {
  if (elements.empty() ||
      !std::binary_search(elements.begin(), elements.end(), FiniteGroup::kIdentity))
    return false;
  Mul mul(g);
  for (int a : elements)
    for (int b : elements)
      if (!std::binary_search(elements.begin(), elements.end(), mul(a, b)))
        return false;
  return true;
}

std::vector<int> find_generators(const FiniteGroup& g, const std::vector<int>& elements) {
  Mul mul(g);
  std::vector<int> target = elements;
  if (target.empty()) {
    target.resize(g.order());
    std::iota(target.begin(), target.end(), 0);
  }
  std::vector<int> gens;
  Bits have = make_bits(g.order());
  bit_set(have, FiniteGroup::kIdentity);
  size_t have_count = 1;
  for (int x : target) {
    if (bit_get(have, x)) continue;
    gens.push_back(x);
    Bits bits;
    auto closed = closure(mul, gens, &bits);
    have = std::move(bits);
    have_count = closed.size();
    if (have_count == target.size()) break;
  }
  return gens;
}

}  // namespace hsp
