#include "hsplab/group.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace hsp {

struct FiniteGroup::Impl {
  GroupKind kind;
  long n = 0;
  bool abelian = false;
  std::string label;

  // AbelianProduct
  std::vector<long> moduli;
  std::vector<long> weight;  // weight[i] = product of moduli after i

  // CayleyTable
  std::vector<std::vector<int>> table;

  // Permutation
  int degree = 0;
  std::vector<std::vector<uint8_t>> perms;  // sorted lexicographically

  mutable detail::GroupCache cache;
};

namespace {

using Impl = FiniteGroup::Impl;

void check_index(const Impl& im, int a) {
  if (a < 0 || a >= im.n)
    throw Error(Errc::Domain, "element index " + std::to_string(a) +
                                  " out of range for group of order " +
                                  std::to_string(im.n));
}

std::vector<long> decode_digits(const Impl& im, long x) {
  std::vector<long> d(im.moduli.size());
  for (size_t i = 0; i < im.moduli.size(); ++i) {
    d[i] = (x / im.weight[i]) % im.moduli[i];
  }
  return d;
}

int perm_index(const Impl& im, const std::vector<uint8_t>& p) {
  auto it = std::lower_bound(im.perms.begin(), im.perms.end(), p);
  if (it == im.perms.end() || *it != p)
    throw Error(Errc::Domain, "permutation not in group " + im.label);
  return static_cast<int>(it - im.perms.begin());
}

int compose_impl(const Impl& im, int a, int b) {
  switch (im.kind) {
    case GroupKind::AbelianProduct: {
      long r = 0;
      for (size_t i = 0; i < im.moduli.size(); ++i) {
        long da = (a / im.weight[i]) % im.moduli[i];
        long db = (b / im.weight[i]) % im.moduli[i];
        r += ((da + db) % im.moduli[i]) * im.weight[i];
      }
      return static_cast<int>(r);
    }
    case GroupKind::CayleyTable:
      return im.table[a][b];
    case GroupKind::Permutation: {
      const auto& pa = im.perms[a];
      const auto& pb = im.perms[b];
      std::vector<uint8_t> r(im.degree);
      for (int i = 0; i < im.degree; ++i) r[i] = pa[pb[i]];
      return perm_index(im, r);
    }
  }
  throw Error(Errc::Unsupported, "unknown group kind");
}

std::shared_ptr<Impl> make_permutation_group(std::vector<std::vector<uint8_t>> perms,
                                             bool abelian, std::string label) {
  std::sort(perms.begin(), perms.end());
  perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
  auto im = std::make_shared<Impl>();
  im->kind = GroupKind::Permutation;
  im->n = static_cast<long>(perms.size());
  im->degree = static_cast<int>(perms.front().size());
  im->perms = std::move(perms);
  im->abelian = abelian;
  im->label = std::move(label);
  return im;
}

std::vector<uint8_t> identity_perm(int degree) {
  std::vector<uint8_t> p(degree);
  std::iota(p.begin(), p.end(), uint8_t{0});
  return p;
}

std::shared_ptr<Impl> build_dihedral(int p) {
  std::vector<std::vector<uint8_t>> perms;
  if (p == 1) {
    perms = {{0, 1}, {1, 0}};
  } else if (p == 2) {
    perms = {{0, 1, 2, 3}, {1, 0, 2, 3}, {0, 1, 3, 2}, {1, 0, 3, 2}};
  } else {
    for (int i = 0; i < p; ++i) {
      std::vector<uint8_t> rot(p), refl(p);
      for (int j = 0; j < p; ++j) {
        rot[j] = static_cast<uint8_t>((j + i) % p);
        refl[j] = static_cast<uint8_t>(((p - j) % p + i) % p);
      }
      perms.push_back(rot);
      perms.push_back(refl);
    }
  }
  return make_permutation_group(std::move(perms), p <= 2,
                                "D" + std::to_string(p));
}

std::shared_ptr<Impl> build_quaternion() {
  // index = axis*2 + (sign < 0), axes 1,i,j,k -> identity (+1) at 0
  auto basis = [](int a, int b) -> std::pair<int, int> {  // (axis, sign)
    if (a == 0) return {b, 1};
    if (b == 0) return {a, 1};
    if (a == b) return {0, -1};
    // i*j=k, j*k=i, k*i=j; reversed order negates
    static const int prod[4][4] = {{0, 0, 0, 0}, {0, 0, 3, 2}, {0, 3, 0, 1}, {0, 2, 1, 0}};
    static const int sign[4][4] = {{1, 1, 1, 1}, {1, 1, 1, -1}, {1, -1, 1, 1}, {1, 1, -1, 1}};
    return {prod[a][b], sign[a][b]};
  };
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int ax = x / 2, sx = x % 2 ? -1 : 1;
      int ay = y / 2, sy = y % 2 ? -1 : 1;
      auto [az, sz] = basis(ax, ay);
      int s = sx * sy * sz;
      t[x][y] = az * 2 + (s < 0 ? 1 : 0);
    }
  auto im = std::make_shared<Impl>();
  im->kind = GroupKind::CayleyTable;
  im->n = 8;
  im->table = std::move(t);
  im->abelian = false;
  im->label = "Q8";
  return im;
}

bool table_abelian(const std::vector<std::vector<int>>& t) {
  long n = static_cast<long>(t.size());
  for (long a = 0; a < n; ++a)
    for (long b = a + 1; b < n; ++b)
      if (t[a][b] != t[b][a]) return false;
  return true;
}

}  // namespace

FiniteGroup FiniteGroup::abelian_product(const std::vector<long>& moduli) {
  if (moduli.empty())
    throw Error(Errc::InvalidSpec, "abelian product needs at least one modulus");
  for (long m : moduli)
    if (m < 2)
      throw Error(Errc::InvalidSpec,
                  "modulus " + std::to_string(m) + " is below 2");
  auto im = std::make_shared<Impl>();
  im->kind = GroupKind::AbelianProduct;
  im->moduli = moduli;
  im->weight.assign(moduli.size(), 1);
  long n = 1;
  for (size_t i = moduli.size(); i-- > 0;) {
    im->weight[i] = n;
    if (n > (1L << 40) / moduli[i])
      throw Error(Errc::Capacity, "abelian product order overflows");
    n *= moduli[i];
  }
  im->n = n;
  im->abelian = true;
  std::string lab;
  for (size_t i = 0; i < moduli.size(); ++i)
    lab += (i ? "xZ" : "Z") + std::to_string(moduli[i]);
  im->label = lab;
  return FiniteGroup(im);
}

FiniteGroup FiniteGroup::from_cayley(const std::vector<std::vector<int>>& table) {
  long n = static_cast<long>(table.size());
  if (n == 0) throw Error(Errc::NotAGroup, "empty table");
  for (const auto& row : table) {
    if (static_cast<long>(row.size()) != n)
      throw Error(Errc::NotAGroup, "table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error(Errc::NotAGroup, "table entry out of range");
  }
  // locate the two-sided identity
  long e = -1;
  for (long c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (long j = 0; j < n && ok; ++j)
      ok = table[c][j] == j && table[j][c] == j;
    if (ok) e = c;
  }
  if (e < 0) throw Error(Errc::NotAGroup, "no two-sided identity element");

  // relabel so the identity sits at index 0
  auto relabel = [&](long i) { return i == 0 ? e : (i == e ? 0 : i); };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      t[a][b] = static_cast<int>(relabel(table[relabel(a)][relabel(b)]));

  // Latin-square property
  for (long a = 0; a < n; ++a) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (long b = 0; b < n; ++b) {
      if (seen_row[t[a][b]]++)
        throw Error(Errc::NotAGroup, "latin-square violation in row " +
                                         std::to_string(a) + " at column " +
                                         std::to_string(b));
      if (seen_col[t[b][a]]++)
        throw Error(Errc::NotAGroup, "latin-square violation in column " +
                                         std::to_string(a) + " at row " +
                                         std::to_string(b));
    }
  }
  // associativity: exhaustive up to order 64, sampled above
  auto check_triple = [&](long a, long b, long c) {
    if (t[t[a][b]][c] != t[a][t[b][c]])
      throw Error(Errc::NotAGroup,
                  "associativity fails at triple (" + std::to_string(a) + "," +
                      std::to_string(b) + "," + std::to_string(c) + ")");
  };
  if (n <= 64) {
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b)
        for (long c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(0xA55A);
    std::uniform_int_distribution<long> d(0, n - 1);
    for (int s = 0; s < 10000; ++s) check_triple(d(rng), d(rng), d(rng));
  }

  auto im = std::make_shared<Impl>();
  im->kind = GroupKind::CayleyTable;
  im->n = n;
  im->abelian = table_abelian(t);
  im->table = std::move(t);
  im->label = "cayley" + std::to_string(n);
  return FiniteGroup(im);
}

FiniteGroup FiniteGroup::from_cayley_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot open cayley file: " + path);
  long n;
  if (!(in >> n) || n < 1) throw Error(Errc::Parse, "bad order in cayley file");
  if (n > kDenseCap) throw Error(Errc::Capacity, "cayley file order above cap");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      if (!(in >> t[i][j])) throw Error(Errc::Parse, "truncated cayley file");
  return from_cayley(t);
}

FiniteGroup FiniteGroup::builtin(Family family, int parameter) {
  switch (family) {
    case Family::Dihedral: {
      if (parameter < 1 || 2L * parameter > kCatalogCap)
        throw Error(Errc::Catalog, "dihedral parameter out of catalog range");
      return FiniteGroup(build_dihedral(parameter));
    }
    case Family::Symmetric:
    case Family::Alternating: {
      if (parameter < 1)
        throw Error(Errc::Catalog, "degree must be positive");
      long fact = 1;
      for (int i = 2; i <= parameter; ++i) fact *= i;
      long ord = family == Family::Symmetric ? fact : std::max(1L, fact / 2);
      if (ord > kCatalogCap)
        throw Error(Errc::Catalog, "permutation group order above catalog cap");
      std::vector<std::vector<uint8_t>> perms;
      std::vector<uint8_t> p = identity_perm(parameter);
      do {
        if (family == Family::Symmetric) {
          perms.push_back(p);
        } else {
          // parity via inversion count
          int inv = 0;
          for (int i = 0; i < parameter; ++i)
            for (int j = i + 1; j < parameter; ++j) inv += p[i] > p[j];
          if (inv % 2 == 0) perms.push_back(p);
        }
      } while (std::next_permutation(p.begin(), p.end()));
      bool ab = family == Family::Symmetric ? parameter <= 2 : parameter <= 3;
      std::string lab = (family == Family::Symmetric ? "S" : "A") +
                        std::to_string(parameter);
      return FiniteGroup(make_permutation_group(std::move(perms), ab, lab));
    }
    case Family::Quaternion: {
      if (parameter != 8)
        throw Error(Errc::Catalog, "only Q8 is in the catalog");
      return FiniteGroup(build_quaternion());
    }
  }
  throw Error(Errc::Catalog, "unknown family");
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.kind() == GroupKind::AbelianProduct && b.kind() == GroupKind::AbelianProduct) {
    std::vector<long> m = a.moduli();
    m.insert(m.end(), b.moduli().begin(), b.moduli().end());
    return abelian_product(m);
  }
  long n = a.order() * b.order();
  if (n > kProductCap)
    throw Error(Errc::Capacity, "product order " + std::to_string(n) +
                                    " exceeds materialization cap");
  long n2 = b.order();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (long x = 0; x < n; ++x)
    for (long y = 0; y < n; ++y) {
      int c1 = a.compose(static_cast<int>(x / n2), static_cast<int>(y / n2));
      int c2 = b.compose(static_cast<int>(x % n2), static_cast<int>(y % n2));
      t[x][y] = static_cast<int>(c1 * n2 + c2);
    }
  return detail::make_cayley_unchecked(std::move(t), a.abelian() && b.abelian(),
                                       a.label() + "x" + b.label());
}

long FiniteGroup::order() const { return impl_->n; }
GroupKind FiniteGroup::kind() const { return impl_->kind; }
bool FiniteGroup::abelian() const { return impl_->abelian; }
const std::string& FiniteGroup::label() const { return impl_->label; }

int FiniteGroup::compose(int a, int b) const {
  check_index(*impl_, a);
  check_index(*impl_, b);
  return compose_impl(*impl_, a, b);
}

int FiniteGroup::invert(int a) const {
  check_index(*impl_, a);
  const Impl& im = *impl_;
  switch (im.kind) {
    case GroupKind::AbelianProduct: {
      long r = 0;
      for (size_t i = 0; i < im.moduli.size(); ++i) {
        long da = (a / im.weight[i]) % im.moduli[i];
        r += ((im.moduli[i] - da) % im.moduli[i]) * im.weight[i];
      }
      return static_cast<int>(r);
    }
    case GroupKind::Permutation: {
      const auto& p = im.perms[a];
      std::vector<uint8_t> q(im.degree);
      for (int i = 0; i < im.degree; ++i) q[p[i]] = static_cast<uint8_t>(i);
      return perm_index(im, q);
    }
    case GroupKind::CayleyTable: {
      std::lock_guard<std::mutex> lock(im.cache.mu);
      if (im.cache.inverse.empty()) {
        im.cache.inverse.assign(im.n, -1);
        for (long x = 0; x < im.n; ++x)
          for (long y = 0; y < im.n; ++y)
            if (im.table[x][y] == kIdentity) im.cache.inverse[x] = static_cast<int>(y);
      }
      return im.cache.inverse[a];
    }
  }
  throw Error(Errc::Unsupported, "unknown group kind");
}

int FiniteGroup::power(int g, long e) const {
  check_index(*impl_, g);
  if (e < 0) {
    g = invert(g);
    e = -e;
  }
  int acc = kIdentity;
  int base = g;
  while (e > 0) {
    if (e & 1) acc = compose_impl(*impl_, acc, base);
    base = compose_impl(*impl_, base, base);
    e >>= 1;
  }
  return acc;
}

long FiniteGroup::element_order(int g) const {
  check_index(*impl_, g);
  long ord = 1;
  int x = g;
  while (x != kIdentity) {
    x = compose_impl(*impl_, x, g);
    ++ord;
  }
  return ord;
}

const std::vector<long>& FiniteGroup::moduli() const {
  if (impl_->kind != GroupKind::AbelianProduct)
    throw Error(Errc::Unsupported, "moduli only defined for abelian products");
  return impl_->moduli;
}

std::vector<long> FiniteGroup::decode(int index) const {
  check_index(*impl_, index);
  if (impl_->kind != GroupKind::AbelianProduct)
    throw Error(Errc::Unsupported, "decode only defined for abelian products");
  return decode_digits(*impl_, index);
}

int FiniteGroup::encode(const std::vector<long>& digits) const {
  if (impl_->kind != GroupKind::AbelianProduct)
    throw Error(Errc::Unsupported, "encode only defined for abelian products");
  if (digits.size() != impl_->moduli.size())
    throw Error(Errc::Domain, "digit count does not match moduli");
  long r = 0;
  for (size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= impl_->moduli[i])
      throw Error(Errc::Domain, "digit out of range");
    r += digits[i] * impl_->weight[i];
  }
  return static_cast<int>(r);
}

int FiniteGroup::degree() const {
  if (impl_->kind != GroupKind::Permutation)
    throw Error(Errc::Unsupported, "degree only defined for permutation groups");
  return impl_->degree;
}

const std::vector<uint8_t>& FiniteGroup::permutation(int index) const {
  check_index(*impl_, index);
  if (impl_->kind != GroupKind::Permutation)
    throw Error(Errc::Unsupported, "not a permutation group");
  return impl_->perms[index];
}

int FiniteGroup::index_of(const std::vector<uint8_t>& perm) const {
  if (impl_->kind != GroupKind::Permutation)
    throw Error(Errc::Unsupported, "not a permutation group");
  return perm_index(*impl_, perm);
}

const int* FiniteGroup::dense_table() const {
  const Impl& im = *impl_;
  if (im.n > kDenseCap) return nullptr;
  std::lock_guard<std::mutex> lock(im.cache.mu);
  if (im.cache.dense.empty()) {
    im.cache.dense.resize(im.n * im.n);
    for (long a = 0; a < im.n; ++a)
      for (long b = 0; b < im.n; ++b)
        im.cache.dense[a * im.n + b] =
            compose_impl(im, static_cast<int>(a), static_cast<int>(b));
  }
  return im.cache.dense.data();
}

detail::GroupCache& FiniteGroup::cache() const { return impl_->cache; }

namespace detail {
FiniteGroup make_cayley_unchecked(std::vector<std::vector<int>> table,
                                  bool abelian, std::string label) {
  auto im = std::make_shared<Impl>();
  im->kind = GroupKind::CayleyTable;
  im->n = static_cast<long>(table.size());
  im->table = std::move(table);
  im->abelian = abelian;
  im->label = std::move(label);
  return FiniteGroup(std::move(im));
}
}  // namespace detail

FiniteGroup FiniteGroup::parse_spec(const std::string& spec) {
  if (spec.rfind("cayley:", 0) == 0)
    return from_cayley_file(spec.substr(7));
  std::vector<std::string> atoms;
  std::string cur;
  for (char c : spec) {
    if (c == 'x') {
      atoms.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  atoms.push_back(cur);
  auto parse_atom = [](const std::string& a) -> FiniteGroup {
    if (a.size() < 2)
      throw Error(Errc::Parse, "bad group atom: '" + a + "'");
    char head = a[0];
    const std::string tail = a.substr(1);
    for (char c : tail)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error(Errc::Parse, "bad group atom: '" + a + "'");
    long p = std::stol(tail);
    try {
      switch (head) {
        case 'Z':
          return abelian_product({p});
        case 'D':
          return builtin(Family::Dihedral, static_cast<int>(p));
        case 'S':
          return builtin(Family::Symmetric, static_cast<int>(p));
        case 'A':
          return builtin(Family::Alternating, static_cast<int>(p));
        case 'Q':
          return builtin(Family::Quaternion, static_cast<int>(p));
      }
    } catch (const Error& e) {
      if (e.code() == Errc::InvalidSpec)
        throw Error(Errc::Parse, std::string("bad group atom: ") + e.what());
      throw;
    }
    throw Error(Errc::Parse, "unknown group atom: '" + a + "'");
  };
  FiniteGroup g = parse_atom(atoms[0]);
  for (size_t i = 1; i < atoms.size(); ++i)
    g = product(g, parse_atom(atoms[i]));
  return g;
}

void validate_group_axioms(const FiniteGroup& g) {
  long n = g.order();
  auto check_triple = [&](int a, int b, int c) {
    if (g.compose(g.compose(a, b), c) != g.compose(a, g.compose(b, c)))
      throw Error(Errc::NotAGroup,
                  "associativity fails at (" + std::to_string(a) + "," +
                      std::to_string(b) + "," + std::to_string(c) + ")");
  };
  for (int a = 0; a < n; ++a) {
    if (g.compose(FiniteGroup::kIdentity, a) != a ||
        g.compose(a, FiniteGroup::kIdentity) != a)
      throw Error(Errc::NotAGroup, "identity law fails at " + std::to_string(a));
    int inv = g.invert(a);
    if (g.compose(a, inv) != FiniteGroup::kIdentity ||
        g.compose(inv, a) != FiniteGroup::kIdentity)
      throw Error(Errc::NotAGroup, "inverse law fails at " + std::to_string(a));
  }
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(0x5AA5);
    std::uniform_int_distribution<int> d(0, static_cast<int>(n) - 1);
    for (int s = 0; s < 10000; ++s) check_triple(d(rng), d(rng), d(rng));
  }
  if (n <= 128) {
    bool comm = true;
    for (int a = 0; a < n && comm; ++a)
      for (int b = a + 1; b < n && comm; ++b)
        comm = g.compose(a, b) == g.compose(b, a);
    if (comm != g.abelian())
      throw Error(Errc::NotAGroup, "is_abelian flag disagrees with composition");
  }
}

int parse_cycles(const FiniteGroup& g, const std::string& text) {
  if (g.kind() != GroupKind::Permutation)
    throw Error(Errc::Parse, "cycle notation requires a permutation group");
  int deg = g.degree();
  std::vector<uint8_t> p = [&] {
    std::vector<uint8_t> q(deg);
    std::iota(q.begin(), q.end(), uint8_t{0});
    return q;
  }();
  size_t i = 0;
  std::vector<bool> used(deg, false);
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    if (text[i] != '(') throw Error(Errc::Parse, "expected '(' in cycle notation");
    ++i;
    std::vector<int> cyc;
    std::string num;
    for (; i < text.size() && text[i] != ')'; ++i) {
      if (std::isdigit(static_cast<unsigned char>(text[i]))) {
        num += text[i];
      } else if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',') {
        if (!num.empty()) cyc.push_back(std::stoi(num) - 1), num.clear();
      } else {
        throw Error(Errc::Parse, "bad character in cycle notation");
      }
    }
    if (i >= text.size()) throw Error(Errc::Parse, "unterminated cycle");
    ++i;  // ')'
    if (!num.empty()) cyc.push_back(std::stoi(num) - 1);
    for (int v : cyc) {
      if (v < 0 || v >= deg)
        throw Error(Errc::Parse, "cycle point out of range for degree " +
                                     std::to_string(deg));
      if (used[v])
        throw Error(Errc::Parse, "repeated point in cycle notation");
      used[v] = true;
    }
    for (size_t j = 0; j < cyc.size(); ++j)
      p[cyc[j]] = static_cast<uint8_t>(cyc[(j + 1) % cyc.size()]);
  }
  // no cycles at all parses as the identity
  return g.index_of(p);
}

}  // namespace hsp
