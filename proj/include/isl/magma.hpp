#pragma once

// Finite carriers (groups, semigroups, groupoids, loops) as Cayley tables.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "isl/error.hpp"

namespace isl {

enum class CarrierKind {
  cyclic,
  dihedral,
  symmetric_group,
  mult_semigroup_zn,
  symmetric_semigroup,
  additive_group_zn,
  mult_group_zp,
  groupoid_zn,
  loop_ln,
  custom,
};

/// Provenance of a carrier. Unused parameters stay zero:
/// cyclic/symmetric-group/symmetric-semigroup use k, dihedral uses m (order
/// 2m), the Z_n families use n, mult-group-zp stores p in n, groupoid-zn uses
/// n/t/u and loop-ln uses n/m.
struct CarrierMeta {
  CarrierKind kind = CarrierKind::custom;
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t t = 0;
  std::uint64_t u = 0;

  friend bool operator==(const CarrierMeta&, const CarrierMeta&) = default;

  std::string tag() const {
    switch (kind) {
      case CarrierKind::cyclic: return "cyclic";
      case CarrierKind::dihedral: return "dihedral";
      case CarrierKind::symmetric_group: return "symmetric-group";
      case CarrierKind::mult_semigroup_zn: return "mult-semigroup-zn";
      case CarrierKind::symmetric_semigroup: return "symmetric-semigroup";
      case CarrierKind::additive_group_zn: return "additive-group-zn";
      case CarrierKind::mult_group_zp: return "mult-group-zp";
      case CarrierKind::groupoid_zn: return "groupoid-zn";
      case CarrierKind::loop_ln: return "loop-ln";
      case CarrierKind::custom: return "custom";
    }
    return "custom";
  }

  std::string describe() const {
    auto s = [](std::uint64_t v) { return std::to_string(v); };
    switch (kind) {
      case CarrierKind::cyclic: return "C" + s(k);
      case CarrierKind::dihedral: return "D(2," + s(m) + ")";
      case CarrierKind::symmetric_group: return "S" + s(k);
      case CarrierKind::mult_semigroup_zn: return "(Z" + s(n) + ",x)";
      case CarrierKind::symmetric_semigroup: return "S(" + s(k) + ")";
      case CarrierKind::additive_group_zn: return "(Z" + s(n) + ",+)";
      case CarrierKind::mult_group_zp: return "Z" + s(n) + "\\{0}";
      case CarrierKind::groupoid_zn: return "Z" + s(n) + "(" + s(t) + "," + s(u) + ")";
      case CarrierKind::loop_ln: return "L" + s(n) + "(" + s(m) + ")";
      case CarrierKind::custom: return "custom";
    }
    return "custom";
  }
};

/// A finite magma: element labels plus a row-major operation table of
/// element indices, table[a * size + b] = a * b.
class Magma {
 public:
  using Index = std::uint32_t;

  Magma(std::vector<std::string> labels, std::vector<Index> table, CarrierMeta meta = {},
        bool interval_labeled = false)
      : labels_(std::move(labels)), table_(std::move(table)), meta_(meta), interval_labeled_(interval_labeled) {
    const std::size_t k = labels_.size();
    if (k == 0) fail(errc::invalid_argument, "magma must have at least one element");
    if (table_.size() != k * k) fail(errc::invalid_argument, "operation table must be k x k");
    for (auto v : table_)
      if (v >= k) fail(errc::invalid_argument, "operation table entry out of range (closure)");
    identity_ = find_identity();
    absorbing_ = find_absorbing();
  }

  std::size_t size() const { return labels_.size(); }
  Index op(Index a, Index b) const { return table_[static_cast<std::size_t>(a) * size() + b]; }
  const std::vector<Index>& table() const { return table_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const CarrierMeta& meta() const { return meta_; }
  bool interval_labeled() const { return interval_labeled_; }

  const std::string& plain_label(Index i) const { return labels_[i]; }
  std::string label(Index i) const {
    return interval_labeled_ ? "[0, " + labels_[i] + "]" : labels_[i];
  }

  /// Same table, rendered with [0, a] labels or plain ones.
  Magma relabeled(bool interval) const {
    Magma copy = *this;
    copy.interval_labeled_ = interval;
    return copy;
  }

  std::optional<Index> identity() const { return identity_; }
  /// Element z with z*x = x*z = z for all x, if any.
  std::optional<Index> absorbing() const { return absorbing_; }

  /// True for carriers whose elements are residues of Z_n, addressed by the
  /// `<i>b` basis token.
  bool has_residue_elements() const {
    switch (meta_.kind) {
      case CarrierKind::groupoid_zn:
      case CarrierKind::mult_semigroup_zn:
      case CarrierKind::additive_group_zn:
      case CarrierKind::mult_group_zp: return true;
      default: return false;
    }
  }

  std::optional<Index> index_of_residue(std::uint64_t r) const {
    if (!has_residue_elements()) return std::nullopt;
    if (meta_.kind == CarrierKind::mult_group_zp) {
      if (r == 0 || r > size()) return std::nullopt;
      return static_cast<Index>(r - 1);
    }
    if (r >= size()) return std::nullopt;
    return static_cast<Index>(r);
  }

  std::uint64_t residue_of(Index i) const {
    return meta_.kind == CarrierKind::mult_group_zp ? std::uint64_t{i} + 1 : std::uint64_t{i};
  }

  std::optional<Index> index_of_label(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return static_cast<Index>(i);
    return std::nullopt;
  }

  bool is_commutative() const {
    for (Index a = 0; a < size(); ++a)
      for (Index b = a + 1; b < size(); ++b)
        if (op(a, b) != op(b, a)) return false;
    return true;
  }

  /// Structural equality of the tables; labels and rendering are ignored.
  bool same_table(const Magma& other) const { return table_ == other.table_; }

  friend bool operator==(const Magma& a, const Magma& b) {
    return a.labels_ == b.labels_ && a.table_ == b.table_ && a.meta_ == b.meta_;
  }

 private:
  std::optional<Index> find_identity() const {
    const Index k = static_cast<Index>(size());
    for (Index e = 0; e < k; ++e) {
      bool ok = true;
      for (Index x = 0; x < k && ok; ++x) ok = op(e, x) == x && op(x, e) == x;
      if (ok) return e;
    }
    return std::nullopt;
  }

  std::optional<Index> find_absorbing() const {
    const Index k = static_cast<Index>(size());
    for (Index z = 0; z < k; ++z) {
      bool ok = true;
      for (Index x = 0; x < k && ok; ++x) ok = op(z, x) == z && op(x, z) == z;
      if (ok) return z;
    }
    return std::nullopt;
  }

  std::vector<std::string> labels_;
  std::vector<Index> table_;
  CarrierMeta meta_;
  bool interval_labeled_ = false;
  std::optional<Index> identity_;
  std::optional<Index> absorbing_;
};

inline constexpr std::size_t kMaxTableEntries = 1'000'000;
inline constexpr std::uint64_t kMaxSymmetricSemigroupDegree = 5;

namespace detail {

inline void guard_table(std::uint64_t k, const std::string& what) {
  if (k > 0 && k * k > kMaxTableEntries)
    fail(errc::budget_exceeded, what + " requires " + std::to_string(k * k) +
                                    " table entries; the budget is " + std::to_string(kMaxTableEntries));
}

inline std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Verifies Latin square, identity and two-sided inverses for group builders.
inline void verify_group(const Magma& g) {
  const auto k = static_cast<Magma::Index>(g.size());
  auto e = g.identity();
  if (!e) fail(errc::invalid_argument, g.meta().describe() + " has no identity");
  for (Magma::Index a = 0; a < k; ++a) {
    std::vector<char> row(k, 0), col(k, 0);
    bool inverse = false;
    for (Magma::Index b = 0; b < k; ++b) {
      if (row[g.op(a, b)]++ || col[g.op(b, a)]++)
        fail(errc::invalid_argument, g.meta().describe() + " is not a Latin square");
      if (g.op(a, b) == *e && g.op(b, a) == *e) inverse = true;
    }
    if (!inverse) fail(errc::invalid_argument, g.meta().describe() + " lacks an inverse for " + g.plain_label(a));
  }
}

inline std::string cycle_label(const std::vector<std::uint32_t>& perm) {
  std::string out;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s] || perm[s] == s) continue;
    out += "(";
    std::size_t x = s;
    bool first = true;
    while (!seen[x]) {
      seen[x] = 1;
      if (!first) out += " ";
      out += std::to_string(x + 1);
      first = false;
      x = perm[x];
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

}  // namespace detail

/// Loop L_n(m) on {e, 1, ..., n}: e is the identity, i*i = e, and
/// i*j = (m*j - (m-1)*i) mod n otherwise, with residue 0 written as n.
inline Magma build_loop(std::uint64_t n, std::uint64_t m) {
  if (n <= 3 || n % 2 == 0) fail(errc::invalid_argument, "n must be odd and > 3");
  if (m <= 1 || m >= n) fail(errc::invalid_argument, "m must satisfy 1 < m < n");
  if (std::gcd(m, n) != 1) fail(errc::invalid_argument, "gcd(m, n) must be 1");
  if (std::gcd(m - 1, n) != 1) fail(errc::invalid_argument, "gcd(m - 1, n) must be 1");
  detail::guard_table(n + 1, "L" + std::to_string(n) + "(" + std::to_string(m) + ")");
  const std::size_t k = n + 1;
  std::vector<std::string> labels{"e"};
  for (std::uint64_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  std::vector<Magma::Index> table(k * k);
  const auto sn = static_cast<std::int64_t>(n), sm = static_cast<std::int64_t>(m);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t r;
      if (i == 0) r = j;
      else if (j == 0) r = i;
      else if (i == j) r = 0;
      else {
        auto t = detail::mod(sm * static_cast<std::int64_t>(j) - (sm - 1) * static_cast<std::int64_t>(i), sn);
        r = t == 0 ? n : static_cast<std::size_t>(t);
      }
      table[i * k + j] = static_cast<Magma::Index>(r);
    }
  return Magma(std::move(labels), std::move(table), {CarrierKind::loop_ln, 0, n, m, 0, 0});
}

/// Groupoid Z_n(t, u): a*b = (t*a + u*b) mod n.
inline Magma build_groupoid(std::uint64_t n, std::uint64_t t, std::uint64_t u) {
  if (n < 2) fail(errc::invalid_argument, "groupoid requires n >= 2");
  if (t >= n || u >= n) fail(errc::invalid_argument, "t and u must lie in [0, n)");
  if (t == 0 && u == 0) fail(errc::invalid_argument, "(t, u) must not be (0, 0)");
  detail::guard_table(n, "groupoid Z" + std::to_string(n));
  std::vector<std::string> labels;
  for (std::uint64_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  std::vector<Magma::Index> table(n * n);
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b)
      table[a * n + b] = static_cast<Magma::Index>((t * a + u * b) % n);
  return Magma(std::move(labels), std::move(table), {CarrierKind::groupoid_zn, 0, n, 0, t, u});
}

namespace carriers {

/// <g | g^k = 1>, elements e, g, g^2, ..., g^(k-1).
inline Magma cyclic(std::uint64_t k) {
  if (k < 1) fail(errc::invalid_argument, "cyclic group order must be positive");
  detail::guard_table(k, "cyclic group");
  std::vector<std::string> labels{"e"};
  for (std::uint64_t i = 1; i < k; ++i) labels.push_back(i == 1 ? "g" : "g^" + std::to_string(i));
  std::vector<Magma::Index> table(k * k);
  for (std::uint64_t a = 0; a < k; ++a)
    for (std::uint64_t b = 0; b < k; ++b) table[a * k + b] = static_cast<Magma::Index>((a + b) % k);
  Magma g(std::move(labels), std::move(table), {CarrierKind::cyclic, k, 0, 0, 0, 0});
  detail::verify_group(g);
  return g;
}

/// D(2,m) = <a, b | a^2 = b^m = 1, bab = a>, order 2m. Element a^i b^j sits
/// at index i*m + j.
inline Magma dihedral(std::uint64_t m) {
  if (m < 2) fail(errc::invalid_argument, "dihedral group requires m >= 2");
  detail::guard_table(2 * m, "dihedral group");
  const std::uint64_t k = 2 * m;
  std::vector<std::string> labels;
  for (std::uint64_t i = 0; i < 2; ++i)
    for (std::uint64_t j = 0; j < m; ++j) {
      std::string s = i ? "a" : "";
      if (j == 1) s += "b";
      else if (j > 1) s += "b^" + std::to_string(j);
      labels.push_back(s.empty() ? "e" : s);
    }
  std::vector<Magma::Index> table(k * k);
  const auto sm = static_cast<std::int64_t>(m);
  // b^j a = a b^(-j), so (a^i b^j)(a^p b^q) = a^(i+p) b^((-1)^p j + q).
  for (std::uint64_t x = 0; x < k; ++x)
    for (std::uint64_t y = 0; y < k; ++y) {
      std::int64_t i = x / m, j = x % m, p = y / m, q = y % m;
      std::int64_t bi = (i + p) % 2;
      std::int64_t bj = detail::mod((p ? -j : j) + q, sm);
      table[x * k + y] = static_cast<Magma::Index>(bi * sm + bj);
    }
  Magma g(std::move(labels), std::move(table), {CarrierKind::dihedral, 0, 0, m, 0, 0});
  detail::verify_group(g);
  return g;
}

/// S_k on {1..k}, identity first, remaining permutations in lexicographic
/// order of their image lists. The product s*t applies s first, then t.
inline Magma symmetric_group(std::uint64_t k) {
  if (k < 1 || k > 6) fail(errc::budget_exceeded, "symmetric group degree must be in [1, 6]");
  std::vector<std::vector<std::uint32_t>> perms;
  std::vector<std::uint32_t> p(k);
  std::iota(p.begin(), p.end(), 0u);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::size_t n = perms.size();
  std::vector<std::string> labels;
  for (const auto& q : perms) labels.push_back(detail::cycle_label(q));
  std::vector<Magma::Index> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::uint32_t> c(k);
      for (std::size_t x = 0; x < k; ++x) c[x] = perms[b][perms[a][x]];
      auto it = std::lower_bound(perms.begin(), perms.end(), c);
      table[a * n + b] = static_cast<Magma::Index>(it - perms.begin());
    }
  Magma g(std::move(labels), std::move(table), {CarrierKind::symmetric_group, k, 0, 0, 0, 0});
  detail::verify_group(g);
  return g;
}

/// S(k): all maps {1..k} -> {1..k} under composition (apply left factor
/// first). The identity map comes first; the rest follow lexicographically.
inline Magma symmetric_semigroup(std::uint64_t k) {
  if (k < 1 || k > kMaxSymmetricSemigroupDegree)
    fail(errc::budget_exceeded, "symmetric semigroup degree must be in [1, " +
                                    std::to_string(kMaxSymmetricSemigroupDegree) + "]");
  std::uint64_t n = 1;
  for (std::uint64_t i = 0; i < k; ++i) n *= k;
  std::vector<std::vector<std::uint32_t>> maps;
  maps.reserve(n);
  for (std::uint64_t code = 0; code < n; ++code) {
    std::vector<std::uint32_t> f(k);
    std::uint64_t c = code;
    for (std::uint64_t x = k; x-- > 0;) {
      f[x] = static_cast<std::uint32_t>(c % k);
      c /= k;
    }
    maps.push_back(std::move(f));
  }
  std::vector<std::uint32_t> id(k);
  std::iota(id.begin(), id.end(), 0u);
  auto id_it = std::find(maps.begin(), maps.end(), id);
  std::rotate(maps.begin(), id_it, id_it + 1);
  auto encode = [&](const std::vector<std::uint32_t>& f) {
    std::uint64_t c = 0;
    for (auto v : f) c = c * k + v;
    return c;
  };
  std::vector<std::uint64_t> position(n);
  for (std::size_t i = 0; i < maps.size(); ++i) position[encode(maps[i])] = i;
  std::vector<std::string> labels;
  for (const auto& f : maps) {
    std::string s = "[";
    for (std::size_t x = 0; x < k; ++x) s += (x ? " " : "") + std::to_string(f[x] + 1);
    labels.push_back(s + "]");
  }
  std::vector<Magma::Index> table(n * n);
  std::vector<std::uint32_t> c(k);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t x = 0; x < k; ++x) c[x] = maps[b][maps[a][x]];
      table[a * n + b] = static_cast<Magma::Index>(position[encode(c)]);
    }
  return Magma(std::move(labels), std::move(table), {CarrierKind::symmetric_semigroup, k, 0, 0, 0, 0});
}

/// (Z_n, x). Elements keep residue order, so 0 comes first.
inline Magma mult_semigroup_zn(std::uint64_t n) {
  if (n < 2) fail(errc::invalid_argument, "mult-semigroup-zn requires n >= 2");
  detail::guard_table(n, "mult-semigroup-zn");
  std::vector<std::string> labels;
  for (std::uint64_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  std::vector<Magma::Index> table(n * n);
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Magma::Index>(a * b % n);
  return Magma(std::move(labels), std::move(table), {CarrierKind::mult_semigroup_zn, 0, n, 0, 0, 0});
}

inline Magma additive_group_zn(std::uint64_t n) {
  if (n < 1) fail(errc::invalid_argument, "additive-group-zn requires n >= 1");
  detail::guard_table(n, "additive-group-zn");
  std::vector<std::string> labels;
  for (std::uint64_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  std::vector<Magma::Index> table(n * n);
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Magma::Index>((a + b) % n);
  Magma g(std::move(labels), std::move(table), {CarrierKind::additive_group_zn, 0, n, 0, 0, 0});
  detail::verify_group(g);
  return g;
}

/// Z_p \ {0} under multiplication mod p; index i holds residue i + 1.
inline Magma mult_group_zp(std::uint64_t p) {
  if (!detail::is_prime(p)) fail(errc::invalid_argument, "mult-group-zp requires a prime p");
  detail::guard_table(p - 1, "mult-group-zp");
  const std::uint64_t k = p - 1;
  std::vector<std::string> labels;
  for (std::uint64_t r = 1; r < p; ++r) labels.push_back(std::to_string(r));
  std::vector<Magma::Index> table(k * k);
  for (std::uint64_t a = 0; a < k; ++a)
    for (std::uint64_t b = 0; b < k; ++b)
      table[a * k + b] = static_cast<Magma::Index>((a + 1) * (b + 1) % p - 1);
  Magma g(std::move(labels), std::move(table), {CarrierKind::mult_group_zp, 0, p, 0, 0, 0});
  detail::verify_group(g);
  return g;
}

}  // namespace carriers

/// Builds the carrier named by `meta`, enforcing the size guard.
inline Magma build_standard(const CarrierMeta& meta) {
  switch (meta.kind) {
    case CarrierKind::cyclic: return carriers::cyclic(meta.k);
    case CarrierKind::dihedral: return carriers::dihedral(meta.m);
    case CarrierKind::symmetric_group: return carriers::symmetric_group(meta.k);
    case CarrierKind::mult_semigroup_zn: return carriers::mult_semigroup_zn(meta.n);
    case CarrierKind::symmetric_semigroup: return carriers::symmetric_semigroup(meta.k);
    case CarrierKind::additive_group_zn: return carriers::additive_group_zn(meta.n);
    case CarrierKind::mult_group_zp: return carriers::mult_group_zp(meta.n);
    case CarrierKind::groupoid_zn: return build_groupoid(meta.n, meta.t, meta.u);
    case CarrierKind::loop_ln: return build_loop(meta.n, meta.m);
    case CarrierKind::custom: break;
  }
  fail(errc::invalid_argument, "custom carriers are built from an explicit table");
}

inline std::string table_corner(const Magma& g) {
  switch (g.meta().kind) {
    case CarrierKind::mult_semigroup_zn:
    case CarrierKind::mult_group_zp: return "\xC3\x97";  // multiplication sign
    case CarrierKind::additive_group_zn: return "+";
    case CarrierKind::loop_ln: return g.interval_labeled() ? "*" : "o";
    default: return "*";
  }
}

/// Tab-separated grid: a header row of labels, then one row per element
/// headed by its label.
inline std::string render_table(const Magma& g) {
  std::ostringstream out;
  const auto k = static_cast<Magma::Index>(g.size());
  out << table_corner(g);
  for (Magma::Index b = 0; b < k; ++b) out << '\t' << g.label(b);
  out << '\n';
  for (Magma::Index a = 0; a < k; ++a) {
    out << g.label(a);
    for (Magma::Index b = 0; b < k; ++b) out << '\t' << g.label(g.op(a, b));
    out << '\n';
  }
  return out.str();
}

}  // namespace isl
