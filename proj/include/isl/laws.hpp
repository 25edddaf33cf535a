#pragma once

// Identity-law checks and substructure search on finite magmas.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "isl/error.hpp"
#include "isl/magma.hpp"
#include "isl/parallel.hpp"

namespace isl {

using Subset = std::vector<Magma::Index>;

/// Outcome of one law. A failed law carries the lexicographically first
/// violating tuple. Laws phrased through an identity fail with an empty
/// witness when the magma has none.
struct LawCheck {
  bool holds = true;
  std::vector<Magma::Index> witness;

  friend bool operator==(const LawCheck&, const LawCheck&) = default;
};

/// Flags and witnesses. latin_square witnesses are (0 for a row or 1 for a
/// column, line, first position, second position) with equal entries;
/// smarandache stores the first proper associative sub-magma when it holds.
struct LawProfile {
  LawCheck commutative;
  LawCheck associative;
  LawCheck latin_square;
  LawCheck has_identity;
  LawCheck moufang;
  LawCheck left_bol;
  LawCheck right_bol;
  LawCheck wip;
  LawCheck left_alternative;
  LawCheck right_alternative;
  LawCheck p_groupoid;
  LawCheck idempotent_law;
  LawCheck smarandache;

  friend bool operator==(const LawProfile&, const LawProfile&) = default;
};

namespace detail {

using Idx = Magma::Index;
using Witness = std::vector<Idx>;

template <class Pred>
LawCheck binary_law(const Magma& g, Pred violates) {
  const std::size_t k = g.size();
  auto hit = parallel_first<Witness>(k, [&](std::size_t lo, std::size_t hi) -> std::optional<Witness> {
    for (Idx x = static_cast<Idx>(lo); x < hi; ++x)
      for (Idx y = 0; y < k; ++y)
        if (violates(x, y)) return Witness{x, y};
    return std::nullopt;
  });
  if (hit) return {false, *hit};
  return {};
}

template <class Pred>
LawCheck ternary_law(const Magma& g, Pred violates) {
  const std::size_t k = g.size();
  auto hit = parallel_first<Witness>(k, [&](std::size_t lo, std::size_t hi) -> std::optional<Witness> {
    for (Idx x = static_cast<Idx>(lo); x < hi; ++x)
      for (Idx y = 0; y < k; ++y)
        for (Idx z = 0; z < k; ++z)
          if (violates(x, y, z)) return Witness{x, y, z};
    return std::nullopt;
  }, 1);
  if (hit) return {false, *hit};
  return {};
}

inline Subset members(const std::vector<char>& in) {
  Subset s;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) s.push_back(static_cast<Idx>(i));
  return s;
}

inline bool subset_less(const Subset& a, const Subset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace detail

/// Closure of `seed` under the operation, as a sorted index list.
inline Subset closure(const Magma& g, const Subset& seed) {
  std::vector<char> in(g.size(), 0);
  Subset list;
  for (auto s : seed) {
    if (s >= g.size()) fail(errc::invalid_argument, "subset element out of range");
    if (!in[s]) {
      in[s] = 1;
      list.push_back(s);
    }
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto x = list[i];
    for (std::size_t j = 0; j <= i; ++j) {
      const auto y = list[j];
      for (auto v : {g.op(x, y), g.op(y, x)})
        if (!in[v]) {
          in[v] = 1;
          list.push_back(v);
        }
    }
  }
  return detail::members(in);
}

inline bool is_closed(const Magma& g, const Subset& s) {
  std::vector<char> in(g.size(), 0);
  for (auto x : s) in[x] = 1;
  for (auto x : s)
    for (auto y : s)
      if (!in[g.op(x, y)]) return false;
  return true;
}

inline bool is_associative_on(const Magma& g, const Subset& s) {
  for (auto x : s)
    for (auto y : s)
      for (auto z : s)
        if (g.op(g.op(x, y), z) != g.op(x, g.op(y, z))) return false;
  return true;
}

/// Identity of the sub-magma on `s`, if it has one.
inline std::optional<Magma::Index> identity_on(const Magma& g, const Subset& s) {
  for (auto e : s) {
    bool ok = true;
    for (auto x : s)
      if (g.op(e, x) != x || g.op(x, e) != x) {
        ok = false;
        break;
      }
    if (ok) return e;
  }
  return std::nullopt;
}

/// Closed subset with identity whose restricted rows and columns are
/// permutations of the subset.
inline bool is_subloop(const Magma& g, const Subset& s) {
  if (s.empty() || !is_closed(g, s) || !identity_on(g, s)) return false;
  std::vector<char> seen(g.size(), 0);
  for (int side = 0; side < 2; ++side)
    for (auto a : s) {
      for (auto b : s) seen[side ? g.op(b, a) : g.op(a, b)] = 0;
      for (auto b : s) {
        auto v = side ? g.op(b, a) : g.op(a, b);
        if (seen[v]) return false;
        seen[v] = 1;
      }
    }
  return true;
}

inline bool is_subgroup(const Magma& g, const Subset& s) {
  if (s.empty() || !is_closed(g, s) || !is_associative_on(g, s)) return false;
  auto e = identity_on(g, s);
  if (!e) return false;
  for (auto x : s) {
    bool inv = false;
    for (auto y : s)
      if (g.op(x, y) == *e && g.op(y, x) == *e) {
        inv = true;
        break;
      }
    if (!inv) return false;
  }
  return true;
}

inline bool is_subsemigroup(const Magma& g, const Subset& s) {
  return !s.empty() && is_closed(g, s) && is_associative_on(g, s);
}

/// First proper associative closed subset with at least two elements, in
/// (size, lexicographic) order. Every such subset contains the closure of
/// any two of its elements, so closures of pairs suffice.
inline std::optional<Subset> find_proper_semigroup(const Magma& g) {
  const auto k = static_cast<Magma::Index>(g.size());
  std::optional<Subset> best;
  std::set<Subset> seen;
  for (Magma::Index a = 0; a < k; ++a)
    for (Magma::Index b = a; b < k; ++b) {
      Subset c = closure(g, a == b ? Subset{a} : Subset{a, b});
      if (c.size() < 2 || c.size() == g.size() || !seen.insert(c).second) continue;
      if (best && !detail::subset_less(c, *best)) continue;
      if (is_associative_on(g, c)) best = c;
    }
  return best;
}

/// Decides every law by exhaustive evaluation over the table.
inline LawProfile check_laws(const Magma& g) {
  using detail::Idx;
  const std::size_t k = g.size();
  auto m = [&g](Idx a, Idx b) { return g.op(a, b); };
  LawProfile p;

  p.commutative = detail::binary_law(g, [&](Idx x, Idx y) { return m(x, y) != m(y, x); });
  p.associative = detail::ternary_law(g, [&](Idx x, Idx y, Idx z) { return m(m(x, y), z) != m(x, m(y, z)); });

  for (int side = 0; side < 2 && p.latin_square.holds; ++side)
    for (Idx line = 0; line < k && p.latin_square.holds; ++line) {
      std::vector<Idx> first(k, static_cast<Idx>(k));
      for (Idx pos = 0; pos < k; ++pos) {
        Idx v = side ? m(pos, line) : m(line, pos);
        if (first[v] != k) {
          p.latin_square = {false, {static_cast<Idx>(side), line, first[v], pos}};
          break;
        }
        first[v] = pos;
      }
    }

  auto e = g.identity();
  p.has_identity.holds = e.has_value();

  p.moufang = detail::ternary_law(g, [&](Idx x, Idx y, Idx z) { return m(m(x, y), m(z, x)) != m(m(x, m(y, z)), x); });
  p.left_bol = detail::ternary_law(g, [&](Idx x, Idx y, Idx z) { return m(x, m(y, m(x, z))) != m(m(x, m(y, x)), z); });
  p.right_bol = detail::ternary_law(g, [&](Idx x, Idx y, Idx z) { return m(m(m(x, y), z), y) != m(x, m(m(y, z), y)); });
  if (e) {
    const Idx id = *e;
    p.wip = detail::ternary_law(g, [&](Idx x, Idx y, Idx z) { return (m(m(x, y), z) == id) != (m(x, m(y, z)) == id); });
  } else {
    p.wip.holds = false;
  }
  p.left_alternative = detail::binary_law(g, [&](Idx x, Idx y) { return m(x, m(x, y)) != m(m(x, x), y); });
  p.right_alternative = detail::binary_law(g, [&](Idx x, Idx y) { return m(m(y, x), x) != m(y, m(x, x)); });
  p.p_groupoid = detail::binary_law(g, [&](Idx x, Idx y) { return m(m(x, y), x) != m(x, m(y, x)); });
  for (Idx x = 0; x < k; ++x)
    if (m(x, x) != x) {
      p.idempotent_law = {false, {x}};
      break;
    }

  if (auto s = find_proper_semigroup(g)) p.smarandache = {true, *s};
  else p.smarandache.holds = false;
  return p;
}

/// Associators a(x,y,z), solving (xy)z = (x(yz))a, closed under the
/// operation together with e.
inline Subset associator_closure(const Magma& g) {
  auto e = g.identity();
  const std::size_t k = g.size();
  bool latin = true;
  for (std::size_t a = 0; a < k && latin; ++a) {
    std::vector<char> row(k, 0), col(k, 0);
    for (Magma::Index b = 0; b < k; ++b) {
      if (row[g.op(static_cast<Magma::Index>(a), b)]++ || col[g.op(b, static_cast<Magma::Index>(a))]++) {
        latin = false;
        break;
      }
    }
  }
  if (!e || !latin) fail(errc::not_a_loop, "associator closure requires a loop (Latin square with identity)");
  // ldiv[r * k + v] = the a with r * a = v
  std::vector<Magma::Index> ldiv(k * k);
  for (Magma::Index r = 0; r < k; ++r)
    for (Magma::Index a = 0; a < k; ++a) ldiv[r * k + g.op(r, a)] = a;
  std::vector<char> in(k, 0);
  in[*e] = 1;
  for (Magma::Index x = 0; x < k; ++x)
    for (Magma::Index y = 0; y < k; ++y)
      for (Magma::Index z = 0; z < k; ++z) {
        auto lhs = g.op(g.op(x, y), z);
        auto r = g.op(x, g.op(y, z));
        in[ldiv[r * k + lhs]] = 1;
      }
  return closure(g, detail::members(in));
}

enum class SubstructureMode { subloop, subgroup, subsemigroup };
enum class EnumerationStrategy { exhaustive, generated };

inline constexpr std::size_t kMaxExhaustiveCarrier = 24;

inline bool matches_mode(const Magma& g, const Subset& s, SubstructureMode mode) {
  switch (mode) {
    case SubstructureMode::subloop: return is_subloop(g, s);
    case SubstructureMode::subgroup: return is_subgroup(g, s);
    case SubstructureMode::subsemigroup: return is_subsemigroup(g, s);
  }
  return false;
}

/// All closed subsets of the requested kind with at most max_size elements,
/// ordered by size then lexicographically. Exhaustive mode walks the lattice
/// of closed sets (carriers up to 24 elements); generated mode closes every
/// seed set of size at most seed_size.
inline std::vector<Subset> enumerate_substructures(const Magma& g, SubstructureMode mode, std::size_t max_size,
                                                   EnumerationStrategy strategy = EnumerationStrategy::exhaustive,
                                                   std::size_t seed_size = 2) {
  const std::size_t k = g.size();
  std::set<Subset> found;
  if (strategy == EnumerationStrategy::exhaustive) {
    if (k > kMaxExhaustiveCarrier)
      fail(errc::budget_exceeded, "exhaustive enumeration is limited to " + std::to_string(kMaxExhaustiveCarrier) +
                                      " elements; use generated-closure mode");
    auto mask_of = [](const Subset& s) {
      std::uint32_t mk = 0;
      for (auto x : s) mk |= 1u << x;
      return mk;
    };
    std::set<std::uint32_t> seen;
    std::vector<Subset> frontier;
    for (Magma::Index x = 0; x < k; ++x) {
      Subset c = closure(g, {x});
      if (c.size() <= max_size && seen.insert(mask_of(c)).second) frontier.push_back(c);
    }
    while (!frontier.empty()) {
      std::vector<Subset> next;
      for (const auto& c : frontier) {
        found.insert(c);
        std::vector<char> in(k, 0);
        for (auto x : c) in[x] = 1;
        for (Magma::Index x = 0; x < k; ++x) {
          if (in[x]) continue;
          Subset seed = c;
          seed.push_back(x);
          Subset d = closure(g, seed);
          if (d.size() <= max_size && seen.insert(mask_of(d)).second) next.push_back(std::move(d));
        }
      }
      frontier = std::move(next);
    }
  } else {
    if (seed_size == 0 || seed_size > 2) fail(errc::invalid_argument, "generated mode supports seed sets of size 1 or 2");
    for (Magma::Index a = 0; a < k; ++a) {
      Subset c = closure(g, {a});
      if (c.size() <= max_size) found.insert(c);
      if (seed_size < 2) continue;
      for (Magma::Index b = a + 1; b < k; ++b) {
        Subset d = closure(g, {a, b});
        if (d.size() <= max_size) found.insert(d);
      }
    }
  }
  std::vector<Subset> out;
  for (const auto& s : found)
    if (matches_mode(g, s, mode)) out.push_back(s);
  std::sort(out.begin(), out.end(), detail::subset_less);
  return out;
}

/// Lagrange bookkeeping for a list of substructures.
struct OrderReport {
  Subset subset;
  std::size_t order;
  bool divides_carrier_order;
};

inline std::vector<OrderReport> order_divisibility(const Magma& g, const std::vector<Subset>& subs) {
  std::vector<OrderReport> out;
  for (const auto& s : subs) out.push_back({s, s.size(), !s.empty() && g.size() % s.size() == 0});
  return out;
}

struct Normalizers {
  Subset n1;
  Subset n2;
};

/// n1 = {a : aH = Ha}, n2 = {x : x(Hx) = H}, compared as sets.
inline Normalizers normalizers(const Magma& g, const Subset& h_in) {
  Subset h = h_in;
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  for (auto x : h)
    if (x >= g.size()) fail(errc::invalid_argument, "subset element out of range");
  if (h.empty() || !is_closed(g, h)) fail(errc::not_closed, "subset is not closed under the operation");
  auto as_set = [](Subset s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  };
  Normalizers out;
  for (Magma::Index a = 0; a < g.size(); ++a) {
    Subset left, right, twisted;
    for (auto x : h) {
      left.push_back(g.op(a, x));
      right.push_back(g.op(x, a));
      twisted.push_back(g.op(a, g.op(x, a)));
    }
    if (as_set(left) == as_set(right)) out.n1.push_back(a);
    if (as_set(twisted) == h) out.n2.push_back(a);
  }
  return out;
}

}  // namespace isl
