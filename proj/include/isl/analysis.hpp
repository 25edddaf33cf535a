#pragma once

// Special elements, substructures, Smarandache certificates and
// classification over a SemiringHandle.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "isl/domain.hpp"
#include "isl/error.hpp"
#include "isl/formal_sum.hpp"
#include "isl/handle.hpp"
#include "isl/matrix.hpp"
#include "isl/parallel.hpp"

namespace isl {

/// An indexed, finite set of elements of a handle with optional cached
/// operation tables. Results falling outside the set map to kOutside.
class FiniteView {
 public:
  using Idx = std::uint32_t;
  static constexpr std::int32_t kOutside = -1;
  static constexpr std::size_t kMaxTabulated = 1500;

  FiniteView(const SemiringHandle& h, std::vector<Element> elems, bool tabulate = true) : h_(h) {
    auto z = h_.zero();
    if (std::find(elems.begin(), elems.end(), z) == elems.end()) elems.insert(elems.begin(), z);
    for (auto& e : elems) {
      auto key = h_.render(e);
      if (index_.count(key)) continue;
      index_.emplace(std::move(key), static_cast<Idx>(elems_.size()));
      elems_.push_back(std::move(e));
    }
    zero_ = *index_of(z);
    if (auto o = h_.one()) one_ = index_of(*o);
    if (tabulate && elems_.size() <= kMaxTabulated) build_tables();
  }

  /// Every element of a finite handle in canonical order. Lookups rank
  /// elements by their mixed-radix digits instead of by rendering.
  static FiniteView canonical(const SemiringHandle& h, std::uint64_t budget) {
    FiniteView v(h, h.elements(budget), false);
    v.install_ranker();
    if (v.size() <= kMaxTabulated) v.build_tables();
    return v;
  }

  const SemiringHandle& handle() const { return h_; }
  std::size_t size() const { return elems_.size(); }
  const Element& at(Idx i) const { return elems_[i]; }
  std::string render(Idx i) const { return h_.render(elems_[i]); }
  Idx zero() const { return zero_; }
  /// Index of the handle's one, if it exists and lies in the set.
  std::optional<Idx> one() const { return one_; }
  bool tabulated() const { return !mul_.empty(); }

  std::optional<Idx> index_of(const Element& e) const {
    if (ranker_) return ranker_(e);
    auto it = index_.find(h_.render(e));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::int32_t add(Idx a, Idx b) const {
    if (tabulated()) return add_[static_cast<std::size_t>(a) * size() + b];
    return lookup(h_.add(elems_[a], elems_[b]));
  }
  std::int32_t mul(Idx a, Idx b) const {
    if (tabulated()) return mul_[static_cast<std::size_t>(a) * size() + b];
    return lookup(h_.mul(elems_[a], elems_[b]));
  }
  bool mul_zero(Idx a, Idx b) const { return mul(a, b) == static_cast<std::int32_t>(zero_); }
  bool add_zero(Idx a, Idx b) const { return add(a, b) == static_cast<std::int32_t>(zero_); }
  bool is(std::int32_t r, Idx i) const { return r == static_cast<std::int32_t>(i); }

  bool closed() const {
    for (Idx a = 0; a < size(); ++a)
      for (Idx b = 0; b < size(); ++b)
        if (add(a, b) == kOutside || mul(a, b) == kOutside) return false;
    return true;
  }

 private:
  std::int32_t lookup(const Element& e) const {
    auto i = index_of(e);
    return i ? static_cast<std::int32_t>(*i) : kOutside;
  }

  void install_ranker() {
    const auto& d = h_.scalars();
    auto coeffs = d.elements();
    auto digit = [coeffs](const Endpoint& c) -> std::uint64_t {
      for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] == c) return i;
      return coeffs.size();
    };
    const std::uint64_t base = coeffs.size();
    const std::uint64_t zd = digit(d.zero());
    const std::size_t n = elems_.size();
    if (h_.domain()) {
      ranker_ = [digit, n](const Element& e) -> std::optional<Idx> {
        auto r = digit(std::get<Endpoint>(e));
        return r < n ? std::optional<Idx>(static_cast<Idx>(r)) : std::nullopt;
      };
    } else if (auto f = h_.formal_ptr()) {
      auto keys = f->basis_keys();
      std::vector<std::int64_t> pos(*f->basis_size(), -1);
      for (std::size_t i = 0; i < keys.size(); ++i) pos[keys[i]] = static_cast<std::int64_t>(i);
      std::vector<std::uint64_t> weight(keys.size(), 1);
      for (std::size_t i = keys.size(); i-- > 1;) weight[i - 1] = weight[i] * base;
      std::uint64_t zero_rank = 0;
      for (auto w : weight) zero_rank += zd * w;
      ranker_ = [digit, pos, weight, zero_rank, zd, base, n](const Element& e) -> std::optional<Idx> {
        std::uint64_t r = zero_rank;
        for (const auto& [k, c] : std::get<FormalSum>(e).terms()) {
          if (k >= pos.size() || pos[k] < 0) return std::nullopt;
          auto dg = digit(c);
          if (dg >= base) return std::nullopt;
          r += (dg - zd) * weight[static_cast<std::size_t>(pos[k])];
        }
        return r < n ? std::optional<Idx>(static_cast<Idx>(r)) : std::nullopt;
      };
    } else {
      ranker_ = [digit, base, n](const Element& e) -> std::optional<Idx> {
        std::uint64_t r = 0;
        for (const auto& c : std::get<IntervalMatrix>(e).entries()) {
          auto dg = digit(c);
          if (dg >= base) return std::nullopt;
          r = r * base + dg;
        }
        return r < n ? std::optional<Idx>(static_cast<Idx>(r)) : std::nullopt;
      };
    }
  }

  void build_tables() {
    const std::size_t n = size();
    auto rows = parallel_collect<std::pair<std::int32_t, std::int32_t>>(
        n,
        [&](std::size_t lo, std::size_t hi) {
          std::vector<std::pair<std::int32_t, std::int32_t>> part;
          part.reserve((hi - lo) * n);
          for (std::size_t a = lo; a < hi; ++a)
            for (std::size_t b = 0; b < n; ++b)
              part.emplace_back(lookup(h_.add(elems_[a], elems_[b])), lookup(h_.mul(elems_[a], elems_[b])));
          return part;
        },
        4);
    add_.resize(n * n);
    mul_.resize(n * n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      add_[i] = rows[i].first;
      mul_[i] = rows[i].second;
    }
  }

  SemiringHandle h_;
  std::vector<Element> elems_;
  std::unordered_map<std::string, Idx> index_;
  Idx zero_ = 0;
  std::optional<Idx> one_;
  std::vector<std::int32_t> add_, mul_;
  std::function<std::optional<Idx>(const Element&)> ranker_;
};

struct Finding {
  std::string kind;
  std::vector<std::string> witness;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct AnalysisReport {
  std::string name;
  std::string structure;
  std::string note;
  bool exhaustive = true;
  std::vector<Finding> findings;
  /// Named verdicts, e.g. the classification flags.
  std::vector<std::pair<std::string, bool>> flags;
  std::uint64_t pairs_scanned = 0;
  std::uint64_t elements_scanned = 0;
  std::uint64_t subsets_scanned = 0;

  bool empty() const { return findings.empty(); }
};

struct AnalysisOptions {
  std::uint64_t max_elements = 1u << 16;
  std::uint64_t max_pairs = std::uint64_t{1} << 28;
  std::uint64_t max_subsets = 1u << 20;
  std::uint64_t max_index = 8;
  std::size_t closure_cap = 4096;
  /// Elements to scan when the handle is infinite.
  std::vector<Element> sample;
};

namespace detail {

inline bool positive_scalars(const DomainSpec& d) {
  auto k = d.base_domain().kind();
  return k == DomainKind::nat || k == DomainKind::rat;
}

/// Why an infinite handle has no zero divisors, if a positivity argument
/// applies: nonnegative scalars never cancel, so nonzero factors give a
/// nonzero product.
inline std::optional<std::string> no_zero_divisor_proof(const SemiringHandle& h) {
  if (!positive_scalars(h.scalars())) return std::nullopt;
  if (h.domain()) return "proved: products of nonzero nonnegative endpoints are nonzero";
  if (auto* f = h.formal()) {
    if (f->absorbed_key()) return std::nullopt;
    return "proved: every pair of terms contributes a positive coefficient to the product";
  }
  if (h.matrix()->shape == MatrixShape::square && h.matrix()->n == 1)
    return "proved: 1x1 matrices multiply as endpoints";
  return std::nullopt;
}

inline std::vector<Element> unique_elements(const SemiringHandle& h, std::vector<Element> xs) {
  std::vector<Element> out;
  std::set<std::string> seen;
  for (auto& x : xs)
    if (seen.insert(h.render(x)).second) out.push_back(std::move(x));
  return out;
}

/// Elements of a finite handle up to the budget, in canonical order.
inline std::vector<Element> element_prefix(const SemiringHandle& h, std::uint64_t cap, bool& complete) {
  complete = true;
  if (h.cardinality(cap)) return h.elements(cap);
  complete = false;
  std::vector<Element> out;
  if (auto* d = h.domain()) {
    auto all = d->elements();
    for (std::size_t i = 0; i < all.size() && i < cap; ++i) out.emplace_back(all[i]);
  } else if (auto f = h.formal_ptr()) {
    auto keys = f->basis_keys();
    auto coeffs = f->coefficients().elements();
    std::vector<std::size_t> digits(keys.size(), 0);
    for (std::uint64_t t = 0; t < cap; ++t) {
      std::vector<FormalSum::Term> terms;
      for (std::size_t i = 0; i < keys.size(); ++i) terms.emplace_back(keys[i], coeffs[digits[i]]);
      out.emplace_back(FormalSum::from_terms(f, std::move(terms)));
      for (std::size_t i = keys.size(); i-- > 0;) {
        if (++digits[i] < coeffs.size()) break;
        digits[i] = 0;
      }
    }
  } else {
    const auto& ms = *h.matrix();
    auto coeffs = ms.domain.elements();
    std::vector<std::size_t> digits(ms.entry_count(), 0);
    for (std::uint64_t t = 0; t < cap; ++t) {
      std::vector<Endpoint> e;
      for (auto dg : digits) e.push_back(coeffs[dg]);
      out.emplace_back(IntervalMatrix(ms, std::move(e)));
      for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < coeffs.size()) break;
        digits[i] = 0;
      }
    }
  }
  return out;
}

}  // namespace detail

/// View over all elements of a finite handle (truncated to the budget) or
/// over the supplied sample of an infinite one. `complete` reports whether
/// the whole handle is covered.
inline FiniteView make_view(const SemiringHandle& h, const AnalysisOptions& opt, bool& complete) {
  if (h.is_finite() && h.cardinality(opt.max_elements)) {
    complete = true;
    return FiniteView::canonical(h, opt.max_elements);
  }
  if (h.is_finite()) return FiniteView(h, detail::element_prefix(h, opt.max_elements, complete));
  if (opt.sample.empty()) fail(errc::unsupported, h.describe() + " is infinite; supply a sample");
  complete = false;
  return FiniteView(h, detail::unique_elements(h, opt.sample));
}

namespace detail {

inline AnalysisReport start_report(const std::string& name, const FiniteView& v, bool complete) {
  AnalysisReport r;
  r.name = name;
  r.structure = v.handle().describe();
  r.exhaustive = complete;
  r.elements_scanned = v.size();
  if (!complete && !v.handle().is_finite()) r.note = "sampled";
  else if (!complete) r.note = "truncated to element budget";
  return r;
}

inline bool view_commutative(const FiniteView& v) {
  for (FiniteView::Idx a = 0; a < v.size(); ++a)
    for (FiniteView::Idx b = a + 1; b < v.size(); ++b)
      if (v.mul(a, b) != v.mul(b, a)) return false;
  return true;
}

// Stops a scan when the pair budget runs out.
struct PairBudget {
  std::uint64_t limit;
  std::uint64_t used = 0;
  bool tripped = false;
  bool take(std::uint64_t n = 1) {
    if (used + n > limit) {
      tripped = true;
      return false;
    }
    used += n;
    return true;
  }
};

}  // namespace detail

/// Nonzero pairs with product zero. Commutative views list unordered pairs
/// (a <= b); otherwise every ordered pair (a, b) with a*b = 0 is listed.
inline AnalysisReport find_zero_divisors(const SemiringHandle& h, const AnalysisOptions& opt = {}) {
  if (!h.is_finite() && opt.sample.empty()) {
    if (auto proof = detail::no_zero_divisor_proof(h)) {
      AnalysisReport r;
      r.name = "zero-divisors";
      r.structure = h.describe();
      r.note = *proof;
      return r;
    }
  }
  bool complete = true;
  FiniteView v = make_view(h, opt, complete);
  auto r = detail::start_report("zero-divisors", v, complete);
  const bool comm = detail::view_commutative(v);
  const std::size_t n = v.size();
  const auto z = v.zero();
  // rows that fit in the pair budget
  std::size_t rows = 0;
  for (std::uint64_t used = 0; rows < n; ++rows) {
    std::uint64_t row = comm ? n - rows : n;
    if (used + row > opt.max_pairs) break;
    used += row;
  }
  r.pairs_scanned = 0;
  for (std::size_t a = 0; a < rows; ++a) r.pairs_scanned += comm ? n - a : n;
  if (rows < n) {
    r.exhaustive = false;
    r.note = "pair budget exceeded";
  }
  auto hits = parallel_collect<std::pair<FiniteView::Idx, FiniteView::Idx>>(rows, [&](std::size_t lo, std::size_t hi) {
    std::vector<std::pair<FiniteView::Idx, FiniteView::Idx>> out;
    for (auto a = static_cast<FiniteView::Idx>(lo); a < hi; ++a) {
      if (a == z) continue;
      for (auto b = comm ? a : FiniteView::Idx{0}; b < n; ++b)
        if (b != z && v.mul_zero(a, b)) out.emplace_back(a, b);
    }
    return out;
  });
  for (auto [a, b] : hits) r.findings.push_back({"zero-divisor", {v.render(a), v.render(b)}});
  return r;
}

inline AnalysisReport find_idempotents(const SemiringHandle& h, const AnalysisOptions& opt = {}) {
  bool complete = true;
  FiniteView v = make_view(h, opt, complete);
  auto r = detail::start_report("idempotents", v, complete);
  for (FiniteView::Idx x = 0; x < v.size(); ++x)
    if (v.is(v.mul(x, x), x)) r.findings.push_back({"idempotent", {v.render(x)}});
  r.pairs_scanned = v.size();
  return r;
}

/// Nonzero x whose left-nested powers x, x*x, (x*x)*x, ... reach zero by
/// max_index. The witness is the power chain ending in 0; chains longer
/// than a square are tagged nilpotent-left-nested.
inline AnalysisReport find_nilpotents(const SemiringHandle& h, const AnalysisOptions& opt = {}) {
  if (opt.max_index < 2 || opt.max_index > 8) fail(errc::invalid_argument, "max_index must lie in [2, 8]");
  bool complete = true;
  FiniteView v = make_view(h, opt, complete);
  auto r = detail::start_report("nilpotents", v, complete);
  for (FiniteView::Idx x = 0; x < v.size(); ++x) {
    if (x == v.zero()) continue;
    std::vector<std::string> chain{v.render(x)};
    Element p = v.at(x);
    for (std::uint64_t k = 2; k <= opt.max_index; ++k) {
      p = h.mul(p, v.at(x));
      chain.push_back(h.render(p));
      ++r.pairs_scanned;
      if (h.is_zero(p)) {
        r.findings.push_back({k == 2 ? "nilpotent" : "nilpotent-left-nested", chain});
        break;
      }
    }
  }
  return r;
}

/// Two-sided units; each finding is (x, first partner y) with xy = yx = 1.
inline AnalysisReport find_units(const SemiringHandle& h, const AnalysisOptions& opt = {}) {
  if (!h.one()) fail(errc::unsupported, h.describe() + " has no multiplicative identity");
  bool complete = true;
  FiniteView v = make_view(h, opt, complete);
  auto r = detail::start_report("units", v, complete);
  auto one = v.one();
  if (!one) fail(errc::unsupported, "the identity is not among the scanned elements");
  const std::size_t n = v.size();
  auto hits = parallel_collect<std::pair<FiniteView::Idx, FiniteView::Idx>>(n, [&](std::size_t lo, std::size_t hi) {
    std::vector<std::pair<FiniteView::Idx, FiniteView::Idx>> out;
    for (auto x = static_cast<FiniteView::Idx>(lo); x < hi; ++x)
      for (FiniteView::Idx y = 0; y < n; ++y)
        if (v.is(v.mul(x, y), *one) && v.is(v.mul(y, x), *one)) {
          out.emplace_back(x, y);
          break;
        }
    return out;
  });
  r.pairs_scanned = n * n;
  for (auto [x, y] : hits) r.findings.push_back({"unit", {v.render(x), v.render(y)}});
  return r;
}

enum class SSpecialKind { s_zero_divisor, s_anti_zero_divisor, s_idempotent, s_unit };

inline std::string to_string(SSpecialKind k) {
  switch (k) {
    case SSpecialKind::s_zero_divisor: return "s-zero-divisor";
    case SSpecialKind::s_anti_zero_divisor: return "s-anti-zero-divisor";
    case SSpecialKind::s_idempotent: return "s-idempotent";
    case SSpecialKind::s_unit: return "s-unit";
  }
  return "";
}

namespace detail {

using VIdx = FiniteView::Idx;

// (a, b, x, y): ab = 0; x, y outside {a, b, 0}, x != y; ax = 0 or xa = 0;
// by = 0 or yb = 0; xy != 0 or yx != 0.
inline std::optional<std::vector<VIdx>> s_zero_certificate(const FiniteView& v, VIdx a, VIdx b, PairBudget& budget) {
  const auto z = v.zero();
  std::vector<VIdx> xs, ys;
  for (VIdx t = 0; t < v.size(); ++t) {
    if (t == a || t == b || t == z) continue;
    if (v.mul_zero(a, t) || v.mul_zero(t, a)) xs.push_back(t);
    if (v.mul_zero(b, t) || v.mul_zero(t, b)) ys.push_back(t);
  }
  for (auto x : xs)
    for (auto y : ys) {
      if (!budget.take()) return std::nullopt;
      if (x != y && (!v.mul_zero(x, y) || !v.mul_zero(y, x))) return std::vector<VIdx>{a, b, x, y};
    }
  return std::nullopt;
}

// (x, y, a, b): xy != 0; a, b outside {0, x, y}; ax != 0 or xa != 0;
// by != 0 or yb != 0; ab = 0 or ba = 0.
inline std::optional<std::vector<VIdx>> s_anti_certificate(const FiniteView& v, VIdx x, PairBudget& budget) {
  const auto z = v.zero();
  for (VIdx y = 0; y < v.size(); ++y) {
    if (v.mul_zero(x, y)) continue;
    std::vector<VIdx> as, bs;
    for (VIdx t = 0; t < v.size(); ++t) {
      if (t == z || t == x || t == y) continue;
      if (!v.mul_zero(t, x) || !v.mul_zero(x, t)) as.push_back(t);
      if (!v.mul_zero(t, y) || !v.mul_zero(y, t)) bs.push_back(t);
    }
    for (auto a : as)
      for (auto b : bs) {
        if (!budget.take()) return std::nullopt;
        if (v.mul_zero(a, b) || v.mul_zero(b, a)) return std::vector<VIdx>{x, y, a, b};
      }
  }
  return std::nullopt;
}

// (a, b): a != 0, a*a = a, b != a, b*b = a, and exactly one of
// (ab = b or ba = b) and (ba = a or ab = a).
inline std::optional<std::vector<VIdx>> s_idempotent_certificate(const FiniteView& v, VIdx a) {
  if (a == v.zero() || !v.is(v.mul(a, a), a)) return std::nullopt;
  for (VIdx b = 0; b < v.size(); ++b) {
    if (b == a || !v.is(v.mul(b, b), a)) continue;
    bool first = v.is(v.mul(a, b), b) || v.is(v.mul(b, a), b);
    bool second = v.is(v.mul(b, a), a) || v.is(v.mul(a, b), a);
    if (first != second) return std::vector<VIdx>{a, b};
  }
  return std::nullopt;
}

// (x, y, a, b): x != 1, xy = 1; a, b outside {x, y, 1}; xa = y or ax = y;
// yb = x or by = x; ab = 1.
inline std::optional<std::vector<VIdx>> s_unit_certificate(const FiniteView& v, VIdx x, VIdx one, PairBudget& budget) {
  if (x == one) return std::nullopt;
  for (VIdx y = 0; y < v.size(); ++y) {
    if (!v.is(v.mul(x, y), one)) continue;
    std::vector<VIdx> as, bs;
    for (VIdx t = 0; t < v.size(); ++t) {
      if (t == x || t == y || t == one) continue;
      if (v.is(v.mul(x, t), y) || v.is(v.mul(t, x), y)) as.push_back(t);
      if (v.is(v.mul(y, t), x) || v.is(v.mul(t, y), x)) bs.push_back(t);
    }
    for (auto a : as)
      for (auto b : bs) {
        if (!budget.take()) return std::nullopt;
        if (v.is(v.mul(a, b), one)) return std::vector<VIdx>{x, y, a, b};
      }
  }
  return std::nullopt;
}

}  // namespace detail

/// Smarandache special elements with full certificates, first certificate
/// per anchor in canonical order.
inline AnalysisReport find_s_special(const SemiringHandle& h, SSpecialKind kind, const AnalysisOptions& opt = {}) {
  bool complete = true;
  FiniteView v = make_view(h, opt, complete);
  auto r = detail::start_report(to_string(kind), v, complete);
  detail::PairBudget budget{opt.max_pairs};
  const auto n = static_cast<detail::VIdx>(v.size());
  const auto z = v.zero();
  auto emit = [&](const std::vector<detail::VIdx>& cert) {
    Finding f{to_string(kind), {}};
    for (auto i : cert) f.witness.push_back(v.render(i));
    r.findings.push_back(std::move(f));
  };
  switch (kind) {
    case SSpecialKind::s_zero_divisor: {
      const bool comm = detail::view_commutative(v);
      for (detail::VIdx a = 0; a < n && !budget.tripped; ++a) {
        if (a == z) continue;
        for (detail::VIdx b = comm ? a : 0; b < n && !budget.tripped; ++b) {
          if (b == z || !v.mul_zero(a, b)) continue;
          if (auto c = detail::s_zero_certificate(v, a, b, budget)) emit(*c);
        }
      }
      break;
    }
    case SSpecialKind::s_anti_zero_divisor:
      for (detail::VIdx x = 0; x < n && !budget.tripped; ++x) {
        if (x == z) continue;
        if (auto c = detail::s_anti_certificate(v, x, budget)) emit(*c);
      }
      break;
    case SSpecialKind::s_idempotent:
      for (detail::VIdx a = 0; a < n; ++a)
        if (auto c = detail::s_idempotent_certificate(v, a)) emit(*c);
      break;
    case SSpecialKind::s_unit: {
      auto one = v.one();
      if (!one) fail(errc::unsupported, h.describe() + " has no identity among the scanned elements");
      for (detail::VIdx x = 0; x < n && !budget.tripped; ++x)
        if (auto c = detail::s_unit_certificate(v, x, *one, budget)) emit(*c);
      break;
    }
  }
  r.pairs_scanned = budget.used;
  if (budget.tripped) {
    r.exhaustive = false;
    r.note = "pair budget exceeded";
  }
  return r;
}

/// Re-checks one finding against the handle's operations.
inline bool validate_finding(const SemiringHandle& h, const Finding& f) {
  std::vector<Element> w;
  for (const auto& s : f.witness) w.push_back(h.parse(s));
  auto zero = [&](const Element& x) { return h.is_zero(x); };
  auto m = [&](const Element& x, const Element& y) { return h.mul(x, y); };
  auto distinct = [&](const Element& x, std::initializer_list<const Element*> others) {
    for (auto* o : others)
      if (x == *o) return false;
    return true;
  };
  if (f.kind == "zero-divisor")
    return w.size() == 2 && !zero(w[0]) && !zero(w[1]) && zero(m(w[0], w[1]));
  if (f.kind == "idempotent") return w.size() == 1 && m(w[0], w[0]) == w[0];
  if (f.kind == "nilpotent" || f.kind == "nilpotent-left-nested") {
    if (w.size() < 2 || zero(w[0]) || !zero(w.back())) return false;
    if ((f.kind == "nilpotent") != (w.size() == 2)) return false;
    Element p = w[0];
    for (std::size_t i = 1; i < w.size(); ++i) {
      p = m(p, w[0]);
      if (!(p == w[i])) return false;
      if (i + 1 < w.size() && zero(p)) return false;
    }
    return true;
  }
  if (f.kind == "unit") {
    auto one = h.one();
    return one && w.size() == 2 && m(w[0], w[1]) == *one && m(w[1], w[0]) == *one;
  }
  if (f.kind == "s-zero-divisor") {
    if (w.size() != 4) return false;
    const auto &a = w[0], &b = w[1], &x = w[2], &y = w[3];
    Element z = h.zero();
    return !zero(a) && !zero(b) && zero(m(a, b)) && distinct(x, {&a, &b, &z}) && distinct(y, {&a, &b, &z}) &&
           !(x == y) && (zero(m(a, x)) || zero(m(x, a))) && (zero(m(b, y)) || zero(m(y, b))) &&
           (!zero(m(x, y)) || !zero(m(y, x)));
  }
  if (f.kind == "s-anti-zero-divisor") {
    if (w.size() != 4) return false;
    const auto &x = w[0], &y = w[1], &a = w[2], &b = w[3];
    Element z = h.zero();
    return !zero(m(x, y)) && distinct(a, {&z, &x, &y}) && distinct(b, {&z, &x, &y}) &&
           (!zero(m(a, x)) || !zero(m(x, a))) && (!zero(m(b, y)) || !zero(m(y, b))) &&
           (zero(m(a, b)) || zero(m(b, a)));
  }
  if (f.kind == "s-idempotent") {
    if (w.size() != 2) return false;
    const auto &a = w[0], &b = w[1];
    if (zero(a) || !(m(a, a) == a) || a == b || !(m(b, b) == a)) return false;
    bool first = m(a, b) == b || m(b, a) == b;
    bool second = m(b, a) == a || m(a, b) == a;
    return first != second;
  }
  if (f.kind == "s-unit") {
    auto one = h.one();
    if (!one || w.size() != 4) return false;
    const auto &x = w[0], &y = w[1], &a = w[2], &b = w[3];
    return !(x == *one) && m(x, y) == *one && distinct(a, {&x, &y, &*one}) && distinct(b, {&x, &y, &*one}) &&
           (m(x, a) == y || m(a, x) == y) && (m(y, b) == x || m(b, y) == x) && m(a, b) == *one;
  }
  if (f.kind == "semifield-subset") return true;
  return false;
}

enum class SubstructureKind { subsemiring, ideal, left_ideal, right_ideal };

struct SubstructureVerdict {
  bool holds = true;
  /// Failing operation ("add", "mul", "zero", "left", "right") and operands.
  std::vector<std::string> witness;
};

/// Subsemiring: contains zero and is closed under + and *. Ideals also
/// absorb multiplication by every element of the handle on the named side.
inline SubstructureVerdict check_substructure(const SemiringHandle& h, const std::vector<Element>& subset,
                                              SubstructureKind kind, const AnalysisOptions& opt = {}) {
  std::set<std::string> in;
  for (const auto& x : subset) in.insert(h.render(x));
  auto member = [&](const Element& x) { return in.count(h.render(x)) > 0; };
  if (!member(h.zero())) return {false, {"zero", h.render(h.zero())}};
  for (const auto& a : subset)
    for (const auto& b : subset) {
      auto s = h.add(a, b);
      if (!member(s)) return {false, {"add", h.render(a), h.render(b), h.render(s)}};
      auto p = h.mul(a, b);
      if (!member(p)) return {false, {"mul", h.render(a), h.render(b), h.render(p)}};
    }
  if (kind == SubstructureKind::subsemiring) return {};
  bool complete = true;
  std::vector<Element> all;
  if (h.is_finite()) all = detail::element_prefix(h, opt.max_elements, complete);
  else if (!opt.sample.empty()) all = opt.sample;
  else fail(errc::unsupported, "ideal checks on infinite handles need a sample");
  for (const auto& s : all)
    for (const auto& p : subset) {
      if (kind != SubstructureKind::right_ideal) {
        auto sp = h.mul(s, p);
        if (!member(sp)) return {false, {"left", h.render(s), h.render(p), h.render(sp)}};
      }
      if (kind != SubstructureKind::left_ideal) {
        auto ps = h.mul(p, s);
        if (!member(ps)) return {false, {"right", h.render(p), h.render(s), h.render(ps)}};
      }
    }
  return {};
}

struct FlagVerdict {
  bool value = false;
  std::vector<std::string> witness;
  std::string proof;
};

struct Classification {
  FlagVerdict strict;
  FlagVerdict commutative;
  FlagVerdict has_one;
  FlagVerdict zero_divisor_free;
  FlagVerdict semifield;
  bool exhaustive = true;
};

namespace detail {

inline Classification classify_infinite(const SemiringHandle& h) {
  Classification c;
  const auto& d = h.scalars();
  if (!positive_scalars(d)) fail(errc::unsupported, "no structural classification for " + h.describe());
  const std::string pos = "proved: nonnegative scalars";
  c.strict = {true, {}, pos + " admit no cancellation in sums"};
  c.has_one.value = h.one().has_value();
  c.has_one.proof = c.has_one.value ? "identity element exists" : "scalar domain or basis lacks an identity";
  auto smallest = [&]() -> Endpoint {
    std::uint64_t m = d.base_domain().kind() == DomainKind::nat ? d.multiple() : 1;
    if (d.kind() == DomainKind::neutro_pure) return d.neutro(0, m);
    return d.value(m);
  };
  if (auto* f = h.formal()) {
    auto spec = h.formal_ptr();
    auto c1 = smallest();
    bool comm = true;
    std::vector<std::string> w;
    if (auto* g = f->carrier_magma()) {
      for (Magma::Index a = 0; a < g->size() && comm; ++a)
        for (Magma::Index b = 0; b < g->size() && comm; ++b)
          if (g->op(a, b) != g->op(b, a)) {
            comm = false;
            w = {FormalSum::monomial(spec, a, c1).to_string(), FormalSum::monomial(spec, b, c1).to_string()};
          }
    } else if (auto* gz = std::get_if<GroupoidZPlusBasis>(&f->basis()); gz && gz->t != gz->u) {
      comm = false;
      w = {FormalSum::monomial(spec, 0, c1).to_string(), FormalSum::monomial(spec, 1, c1).to_string()};
    }
    c.commutative = {comm, w, comm ? "proved: basis and scalars commute" : ""};
    if (auto proof = no_zero_divisor_proof(h)) c.zero_divisor_free = {true, {}, *proof};
    else {
      const Magma& g = *f->carrier_magma();
      auto z = *f->absorbed_key();
      c.zero_divisor_free.value = true;
      for (Magma::Index a = 0; a < g.size() && c.zero_divisor_free.value; ++a)
        for (Magma::Index b = 0; b < g.size() && c.zero_divisor_free.value; ++b)
          if (a != z && b != z && g.op(a, b) == z)
            c.zero_divisor_free = {false, {FormalSum::monomial(spec, a, c1).to_string(), FormalSum::monomial(spec, b, c1).to_string()}, ""};
      if (c.zero_divisor_free.value) c.zero_divisor_free.proof = "proved: no basis pair meets the absorbed element";
    }
  } else if (auto* m = h.matrix(); m && m->n > 1) {
    auto v = smallest();
    auto unit = [&](std::size_t i) {
      auto mat = IntervalMatrix::zero(*m);
      std::vector<Endpoint> e = mat.entries();
      e[i] = v;
      return IntervalMatrix(*m, std::move(e)).to_string();
    };
    if (m->shape == MatrixShape::row) {
      c.commutative = {true, {}, "proved: componentwise product"};
      c.zero_divisor_free = {false, {unit(0), unit(1)}, ""};
    } else {
      // E12 * E21 = E11 while E21 * E12 = E22; E12 * E12 = 0
      c.commutative = {false, {unit(1), unit(m->n)}, ""};
      c.zero_divisor_free = {false, {unit(1), unit(1)}, ""};
    }
  } else {
    c.commutative = {true, {}, "proved: endpoint multiplication commutes"};
    c.zero_divisor_free = {true, {}, *no_zero_divisor_proof(h)};
  }
  c.semifield.value = c.strict.value && c.commutative.value && c.has_one.value && c.zero_divisor_free.value;
  return c;
}

}  // namespace detail

/// strict, commutative, has_one, zero_divisor_free and their conjunction
/// semifield. Finite handles are scanned exhaustively; nat/rat-based
/// infinite handles use structural arguments.
inline Classification classify_semiring(const SemiringHandle& h, const AnalysisOptions& opt = {}) {
  if (!h.is_finite()) return detail::classify_infinite(h);
  bool complete = true;
  FiniteView v = make_view(h, opt, complete);
  Classification c;
  c.exhaustive = complete;
  const auto n = static_cast<FiniteView::Idx>(v.size());
  const auto z = v.zero();
  c.strict.value = true;
  for (FiniteView::Idx a = 0; a < n && c.strict.value; ++a)
    for (FiniteView::Idx b = a; b < n && c.strict.value; ++b)
      if ((a != z || b != z) && v.add_zero(a, b)) c.strict = {false, {v.render(a), v.render(b)}, ""};
  c.commutative.value = true;
  for (FiniteView::Idx a = 0; a < n && c.commutative.value; ++a)
    for (FiniteView::Idx b = a + 1; b < n && c.commutative.value; ++b)
      if (v.mul(a, b) != v.mul(b, a)) c.commutative = {false, {v.render(a), v.render(b)}, ""};
  c.has_one.value = v.one().has_value();
  c.zero_divisor_free.value = true;
  for (FiniteView::Idx a = 0; a < n && c.zero_divisor_free.value; ++a)
    for (FiniteView::Idx b = 0; b < n && c.zero_divisor_free.value; ++b)
      if (a != z && b != z && v.mul_zero(a, b)) c.zero_divisor_free = {false, {v.render(a), v.render(b)}, ""};
  c.semifield.value = c.strict.value && c.commutative.value && c.has_one.value && c.zero_divisor_free.value;
  if (!c.semifield.value) {
    if (!c.strict.value) c.semifield.witness = {"strict"};
    else if (!c.commutative.value) c.semifield.witness = {"commutative"};
    else if (!c.has_one.value) c.semifield.witness = {"has_one"};
    else c.semifield.witness = {"zero_divisor_free"};
  }
  return c;
}

/// Closure of `seeds` (plus zero) under + and *; nullopt past `cap`.
inline std::optional<std::vector<Element>> subsemiring_closure(const SemiringHandle& h, const std::vector<Element>& seeds,
                                                               std::size_t cap) {
  std::vector<Element> list;
  std::set<std::string> in;
  auto push = [&](Element x) {
    if (in.insert(h.render(x)).second) list.push_back(std::move(x));
  };
  push(h.zero());
  for (const auto& s : seeds) push(s);
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (list.size() > cap) return std::nullopt;
      Element xi = list[i], xj = list[j];
      push(h.add(xi, xj));
      push(h.mul(xi, xj));
      push(h.mul(xj, xi));
    }
  }
  if (list.size() > cap) return std::nullopt;
  return list;
}

/// A closed subset with at least two elements that is a semifield under
/// the handle's operations: strict, commutative, associative, with its
/// own identity and no zero divisors.
inline bool is_semifield_subset(const SemiringHandle& h, const std::vector<Element>& p) {
  if (p.size() < 2) return false;
  FiniteView v(h, p);
  if (v.size() != p.size() && v.size() != p.size() + 1) return false;
  if (!v.closed()) return false;
  const auto n = static_cast<FiniteView::Idx>(v.size());
  const auto z = v.zero();
  std::optional<FiniteView::Idx> id;
  for (FiniteView::Idx u = 0; u < n && !id; ++u) {
    if (u == z) continue;
    bool ok = true;
    for (FiniteView::Idx x = 0; x < n && ok; ++x) ok = v.is(v.mul(u, x), x) && v.is(v.mul(x, u), x);
    if (ok) id = u;
  }
  if (!id) return false;
  for (FiniteView::Idx a = 0; a < n; ++a)
    for (FiniteView::Idx b = 0; b < n; ++b) {
      if ((a != z || b != z) && v.add_zero(a, b)) return false;
      if (v.mul(a, b) != v.mul(b, a)) return false;
      if (a != z && b != z && v.mul_zero(a, b)) return false;
      for (FiniteView::Idx c = 0; c < n; ++c)
        if (v.mul(v.mul(a, b), c) != v.mul(a, v.mul(b, c))) return false;
    }
  return true;
}

enum class SearchMode { exhaustive, generated };

inline constexpr std::size_t kMaxSmarandacheExhaustive = 20;
inline constexpr std::uint64_t kMaxSmarandacheGenerated = 1u << 14;

/// Proper semifield subsets (closed sub-semirings). Exhaustive mode walks
/// every subset containing zero (handles up to 20 elements, subsets up to
/// `limit` elements); generated mode closes zero plus every seed set of up
/// to `limit` (1 or 2) elements.
inline AnalysisReport smarandache_search(const SemiringHandle& h, SearchMode mode, std::size_t limit,
                                         const AnalysisOptions& opt = {}) {
  AnalysisReport r;
  r.name = "smarandache";
  r.structure = h.describe();
  std::vector<std::vector<Element>> found;
  std::set<std::set<std::string>> seen;
  auto record = [&](std::vector<Element> p) {
    std::set<std::string> key;
    for (const auto& x : p) key.insert(h.render(x));
    if (!seen.insert(key).second) return;
    if (is_semifield_subset(h, p)) found.push_back(std::move(p));
  };
  if (mode == SearchMode::exhaustive) {
    if (!h.is_finite() || !h.cardinality(kMaxSmarandacheExhaustive))
      fail(errc::budget_exceeded, "exhaustive Smarandache search is limited to " +
                                      std::to_string(kMaxSmarandacheExhaustive) + " elements; use generated mode");
    auto all = h.elements();
    FiniteView v(h, all);
    const std::size_t n = v.size();
    const auto z = v.zero();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (!(mask >> z & 1u)) continue;
      std::size_t size = static_cast<std::size_t>(__builtin_popcount(mask));
      if (size < 2 || size == n || size > limit) continue;
      ++r.subsets_scanned;
      if (r.subsets_scanned > opt.max_subsets) {
        r.exhaustive = false;
        break;
      }
      bool closed = true;
      for (std::size_t a = 0; a < n && closed; ++a) {
        if (!(mask >> a & 1u)) continue;
        for (std::size_t b = 0; b < n && closed; ++b) {
          if (!(mask >> b & 1u)) continue;
          auto s = v.add(static_cast<FiniteView::Idx>(a), static_cast<FiniteView::Idx>(b));
          auto p = v.mul(static_cast<FiniteView::Idx>(a), static_cast<FiniteView::Idx>(b));
          closed = s >= 0 && p >= 0 && (mask >> s & 1u) && (mask >> p & 1u);
        }
      }
      if (!closed) continue;
      std::vector<Element> p;
      for (std::size_t a = 0; a < n; ++a)
        if (mask >> a & 1u) p.push_back(v.at(static_cast<FiniteView::Idx>(a)));
      record(std::move(p));
    }
  } else {
    if (limit == 0 || limit > 2) fail(errc::invalid_argument, "generated mode supports seed sets of size 1 or 2");
    std::vector<Element> pool;
    bool complete = true;
    if (h.is_finite()) {
      if (!h.cardinality(kMaxSmarandacheGenerated))
        fail(errc::budget_exceeded, "generated Smarandache search is limited to " +
                                        std::to_string(kMaxSmarandacheGenerated) + " elements");
      pool = h.elements();
    } else {
      if (opt.sample.empty()) fail(errc::unsupported, h.describe() + " is infinite; supply seed elements");
      pool = detail::unique_elements(h, opt.sample);
      complete = false;
    }
    std::optional<std::size_t> hsize;
    if (h.is_finite()) hsize = pool.size();
    auto try_seed = [&](std::vector<Element> seed) {
      ++r.subsets_scanned;
      auto c = subsemiring_closure(h, seed, opt.closure_cap);
      if (!c) {
        complete = false;
        return;
      }
      if (hsize && c->size() == *hsize) return;
      record(std::move(*c));
    };
    for (std::size_t a = 0; a < pool.size() && r.subsets_scanned < opt.max_subsets; ++a) {
      if (h.is_zero(pool[a])) continue;
      try_seed({pool[a]});
      if (limit < 2) continue;
      for (std::size_t b = a + 1; b < pool.size() && r.subsets_scanned < opt.max_subsets; ++b) {
        if (h.is_zero(pool[b])) continue;
        try_seed({pool[a], pool[b]});
      }
    }
    if (r.subsets_scanned >= opt.max_subsets) complete = false;
    // generated mode never covers every subset
    r.exhaustive = false;
    if (!complete) r.note = "explored seed closures only; some closures exceeded the cap";
  }
  std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    std::vector<std::string> ra, rb;
    for (const auto& x : a) ra.push_back(h.render(x));
    for (const auto& x : b) rb.push_back(h.render(x));
    return ra < rb;
  });
  for (const auto& p : found) {
    Finding f{"semifield-subset", {}};
    for (const auto& x : p) f.witness.push_back(h.render(x));
    r.findings.push_back(std::move(f));
  }
  std::string verdict = !found.empty() ? "S-semiring" : (r.exhaustive ? "not S-" : "not shown S-");
  r.note = r.note.empty() ? verdict : verdict + "; " + r.note;
  return r;
}

/// P is a subsemiring containing a proper semifield subset T. Returns the
/// first such T found among closures of zero plus one or two elements of P.
inline std::optional<std::vector<Element>> s_subsemiring_witness(const SemiringHandle& h, const std::vector<Element>& p,
                                                                 std::size_t cap = 4096) {
  if (!check_substructure(h, p, SubstructureKind::subsemiring).holds) return std::nullopt;
  const std::size_t psize = detail::unique_elements(h, p).size();
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a; b < p.size(); ++b) {
      std::vector<Element> seed{p[a]};
      if (b != a) seed.push_back(p[b]);
      auto c = subsemiring_closure(h, seed, cap);
      if (c && c->size() < psize && is_semifield_subset(h, *c)) return c;
    }
  return std::nullopt;
}

inline bool check_s_subsemiring(const SemiringHandle& h, const std::vector<Element>& p) {
  return s_subsemiring_witness(h, p).has_value();
}

/// S-ideal: an S-subsemiring P with a semifield A inside it such that pa
/// and ap stay in A for all p in P and a in A.
inline std::optional<std::vector<Element>> s_ideal_witness(const SemiringHandle& h, const std::vector<Element>& p,
                                                           std::size_t cap = 4096) {
  if (!check_substructure(h, p, SubstructureKind::subsemiring).holds) return std::nullopt;
  const std::size_t psize = detail::unique_elements(h, p).size();
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a; b < p.size(); ++b) {
      std::vector<Element> seed{p[a]};
      if (b != a) seed.push_back(p[b]);
      auto c = subsemiring_closure(h, seed, cap);
      if (!c || c->size() >= psize || !is_semifield_subset(h, *c)) continue;
      std::set<std::string> in;
      for (const auto& x : *c) in.insert(h.render(x));
      bool absorbs = true;
      for (const auto& x : p)
        for (const auto& y : *c)
          if (!in.count(h.render(h.mul(x, y))) || !in.count(h.render(h.mul(y, x)))) absorbs = false;
      if (absorbs) return c;
    }
  return std::nullopt;
}

inline bool check_s_ideal(const SemiringHandle& h, const std::vector<Element>& p) {
  return s_ideal_witness(h, p).has_value();
}

/// S-pseudo subsemiring: some subsemiring P containing A is an
/// S-subsemiring or is itself a semifield. Candidates P are the closures of
/// A and of A plus one further element of the handle (or sample); the
/// search is complete only when it succeeds.
inline std::optional<std::vector<Element>> s_pseudo_subsemiring_witness(const SemiringHandle& h,
                                                                        const std::vector<Element>& a,
                                                                        const AnalysisOptions& opt = {}) {
  std::vector<Element> pool;
  bool complete = true;
  if (h.is_finite()) pool = detail::element_prefix(h, opt.max_elements, complete);
  else pool = opt.sample;
  std::optional<std::size_t> hsize;
  if (h.is_finite() && complete) hsize = pool.size();
  auto candidate = [&](std::vector<Element> seed) -> std::optional<std::vector<Element>> {
    auto c = subsemiring_closure(h, seed, opt.closure_cap);
    if (!c || (hsize && c->size() == *hsize)) return std::nullopt;
    if (is_semifield_subset(h, *c) || check_s_subsemiring(h, *c)) return c;
    return std::nullopt;
  };
  if (auto c = candidate(a)) return c;
  for (const auto& x : pool) {
    auto seed = a;
    seed.push_back(x);
    if (auto c = candidate(seed)) return c;
  }
  return std::nullopt;
}

inline bool check_s_pseudo_subsemiring(const SemiringHandle& h, const std::vector<Element>& a,
                                       const AnalysisOptions& opt = {}) {
  return s_pseudo_subsemiring_witness(h, a, opt).has_value();
}

/// S-pseudo ideal: P is an S-pseudo subsemiring and some A inside P that is
/// a semifield or an S-subsemiring satisfies ap, pa in P.
inline bool check_s_pseudo_ideal(const SemiringHandle& h, const std::vector<Element>& p, const AnalysisOptions& opt = {}) {
  if (!check_s_pseudo_subsemiring(h, p, opt)) return false;
  std::set<std::string> in;
  for (const auto& x : p) in.insert(h.render(x));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i; j < p.size(); ++j) {
      std::vector<Element> seed{p[i]};
      if (j != i) seed.push_back(p[j]);
      auto c = subsemiring_closure(h, seed, opt.closure_cap);
      if (!c || !(is_semifield_subset(h, *c) || check_s_subsemiring(h, *c))) continue;
      bool ok = true;
      for (const auto& a : *c)
        for (const auto& x : p)
          if (!in.count(h.render(h.mul(a, x))) || !in.count(h.render(h.mul(x, a)))) ok = false;
      if (ok) return true;
    }
  return false;
}

struct HomomorphismVerdict {
  bool holds = true;
  /// ("add" | "mul", a, b) for the first failing pair.
  std::vector<std::string> witness;
  std::vector<std::string> kernel;
  bool exhaustive = true;
};

/// Checks f(a+b) = f(a)+f(b) and f(ab) = f(a)f(b) over all pairs of the
/// finite source, or of `opt.sample` when the source is infinite. The
/// kernel lists the scanned elements mapped to zero.
inline HomomorphismVerdict check_homomorphism(const std::function<Element(const Element&)>& f, const SemiringHandle& src,
                                              const SemiringHandle& dst, const AnalysisOptions& opt = {}) {
  HomomorphismVerdict v;
  std::vector<Element> xs;
  if (src.is_finite()) {
    bool complete = true;
    xs = detail::element_prefix(src, opt.max_elements, complete);
    v.exhaustive = complete;
  } else {
    if (opt.sample.empty()) fail(errc::unsupported, "infinite source needs a sample");
    xs = detail::unique_elements(src, opt.sample);
    v.exhaustive = false;
  }
  std::vector<Element> images;
  for (const auto& x : xs) {
    Element y;
    try {
      y = f(x);
    } catch (const std::exception& e) {
      fail(errc::invalid_argument, "map is not total: " + src.render(x) + ": " + e.what());
    }
    if (y.index() != dst.zero().index()) fail(errc::invalid_argument, "map leaves the target at " + src.render(x));
    images.push_back(std::move(y));
    if (dst.is_zero(images.back())) v.kernel.push_back(src.render(x));
  }
  for (std::size_t i = 0; i < xs.size() && v.holds; ++i)
    for (std::size_t j = 0; j < xs.size() && v.holds; ++j) {
      if (!(f(src.add(xs[i], xs[j])) == dst.add(images[i], images[j])))
        v = {false, {"add", src.render(xs[i]), src.render(xs[j])}, v.kernel, v.exhaustive};
      else if (!(f(src.mul(xs[i], xs[j])) == dst.mul(images[i], images[j])))
        v = {false, {"mul", src.render(xs[i]), src.render(xs[j])}, v.kernel, v.exhaustive};
    }
  return v;
}

}  // namespace isl
