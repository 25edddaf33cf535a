#pragma once

// Formal sums sum_i c_i g_i over a coefficient domain and a basis
// (finite carrier, polynomial monomials, or an infinite groupoid on Z+ u {0}).

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "isl/domain.hpp"
#include "isl/error.hpp"
#include "isl/magma.hpp"

namespace isl {

struct CarrierBasis {
  std::shared_ptr<const Magma> magma;
};
/// Monomials x^i, i >= 0.
struct PolyFreeBasis {};
/// Monomials x^0..x^(k-1) with x^k = 1.
struct PolyCyclicBasis {
  std::uint64_t k = 1;
};
/// Infinite groupoid on Z+ u {0} with a*b = t*a + u*b, evaluated on demand.
struct GroupoidZPlusBasis {
  std::uint64_t t = 0;
  std::uint64_t u = 0;
};

using Basis = std::variant<CarrierBasis, PolyFreeBasis, PolyCyclicBasis, GroupoidZPlusBasis>;

class SemiringSpec;
using SpecPtr = std::shared_ptr<const SemiringSpec>;

class SemiringSpec {
 public:
  using Key = std::uint64_t;

  /// absorb_zero_basis defaults to true exactly when the carrier has an
  /// absorbing element; c*z is then identified with the zero sum.
  static SpecPtr make(DomainSpec coefficients, Basis basis, std::optional<bool> absorb_zero_basis = std::nullopt) {
    if (auto* c = std::get_if<CarrierBasis>(&basis); c && !c->magma)
      fail(errc::invalid_argument, "carrier basis needs a magma");
    if (auto* p = std::get_if<PolyCyclicBasis>(&basis); p && p->k < 1)
      fail(errc::invalid_argument, "poly-cyclic basis requires k >= 1");
    if (auto* g = std::get_if<GroupoidZPlusBasis>(&basis); g && g->t == 0 && g->u == 0)
      fail(errc::invalid_argument, "(t, u) must not be (0, 0)");
    auto spec = std::shared_ptr<SemiringSpec>(new SemiringSpec(std::move(coefficients), std::move(basis)));
    std::optional<Magma::Index> z;
    if (auto* c = std::get_if<CarrierBasis>(&spec->basis_)) z = c->magma->absorbing();
    spec->absorb_ = absorb_zero_basis.value_or(z.has_value()) && z.has_value();
    if (spec->absorb_) spec->absorbing_ = Key{*z};
    return spec;
  }

  static SpecPtr carrier(DomainSpec coefficients, Magma g, std::optional<bool> absorb = std::nullopt) {
    return make(std::move(coefficients), CarrierBasis{std::make_shared<const Magma>(std::move(g))}, absorb);
  }
  static SpecPtr poly(DomainSpec coefficients) { return make(std::move(coefficients), PolyFreeBasis{}); }
  static SpecPtr poly_cyclic(DomainSpec coefficients, std::uint64_t k) {
    return make(std::move(coefficients), PolyCyclicBasis{k});
  }

  const DomainSpec& coefficients() const { return coeffs_; }
  const Basis& basis() const { return basis_; }
  bool absorb_zero_basis() const { return absorb_; }
  std::optional<Key> absorbed_key() const { return absorbing_; }

  const Magma* carrier_magma() const {
    auto* c = std::get_if<CarrierBasis>(&basis_);
    return c ? c->magma.get() : nullptr;
  }
  bool is_poly() const {
    return std::holds_alternative<PolyFreeBasis>(basis_) || std::holds_alternative<PolyCyclicBasis>(basis_);
  }

  std::optional<std::uint64_t> basis_size() const {
    if (auto* c = std::get_if<CarrierBasis>(&basis_)) return c->magma->size();
    if (auto* p = std::get_if<PolyCyclicBasis>(&basis_)) return p->k;
    return std::nullopt;
  }
  bool is_finite() const { return basis_size().has_value() && coeffs_.is_finite(); }

  /// Basis keys that can carry a nonzero coefficient, in canonical order.
  std::vector<Key> basis_keys() const {
    auto n = basis_size();
    if (!n) fail(errc::unsupported, "basis is infinite");
    std::vector<Key> keys;
    for (Key i = 0; i < *n; ++i)
      if (!absorbing_ || *absorbing_ != i) keys.push_back(i);
    return keys;
  }

  bool valid_key(Key k) const {
    auto n = basis_size();
    return !n || k < *n;
  }

  Key op(Key a, Key b) const {
    return std::visit(
        [&](const auto& B) -> Key {
          using T = std::decay_t<decltype(B)>;
          if constexpr (std::is_same_v<T, CarrierBasis>) {
            return B.magma->op(static_cast<Magma::Index>(a), static_cast<Magma::Index>(b));
          } else if constexpr (std::is_same_v<T, PolyFreeBasis>) {
            if (a > UINT64_MAX - b) fail(errc::budget_exceeded, "exponent overflow");
            return a + b;
          } else if constexpr (std::is_same_v<T, PolyCyclicBasis>) {
            return (a % B.k + b % B.k) % B.k;
          } else {
            unsigned __int128 r = static_cast<unsigned __int128>(B.t) * a + static_cast<unsigned __int128>(B.u) * b;
            if (r > UINT64_MAX) fail(errc::budget_exceeded, "groupoid element overflow");
            return static_cast<Key>(r);
          }
        },
        basis_);
  }

  /// Multiplicative identity of the basis, if any. For Z+ u {0} under
  /// t*a + u*b this needs t = u = 1, where 0 is the identity.
  std::optional<Key> identity_key() const {
    if (auto* c = std::get_if<CarrierBasis>(&basis_)) {
      auto e = c->magma->identity();
      return e ? std::optional<Key>(*e) : std::nullopt;
    }
    if (auto* g = std::get_if<GroupoidZPlusBasis>(&basis_)) {
      if (g->t == 1 && g->u == 1) return Key{0};
      return std::nullopt;
    }
    return Key{0};
  }

  std::string format_key(Key k) const {
    if (is_poly()) return "x^" + std::to_string(k);
    if (std::holds_alternative<GroupoidZPlusBasis>(basis_)) return std::to_string(k) + "b";
    const Magma& g = *carrier_magma();
    auto idx = static_cast<Magma::Index>(k);
    if (g.has_residue_elements()) return std::to_string(g.residue_of(idx)) + "b";
    if (g.identity() && *g.identity() == idx) return "e";
    return "g" + std::to_string(k);
  }

  /// Parses a basis token (`e`, `g<i>`, `<i>b`, `x^<i>`); nullopt when the
  /// text is not a basis token at all.
  std::optional<Key> parse_key(std::string_view tok, std::size_t pos) const {
    auto digits = [](std::string_view s) {
      return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    auto number = [&](std::string_view s) -> Key {
      if (s.size() > 18) throw parse_error(pos, "basis index too large");
      return std::stoull(std::string(s));
    };
    if (tok == "e") {
      auto id = identity_key();
      if (!id) throw parse_error(pos, "basis has no identity e");
      return id;
    }
    if (tok.size() > 2 && tok.substr(0, 2) == "x^" && digits(tok.substr(2))) {
      if (!is_poly()) throw parse_error(pos, "x^i terms need a polynomial basis");
      Key k = number(tok.substr(2));
      if (auto* p = std::get_if<PolyCyclicBasis>(&basis_)) k %= p->k;
      return k;
    }
    if (tok.size() > 1 && tok.front() == 'g' && digits(tok.substr(1))) {
      if (!carrier_magma()) throw parse_error(pos, "g<i> terms need a carrier basis");
      Key k = number(tok.substr(1));
      if (k >= carrier_magma()->size()) throw parse_error(pos, "carrier index out of range");
      return k;
    }
    if (tok.size() > 1 && tok.back() == 'b' && digits(tok.substr(0, tok.size() - 1))) {
      Key r = number(tok.substr(0, tok.size() - 1));
      if (std::holds_alternative<GroupoidZPlusBasis>(basis_)) return r;
      const Magma* g = carrier_magma();
      if (!g || !g->has_residue_elements()) throw parse_error(pos, "<i>b terms need a Z_n carrier");
      auto idx = g->index_of_residue(r);
      if (!idx) throw parse_error(pos, "residue out of range for this carrier");
      return Key{*idx};
    }
    return std::nullopt;
  }

  std::string describe() const {
    std::string b = std::visit(
        [](const auto& B) -> std::string {
          using T = std::decay_t<decltype(B)>;
          if constexpr (std::is_same_v<T, CarrierBasis>) return B.magma->meta().describe();
          else if constexpr (std::is_same_v<T, PolyFreeBasis>) return "poly-free";
          else if constexpr (std::is_same_v<T, PolyCyclicBasis>) return "poly-cyclic(" + std::to_string(B.k) + ")";
          else return "Z+(" + std::to_string(B.t) + "," + std::to_string(B.u) + ")";
        },
        basis_);
    return coeffs_.describe() + " over " + b;
  }

  friend bool operator==(const SemiringSpec& a, const SemiringSpec& b) {
    if (&a == &b) return true;
    if (!(a.coeffs_ == b.coeffs_) || a.absorb_ != b.absorb_ || a.basis_.index() != b.basis_.index()) return false;
    if (auto* c = std::get_if<CarrierBasis>(&a.basis_)) {
      const auto& d = std::get<CarrierBasis>(b.basis_);
      return c->magma == d.magma || (c->magma->same_table(*d.magma) && c->magma->meta() == d.magma->meta());
    }
    if (auto* p = std::get_if<PolyCyclicBasis>(&a.basis_)) return p->k == std::get<PolyCyclicBasis>(b.basis_).k;
    if (auto* g = std::get_if<GroupoidZPlusBasis>(&a.basis_)) {
      const auto& h = std::get<GroupoidZPlusBasis>(b.basis_);
      return g->t == h.t && g->u == h.u;
    }
    return true;
  }

 private:
  SemiringSpec(DomainSpec c, Basis b) : coeffs_(std::move(c)), basis_(std::move(b)) {}

  DomainSpec coeffs_;
  Basis basis_;
  bool absorb_ = false;
  std::optional<Key> absorbing_;
};

inline void require_same_spec(const SemiringSpec& a, const SemiringSpec& b) {
  if (!(a == b)) fail(errc::spec_mismatch, "formal sums belong to different semirings: " + a.describe() + " vs " + b.describe());
}

/// A finitely supported formal sum. Terms are sorted by basis key and never
/// hold a zero coefficient (nor a term on an absorbed basis element).
class FormalSum {
 public:
  using Key = SemiringSpec::Key;
  using Term = std::pair<Key, Endpoint>;

  explicit FormalSum(SpecPtr spec) : spec_(std::move(spec)) {
    if (!spec_) fail(errc::invalid_argument, "formal sum needs a spec");
  }

  /// Sums duplicate keys and drops zeros.
  static FormalSum from_terms(SpecPtr spec, std::vector<Term> terms) {
    FormalSum out(std::move(spec));
    const auto& d = out.spec_->coefficients();
    std::map<Key, Endpoint> acc;
    for (auto& [k, c] : terms) {
      if (!out.spec_->valid_key(k)) fail(errc::invalid_argument, "basis key out of range");
      if (!d.contains(c)) fail(errc::incompatible_domains, "coefficient outside " + d.describe());
      auto it = acc.find(k);
      if (it == acc.end()) acc.emplace(k, std::move(c));
      else it->second = d.add(it->second, c);
    }
    out.adopt(std::move(acc));
    return out;
  }

  static FormalSum monomial(SpecPtr spec, Key k, Endpoint c) {
    return from_terms(std::move(spec), {{k, std::move(c)}});
  }

  /// one * e, the multiplicative identity when both exist.
  static FormalSum one(SpecPtr spec) {
    auto o = spec->coefficients().one();
    auto e = spec->identity_key();
    if (!o || !e) fail(errc::unsupported, "semiring " + spec->describe() + " has no multiplicative identity");
    return monomial(std::move(spec), *e, *o);
  }

  const SpecPtr& spec_ptr() const { return spec_; }
  const SemiringSpec& spec() const { return *spec_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Endpoint coefficient(Key k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, Key x) { return t.first < x; });
    if (it != terms_.end() && it->first == k) return it->second;
    return spec_->coefficients().zero();
  }

  /// Literal form, e.g. `[0,5]*x^0 + [0,3]*x^2`; the empty sum is `0`.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += spec_->coefficients().format(c) + "*" + spec_->format_key(k);
    }
    return out;
  }

  friend bool operator==(const FormalSum& a, const FormalSum& b) {
    return (a.spec_ == b.spec_ || *a.spec_ == *b.spec_) && a.terms_ == b.terms_;
  }

  /// Canonical total order within one spec.
  friend bool operator<(const FormalSum& a, const FormalSum& b) {
    const auto& d = a.spec_->coefficients();
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a.terms_[i].first != b.terms_[i].first) return a.terms_[i].first > b.terms_[i].first;
      int c = d.compare(a.terms_[i].second, b.terms_[i].second);
      if (c != 0) return c < 0;
    }
    return a.terms_.size() < b.terms_.size();
  }

 private:
  friend FormalSum fs_add(const FormalSum&, const FormalSum&);

  void adopt(std::map<Key, Endpoint>&& acc) {
    const auto& d = spec_->coefficients();
    auto z = spec_->absorbed_key();
    terms_.clear();
    for (auto& [k, c] : acc)
      if (!d.is_zero(c) && !(z && *z == k)) terms_.emplace_back(k, std::move(c));
  }

  SpecPtr spec_;
  std::vector<Term> terms_;
};

inline FormalSum fs_add(const FormalSum& p, const FormalSum& q) {
  require_same_spec(p.spec(), q.spec());
  const auto& d = p.spec().coefficients();
  FormalSum out(p.spec_ptr());
  auto& t = out.terms_;
  std::size_t i = 0, j = 0;
  const auto& a = p.terms();
  const auto& b = q.terms();
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) t.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first) t.push_back(b[j++]);
    else {
      auto c = d.add(a[i].second, b[j].second);
      if (!d.is_zero(c)) t.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

/// One pair product contributing to a convolution.
struct TraceStep {
  std::string left;
  std::string right;
  std::string product;
};

/// Bilinear convolution: the coefficient of m is the sum over pairs (g, h)
/// with g*h = m of c_g * d_h. Pairs are taken in (p term, q term) order.
inline FormalSum fs_mul(const FormalSum& p, const FormalSum& q, std::vector<TraceStep>* trace = nullptr) {
  require_same_spec(p.spec(), q.spec());
  const auto& spec = p.spec();
  const auto& d = spec.coefficients();
  auto z = spec.absorbed_key();
  std::map<FormalSum::Key, Endpoint> acc;
  for (const auto& [g, c] : p.terms())
    for (const auto& [h, c2] : q.terms()) {
      auto m = spec.op(g, h);
      auto prod = d.mul(c, c2);
      if (trace)
        trace->push_back({d.format(c) + "*" + spec.format_key(g), d.format(c2) + "*" + spec.format_key(h),
                          (z && *z == m) || d.is_zero(prod) ? std::string("0") : d.format(prod) + "*" + spec.format_key(m)});
      if (z && *z == m) continue;
      auto it = acc.find(m);
      if (it == acc.end()) acc.emplace(m, std::move(prod));
      else it->second = d.add(it->second, prod);
    }
  std::vector<FormalSum::Term> terms(acc.begin(), acc.end());
  return FormalSum::from_terms(p.spec_ptr(), std::move(terms));
}

/// Cauchy product on exponents; only for polynomial bases.
inline FormalSum poly_mul(const FormalSum& p, const FormalSum& q) {
  require_same_spec(p.spec(), q.spec());
  if (!p.spec().is_poly()) fail(errc::unsupported, "poly_mul requires a polynomial basis");
  return fs_mul(p, q);
}

/// Left scalar multiple c * p.
inline FormalSum fs_scale(const IntervalElem& c, const FormalSum& p) {
  require_same_domain(c.domain(), p.spec().coefficients());
  const auto& d = p.spec().coefficients();
  std::vector<FormalSum::Term> terms;
  for (const auto& [k, v] : p.terms()) terms.emplace_back(k, d.mul(c.value(), v));
  return FormalSum::from_terms(p.spec_ptr(), std::move(terms));
}

namespace detail {

/// Splits on '+' outside brackets, reporting the offset of each piece.
inline std::vector<std::pair<std::string_view, std::size_t>> split_top_level(std::string_view s, char sep) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[' || s[i] == '(') ++depth;
    else if (s[i] == ']' || s[i] == ')') --depth;
    else if (s[i] == sep && depth == 0) {
      out.emplace_back(s.substr(start, i - start), start);
      start = i + 1;
    }
  }
  out.emplace_back(s.substr(start), start);
  return out;
}

inline std::size_t leading_space(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return i;
}

}  // namespace detail

/// Parses one term: `coeff*basis`, a bare coefficient (times e), or a bare
/// basis token (times one).
inline FormalSum parse_term(const SpecPtr& spec, std::string_view text, std::size_t offset = 0) {
  const auto& d = spec->coefficients();
  auto lead = detail::leading_space(text);
  auto body = detail::trim(text);
  std::size_t pos = offset + lead;
  if (body.empty()) throw parse_error(pos, "empty term");
  if (body.front() == '[') {
    auto close = body.find(']');
    if (close == std::string_view::npos) throw parse_error(pos, "unterminated interval literal");
    Endpoint c = d.parse(body.substr(0, close + 1), pos);
    auto rest = body.substr(close + 1);
    auto rlead = detail::leading_space(rest);
    rest = detail::trim(rest);
    if (rest.empty()) {
      auto e = spec->identity_key();
      if (!e) throw parse_error(pos, "bare coefficient needs a basis identity");
      return FormalSum::monomial(spec, *e, c);
    }
    std::size_t rpos = pos + close + 1 + rlead;
    if (rest.front() != '*') throw parse_error(rpos, "expected '*' between coefficient and basis");
    auto tok_raw = rest.substr(1);
    auto tok = detail::trim(tok_raw);
    std::size_t tpos = rpos + 1 + detail::leading_space(tok_raw);
    auto k = spec->parse_key(tok, tpos);
    if (!k) throw parse_error(tpos, "expected basis token");
    return FormalSum::monomial(spec, *k, c);
  }
  if (body == "0") return FormalSum(spec);
  auto k = spec->parse_key(body, pos);
  if (!k) throw parse_error(pos, "expected term");
  auto o = d.one();
  if (!o) throw parse_error(pos, "bare basis token needs a coefficient one");
  return FormalSum::monomial(spec, *k, *o);
}

/// Parses `term + term + ...`; `0` is the empty sum.
inline FormalSum parse_formal_sum(const SpecPtr& spec, std::string_view text, std::size_t offset = 0) {
  if (detail::trim(text) == "0") return FormalSum(spec);
  FormalSum out(spec);
  for (auto [piece, at] : detail::split_top_level(text, '+')) out = fs_add(out, parse_term(spec, piece, offset + at));
  return out;
}

inline constexpr std::uint64_t kMaxEnumeratedElements = std::uint64_t{1} << 20;

/// Element count of a finite spec, or nullopt when it exceeds the guard.
inline std::optional<std::uint64_t> finite_count(const SemiringSpec& spec) {
  if (!spec.is_finite()) fail(errc::unsupported, "semiring " + spec.describe() + " is infinite");
  std::uint64_t c = *spec.coefficients().cardinality();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < spec.basis_keys().size(); ++i) {
    if (total > kMaxEnumeratedElements / c) return std::nullopt;
    total *= c;
  }
  return total;
}

/// Mixed-radix walk over coefficient assignments; the first basis key is
/// the most significant digit, starting from the empty sum.
class FormalSumEnumerator {
 public:
  explicit FormalSumEnumerator(SpecPtr spec) : spec_(std::move(spec)) {
    if (!finite_count(*spec_)) {
      std::uint64_t c = *spec_->coefficients().cardinality();
      fail(errc::budget_exceeded, "enumeration needs " + std::to_string(c) + "^" +
                                      std::to_string(spec_->basis_keys().size()) + " elements; the budget is " +
                                      std::to_string(kMaxEnumeratedElements));
    }
    keys_ = spec_->basis_keys();
    coeffs_ = spec_->coefficients().elements();
    digits_.assign(keys_.size(), 0);
  }

  std::optional<FormalSum> next() {
    if (done_) return std::nullopt;
    std::vector<FormalSum::Term> terms;
    for (std::size_t i = 0; i < keys_.size(); ++i) terms.emplace_back(keys_[i], coeffs_[digits_[i]]);
    FormalSum out = FormalSum::from_terms(spec_, std::move(terms));
    std::size_t i = keys_.size();
    while (i > 0) {
      --i;
      if (++digits_[i] < coeffs_.size()) break;
      digits_[i] = 0;
      if (i == 0) done_ = true;
    }
    if (keys_.empty()) done_ = true;
    return out;
  }

 private:
  SpecPtr spec_;
  std::vector<FormalSum::Key> keys_;
  std::vector<Endpoint> coeffs_;
  std::vector<std::size_t> digits_;
  bool done_ = false;
};

inline std::vector<FormalSum> enumerate_elements(const SpecPtr& spec) {
  FormalSumEnumerator it(spec);
  std::vector<FormalSum> out;
  while (auto x = it.next()) out.push_back(std::move(*x));
  return out;
}

}  // namespace isl
