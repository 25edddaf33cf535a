#pragma once

// Coefficient domains for interval semirings. An interval [0, a] is stored by
// its right endpoint only; every operation acts on endpoints.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "isl/error.hpp"

namespace isl {

using Natural = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// One exact coordinate. The active alternative is fixed by the domain:
/// residues and lattice indices use uint64_t, nat-interval uses Natural and
/// rat-interval uses Rational.
using Scalar = std::variant<std::uint64_t, Natural, Rational>;

enum class DomainKind {
  zn,
  nat,
  rat,
  chain_lattice,
  table_lattice,
  neutro_pure,
  neutro_mixed,
};

/// Right endpoint of [0, real + indet*I]. Outside the neutrosophic kinds the
/// indeterminate part is pinned to the base zero; pure neutrosophic elements
/// keep `real` at zero.
struct Endpoint {
  Scalar real;
  Scalar indet;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

using LatticeTable = std::vector<std::vector<std::uint32_t>>;

namespace detail {

enum class BaseKind { zn, nat, rat, lattice };

struct Base {
  BaseKind kind = BaseKind::zn;
  std::uint64_t modulus = 0;   // zn
  std::uint64_t multiple = 1;  // nat: endpoints restricted to multiple*Z+ u {0}
  bool chain = false;          // lattice given as a chain
  std::vector<std::string> names;
  LatticeTable join;
  LatticeTable meet;
  std::uint32_t bottom = 0;
  std::uint32_t top = 0;

  friend bool operator==(const Base&, const Base&) = default;

  Scalar zero() const {
    switch (kind) {
      case BaseKind::zn: return std::uint64_t{0};
      case BaseKind::nat: return Natural{0};
      case BaseKind::rat: return Rational{0};
      case BaseKind::lattice: return std::uint64_t{bottom};
    }
    return std::uint64_t{0};
  }

  std::optional<Scalar> one() const {
    switch (kind) {
      case BaseKind::zn: return std::uint64_t{1};
      case BaseKind::nat:
        if (multiple != 1) return std::nullopt;
        return Natural{1};
      case BaseKind::rat: return Rational{1};
      case BaseKind::lattice: return std::uint64_t{top};
    }
    return std::nullopt;
  }

  Scalar add(const Scalar& x, const Scalar& y) const {
    switch (kind) {
      case BaseKind::zn: {
        auto a = std::get<std::uint64_t>(x), b = std::get<std::uint64_t>(y);
        auto s = static_cast<unsigned __int128>(a) + b;
        return static_cast<std::uint64_t>(s % modulus);
      }
      case BaseKind::nat:
        return Natural(std::get<Natural>(x) + std::get<Natural>(y));
      case BaseKind::rat:
        return Rational(std::get<Rational>(x) + std::get<Rational>(y));
      case BaseKind::lattice:
        return std::uint64_t{join[std::get<std::uint64_t>(x)]
                                 [std::get<std::uint64_t>(y)]};
    }
    return x;
  }

  Scalar mul(const Scalar& x, const Scalar& y) const {
    switch (kind) {
      case BaseKind::zn: {
        auto a = std::get<std::uint64_t>(x), b = std::get<std::uint64_t>(y);
        auto p = static_cast<unsigned __int128>(a) * b;
        return static_cast<std::uint64_t>(p % modulus);
      }
      case BaseKind::nat:
        return Natural(std::get<Natural>(x) * std::get<Natural>(y));
      case BaseKind::rat:
        return Rational(std::get<Rational>(x) * std::get<Rational>(y));
      case BaseKind::lattice:
        return std::uint64_t{meet[std::get<std::uint64_t>(x)]
                                 [std::get<std::uint64_t>(y)]};
    }
    return x;
  }

  bool holds_right_alternative(const Scalar& x) const {
    switch (kind) {
      case BaseKind::zn:
      case BaseKind::lattice: return std::holds_alternative<std::uint64_t>(x);
      case BaseKind::nat: return std::holds_alternative<Natural>(x);
      case BaseKind::rat: return std::holds_alternative<Rational>(x);
    }
    return false;
  }

  bool contains(const Scalar& x) const {
    if (!holds_right_alternative(x)) return false;
    switch (kind) {
      case BaseKind::zn: return std::get<std::uint64_t>(x) < modulus;
      case BaseKind::nat: {
        const auto& v = std::get<Natural>(x);
        return v >= 0 && (multiple == 1 || v % multiple == 0);
      }
      case BaseKind::rat: return std::get<Rational>(x) >= 0;
      case BaseKind::lattice: return std::get<std::uint64_t>(x) < names.size();
    }
    return false;
  }

  // Canonical order: residue, value, or declared lattice index.
  int compare(const Scalar& x, const Scalar& y) const {
    switch (kind) {
      case BaseKind::zn:
      case BaseKind::lattice: {
        auto a = std::get<std::uint64_t>(x), b = std::get<std::uint64_t>(y);
        return a < b ? -1 : (a > b ? 1 : 0);
      }
      case BaseKind::nat: return std::get<Natural>(x).compare(std::get<Natural>(y));
      case BaseKind::rat: {
        const auto& a = std::get<Rational>(x);
        const auto& b = std::get<Rational>(y);
        return a < b ? -1 : (a > b ? 1 : 0);
      }
    }
    return 0;
  }

  std::optional<std::uint64_t> cardinality() const {
    switch (kind) {
      case BaseKind::zn: return modulus;
      case BaseKind::lattice: return names.size();
      default: return std::nullopt;
    }
  }

  std::vector<Scalar> elements() const {
    std::vector<Scalar> out;
    auto size = cardinality();
    if (!size) fail(errc::unsupported, "infinite domain cannot be enumerated");
    out.reserve(*size);
    for (std::uint64_t i = 0; i < *size; ++i) out.emplace_back(i);
    return out;
  }

  std::string format(const Scalar& x) const {
    switch (kind) {
      case BaseKind::zn: return std::to_string(std::get<std::uint64_t>(x));
      case BaseKind::nat: return std::get<Natural>(x).str();
      case BaseKind::rat: {
        const auto& r = std::get<Rational>(x);
        auto num = boost::multiprecision::numerator(r);
        auto den = boost::multiprecision::denominator(r);
        if (den == 1) return num.str();
        return num.str() + "/" + den.str();
      }
      case BaseKind::lattice: return names[std::get<std::uint64_t>(x)];
    }
    return {};
  }

  std::string describe() const {
    switch (kind) {
      case BaseKind::zn: return "zn-interval(" + std::to_string(modulus) + ")";
      case BaseKind::nat:
        if (multiple == 1) return "nat-interval";
        return "nat-interval(" + std::to_string(multiple) + "Z+)";
      case BaseKind::rat: return "rat-interval";
      case BaseKind::lattice:
        if (chain) return "chain-lattice(" + std::to_string(names.size()) + ")";
        return "table-lattice(" + std::to_string(names.size()) + ")";
    }
    return {};
  }
};

inline bool is_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Parses one base scalar; `pos` is the offset of `text` inside the literal for
// error reporting.
// p/q with digits on both sides: well formed, just not in this domain
inline bool looks_rational(std::string_view s) {
  auto slash = s.find('/');
  return slash != std::string_view::npos && is_digits(trim(s.substr(0, slash))) && is_digits(trim(s.substr(slash + 1)));
}

inline Scalar parse_scalar(const Base& base, std::string_view text, std::size_t pos) {
  text = trim(text);
  switch (base.kind) {
    case BaseKind::zn: {
      if (looks_rational(text)) fail(errc::incompatible_domains, "rational endpoint " + std::string(text) + " outside zn-interval");
      if (!is_digits(text)) throw parse_error(pos, "expected a residue, got '" + std::string(text) + "'");
      Natural v(std::string{text});
      return static_cast<std::uint64_t>(v % base.modulus);
    }
    case BaseKind::nat: {
      if (looks_rational(text)) fail(errc::incompatible_domains, "rational endpoint " + std::string(text) + " outside nat-interval");
      if (!is_digits(text)) throw parse_error(pos, "expected a nonnegative integer, got '" + std::string(text) + "'");
      Natural v(std::string{text});
      if (base.multiple != 1 && v % base.multiple != 0)
        throw parse_error(pos, "endpoint " + std::string(text) + " is not a multiple of " +
                                   std::to_string(base.multiple));
      return v;
    }
    case BaseKind::rat: {
      auto slash = text.find('/');
      if (slash == std::string_view::npos) {
        if (!is_digits(text)) throw parse_error(pos, "expected a rational, got '" + std::string(text) + "'");
        return Rational(Natural(std::string{text}));
      }
      auto num = trim(text.substr(0, slash));
      auto den = trim(text.substr(slash + 1));
      if (!is_digits(num) || !is_digits(den))
        throw parse_error(pos, "expected p/q, got '" + std::string(text) + "'");
      Natural d(std::string{den});
      if (d == 0) throw parse_error(pos + slash + 1, "zero denominator");
      return Rational(Natural(std::string{num}), d);
    }
    case BaseKind::lattice: {
      for (std::size_t i = 0; i < base.names.size(); ++i)
        if (base.names[i] == text) return std::uint64_t{i};
      throw parse_error(pos, "unknown lattice element '" + std::string(text) + "'");
    }
  }
  throw parse_error(pos, "unparseable scalar");
}

struct DomainData {
  DomainKind kind;
  Base base;
};

}  // namespace detail

/// Describes a coefficient domain. Copies share one immutable description.
class DomainSpec {
 public:
  static DomainSpec zn(std::uint64_t n) {
    if (n < 2) fail(errc::invalid_argument, "zn-interval requires n >= 2");
    detail::Base b;
    b.kind = detail::BaseKind::zn;
    b.modulus = n;
    return DomainSpec(DomainKind::zn, std::move(b));
  }

  /// Nonnegative integers. With multiple > 1 only endpoints in
  /// multiple*Z+ u {0} belong to the domain, and the domain has no one.
  static DomainSpec nat(std::uint64_t multiple = 1) {
    if (multiple == 0) fail(errc::invalid_argument, "nat-interval multiple must be positive");
    detail::Base b;
    b.kind = detail::BaseKind::nat;
    b.multiple = multiple;
    return DomainSpec(DomainKind::nat, std::move(b));
  }

  static DomainSpec rat() {
    detail::Base b;
    b.kind = detail::BaseKind::rat;
    return DomainSpec(DomainKind::rat, std::move(b));
  }

  /// Chain 0 < a1 < ... < a(k-2) < 1 with join = max and meet = min.
  static DomainSpec chain_lattice(std::uint64_t k) {
    if (k < 2) fail(errc::invalid_argument, "chain-lattice requires k >= 2");
    if (k > 4096) fail(errc::budget_exceeded, "chain-lattice k exceeds 4096");
    detail::Base b;
    b.kind = detail::BaseKind::lattice;
    b.chain = true;
    b.names.push_back("0");
    for (std::uint64_t i = 1; i + 1 < k; ++i) b.names.push_back("a" + std::to_string(i));
    b.names.push_back("1");
    b.join.assign(k, std::vector<std::uint32_t>(k));
    b.meet.assign(k, std::vector<std::uint32_t>(k));
    for (std::uint32_t i = 0; i < k; ++i)
      for (std::uint32_t j = 0; j < k; ++j) {
        b.join[i][j] = std::max(i, j);
        b.meet[i][j] = std::min(i, j);
      }
    b.bottom = 0;
    b.top = static_cast<std::uint32_t>(k - 1);
    return DomainSpec(DomainKind::chain_lattice, std::move(b));
  }

  /// Finite distributive lattice given by its join and meet tables. Throws
  /// unless the tables form a distributive lattice.
  static DomainSpec table_lattice(std::vector<std::string> names, LatticeTable join,
                                  LatticeTable meet) {
    const std::size_t k = names.size();
    if (k < 2) fail(errc::invalid_argument, "table-lattice requires at least 2 elements");
    for (const auto& n : names) {
      if (n.empty() || n.back() == 'I' ||
          !std::all_of(n.begin(), n.end(), [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
          }))
        fail(errc::invalid_argument, "invalid lattice element name '" + n + "'");
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (names[i] == names[j]) fail(errc::invalid_argument, "duplicate lattice element " + names[i]);
    auto check_shape = [&](const LatticeTable& t, const char* what) {
      if (t.size() != k) fail(errc::invalid_argument, std::string(what) + " table must be k x k");
      for (const auto& row : t) {
        if (row.size() != k) fail(errc::invalid_argument, std::string(what) + " table must be k x k");
        for (auto v : row)
          if (v >= k) fail(errc::invalid_argument, std::string(what) + " table entry out of range");
      }
    };
    check_shape(join, "join");
    check_shape(meet, "meet");
    auto name = [&](std::size_t i) { return names[i]; };
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y) {
        if (join[x][y] != join[y][x]) fail(errc::invalid_argument, "join not commutative at " + name(x) + "," + name(y));
        if (meet[x][y] != meet[y][x]) fail(errc::invalid_argument, "meet not commutative at " + name(x) + "," + name(y));
        if (join[x][meet[x][y]] != x || meet[x][join[x][y]] != x)
          fail(errc::invalid_argument, "absorption fails at " + name(x) + "," + name(y));
        for (std::size_t z = 0; z < k; ++z) {
          if (join[join[x][y]][z] != join[x][join[y][z]])
            fail(errc::invalid_argument, "join not associative");
          if (meet[meet[x][y]][z] != meet[x][meet[y][z]])
            fail(errc::invalid_argument, "meet not associative");
          if (meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]])
            fail(errc::invalid_argument, "lattice is not distributive at " + name(x) + "," +
                                             name(y) + "," + name(z));
        }
      }
    detail::Base b;
    b.kind = detail::BaseKind::lattice;
    b.names = std::move(names);
    b.join = std::move(join);
    b.meet = std::move(meet);
    auto find_identity = [&](const LatticeTable& t) -> std::uint32_t {
      for (std::uint32_t c = 0; c < k; ++c) {
        bool ok = true;
        for (std::uint32_t x = 0; x < k && ok; ++x) ok = t[c][x] == x;
        if (ok) return c;
      }
      fail(errc::invalid_argument, "lattice has no bound");
    };
    b.bottom = find_identity(b.join);
    b.top = find_identity(b.meet);
    return DomainSpec(DomainKind::table_lattice, std::move(b));
  }

  /// Pure neutrosophic intervals [0, aI] over `base`.
  static DomainSpec neutro_pure(const DomainSpec& base) {
    if (base.is_neutrosophic()) fail(errc::invalid_argument, "neutrosophic domains cannot be nested");
    return DomainSpec(DomainKind::neutro_pure, base.d_->base);
  }

  /// Neutrosophic intervals [0, a + bI] over `base`, with I*I = I.
  static DomainSpec neutro_mixed(const DomainSpec& base) {
    if (base.is_neutrosophic()) fail(errc::invalid_argument, "neutrosophic domains cannot be nested");
    return DomainSpec(DomainKind::neutro_mixed, base.d_->base);
  }

  DomainKind kind() const { return d_->kind; }
  bool is_neutrosophic() const {
    return kind() == DomainKind::neutro_pure || kind() == DomainKind::neutro_mixed;
  }
  bool is_lattice_based() const { return base().kind == detail::BaseKind::lattice; }

  /// The non-neutrosophic domain the endpoints are drawn from (itself when
  /// not neutrosophic).
  DomainSpec base_domain() const {
    const auto& b = base();
    switch (b.kind) {
      case detail::BaseKind::zn: return DomainSpec(DomainKind::zn, b);
      case detail::BaseKind::nat: return DomainSpec(DomainKind::nat, b);
      case detail::BaseKind::rat: return DomainSpec(DomainKind::rat, b);
      case detail::BaseKind::lattice:
        return DomainSpec(b.chain ? DomainKind::chain_lattice : DomainKind::table_lattice, b);
    }
    return *this;
  }

  std::uint64_t modulus() const { return base().modulus; }
  std::uint64_t multiple() const { return base().multiple; }
  const std::vector<std::string>& lattice_names() const { return base().names; }
  const LatticeTable& lattice_join() const { return base().join; }
  const LatticeTable& lattice_meet() const { return base().meet; }

  bool is_finite() const { return base().cardinality().has_value(); }

  std::optional<std::uint64_t> cardinality() const {
    auto b = base().cardinality();
    if (!b) return std::nullopt;
    if (kind() == DomainKind::neutro_mixed) return *b * *b;
    return b;
  }

  Endpoint zero() const { return {base().zero(), base().zero()}; }

  std::optional<Endpoint> one() const {
    auto o = base().one();
    if (!o) return std::nullopt;
    if (kind() == DomainKind::neutro_pure) return Endpoint{base().zero(), *o};
    return Endpoint{*o, base().zero()};
  }

  bool is_zero(const Endpoint& x) const { return x == zero(); }

  Endpoint add(const Endpoint& x, const Endpoint& y) const {
    const auto& b = base();
    if (!is_neutrosophic()) return {b.add(x.real, y.real), x.indet};
    return {b.add(x.real, y.real), b.add(x.indet, y.indet)};
  }

  /// (a + bI)(c + dI) = ac + (ad + bc + bd)I, which is plain endpoint
  /// multiplication outside the neutrosophic kinds.
  Endpoint mul(const Endpoint& x, const Endpoint& y) const {
    const auto& b = base();
    if (!is_neutrosophic()) return {b.mul(x.real, y.real), x.indet};
    Scalar ac = b.mul(x.real, y.real);
    Scalar ad = b.mul(x.real, y.indet);
    Scalar bc = b.mul(x.indet, y.real);
    Scalar bd = b.mul(x.indet, y.indet);
    return {std::move(ac), b.add(b.add(ad, bc), bd)};
  }

  bool contains(const Endpoint& x) const {
    const auto& b = base();
    if (!b.contains(x.real) || !b.contains(x.indet)) return false;
    switch (kind()) {
      case DomainKind::neutro_mixed: return true;
      case DomainKind::neutro_pure: return b.compare(x.real, b.zero()) == 0;
      default: return b.compare(x.indet, b.zero()) == 0;
    }
  }

  /// Canonical order: lexicographic on (real, indet) under the base order.
  int compare(const Endpoint& x, const Endpoint& y) const {
    const auto& b = base();
    if (int c = b.compare(x.real, y.real)) return c;
    return b.compare(x.indet, y.indet);
  }

  /// Every element in canonical order. Throws for infinite domains.
  std::vector<Endpoint> elements() const {
    auto scalars = base().elements();
    auto z = base().zero();
    std::vector<Endpoint> out;
    switch (kind()) {
      case DomainKind::neutro_mixed:
        out.reserve(scalars.size() * scalars.size());
        for (const auto& a : scalars)
          for (const auto& b : scalars) out.push_back({a, b});
        break;
      case DomainKind::neutro_pure:
        for (const auto& b : scalars) out.push_back({z, b});
        break;
      default:
        for (const auto& a : scalars) out.push_back({a, z});
    }
    return out;
  }

  /// Endpoint in the literal grammar, without the [0, ] wrapper.
  std::string format_endpoint(const Endpoint& x) const {
    const auto& b = base();
    const bool indet_zero = b.compare(x.indet, b.zero()) == 0;
    switch (kind()) {
      case DomainKind::neutro_pure:
        if (indet_zero) return b.format(b.zero());
        return b.format(x.indet) + "I";
      case DomainKind::neutro_mixed: {
        const bool real_zero = b.compare(x.real, b.zero()) == 0;
        if (indet_zero) return b.format(x.real);
        if (real_zero) return b.format(x.indet) + "I";
        return b.format(x.real) + "+" + b.format(x.indet) + "I";
      }
      default: return b.format(x.real);
    }
  }

  std::string format(const Endpoint& x) const { return "[0," + format_endpoint(x) + "]"; }

  /// Parses `[0,a]`, `[0,p/q]`, `[0,a+bI]`, `[0,aI]` or a lattice name inside
  /// the brackets. `offset` shifts reported error positions.
  Endpoint parse(std::string_view text, std::size_t offset = 0) const {
    std::size_t lead = 0;
    while (lead < text.size() && (text[lead] == ' ' || text[lead] == '\t')) ++lead;
    auto body = detail::trim(text);
    if (body.size() < 4 || body.front() != '[' || body.back() != ']')
      throw parse_error(offset + lead, "expected interval literal [0,a]");
    auto inner = body.substr(1, body.size() - 2);
    auto comma = inner.find(',');
    if (comma == std::string_view::npos || detail::trim(inner.substr(0, comma)) != "0")
      throw parse_error(offset + lead + 1, "interval must have left endpoint 0");
    auto value = inner.substr(comma + 1);
    std::size_t vpos = offset + lead + 2 + comma;
    return parse_endpoint(value, vpos);
  }

  Endpoint parse_endpoint(std::string_view value, std::size_t pos = 0) const {
    const auto& b = base();
    value = detail::trim(value);
    auto parse_indet = [&](std::string_view s, std::size_t p) -> Scalar {
      s = detail::trim(s);
      // s ends with 'I'
      auto coeff = detail::trim(s.substr(0, s.size() - 1));
      if (coeff.empty()) {
        auto o = b.one();
        if (!o) throw parse_error(p, "bare I needs a domain with one");
        return *o;
      }
      return detail::parse_scalar(b, coeff, p);
    };
    switch (kind()) {
      case DomainKind::neutro_pure: {
        if (!value.empty() && value.back() == 'I') return {b.zero(), parse_indet(value, pos)};
        auto s = detail::parse_scalar(b, value, pos);
        if (b.compare(s, b.zero()) != 0)
          throw parse_error(pos, "pure neutrosophic domain accepts only multiples of I");
        return {b.zero(), b.zero()};
      }
      case DomainKind::neutro_mixed: {
        auto plus = value.find('+');
        if (plus != std::string_view::npos) {
          auto rhs = detail::trim(value.substr(plus + 1));
          if (rhs.empty() || rhs.back() != 'I') throw parse_error(pos + plus + 1, "expected bI after '+'");
          return {detail::parse_scalar(b, value.substr(0, plus), pos), parse_indet(rhs, pos + plus + 1)};
        }
        if (!value.empty() && value.back() == 'I') return {b.zero(), parse_indet(value, pos)};
        return {detail::parse_scalar(b, value, pos), b.zero()};
      }
      default:
        if (!value.empty() && value.back() == 'I' && !b.chain && b.kind != detail::BaseKind::lattice)
          fail(errc::incompatible_domains, "indeterminate I outside a neutrosophic domain");
        return {detail::parse_scalar(b, value, pos), b.zero()};
    }
  }

  std::string describe() const {
    switch (kind()) {
      case DomainKind::neutro_pure: return "neutro-pure(" + base().describe() + ")";
      case DomainKind::neutro_mixed: return "neutro-mixed(" + base().describe() + ")";
      default: return base().describe();
    }
  }

  friend bool operator==(const DomainSpec& a, const DomainSpec& b) {
    return a.d_ == b.d_ || (a.d_->kind == b.d_->kind && a.d_->base == b.d_->base);
  }

  const detail::Base& base() const { return d_->base; }

  // Convenience constructors for endpoints. They validate membership.
  Endpoint value(std::uint64_t a) const { return value_of(Natural(a), Natural(0)); }
  Endpoint value(const Rational& a) const {
    if (base().kind != detail::BaseKind::rat) fail(errc::incompatible_domains, "rational endpoint outside rat-interval");
    return checked({a, base().zero()});
  }
  /// a + bI for neutro-mixed, or bI alone (a must be 0) for neutro-pure.
  Endpoint neutro(std::uint64_t a, std::uint64_t b) const {
    if (!is_neutrosophic()) fail(errc::incompatible_domains, "a+bI outside a neutrosophic domain");
    return value_of(Natural(a), Natural(b));
  }
  Endpoint lattice_element(std::string_view name) const {
    if (base().kind != detail::BaseKind::lattice) fail(errc::incompatible_domains, "named element outside a lattice");
    auto s = detail::parse_scalar(base(), name, 0);
    return checked({s, base().zero()});
  }

 private:
  DomainSpec(DomainKind kind, detail::Base base)
      : d_(std::make_shared<const detail::DomainData>(detail::DomainData{kind, std::move(base)})) {}

  Scalar scalar_from(const Natural& v) const {
    const auto& b = base();
    switch (b.kind) {
      case detail::BaseKind::zn: return static_cast<std::uint64_t>(v % b.modulus);
      case detail::BaseKind::nat: return v;
      case detail::BaseKind::rat: return Rational(v);
      case detail::BaseKind::lattice:
        if (v >= b.names.size()) fail(errc::invalid_argument, "lattice index out of range");
        return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{0};
  }

  Endpoint value_of(const Natural& real, const Natural& indet) const {
    Endpoint e{scalar_from(real), scalar_from(indet)};
    if (kind() == DomainKind::neutro_pure) {
      if (real != 0) fail(errc::invalid_argument, "pure neutrosophic element must have zero real part");
    } else if (!is_neutrosophic()) {
      e.indet = base().zero();
    }
    return checked(std::move(e));
  }

  Endpoint checked(Endpoint e) const {
    if (!contains(e)) fail(errc::invalid_argument, format(e) + " is not an element of " + describe());
    return e;
  }

  std::shared_ptr<const detail::DomainData> d_;
};

/// An interval [0, a] (or [0, a + bI]) bound to its domain.
class IntervalElem {
 public:
  IntervalElem(DomainSpec domain, Endpoint value) : domain_(std::move(domain)), value_(std::move(value)) {
    if (!domain_.contains(value_))
      fail(errc::invalid_argument, domain_.format(value_) + " is not an element of " + domain_.describe());
  }

  const DomainSpec& domain() const { return domain_; }
  const Endpoint& value() const { return value_; }
  bool is_zero() const { return domain_.is_zero(value_); }
  std::string to_string() const { return domain_.format(value_); }

  friend bool operator==(const IntervalElem& a, const IntervalElem& b) {
    return a.domain_ == b.domain_ && a.value_ == b.value_;
  }
  friend bool operator<(const IntervalElem& a, const IntervalElem& b) {
    return a.domain_.compare(a.value_, b.value_) < 0;
  }

 private:
  DomainSpec domain_;
  Endpoint value_;
};

inline void require_same_domain(const DomainSpec& a, const DomainSpec& b) {
  if (!(a == b))
    fail(errc::incompatible_domains, "incompatible domains: " + a.describe() + " vs " + b.describe());
}

inline IntervalElem dom_add(const IntervalElem& x, const IntervalElem& y) {
  require_same_domain(x.domain(), y.domain());
  return IntervalElem(x.domain(), x.domain().add(x.value(), y.value()));
}

inline IntervalElem dom_mul(const IntervalElem& x, const IntervalElem& y) {
  require_same_domain(x.domain(), y.domain());
  return IntervalElem(x.domain(), x.domain().mul(x.value(), y.value()));
}

struct DomainUnits {
  IntervalElem zero;
  std::optional<IntervalElem> one;
};

inline DomainUnits dom_units(const DomainSpec& d) {
  DomainUnits u{IntervalElem(d, d.zero()), std::nullopt};
  if (auto o = d.one()) u.one.emplace(d, *o);
  return u;
}

struct Characteristic {
  std::uint64_t value = 0;
  /// Set for lattice-based domains, where x + x = x for every x.
  bool additively_idempotent = false;
};

inline Characteristic characteristic(const DomainSpec& d) {
  switch (d.base().kind) {
    case detail::BaseKind::zn: return {d.modulus(), false};
    case detail::BaseKind::lattice: return {0, true};
    default: return {0, false};
  }
}

struct StrictnessVerdict {
  bool strict = false;
  std::optional<std::pair<IntervalElem, IntervalElem>> witness;
  /// Names the structural argument when no enumeration was needed.
  std::string proof;
};

/// Strict means x + y = 0 forces x = y = 0. Finite domains are scanned
/// exhaustively; the reported witness is the first violating pair in
/// canonical order.
inline StrictnessVerdict is_strict_domain(const DomainSpec& d) {
  StrictnessVerdict v;
  if (!d.is_finite()) {
    v.strict = true;
    v.proof = "nonnegative endpoints: a + b = 0 forces a = b = 0";
    return v;
  }
  auto elems = d.elements();
  for (const auto& x : elems) {
    if (d.is_zero(x)) continue;
    for (const auto& y : elems) {
      if (d.is_zero(y)) continue;
      if (d.is_zero(d.add(x, y))) {
        v.strict = false;
        v.witness.emplace(IntervalElem(d, x), IntervalElem(d, y));
        return v;
      }
    }
  }
  v.strict = true;
  v.proof = "exhaustive";
  return v;
}

inline IntervalElem parse_interval(const DomainSpec& d, std::string_view text) {
  return IntervalElem(d, d.parse(text));
}

}  // namespace isl
