#pragma once

// Named theorem sweeps over parameter families. A sweep stops at its first
// failing instance and keeps that instance's certificate.

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "isl/analysis.hpp"
#include "isl/domain.hpp"
#include "isl/error.hpp"
#include "isl/formal_sum.hpp"
#include "isl/handle.hpp"
#include "isl/laws.hpp"
#include "isl/magma.hpp"

namespace isl {

struct SweepRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

using SweepParams = std::map<std::string, SweepRange>;

struct SweepInstance {
  std::string label;
  bool pass = true;
  std::string detail;
};

struct SweepReport {
  std::string name;
  SweepParams params;
  std::vector<SweepInstance> instances;
  bool pass = true;
  /// False when `halt_on_failure` stopped the sweep early.
  bool completed = true;
};

/// Parameter of a sweep: default range and the largest admissible value.
struct SweepParamSpec {
  std::string name;
  SweepRange defaults;
  std::uint64_t min;
  std::uint64_t max;
  /// `--pmax 97` style bounds set only the upper end.
  bool upper_only = false;
};

struct SweepInfo {
  std::string name;
  std::string summary;
  std::vector<SweepParamSpec> params;
};

inline const std::vector<SweepInfo>& sweep_catalog() {
  static const std::vector<SweepInfo> c = {
      {"zn-prime-clean", "zn(p) has no zero divisors, only trivial idempotents and p-1 units",
       {{"pmax", {2, 97}, 2, 1000, true}}},
      {"zn-composite-zd", "every composite zn(n) has a zero-divisor pair", {{"nmax", {4, 100}, 4, 1000, true}}},
      {"loop-laws", "L_n(m) law criteria: commutative, WIP, left and right alternative",
       {{"n", {5, 25}, 5, 45, false}}},
      {"loop-associator", "the associator closure of L_n(m) is the whole loop", {{"n", {5, 15}, 5, 25, false}}},
      {"chain-loop-semifield", "L_p((p+1)/2) over a chain lattice C_d is a semifield",
       {{"p", {5, 7}, 5, 7, false}, {"d", {2, 2}, 2, 3, false}}},
      {"chain-loop-division", "L_n(m), m != (n+1)/2, over C_d is strict, zero-divisor free and noncommutative",
       {{"n", {5, 7}, 5, 7, false}, {"d", {2, 2}, 2, 3, false}}},
      {"group-nat", "Z_p\\{0} over nat/rat: commutative, strict, no zero divisors, idempotent only over rat",
       {{"p", {3, 7}, 3, 11, false}}},
      {"group-zn", "Z_p\\{0} over zn(n): commutative, not strict, ideals for composite n",
       {{"p", {3, 5}, 3, 5, false}, {"n", {2, 4}, 2, 6, false}}},
      {"neutro-prime-no-subsemiring", "pure neutrosophic zn(p) has no proper nonzero subsemiring",
       {{"p", {3, 13}, 2, 13, false}}},
      {"neutro-row-no-subsemiring", "constant rows (aI,...,aI) over zn(p) have no proper nonzero subsemiring",
       {{"p", {3, 7}, 2, 13, false}, {"len", {2, 3}, 1, 6, false}}},
  };
  return c;
}

inline const SweepInfo* find_sweep(const std::string& name) {
  for (const auto& s : sweep_catalog())
    if (s.name == name) return &s;
  return nullptr;
}

/// Fills defaults and checks every range against the sweep's limits.
inline SweepParams resolve_params(const SweepInfo& info, const SweepParams& given) {
  SweepParams out;
  for (const auto& p : info.params) out[p.name] = p.defaults;
  for (const auto& [k, v] : given) {
    auto it = std::find_if(info.params.begin(), info.params.end(), [&](const auto& p) { return p.name == k; });
    if (it == info.params.end()) fail(errc::invalid_argument, "sweep " + info.name + " has no parameter " + k);
    out[k] = v;
  }
  for (const auto& p : info.params) {
    const auto& r = out[p.name];
    if (r.lo > r.hi) fail(errc::invalid_argument, p.name + " range is empty");
    if (r.lo < p.min || r.hi > p.max)
      fail(errc::budget_exceeded, p.name + " must lie in [" + std::to_string(p.min) + ", " + std::to_string(p.max) + "]");
  }
  return out;
}

/// Parses `a..b` or a single value; single values for upper-only
/// parameters keep the default lower end.
inline SweepRange parse_sweep_range(const SweepParamSpec& spec, const std::string& text) {
  auto number = [&](const std::string& s) -> std::uint64_t {
    if (!detail::is_digits(s) || s.size() > 18) fail(errc::invalid_argument, "bad value for " + spec.name + ": " + text);
    return std::stoull(s);
  };
  auto dots = text.find("..");
  if (dots != std::string::npos) return {number(text.substr(0, dots)), number(text.substr(dots + 2))};
  auto v = number(text);
  if (spec.upper_only) return {spec.defaults.lo, v};
  return {v, v};
}

namespace detail {

inline bool prime(std::uint64_t n) { return is_prime(n); }

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::vector<std::uint64_t> valid_multipliers(std::uint64_t n) {
  std::vector<std::uint64_t> ms;
  for (std::uint64_t m = 2; m < n; ++m)
    if (std::gcd(m, n) == 1 && std::gcd(m - 1, n) == 1) ms.push_back(m);
  return ms;
}

inline SweepInstance zn_prime_instance(std::uint64_t p) {
  auto h = SemiringHandle::of_domain(DomainSpec::zn(p));
  auto zd = find_zero_divisors(h);
  auto id = find_idempotents(h);
  auto un = find_units(h);
  SweepInstance r{"p=" + std::to_string(p), true, ""};
  std::ostringstream os;
  os << "zero-divisor pairs=" << zd.findings.size() << " idempotents=" << id.findings.size()
     << " units=" << un.findings.size();
  r.detail = os.str();
  if (!zd.findings.empty()) {
    r.pass = false;
    r.detail += "; zero divisor " + zd.findings[0].witness[0] + " * " + zd.findings[0].witness[1];
  } else if (id.findings.size() != 2) {
    r.pass = false;
    for (const auto& f : id.findings)
      if (f.witness[0] != "[0,0]" && f.witness[0] != "[0,1]") {
        r.detail += "; nontrivial idempotent " + f.witness[0];
        break;
      }
  } else if (un.findings.size() != p - 1) {
    r.pass = false;
  }
  return r;
}

inline SweepInstance zn_composite_instance(std::uint64_t n) {
  auto h = SemiringHandle::of_domain(DomainSpec::zn(n));
  auto zd = find_zero_divisors(h);
  SweepInstance r{"n=" + std::to_string(n), !zd.findings.empty(), ""};
  if (r.pass) r.detail = "witness " + zd.findings[0].witness[0] + " * " + zd.findings[0].witness[1] + " = [0,0]";
  else r.detail = "no zero-divisor pair";
  return r;
}

inline std::string law_witness(const Magma& g, const LawCheck& c) {
  std::string out;
  for (auto i : c.witness) out += (out.empty() ? "" : ",") + g.plain_label(i);
  return "(" + out + ")";
}

inline SweepInstance loop_laws_instance(std::uint64_t n, std::uint64_t m) {
  Magma g = build_loop(n, m);
  auto p = check_laws(g);
  SweepInstance r{"n=" + std::to_string(n) + " m=" + std::to_string(m), true, ""};
  std::ostringstream os;
  os << "commutative=" << yes_no(p.commutative.holds) << " wip=" << yes_no(p.wip.holds)
     << " left-alt=" << yes_no(p.left_alternative.holds) << " right-alt=" << yes_no(p.right_alternative.holds);
  r.detail = os.str();
  auto expect = [&](const char* law, const LawCheck& c, bool want, const char* criterion) {
    if (!r.pass || c.holds == want) return;
    r.pass = false;
    r.detail += std::string("; ") + law + (c.holds ? " holds" : " fails") + " but " + criterion + " is " +
                (want ? "true" : "false");
    if (!c.holds) r.detail += ", witness " + law_witness(g, c);
  };
  if (g.size() != n + 1) {
    r.pass = false;
    r.detail += "; order " + std::to_string(g.size());
  }
  if (r.pass && !(p.latin_square.holds && p.has_identity.holds)) {
    r.pass = false;
    r.detail += "; loop axioms fail";
  }
  expect("commutative", p.commutative, 2 * m == n + 1, "m = (n+1)/2");
  expect("wip", p.wip, (m * m - m + 1) % n == 0, "n | m^2-m+1");
  expect("left-alternative", p.left_alternative, m == 2, "m = 2");
  expect("right-alternative", p.right_alternative, m == n - 1, "m = n-1");
  if (r.pass && p.left_alternative.holds && p.right_alternative.holds) {
    r.pass = false;
    r.detail += "; both alternative laws hold";
  }
  return r;
}

inline SweepInstance loop_associator_instance(std::uint64_t n, std::uint64_t m) {
  Magma g = build_loop(n, m);
  auto a = associator_closure(g);
  SweepInstance r{"n=" + std::to_string(n) + " m=" + std::to_string(m), a.size() == g.size(), ""};
  r.detail = "closure size " + std::to_string(a.size()) + " of " + std::to_string(g.size());
  return r;
}

inline constexpr std::uint64_t kMaxSweepElements = FiniteView::kMaxTabulated;

inline std::uint64_t checked_power(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > kMaxSweepElements) return r;
    r *= b;
  }
  return r;
}

inline std::string flags(const Classification& c) {
  std::ostringstream os;
  os << "strict=" << yes_no(c.strict.value) << " commutative=" << yes_no(c.commutative.value)
     << " has_one=" << yes_no(c.has_one.value) << " zero_divisor_free=" << yes_no(c.zero_divisor_free.value);
  return os.str();
}

inline std::string first_witness(const FlagVerdict& f) {
  std::string out;
  for (const auto& w : f.witness) out += (out.empty() ? "" : ", ") + w;
  return out;
}

inline SweepInstance chain_semifield_instance(std::uint64_t p, std::uint64_t d) {
  const std::uint64_t m = (p + 1) / 2;
  SweepInstance r{"p=" + std::to_string(p) + " d=" + std::to_string(d), true, ""};
  if (checked_power(d, p + 1) > kMaxSweepElements)
    fail(errc::budget_exceeded, "C" + std::to_string(d) + " over L" + std::to_string(p) + " exceeds " +
                                    std::to_string(kMaxSweepElements) + " elements");
  auto h = SemiringHandle::of_formal(SemiringSpec::carrier(DomainSpec::chain_lattice(d), build_loop(p, m)));
  auto c = classify_semiring(h);
  r.pass = c.semifield.value && c.exhaustive;
  r.detail = flags(c);
  if (!r.pass && !c.semifield.witness.empty()) r.detail += "; fails " + c.semifield.witness[0];
  return r;
}

inline SweepInstance chain_division_instance(std::uint64_t n, std::uint64_t m, std::uint64_t d) {
  SweepInstance r{"n=" + std::to_string(n) + " m=" + std::to_string(m) + " d=" + std::to_string(d), true, ""};
  if (checked_power(d, n + 1) > kMaxSweepElements)
    fail(errc::budget_exceeded, "C" + std::to_string(d) + " over L" + std::to_string(n) + " exceeds " +
                                    std::to_string(kMaxSweepElements) + " elements");
  auto h = SemiringHandle::of_formal(SemiringSpec::carrier(DomainSpec::chain_lattice(d), build_loop(n, m)));
  auto c = classify_semiring(h);
  r.detail = flags(c);
  r.pass = c.exhaustive && c.strict.value && c.zero_divisor_free.value && !c.commutative.value;
  if (!c.zero_divisor_free.value) r.detail += "; zero divisor " + first_witness(c.zero_divisor_free);
  if (!c.strict.value) r.detail += "; cancelling pair " + first_witness(c.strict);
  return r;
}

/// Bounded elements of SG: coefficients from `coeffs` on every basis key.
inline std::vector<Element> bounded_sample(const SpecPtr& spec, const std::vector<Endpoint>& coeffs) {
  auto keys = spec->basis_keys();
  std::vector<Element> out;
  std::vector<std::size_t> digits(keys.size(), 0);
  while (true) {
    std::vector<FormalSum::Term> t;
    for (std::size_t i = 0; i < keys.size(); ++i) t.emplace_back(keys[i], coeffs[digits[i]]);
    out.emplace_back(FormalSum::from_terms(spec, std::move(t)));
    std::size_t i = keys.size();
    while (i-- > 0) {
      if (++digits[i] < coeffs.size()) break;
      digits[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

inline SweepInstance group_nat_instance(std::uint64_t p) {
  SweepInstance r{"p=" + std::to_string(p), true, ""};
  auto nat = DomainSpec::nat();
  auto rat = DomainSpec::rat();
  auto sn = SemiringSpec::carrier(nat, carriers::mult_group_zp(p));
  auto sr = SemiringSpec::carrier(rat, carriers::mult_group_zp(p));
  auto hn = SemiringHandle::of_formal(sn);
  auto hr = SemiringHandle::of_formal(sr);
  auto fail_with = [&](std::string why) {
    if (!r.pass) return;
    r.pass = false;
    r.detail += "; " + why;
  };

  auto cls = classify_semiring(hn);
  r.detail = flags(cls);
  if (!cls.commutative.value) fail_with("noncommutative");
  if (!cls.strict.value) fail_with("not strict");
  if (!cls.zero_divisor_free.value) fail_with("zero divisors");

  // bounded scan backing the structural verdicts
  std::vector<Endpoint> small{nat.value(0), nat.value(1), nat.value(2)};
  if (checked_power(3, p - 1) > 81) small.pop_back();
  AnalysisOptions opt;
  opt.sample = bounded_sample(sn, small);
  auto zd = find_zero_divisors(hn, opt);
  if (!zd.findings.empty()) fail_with("zero divisor " + zd.findings[0].witness[0] + " * " + zd.findings[0].witness[1]);
  for (const auto& a : opt.sample)
    for (const auto& b : opt.sample)
      if (!hn.is_zero(a) && hn.is_zero(hn.add(a, b))) fail_with("cancelling sum " + hn.render(a));
  const std::string one = hn.render(*hn.one());
  for (const auto& f : find_idempotents(hn, opt).findings)
    if (f.witness[0] != "0" && f.witness[0] != one) fail_with("idempotent over nat " + f.witness[0]);

  // c -> c*e embeds the semifield nat into SG
  auto e = *sn->identity_key();
  AnalysisOptions emb;
  for (std::uint64_t c = 0; c <= 12; ++c) emb.sample.emplace_back(nat.value(c));
  auto hom = check_homomorphism(
      [&](const Element& x) -> Element { return FormalSum::monomial(sn, e, std::get<Endpoint>(x)); },
      SemiringHandle::of_domain(nat), hn, emb);
  if (!hom.holds || hom.kernel.size() != 1) fail_with("nat*e is not an embedded semifield");

  // (1/(p-1)) * sum of all g is idempotent over rat
  std::vector<FormalSum::Term> t;
  for (auto k : sr->basis_keys()) t.emplace_back(k, rat.value(Rational(1, static_cast<long>(p - 1))));
  auto x = FormalSum::from_terms(sr, t);
  if (!(fs_mul(x, x) == x)) fail_with("rat idempotent witness fails");
  if (r.pass) r.detail += "; rat idempotent " + x.to_string();
  return r;
}

inline SweepInstance group_zn_instance(std::uint64_t p, std::uint64_t n) {
  SweepInstance r{"p=" + std::to_string(p) + " n=" + std::to_string(n), true, ""};
  auto d = DomainSpec::zn(n);
  auto s = SemiringSpec::carrier(d, carriers::mult_group_zp(p));
  auto h = SemiringHandle::of_formal(s);
  if (!h.cardinality(kMaxSweepElements))
    fail(errc::budget_exceeded, h.describe() + " exceeds " + std::to_string(kMaxSweepElements) + " elements");
  auto c = classify_semiring(h);
  r.detail = flags(c);
  if (!c.commutative.value || c.strict.value) {
    r.pass = false;
    return r;
  }
  r.detail += "; cancelling pair " + first_witness(c.strict);
  if (!prime(n)) {
    std::uint64_t q = 2;
    while (n % q) ++q;
    std::vector<Element> ideal;
    for (const auto& x : h.elements()) {
      bool in = true;
      for (const auto& [k, v] : std::get<FormalSum>(x).terms())
        if (std::get<std::uint64_t>(v.real) % q) in = false;
      if (in) ideal.push_back(x);
    }
    auto v = check_substructure(h, ideal, SubstructureKind::ideal);
    if (!v.holds) {
      r.pass = false;
      r.detail += "; multiples of " + std::to_string(q) + " fail as an ideal";
    } else {
      r.detail += "; ideal of coefficients in " + std::to_string(q) + "Z_" + std::to_string(n) + " with " +
                  std::to_string(ideal.size()) + " elements";
    }
  }
  return r;
}

/// Proper closed subsets other than {0} among `elems`, first in mask order.
inline std::optional<std::vector<std::string>> proper_subsemiring(const FiniteView& v) {
  const std::size_t n = v.size();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    if (!(mask >> v.zero() & 1u) || mask == (std::uint64_t{1} << v.zero())) continue;
    bool closed = true;
    for (std::size_t a = 0; a < n && closed; ++a) {
      if (!(mask >> a & 1u)) continue;
      for (std::size_t b = 0; b < n && closed; ++b) {
        if (!(mask >> b & 1u)) continue;
        auto s = v.add(static_cast<FiniteView::Idx>(a), static_cast<FiniteView::Idx>(b));
        auto m = v.mul(static_cast<FiniteView::Idx>(a), static_cast<FiniteView::Idx>(b));
        closed = s >= 0 && m >= 0 && (mask >> s & 1u) && (mask >> m & 1u);
      }
    }
    if (closed) {
      std::vector<std::string> out;
      for (std::size_t a = 0; a < n; ++a)
        if (mask >> a & 1u) out.push_back(v.render(static_cast<FiniteView::Idx>(a)));
      return out;
    }
  }
  return std::nullopt;
}

inline SweepInstance neutro_instance(std::uint64_t p) {
  SweepInstance r{"p=" + std::to_string(p), true, ""};
  auto d = DomainSpec::neutro_pure(DomainSpec::zn(p));
  std::vector<Element> elems;
  for (auto& e : d.elements()) elems.emplace_back(e);
  FiniteView v(SemiringHandle::of_domain(d), elems);
  if (auto s = proper_subsemiring(v)) {
    r.pass = false;
    std::string w;
    for (const auto& x : *s) w += (w.empty() ? "" : ", ") + x;
    r.detail = "subsemiring {" + w + "}";
  } else {
    r.detail = std::to_string((std::uint64_t{1} << v.size()) - 2) + " subsets scanned, none closed";
  }
  return r;
}

inline SweepInstance neutro_row_instance(std::uint64_t p, std::uint64_t len) {
  SweepInstance r{"p=" + std::to_string(p) + " len=" + std::to_string(len), true, ""};
  auto d = DomainSpec::neutro_pure(DomainSpec::zn(p));
  MatrixSpec ms{d, MatrixShape::row, len};
  std::vector<Element> elems;
  for (auto& e : d.elements()) elems.emplace_back(IntervalMatrix(ms, std::vector<Endpoint>(len, e)));
  FiniteView v(SemiringHandle::of_matrix(ms), elems);
  if (auto s = proper_subsemiring(v)) {
    r.pass = false;
    std::string w;
    for (const auto& x : *s) w += (w.empty() ? "" : ", ") + x;
    r.detail = "subsemiring {" + w + "}";
  } else {
    r.detail = std::to_string((std::uint64_t{1} << v.size()) - 2) + " subsets scanned, none closed";
  }
  return r;
}

}  // namespace detail

/// Runs the named sweep. With `halt_on_failure` the first failing instance
/// ends the sweep.
inline SweepReport theorem_sweep(const std::string& name, const SweepParams& given = {}, bool halt_on_failure = true) {
  const SweepInfo* info = find_sweep(name);
  if (!info) fail(errc::invalid_argument, "unknown sweep " + name);
  SweepReport rep;
  rep.name = name;
  rep.params = resolve_params(*info, given);
  const auto& P = rep.params;
  auto push = [&](SweepInstance i) {
    rep.pass = rep.pass && i.pass;
    rep.instances.push_back(std::move(i));
    return !(halt_on_failure && !rep.pass);
  };
  auto odd_loops = [&](const SweepRange& r, auto&& body) {
    for (std::uint64_t n = r.lo; n <= r.hi; ++n) {
      if (n % 2 == 0 || n <= 3) continue;
      for (auto m : detail::valid_multipliers(n))
        if (!body(n, m)) return false;
    }
    return true;
  };
  bool done = true;
  if (name == "zn-prime-clean") {
    for (std::uint64_t p = P.at("pmax").lo; p <= P.at("pmax").hi && done; ++p)
      if (detail::prime(p)) done = push(detail::zn_prime_instance(p));
  } else if (name == "zn-composite-zd") {
    for (std::uint64_t n = P.at("nmax").lo; n <= P.at("nmax").hi && done; ++n)
      if (!detail::prime(n)) done = push(detail::zn_composite_instance(n));
  } else if (name == "loop-laws") {
    done = odd_loops(P.at("n"), [&](auto n, auto m) { return push(detail::loop_laws_instance(n, m)); });
  } else if (name == "loop-associator") {
    done = odd_loops(P.at("n"), [&](auto n, auto m) { return push(detail::loop_associator_instance(n, m)); });
  } else if (name == "chain-loop-semifield") {
    for (std::uint64_t p = P.at("p").lo; p <= P.at("p").hi && done; ++p) {
      if (!detail::prime(p)) continue;
      for (std::uint64_t d = P.at("d").lo; d <= P.at("d").hi && done; ++d)
        done = push(detail::chain_semifield_instance(p, d));
    }
  } else if (name == "chain-loop-division") {
    done = odd_loops(P.at("n"), [&](auto n, auto m) {
      if (2 * m == n + 1) return true;
      for (std::uint64_t d = P.at("d").lo; d <= P.at("d").hi; ++d)
        if (!push(detail::chain_division_instance(n, m, d))) return false;
      return true;
    });
  } else if (name == "group-nat") {
    for (std::uint64_t p = P.at("p").lo; p <= P.at("p").hi && done; ++p)
      if (detail::prime(p)) done = push(detail::group_nat_instance(p));
  } else if (name == "group-zn") {
    for (std::uint64_t p = P.at("p").lo; p <= P.at("p").hi && done; ++p) {
      if (!detail::prime(p)) continue;
      for (std::uint64_t n = P.at("n").lo; n <= P.at("n").hi && done; ++n) done = push(detail::group_zn_instance(p, n));
    }
  } else if (name == "neutro-prime-no-subsemiring") {
    for (std::uint64_t p = P.at("p").lo; p <= P.at("p").hi && done; ++p)
      if (detail::prime(p)) done = push(detail::neutro_instance(p));
  } else if (name == "neutro-row-no-subsemiring") {
    for (std::uint64_t p = P.at("p").lo; p <= P.at("p").hi && done; ++p) {
      if (!detail::prime(p)) continue;
      for (std::uint64_t l = P.at("len").lo; l <= P.at("len").hi && done; ++l) done = push(detail::neutro_row_instance(p, l));
    }
  }
  rep.completed = done;
  return rep;
}

}  // namespace isl
