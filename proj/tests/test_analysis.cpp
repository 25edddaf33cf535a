#include "catch_amalgamated.hpp"

#include <numeric>

#include "isl/isl.hpp"

using namespace isl;

namespace {

void all_valid(const SemiringHandle& h, const AnalysisReport& r) {
  for (const auto& f : r.findings) {
    INFO(f.kind << " in " << r.structure);
    REQUIRE(validate_finding(h, f));
  }
}

std::vector<Element> parse_all(const SemiringHandle& h, std::vector<std::string> xs) {
  std::vector<Element> out;
  for (const auto& x : xs) out.push_back(h.parse(x));
  return out;
}

}  // namespace

TEST_CASE("zn zero divisors and units match gcd oracle", "[analysis]") {
  for (std::uint64_t n = 2; n <= 100; ++n) {
    auto h = SemiringHandle::of_domain(DomainSpec::zn(n));
    std::size_t zd = 0, units = 0, idem = 0;
    for (std::uint64_t a = 0; a < n; ++a) {
      idem += a * a % n == a;
      if (a == 0) continue;
      units += std::gcd(a, n) == 1;
      for (std::uint64_t b = a; b < n; ++b) zd += a * b % n == 0;
    }
    auto rz = find_zero_divisors(h);
    auto ru = find_units(h);
    auto ri = find_idempotents(h);
    REQUIRE(rz.exhaustive);
    REQUIRE(rz.findings.size() == zd);
    REQUIRE(ru.findings.size() == units);
    REQUIRE(ri.findings.size() == idem);
    all_valid(h, rz);
    all_valid(h, ru);
    all_valid(h, ri);
  }
}

TEST_CASE("nilpotents", "[analysis]") {
  auto h = SemiringHandle::of_domain(DomainSpec::zn(8));
  auto r = find_nilpotents(h);
  std::set<std::string> w;
  for (const auto& f : r.findings) w.insert(f.witness[0]);
  CHECK(w == std::set<std::string>{"[0,2]", "[0,4]", "[0,6]"});
  all_valid(h, r);
  auto c4 = SemiringHandle::of_formal(SemiringSpec::carrier(DomainSpec::zn(2), carriers::cyclic(4)));
  auto rc = find_nilpotents(c4);
  CHECK_FALSE(rc.findings.empty());
  all_valid(c4, rc);
  // nonassociative carrier: powers are nested on the left
  auto g = SemiringHandle::of_formal(SemiringSpec::carrier(DomainSpec::zn(2), build_groupoid(3, 1, 2)));
  all_valid(g, find_nilpotents(g));
}

TEST_CASE("infinite handles use proofs or samples", "[analysis]") {
  auto h = SemiringHandle::of_formal(SemiringSpec::carrier(DomainSpec::nat(), build_loop(7, 3)));
  auto r = find_zero_divisors(h);
  CHECK(r.findings.empty());
  CHECK_FALSE(r.note.empty());
  auto nat = SemiringHandle::of_domain(DomainSpec::nat());
  AnalysisOptions o;
  o.sample = parse_all(nat, {"[0,0]", "[0,1]", "[0,2]", "[0,3]"});
  auto ri = find_idempotents(nat, o);
  CHECK(ri.findings.size() == 2);
  CHECK_FALSE(ri.exhaustive);
  all_valid(nat, ri);
  CHECK_THROWS_AS(find_idempotents(h), error);
}

TEST_CASE("budgets mark reports partial", "[analysis]") {
  auto h = SemiringHandle::of_domain(DomainSpec::zn(60));
  AnalysisOptions o;
  o.max_pairs = 200;
  auto r = find_zero_divisors(h, o);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.pairs_scanned <= 200);
  all_valid(h, r);
  CHECK(r.findings.size() < find_zero_divisors(h).findings.size());
}

TEST_CASE("S-special elements", "[analysis]") {
  auto h = SemiringHandle::of_domain(DomainSpec::zn(12));
  for (auto k : {SSpecialKind::s_zero_divisor, SSpecialKind::s_anti_zero_divisor, SSpecialKind::s_idempotent,
                 SSpecialKind::s_unit}) {
    auto r = find_s_special(h, k);
    all_valid(h, r);
  }
  CHECK_FALSE(find_s_special(h, SSpecialKind::s_zero_divisor).findings.empty());
  // field zn(7) has no S-zero divisors
  CHECK(find_s_special(SemiringHandle::of_domain(DomainSpec::zn(7)), SSpecialKind::s_zero_divisor).findings.empty());
}

TEST_CASE("validate_finding rejects bogus witnesses", "[analysis]") {
  auto h = SemiringHandle::of_domain(DomainSpec::zn(12));
  CHECK_FALSE(validate_finding(h, {"zero-divisor", {"[0,5]", "[0,7]"}}));
  CHECK_FALSE(validate_finding(h, {"idempotent", {"[0,3]"}}));
  CHECK(validate_finding(h, {"idempotent", {"[0,4]"}}));
  CHECK_FALSE(validate_finding(h, {"unit", {"[0,2]", "[0,6]"}}));
  CHECK(validate_finding(h, {"unit", {"[0,5]", "[0,5]"}}));
  CHECK_FALSE(validate_finding(h, {"no-such-kind", {}}));
}

TEST_CASE("substructures", "[analysis]") {
  auto h = SemiringHandle::of_domain(DomainSpec::zn(12));
  auto evens = parse_all(h, {"[0,0]", "[0,2]", "[0,4]", "[0,6]", "[0,8]", "[0,10]"});
  CHECK(check_substructure(h, evens, SubstructureKind::subsemiring).holds);
  CHECK(check_substructure(h, evens, SubstructureKind::ideal).holds);
  auto bad = parse_all(h, {"[0,0]", "[0,1]"});
  auto v = check_substructure(h, bad, SubstructureKind::subsemiring);
  CHECK_FALSE(v.holds);
  CHECK(v.witness.front() == "add");
  auto nozero = parse_all(h, {"[0,4]"});
  CHECK(check_substructure(h, nozero, SubstructureKind::subsemiring).witness.front() == "zero");

  // left but not right ideal in 2x2 matrices over zn(2): first column
  auto m = SemiringHandle::of_matrix({DomainSpec::zn(2), MatrixShape::square, 2});
  auto col = parse_all(m, {"mat(0,0;0,0)", "mat([0,1],0;0,0)", "mat(0,0;[0,1],0)", "mat([0,1],0;[0,1],0)"});
  CHECK(check_substructure(m, col, SubstructureKind::left_ideal).holds);
  CHECK_FALSE(check_substructure(m, col, SubstructureKind::right_ideal).holds);
}

TEST_CASE("classification", "[analysis]") {
  auto sf = SemiringHandle::of_formal(SemiringSpec::carrier(DomainSpec::chain_lattice(2), build_loop(5, 3)));
  auto c = classify_semiring(sf);
  CHECK(c.exhaustive);
  CHECK(c.strict.value);
  CHECK(c.commutative.value);
  CHECK(c.semifield.value);

  auto nc = classify_semiring(
      SemiringHandle::of_formal(SemiringSpec::carrier(DomainSpec::chain_lattice(2), build_loop(5, 2))));
  CHECK_FALSE(nc.commutative.value);
  CHECK_FALSE(nc.commutative.witness.empty());
  CHECK(nc.zero_divisor_free.value);
  CHECK_FALSE(nc.semifield.value);

  auto z = classify_semiring(SemiringHandle::of_domain(DomainSpec::zn(11)));
  CHECK_FALSE(z.strict.value);
  CHECK_FALSE(z.semifield.value);

  auto nat = classify_semiring(SemiringHandle::of_domain(DomainSpec::nat()));
  CHECK(nat.semifield.value);
  CHECK_FALSE(nat.strict.proof.empty());
}

TEST_CASE("Smarandache search", "[analysis]") {
  auto h = SemiringHandle::of_formal(SemiringSpec::carrier(DomainSpec::chain_lattice(2), carriers::cyclic(3)));
  auto r = smarandache_search(h, SearchMode::exhaustive, 8);
  CHECK(r.note.rfind("S-semiring", 0) == 0);
  CHECK_FALSE(r.findings.empty());
  for (const auto& f : r.findings) {
    auto p = parse_all(h, f.witness);
    CHECK(is_semifield_subset(h, p));
  }
  auto gen = smarandache_search(h, SearchMode::generated, 2);
  CHECK(gen.note.rfind("S-semiring", 0) == 0);

  auto z = SemiringHandle::of_domain(DomainSpec::zn(6));
  CHECK(smarandache_search(z, SearchMode::exhaustive, 6).findings.empty());
}

TEST_CASE("subsemiring closure", "[analysis]") {
  auto h = SemiringHandle::of_domain(DomainSpec::zn(12));
  auto c = subsemiring_closure(h, parse_all(h, {"[0,3]"}), 100);
  REQUIRE(c.has_value());
  CHECK(c->size() == 4);
}

TEST_CASE("homomorphisms", "[analysis]") {
  auto z12 = SemiringHandle::of_domain(DomainSpec::zn(12));
  auto z4 = SemiringHandle::of_domain(DomainSpec::zn(4));
  auto d4 = DomainSpec::zn(4);
  auto red = [&](const Element& x) -> Element {
    return d4.value(std::get<std::uint64_t>(std::get<Endpoint>(x).real) % 4);
  };
  auto v = check_homomorphism(red, z12, z4);
  CHECK(v.holds);
  CHECK(v.exhaustive);
  CHECK(v.kernel.size() == 3);
  auto z5 = SemiringHandle::of_domain(DomainSpec::zn(5));
  auto d5 = DomainSpec::zn(5);
  auto bad = [&](const Element& x) -> Element {
    return d5.value(std::get<std::uint64_t>(std::get<Endpoint>(x).real) % 5);
  };
  auto w = check_homomorphism(bad, z12, z5);
  CHECK_FALSE(w.holds);
  CHECK_FALSE(w.witness.empty());
}

TEST_CASE("FiniteView tables agree with the handle", "[analysis]") {
  auto h = SemiringHandle::of_formal(SemiringSpec::carrier(DomainSpec::zn(3), carriers::cyclic(2)));
  auto v = FiniteView::canonical(h, 1000);
  REQUIRE(v.size() == 9);
  auto elems = h.elements();
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = 0; b < v.size(); ++b) {
      auto ix = static_cast<FiniteView::Idx>(a), iy = static_cast<FiniteView::Idx>(b);
      REQUIRE(v.render(static_cast<FiniteView::Idx>(v.mul(ix, iy))) == h.render(h.mul(v.at(ix), v.at(iy))));
      REQUIRE(v.render(static_cast<FiniteView::Idx>(v.add(ix, iy))) == h.render(h.add(v.at(ix), v.at(iy))));
    }
}

TEST_CASE("sweeps pass on their default ranges", "[sweep]") {
  for (const auto& info : sweep_catalog()) {
    if (info.name == "loop-laws") continue;
    auto r = theorem_sweep(info.name);
    INFO(info.name);
    CHECK(r.pass);
    CHECK(r.completed);
    CHECK_FALSE(r.instances.empty());
  }
}

TEST_CASE("loop-laws sweep reports the alternative-law mismatch", "[sweep]") {
  auto r = theorem_sweep("loop-laws", {{"n", {5, 9}}}, false);
  CHECK_FALSE(r.pass);
  std::size_t failing = 0;
  for (const auto& i : r.instances)
    if (!i.pass) {
      ++failing;
      CHECK(i.detail.find("alternative") != std::string::npos);
    }
  CHECK(failing > 0);
  auto halted = theorem_sweep("loop-laws", {{"n", {5, 9}}});
  CHECK_FALSE(halted.completed);
  CHECK(halted.instances.size() == 1);
}

TEST_CASE("sweep parameters", "[sweep]") {
  CHECK(find_sweep("nope") == nullptr);
  const auto* info = find_sweep("zn-prime-clean");
  REQUIRE(info);
  auto r = parse_sweep_range(info->params[0], "30");
  CHECK(r.hi == 30);
  CHECK_THROWS_AS(resolve_params(*info, {{"pmax", {2, 100000}}}), error);
  auto small = theorem_sweep("zn-prime-clean", {{"pmax", {2, 13}}});
  CHECK(small.instances.size() == 6);
  const auto* loops = find_sweep("loop-laws");
  auto lr = parse_sweep_range(loops->params[0], "7..11");
  CHECK(lr.lo == 7);
  CHECK(lr.hi == 11);
  CHECK_THROWS(parse_sweep_range(loops->params[0], "a..b"));
}
