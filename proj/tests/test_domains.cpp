#include "catch_amalgamated.hpp"

#include "isl/isl.hpp"

using namespace isl;
using boost::multiprecision::cpp_int;

namespace {

std::uint64_t as_u64(const Endpoint& e) { return std::get<std::uint64_t>(e.real); }

}  // namespace

TEST_CASE("zn arithmetic matches big-integer residues", "[domain]") {
  for (std::uint64_t n = 2; n <= 50; ++n) {
    auto d = DomainSpec::zn(n);
    REQUIRE(d.cardinality() == n);
    for (std::uint64_t a = 0; a < n; ++a)
      for (std::uint64_t b = 0; b < n; ++b) {
        cpp_int s = (cpp_int(a) + b) % n, p = (cpp_int(a) * b) % n;
        REQUIRE(as_u64(d.add(d.value(a), d.value(b))) == s.convert_to<std::uint64_t>());
        REQUIRE(as_u64(d.mul(d.value(a), d.value(b))) == p.convert_to<std::uint64_t>());
      }
  }
}

TEST_CASE("zn near 2^64 does not overflow", "[domain]") {
  const std::uint64_t n = 18446744073709551557ull;  // largest 64-bit prime
  auto d = DomainSpec::zn(n);
  auto x = d.parse("[0,18446744073709551556]");
  cpp_int want = (cpp_int(n - 1) * (n - 1)) % n;
  CHECK(as_u64(d.mul(x, x)) == want.convert_to<std::uint64_t>());
  CHECK(as_u64(d.add(x, x)) == n - 2);
}

TEST_CASE("nat and rat intervals", "[domain]") {
  auto nat = DomainSpec::nat();
  auto a = nat.parse("[0,123456789012345678901234567890]");
  auto sq = nat.mul(a, a);
  CHECK(nat.format(sq) == "[0,15241578753238836750495351562536198787501905199875019052100]");
  CHECK_FALSE(nat.is_finite());
  CHECK(is_strict_domain(nat).strict);
  CHECK_FALSE(is_strict_domain(nat).proof.empty());

  auto rat = DomainSpec::rat();
  auto h = rat.parse("[0,1/2]");
  auto t = rat.parse("[0,2/6]");
  CHECK(rat.format(rat.add(h, t)) == "[0,5/6]");
  CHECK(rat.format(rat.mul(h, t)) == "[0,1/6]");
  CHECK(rat.format(t) == "[0,1/3]");
  CHECK(rat.format(rat.mul(rat.parse("[0,3/7]"), rat.parse("[0,5/9]"))) == "[0,5/21]");
  CHECK_THROWS_AS(rat.parse("[0,-1/2]"), parse_error);
}

TEST_CASE("nat restricted to multiples", "[domain]") {
  auto d = DomainSpec::nat(3);
  CHECK(d.contains(d.parse("[0,6]")));
  CHECK_THROWS(d.parse("[0,4]"));
  CHECK_FALSE(d.one().has_value());
  CHECK(d.format(d.mul(d.parse("[0,3]"), d.parse("[0,9]"))) == "[0,27]");
}

TEST_CASE("interval elements reject mixed domains", "[domain]") {
  auto x = parse_interval(DomainSpec::zn(12), "[0,5]");
  auto y = parse_interval(DomainSpec::zn(13), "[0,5]");
  try {
    dom_add(x, y);
    FAIL("expected incompatible_domains");
  } catch (const error& e) {
    CHECK(e.code() == errc::incompatible_domains);
  }
  CHECK(dom_mul(x, parse_interval(DomainSpec::zn(12), "[0,5]")).to_string() == "[0,1]");
  CHECK(dom_units(DomainSpec::zn(12)).one->to_string() == "[0,1]");
  CHECK(dom_units(DomainSpec::zn(12)).zero.is_zero());
}

TEST_CASE("parse errors carry positions", "[domain]") {
  auto d = DomainSpec::zn(7);
  auto pos = [&](std::string_view s) {
    try {
      d.parse(s);
    } catch (const parse_error& e) {
      return e.position();
    }
    return std::size_t(-1);
  };
  CHECK(pos("0,3]") == 0);
  CHECK(pos("[1,3]") == 1);
  CHECK(pos("  [0,x]") != std::size_t(-1));
  // residues are read mod n
  CHECK(d.parse("[0,9]") == d.value(2));
  for (auto foreign : {"[0,3I]", "[0,1/2]"}) {
    try {
      d.parse(foreign);
      FAIL("expected incompatible_domains");
    } catch (const error& e) {
      CHECK(e.code() == errc::incompatible_domains);
    }
  }
}

TEST_CASE("format and parse round-trip", "[domain]") {
  std::vector<DomainSpec> ds{DomainSpec::zn(9), DomainSpec::chain_lattice(4),
                             DomainSpec::neutro_mixed(DomainSpec::zn(5)), DomainSpec::neutro_pure(DomainSpec::zn(7))};
  for (const auto& d : ds)
    for (const auto& e : d.elements()) REQUIRE(d.parse(d.format(e)) == e);
}

TEST_CASE("strictness and characteristic", "[domain]") {
  auto v = is_strict_domain(DomainSpec::zn(11));
  REQUIRE_FALSE(v.strict);
  CHECK(v.witness->first.to_string() == "[0,1]");
  CHECK(v.witness->second.to_string() == "[0,10]");
  CHECK(is_strict_domain(DomainSpec::chain_lattice(3)).strict);
  CHECK(characteristic(DomainSpec::zn(12)).value == 12);
  CHECK(characteristic(DomainSpec::nat()).value == 0);
  auto c = characteristic(DomainSpec::chain_lattice(3));
  CHECK(c.value == 0);
  CHECK(c.additively_idempotent);
}

TEST_CASE("chain lattice is max/min", "[domain]") {
  auto d = DomainSpec::chain_lattice(5);
  auto e = d.elements();
  REQUIRE(e.size() == 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(d.add(e[i], e[j]) == e[std::max(i, j)]);
      CHECK(d.mul(e[i], e[j]) == e[std::min(i, j)]);
    }
  CHECK(d.format(e[0]) == "[0,0]");
  CHECK(d.format(e[4]) == "[0,1]");
  CHECK(d.format(e[2]) == "[0,a2]");
}

TEST_CASE("table lattices must be distributive", "[domain]") {
  // diamond 0 < a, b < 1 is distributive
  CHECK_NOTHROW(DomainSpec::table_lattice({"0", "a", "b", "1"},
                                          {{0, 1, 2, 3}, {1, 1, 3, 3}, {2, 3, 2, 3}, {3, 3, 3, 3}},
                                          {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}}));
  // M3: 0 < a, b, c < 1
  LatticeTable mj(5, std::vector<std::uint32_t>(5)), mm = mj;
  for (std::uint32_t i = 0; i < 5; ++i)
    for (std::uint32_t j = 0; j < 5; ++j) {
      if (i == j) mj[i][j] = mm[i][j] = i;
      else if (i == 0 || j == 0) mj[i][j] = std::max(i, j), mm[i][j] = 0;
      else if (i == 4 || j == 4) mj[i][j] = 4, mm[i][j] = std::min(i, j);
      else mj[i][j] = 4, mm[i][j] = 0;
    }
  CHECK_THROWS_AS(DomainSpec::table_lattice({"0", "a", "b", "c", "1"}, mj, mm), error);
  // N5: 0 < a < c < 1, 0 < b < 1
  std::vector<std::vector<int>> le{{1, 1, 1, 1, 1}, {0, 1, 0, 1, 1}, {0, 0, 1, 0, 1}, {0, 0, 0, 1, 1}, {0, 0, 0, 0, 1}};
  LatticeTable nj(5, std::vector<std::uint32_t>(5)), nm = nj;
  for (std::uint32_t i = 0; i < 5; ++i)
    for (std::uint32_t j = 0; j < 5; ++j) {
      std::uint32_t best_j = 4, best_m = 0;
      for (std::uint32_t k = 0; k < 5; ++k) {
        if (le[i][k] && le[j][k] && le[k][best_j]) best_j = k;
        if (le[k][i] && le[k][j] && le[best_m][k]) best_m = k;
      }
      nj[i][j] = best_j;
      nm[i][j] = best_m;
    }
  CHECK_THROWS_AS(DomainSpec::table_lattice({"0", "a", "b", "c", "1"}, nj, nm), error);
  // not even a lattice
  CHECK_THROWS_AS(DomainSpec::table_lattice({"0", "1"}, {{0, 0}, {0, 1}}, {{0, 0}, {0, 1}}), error);
}

TEST_CASE("neutrosophic multiplication substitutes I^2 = I", "[domain]") {
  for (std::uint64_t n = 2; n <= 9; ++n) {
    auto d = DomainSpec::neutro_mixed(DomainSpec::zn(n));
    REQUIRE(d.elements().size() == n * n);
    for (std::uint64_t a = 0; a < n; ++a)
      for (std::uint64_t b = 0; b < n; ++b)
        for (std::uint64_t c = 0; c < n; ++c)
          for (std::uint64_t e = 0; e < n; ++e) {
            auto want = d.neutro(a * c % n, (a * e + b * c + b * e) % n);
            REQUIRE(d.mul(d.neutro(a, b), d.neutro(c, e)) == want);
            REQUIRE(d.add(d.neutro(a, b), d.neutro(c, e)) == d.neutro((a + c) % n, (b + e) % n));
          }
  }
  auto p = DomainSpec::neutro_pure(DomainSpec::zn(7));
  CHECK(p.elements().size() == 7);
  CHECK(p.format(p.mul(p.parse("[0,3I]"), p.parse("[0,4I]"))) == "[0,5I]");
  CHECK_THROWS_AS(p.parse("[0,3]"), parse_error);
  auto m = DomainSpec::neutro_mixed(DomainSpec::zn(5));
  CHECK(m.format(m.parse("[0,2+3I]")) == "[0,2+3I]");
  CHECK(m.format(m.mul(m.parse("[0,2+3I]"), m.parse("[0,1+1I]"))) == "[0,2+3I]");
  CHECK(m.is_zero(m.mul(m.parse("[0,2+3I]"), m.parse("[0,I]"))));
}
