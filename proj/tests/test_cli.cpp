#include "catch_amalgamated.hpp"

#include <fstream>
#include <sstream>

#include "isl/isl.hpp"

using namespace isl;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string spec(const std::string& name) { return std::string(ISL_SPEC_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("domain json round-trip", "[cli]") {
  std::vector<DomainSpec> ds{DomainSpec::zn(12),
                             DomainSpec::nat(),
                             DomainSpec::nat(4),
                             DomainSpec::rat(),
                             DomainSpec::chain_lattice(3),
                             DomainSpec::table_lattice({"0", "a", "b", "1"},
                                                       {{0, 1, 2, 3}, {1, 1, 3, 3}, {2, 3, 2, 3}, {3, 3, 3, 3}},
                                                       {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}}),
                             DomainSpec::neutro_pure(DomainSpec::zn(7)),
                             DomainSpec::neutro_mixed(DomainSpec::nat())};
  for (const auto& d : ds) {
    auto j = domain_to_json(d);
    REQUIRE(domain_from_json(j) == d);
    REQUIRE(domain_from_json(json::parse(j.dump())) == d);
  }
  CHECK_THROWS_AS(domain_from_json(json::parse(R"({"kind":"zn","n":12,"extra":1})")), error);
  CHECK_THROWS_AS(domain_from_json(json::parse(R"({"kind":"zq","n":12})")), error);
}

TEST_CASE("carrier and table json round-trip", "[cli]") {
  for (const auto& g : {build_loop(7, 3), build_groupoid(5, 3, 2), carriers::dihedral(3), carriers::mult_group_zp(5),
                        carriers::symmetric_semigroup(2)}) {
    auto j = carrier_to_json(g);
    auto back = carrier_from_json(j);
    REQUIRE(back.same_table(g));
    REQUIRE(back.meta().kind == g.meta().kind);
    auto t = table_from_json(table_to_json(g));
    REQUIRE(t.same_table(g));
  }
  auto custom = json::parse(R"({"kind":"custom","labels":["a","b"],"table":[[0,1],[1,0]]})");
  auto g = carrier_from_json(custom);
  CHECK(g.size() == 2);
  CHECK(check_laws(g).associative.holds);
  CHECK_THROWS_AS(carrier_from_json(json::parse(R"({"kind":"custom","labels":["a","b"],"table":[[0,2],[1,0]]})")),
                  error);
}

TEST_CASE("report json round-trip", "[cli]") {
  auto h = SemiringHandle::of_domain(DomainSpec::zn(30));
  for (auto r : {find_zero_divisors(h), find_units(h), find_idempotents(h), find_nilpotents(h)}) {
    auto back = report_from_json(report_to_json(r));
    CHECK(back.name == r.name);
    CHECK(back.findings == r.findings);
    CHECK(back.exhaustive == r.exhaustive);
    CHECK(back.pairs_scanned == r.pairs_scanned);
    CHECK(report_to_json(back).dump() == report_to_json(r).dump());
  }
}

TEST_CASE("every shipped spec file loads", "[cli]") {
  for (const auto& entry : std::filesystem::directory_iterator(ISL_SPEC_DIR)) {
    INFO(entry.path().string());
    auto s = load_spec_file(entry.path().string());
    auto h = s.handle();
    CHECK_FALSE(h.describe().empty());
    auto again = spec_from_json(spec_to_json(s));
    CHECK(again.handle().describe() == h.describe());
  }
}

TEST_CASE("spec file errors", "[cli]") {
  CHECK_THROWS_AS(load_spec_file(temp_file("isl-bad.json", "{\"schema\": \"1\",")), parse_error);
  CHECK_THROWS_AS(load_spec_file(temp_file("isl-key.json", R"({"schema":"1","coefficients":{"kind":"zn","n":4},"colour":1})")),
                  error);
  CHECK_THROWS_AS(load_spec_file("/nonexistent/spec.json"), error);
}

TEST_CASE("table command", "[cli]") {
  auto r = cli({"table", "loop", "--n", "5", "--m", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("o\te\t1\t2\t3\t4\t5\n", 0) == 0);
  CHECK(cli({"table", "loop", "--n", "6", "--m", "2"}).code == 2);
  CHECK(cli({"table", "nonsense"}).code == 2);
  auto j = cli({"--json", "table", "groupoid", "--n", "3", "--t", "1", "--u", "2"});
  REQUIRE(j.code == 0);
  auto parsed = json::parse(j.out);
  CHECK(parsed["rows"].size() == 3);
  CHECK(table_from_json(parsed).same_table(build_groupoid(3, 1, 2)));
}

TEST_CASE("eval command", "[cli]") {
  auto r = cli({"eval", "--spec", spec("poly-nat.json"), "--lhs", "[0,5] + [0,3]*x^2", "--rhs", "[0,2]*x^1", "--op",
                "mul"});
  CHECK(r.code == 0);
  CHECK(r.out == "[0,10]*x^1 + [0,6]*x^3\n");
  auto t = cli({"--trace", "eval", "--spec", spec("z5-32-nat.json"), "--expr", "([0,7]*4b * [0,12]*2b) * [0,10]*3b"});
  CHECK(t.code == 0);
  CHECK(t.out.find("[0,840]*4b") != std::string::npos);
  CHECK(t.out.find(" * ") != std::string::npos);
  auto e = cli({"eval", "--spec", spec("poly-nat.json"), "--expr", "a * b * c"});
  CHECK(e.code == 3);
  CHECK(e.err.find("position") != std::string::npos);
  CHECK(cli({"eval", "--spec", spec("zn12.json"), "--expr", "[0,1/2]"}).code == 4);
  CHECK(cli({"eval", "--spec", spec("zn12.json")}).code == 2);
  auto timed = cli({"--timing", "eval", "--spec", spec("zn12.json"), "--expr", "[0,5] * [0,5]"});
  CHECK(timed.out.rfind("[0,1]\n---\ntiming: ", 0) == 0);
}

TEST_CASE("classify command", "[cli]") {
  auto r = cli({"classify", "--spec", spec("zn12.json"), "--query", "zero-divisors"});
  CHECK(r.code == 0);
  CHECK(r.out.find("findings: 9\n") != std::string::npos);
  CHECK(r.out.find("exhaustive: yes") != std::string::npos);

  auto j = cli({"--json", "classify", "--spec", spec("zn23.json"), "--query", "units"});
  REQUIRE(j.code == 0);
  auto rep = report_from_json(json::parse(j.out));
  CHECK(rep.findings.size() == 22);
  auto h = SemiringHandle::of_domain(DomainSpec::zn(23));
  for (const auto& f : rep.findings) CHECK(validate_finding(h, f));

  CHECK(cli({"--expect", "nonempty", "classify", "--spec", spec("zn11.json"), "--query", "zero-divisors"}).code == 1);
  CHECK(cli({"--expect", "empty", "classify", "--spec", spec("zn11.json"), "--query", "zero-divisors"}).code == 0);
  CHECK(cli({"--expect", "semifield", "classify", "--spec", spec("sl53-c2.json"), "--query", "semifield"}).code == 0);
  CHECK(cli({"--expect", "not-strict", "classify", "--spec", spec("zn11.json"), "--query", "semifield"}).code == 0);
  CHECK(cli({"--require-exhaustive", "--budget", "10", "classify", "--spec", spec("zn18.json"), "--query",
             "zero-divisors"})
            .code == 5);
  auto partial = cli({"--budget", "10", "classify", "--spec", spec("zn18.json"), "--query", "zero-divisors"});
  CHECK(partial.code == 0);
  CHECK(partial.out.find("exhaustive: no") != std::string::npos);
  CHECK(cli({"classify", "--spec", spec("zn12.json"), "--query", "bogus"}).code == 2);
}

TEST_CASE("classify subsets and samples", "[cli]") {
  auto ok = cli({"classify", "--spec", spec("zn12.json"), "--query", "ideal", "--subset",
                 "[0,0];[0,3];[0,6];[0,9]"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("flag ideal: yes") != std::string::npos);
  auto bad = cli({"--expect", "ideal", "classify", "--spec", spec("zn12.json"), "--query", "ideal", "--subset",
                  "[0,0];[0,5]"});
  CHECK(bad.code == 1);
  auto file = temp_file("isl-subset.txt", "[0,0]\n[0,4]\n[0,8]\n");
  CHECK(cli({"classify", "--spec", spec("zn12.json"), "--query", "subsemiring", "--subset", "@" + file}).code == 0);
  auto s = cli({"classify", "--spec", spec("sl73-nat.json"), "--query", "idempotents", "--sample",
                "[0,1]*e;[0,2]*g1;[0,1]*g1 + [0,1]*g2"});
  CHECK(s.code == 0);
  CHECK(s.out.find("exhaustive: no") != std::string::npos);
  CHECK(s.out.find("findings: 2") != std::string::npos);
}

TEST_CASE("verify command", "[cli]") {
  auto r = cli({"verify", "zn-prime-clean", "--pmax", "30"});
  CHECK(r.code == 0);
  CHECK(r.out.find("summary: PASS (10/10 instances)") != std::string::npos);
  auto c = cli({"verify", "zn-composite-zd", "--nmax=20"});
  CHECK(c.code == 0);
  auto u = cli({"verify", "no-such-sweep"});
  CHECK(u.code == 2);
  CHECK(u.err.find("available sweeps") != std::string::npos);
  CHECK(cli({"verify", "zn-prime-clean", "--colour", "3"}).code == 2);
  auto l = cli({"verify", "loop-laws", "--n", "5..7"});
  CHECK(l.code == 1);
  CHECK(l.out.find("halted at first counterexample") != std::string::npos);
  auto j = cli({"--json", "verify", "group-nat", "--p", "3..5"});
  CHECK(j.code == 0);
  CHECK(json::parse(j.out)["pass"] == true);
}
