#pragma once

// Command-line driver: table, eval, classify and verify.
//
// Exit codes: 0 success, 1 requested property or sweep failed, 2 usage or
// invalid parameters, 3 parse error, 4 domain mismatch, 5 budget exhausted
// under --require-exhaustive.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "isl/analysis.hpp"
#include "isl/error.hpp"
#include "isl/expr.hpp"
#include "isl/json_io.hpp"
#include "isl/magma.hpp"
#include "isl/sweeps.hpp"

namespace isl {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int property_failed = 1;
inline constexpr int usage = 2;
inline constexpr int parse = 3;
inline constexpr int domain_mismatch = 4;
inline constexpr int not_exhaustive = 5;
}  // namespace exit_code

namespace detail {

struct CliOptions {
  bool json = false;
  bool trace = false;
  bool require_exhaustive = false;
  bool timing = false;
  std::optional<std::uint64_t> budget;
  std::string expect;
};

inline int code_for(const error& e) {
  switch (e.code()) {
    case errc::parse_error: return exit_code::parse;
    case errc::incompatible_domains:
    case errc::spec_mismatch: return exit_code::domain_mismatch;
    default: return exit_code::usage;
  }
}

/// Elements separated by top-level ';', or `@path` with one per line.
inline std::vector<Element> parse_element_list(const SemiringHandle& h, const std::string& arg) {
  std::vector<std::pair<std::string, std::size_t>> items;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) fail(errc::invalid_argument, "cannot open " + arg.substr(1));
    std::string line;
    while (std::getline(in, line))
      if (!trim(line).empty()) items.emplace_back(line, 0);
  } else {
    for (auto [piece, at] : split_top_level(arg, ';'))
      if (!trim(piece).empty()) items.emplace_back(std::string(piece), at);
  }
  std::vector<Element> out;
  for (const auto& [text, at] : items) out.push_back(eval_expr(parse_expr(text, at), h));
  return out;
}

inline std::string join_witness(const std::vector<std::string>& w) {
  std::string out;
  for (const auto& x : w) out += (out.empty() ? "" : " | ") + x;
  return out;
}

inline void print_report(std::ostream& out, const AnalysisReport& r, bool as_json) {
  if (as_json) {
    out << report_to_json(r).dump(2) << "\n";
    return;
  }
  out << "query: " << r.name << "\n";
  out << "structure: " << r.structure << "\n";
  out << "exhaustive: " << (r.exhaustive ? "yes" : "no") << "\n";
  if (!r.note.empty()) out << "note: " << r.note << "\n";
  for (const auto& [k, v] : r.flags) out << "flag " << k << ": " << (v ? "yes" : "no") << "\n";
  out << "findings: " << r.findings.size() << "\n";
  for (const auto& f : r.findings) out << "  " << f.kind << ": " << join_witness(f.witness) << "\n";
  out << "budget: pairs_scanned=" << r.pairs_scanned << " elements_scanned=" << r.elements_scanned
      << " subsets_scanned=" << r.subsets_scanned << "\n";
}

inline AnalysisReport classification_report(const SemiringHandle& h, const Classification& c) {
  AnalysisReport r;
  r.name = "semifield";
  r.structure = h.describe();
  r.exhaustive = c.exhaustive;
  auto add = [&](const char* name, const FlagVerdict& f) {
    r.flags.emplace_back(name, f.value);
    if (!f.witness.empty() && std::string(name) != "semifield")
      r.findings.push_back({std::string(f.value ? "" : "not-") + name, f.witness});
    if (!f.proof.empty()) r.note += (r.note.empty() ? "" : "; ") + std::string(name) + " " + f.proof;
  };
  add("strict", c.strict);
  add("commutative", c.commutative);
  add("has_one", c.has_one);
  add("zero_divisor_free", c.zero_divisor_free);
  add("semifield", c.semifield);
  return r;
}

inline AnalysisReport set_report(const std::string& name, const SemiringHandle& h, bool holds,
                                 const std::vector<std::string>& witness, const std::string& kind) {
  AnalysisReport r;
  r.name = name;
  r.structure = h.describe();
  r.flags.emplace_back(name, holds);
  if (!witness.empty()) r.findings.push_back({kind, witness});
  return r;
}

inline std::vector<std::string> render_all(const SemiringHandle& h, const std::vector<Element>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(h.render(x));
  return out;
}

/// Whether the report satisfies `--expect`: a flag name, "not-" plus a
/// flag name, "empty" or "nonempty".
inline bool meets_expectation(const AnalysisReport& r, const std::string& expect) {
  if (expect == "empty") return r.findings.empty();
  if (expect == "nonempty") return !r.findings.empty();
  bool negate = expect.rfind("not-", 0) == 0;
  std::string name = negate ? expect.substr(4) : expect;
  std::replace(name.begin(), name.end(), '-', '_');
  for (auto [k, v] : r.flags) {
    std::string key = k;
    std::replace(key.begin(), key.end(), '-', '_');
    if (key == name) return v != negate;
  }
  fail(errc::invalid_argument, "--expect " + expect + " does not apply to query " + r.name);
}

struct TableArgs {
  std::string structure;
  std::uint64_t n = 0, m = 0, t = 0, u = 0, k = 0, p = 0;
  bool interval = false;
};

inline int cmd_table(const TableArgs& a, const CliOptions& o, std::ostream& out) {
  Magma g = build_standard(carrier_meta(a.structure, a.n, a.m, a.t, a.u, a.k, a.p)).relabeled(a.interval);
  if (o.json) out << table_to_json(g).dump(2) << "\n";
  else out << render_table(g);
  return exit_code::ok;
}

struct EvalArgs {
  std::string spec, lhs, rhs, op = "mul", expr;
};

inline int cmd_eval(const EvalArgs& a, const CliOptions& o, std::ostream& out) {
  auto h = load_spec_file(a.spec).handle();
  std::vector<TraceStep> steps;
  auto* trace = o.trace ? &steps : nullptr;
  Element result;
  if (!a.expr.empty()) {
    if (!a.lhs.empty() || !a.rhs.empty()) fail(errc::invalid_argument, "use either --expr or --lhs/--rhs");
    result = eval_expr(parse_expr(a.expr), h, trace);
  } else {
    if (a.lhs.empty() || a.rhs.empty()) fail(errc::invalid_argument, "eval needs --lhs and --rhs, or --expr");
    if (a.op != "add" && a.op != "mul") fail(errc::invalid_argument, "--op must be add or mul");
    Element x = eval_expr(parse_expr(a.lhs), h, trace);
    Element y = eval_expr(parse_expr(a.rhs), h, trace);
    if (a.op == "add") result = h.add(x, y);
    else if (trace && h.formal()) result = fs_mul(std::get<FormalSum>(x), std::get<FormalSum>(y), trace);
    else result = h.mul(x, y);
  }
  if (o.json) {
    json j;
    j["structure"] = h.describe();
    j["result"] = h.render(result);
    if (trace) {
      json t = json::array();
      for (const auto& s : steps) t.push_back({{"left", s.left}, {"right", s.right}, {"product", s.product}});
      j["trace"] = t;
    }
    out << j.dump(2) << "\n";
    return exit_code::ok;
  }
  for (const auto& s : steps) out << "  (" << s.left << ") * (" << s.right << ") = " << s.product << "\n";
  out << h.render(result) << "\n";
  return exit_code::ok;
}

struct ClassifyArgs {
  std::string spec, query, subset, sample, mode = "generated";
  std::uint64_t max_subset = 20;
  std::uint64_t seed_size = 1;
  std::uint64_t max_index = 8;
};

inline AnalysisReport run_query(const SemiringHandle& h, const ClassifyArgs& a, const AnalysisOptions& opt) {
  const auto& q = a.query;
  if (q == "zero-divisors") return find_zero_divisors(h, opt);
  if (q == "idempotents") return find_idempotents(h, opt);
  if (q == "nilpotents") {
    auto o = opt;
    o.max_index = a.max_index;
    return find_nilpotents(h, o);
  }
  if (q == "units") return find_units(h, opt);
  if (q == "s-zero-divisors") return find_s_special(h, SSpecialKind::s_zero_divisor, opt);
  if (q == "s-anti-zero-divisors") return find_s_special(h, SSpecialKind::s_anti_zero_divisor, opt);
  if (q == "s-idempotents") return find_s_special(h, SSpecialKind::s_idempotent, opt);
  if (q == "s-units") return find_s_special(h, SSpecialKind::s_unit, opt);
  if (q == "semifield") return classification_report(h, classify_semiring(h, opt));
  if (q == "s-semiring") {
    auto mode = a.mode == "exhaustive" ? SearchMode::exhaustive : SearchMode::generated;
    if (a.mode != "exhaustive" && a.mode != "generated") fail(errc::invalid_argument, "--mode must be exhaustive or generated");
    auto r = smarandache_search(h, mode, mode == SearchMode::exhaustive ? a.max_subset : a.seed_size, opt);
    r.flags.emplace_back("s-semiring", !r.findings.empty());
    return r;
  }
  if (a.subset.empty()) fail(errc::invalid_argument, "query " + q + " needs --subset");
  auto subset = parse_element_list(h, a.subset);
  if (q == "subsemiring" || q == "ideal" || q == "left-ideal" || q == "right-ideal") {
    auto kind = q == "subsemiring" ? SubstructureKind::subsemiring
                : q == "ideal"     ? SubstructureKind::ideal
                : q == "left-ideal" ? SubstructureKind::left_ideal
                                    : SubstructureKind::right_ideal;
    auto v = check_substructure(h, subset, kind, opt);
    auto r = set_report(q, h, v.holds, v.witness, "failure");
    r.elements_scanned = subset.size();
    r.exhaustive = h.is_finite() || kind == SubstructureKind::subsemiring;
    return r;
  }
  if (q == "s-subsemiring") {
    auto w = s_subsemiring_witness(h, subset);
    return set_report(q, h, w.has_value(), w ? render_all(h, *w) : std::vector<std::string>{}, "semifield-subset");
  }
  if (q == "s-ideal") {
    auto w = s_ideal_witness(h, subset);
    return set_report(q, h, w.has_value(), w ? render_all(h, *w) : std::vector<std::string>{}, "semifield-subset");
  }
  if (q == "s-pseudo-subsemiring") {
    auto w = s_pseudo_subsemiring_witness(h, subset, opt);
    return set_report(q, h, w.has_value(), w ? render_all(h, *w) : std::vector<std::string>{}, "enclosing-subsemiring");
  }
  if (q == "s-pseudo-ideal") return set_report(q, h, check_s_pseudo_ideal(h, subset, opt), {}, "");
  fail(errc::invalid_argument,
       "unknown query " + q +
           "; expected zero-divisors, idempotents, nilpotents, units, s-zero-divisors, s-anti-zero-divisors, "
           "s-idempotents, s-units, semifield, s-semiring, subsemiring, ideal, left-ideal, right-ideal, "
           "s-subsemiring, s-ideal, s-pseudo-subsemiring or s-pseudo-ideal");
}

inline int cmd_classify(const ClassifyArgs& a, const CliOptions& o, std::ostream& out) {
  auto h = load_spec_file(a.spec).handle();
  AnalysisOptions opt;
  if (o.budget) {
    opt.max_pairs = *o.budget;
    opt.max_subsets = *o.budget;
  }
  if (!a.sample.empty()) opt.sample = parse_element_list(h, a.sample);
  auto r = run_query(h, a, opt);
  print_report(out, r, o.json);
  if (!o.expect.empty() && !meets_expectation(r, o.expect)) return exit_code::property_failed;
  if (o.require_exhaustive && !r.exhaustive) return exit_code::not_exhaustive;
  return exit_code::ok;
}

inline std::string format_range(const SweepRange& r) {
  return r.lo == r.hi ? std::to_string(r.lo) : std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

inline std::string available_sweeps() {
  std::string s;
  for (const auto& i : sweep_catalog()) s += "  " + i.name + ": " + i.summary + "\n";
  return s;
}

inline int cmd_verify(const std::string& name, const std::vector<std::string>& extras, const CliOptions& o,
                      std::ostream& out, std::ostream& err) {
  const SweepInfo* info = find_sweep(name);
  if (!info) {
    err << "unknown sweep " << name << "; available sweeps:\n" << available_sweeps();
    return exit_code::usage;
  }
  SweepParams given;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const auto& flag = extras[i];
    if (flag.rfind("--", 0) != 0) fail(errc::invalid_argument, "unexpected argument " + flag);
    std::string key = flag.substr(2), value;
    auto eq = key.find('=');
    if (eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) fail(errc::invalid_argument, flag + " needs a value");
      value = extras[++i];
    }
    auto it = std::find_if(info->params.begin(), info->params.end(), [&](const auto& p) { return p.name == key; });
    if (it == info->params.end()) {
      std::string names;
      for (const auto& p : info->params) names += (names.empty() ? "--" : ", --") + p.name;
      fail(errc::invalid_argument, "sweep " + name + " takes " + names);
    }
    given[key] = parse_sweep_range(*it, value);
  }
  auto rep = theorem_sweep(name, given);
  if (o.json) {
    json j;
    j["sweep"] = rep.name;
    json p;
    for (const auto& [k, v] : rep.params) p[k] = format_range(v);
    j["params"] = p;
    json inst = json::array();
    for (const auto& i : rep.instances) inst.push_back({{"instance", i.label}, {"pass", i.pass}, {"detail", i.detail}});
    j["instances"] = inst;
    j["pass"] = rep.pass;
    j["completed"] = rep.completed;
    out << j.dump(2) << "\n";
  } else {
    out << "sweep: " << rep.name;
    for (const auto& [k, v] : rep.params) out << " " << k << "=" << format_range(v);
    out << "\n";
    for (const auto& i : rep.instances) out << (i.pass ? "PASS " : "FAIL ") << i.label << ": " << i.detail << "\n";
    std::size_t passed = std::count_if(rep.instances.begin(), rep.instances.end(), [](const auto& i) { return i.pass; });
    out << "summary: " << (rep.pass ? "PASS" : "FAIL") << " (" << passed << "/" << rep.instances.size()
        << " instances" << (rep.completed ? "" : ", halted at first counterexample") << ")\n";
  }
  return rep.pass ? exit_code::ok : exit_code::property_failed;
}

}  // namespace detail

/// Runs one invocation; `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interval semiring toolkit", "isl"};
  app.require_subcommand(1);
  app.fallthrough();
  detail::CliOptions o;
  std::uint64_t budget = 0;
  app.add_flag("--json", o.json, "emit JSON");
  app.add_flag("--trace", o.trace, "print every convolution term (eval)");
  auto* budget_opt = app.add_option("--budget", budget, "pair/subset budget for searches");
  app.add_flag("--require-exhaustive", o.require_exhaustive, "exit 5 when a search is cut short");
  app.add_option("--expect", o.expect, "property the report must satisfy");
  app.add_flag("--timing", o.timing, "append a timing footer");

  detail::TableArgs ta;
  auto* table = app.add_subcommand("table", "print a Cayley table");
  table->add_option("structure", ta.structure, "loop, groupoid, cyclic, dihedral, symmetric-group, "
                                               "symmetric-semigroup, mult-semigroup, additive-group, mult-group")
      ->required();
  table->add_option("--n", ta.n);
  table->add_option("--m", ta.m);
  table->add_option("--t", ta.t);
  table->add_option("--u", ta.u);
  table->add_option("--k", ta.k);
  table->add_option("--p", ta.p);
  table->add_flag("--interval", ta.interval, "label elements as [0, x]");

  detail::EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "evaluate an expression in a spec's semiring");
  eval->add_option("--spec", ea.spec, "spec file")->required();
  eval->add_option("--lhs", ea.lhs);
  eval->add_option("--rhs", ea.rhs);
  eval->add_option("--op", ea.op, "add or mul");
  eval->add_option("--expr", ea.expr, "full expression");

  detail::ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "run an analysis query");
  classify->add_option("--spec", ca.spec, "spec file")->required();
  classify->add_option("--query", ca.query)->required();
  classify->add_option("--subset", ca.subset, "elements separated by ';' or @file");
  classify->add_option("--sample", ca.sample, "elements to scan in an infinite semiring");
  classify->add_option("--mode", ca.mode, "s-semiring search: exhaustive or generated");
  classify->add_option("--max-subset", ca.max_subset);
  classify->add_option("--seed-size", ca.seed_size);
  classify->add_option("--max-index", ca.max_index);

  std::string sweep;
  auto* verify = app.add_subcommand("verify", "run a theorem sweep");
  verify->add_option("sweep", sweep)->required();
  verify->allow_extras();
  verify->fallthrough(false);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  }
  if (budget_opt->count()) o.budget = budget;

  auto start = std::chrono::steady_clock::now();
  int code = exit_code::ok;
  try {
    if (*table) code = detail::cmd_table(ta, o, out);
    else if (*eval) code = detail::cmd_eval(ea, o, out);
    else if (*classify) code = detail::cmd_classify(ca, o, out);
    else code = detail::cmd_verify(sweep, verify->remaining(), o, out, err);
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_code::parse;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return detail::code_for(e);
  }
  if (o.timing) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream t;
    t << std::fixed << std::setprecision(3) << ms;
    out << "---\ntiming: " << t.str() << " ms\n";
  }
  return code;
}

}  // namespace isl
