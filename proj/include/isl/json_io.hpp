#pragma once

// JSON forms: spec files, domains, carriers, tables and analysis reports.
// Unknown keys are rejected everywhere.

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "isl/analysis.hpp"
#include "isl/domain.hpp"
#include "isl/error.hpp"
#include "isl/formal_sum.hpp"
#include "isl/handle.hpp"
#include "isl/magma.hpp"
#include "isl/matrix.hpp"

namespace isl {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

namespace detail {

inline void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) fail(errc::invalid_argument, where + " must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) fail(errc::invalid_argument, "unknown key \"" + k + "\" in " + where);
  }
}

inline const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) fail(errc::invalid_argument, where + " needs \"" + key + "\"");
  return j.at(key);
}

inline std::uint64_t need_uint(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    fail(errc::invalid_argument, where + ": \"" + key + "\" must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

inline std::string need_string(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_string()) fail(errc::invalid_argument, where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

inline LatticeTable lattice_table(const json& j, const char* what) {
  if (!j.is_array()) fail(errc::invalid_argument, std::string(what) + " must be an array of rows");
  LatticeTable t;
  for (const auto& row : j) {
    if (!row.is_array()) fail(errc::invalid_argument, std::string(what) + " rows must be arrays");
    std::vector<std::uint32_t> r;
    for (const auto& v : row) {
      if (!v.is_number_unsigned()) fail(errc::invalid_argument, std::string(what) + " entries must be indices");
      r.push_back(v.get<std::uint32_t>());
    }
    t.push_back(std::move(r));
  }
  return t;
}

}  // namespace detail

/// {"kind": "zn", "n": 12}, {"kind": "nat"} (optional "k" restricts
/// endpoints to kZ+ u {0}), {"kind": "rat"}, {"kind": "chain-lattice", "k": 4},
/// {"kind": "table-lattice", "names": [...], "join": [[...]], "meet": [[...]]},
/// {"kind": "neutro-pure" | "neutro-mixed", "base": {...}}.
inline DomainSpec domain_from_json(const json& j) {
  const std::string where = "coefficients";
  auto kind = detail::need_string(j, "kind", where);
  if (kind == "zn") {
    detail::only_keys(j, {"kind", "n"}, where);
    return DomainSpec::zn(detail::need_uint(j, "n", where));
  }
  if (kind == "nat") {
    detail::only_keys(j, {"kind", "k"}, where);
    return DomainSpec::nat(j.contains("k") ? detail::need_uint(j, "k", where) : 1);
  }
  if (kind == "rat") {
    detail::only_keys(j, {"kind"}, where);
    return DomainSpec::rat();
  }
  if (kind == "chain-lattice") {
    detail::only_keys(j, {"kind", "k"}, where);
    return DomainSpec::chain_lattice(detail::need_uint(j, "k", where));
  }
  if (kind == "table-lattice") {
    detail::only_keys(j, {"kind", "names", "join", "meet"}, where);
    std::vector<std::string> names;
    for (const auto& n : detail::need(j, "names", where)) {
      if (!n.is_string()) fail(errc::invalid_argument, "lattice names must be strings");
      names.push_back(n.get<std::string>());
    }
    return DomainSpec::table_lattice(std::move(names), detail::lattice_table(detail::need(j, "join", where), "join"),
                                     detail::lattice_table(detail::need(j, "meet", where), "meet"));
  }
  if (kind == "neutro-pure" || kind == "neutro-mixed") {
    detail::only_keys(j, {"kind", "base"}, where);
    auto base = domain_from_json(detail::need(j, "base", where));
    return kind == "neutro-pure" ? DomainSpec::neutro_pure(base) : DomainSpec::neutro_mixed(base);
  }
  fail(errc::invalid_argument, "unknown domain kind \"" + kind + "\"");
}

inline json domain_to_json(const DomainSpec& d) {
  json j;
  switch (d.kind()) {
    case DomainKind::zn: j["kind"] = "zn"; j["n"] = d.modulus(); break;
    case DomainKind::nat:
      j["kind"] = "nat";
      if (d.multiple() != 1) j["k"] = d.multiple();
      break;
    case DomainKind::rat: j["kind"] = "rat"; break;
    case DomainKind::chain_lattice: j["kind"] = "chain-lattice"; j["k"] = d.lattice_names().size(); break;
    case DomainKind::table_lattice:
      j["kind"] = "table-lattice";
      j["names"] = d.lattice_names();
      j["join"] = d.lattice_join();
      j["meet"] = d.lattice_meet();
      break;
    case DomainKind::neutro_pure:
    case DomainKind::neutro_mixed:
      j["kind"] = d.kind() == DomainKind::neutro_pure ? "neutro-pure" : "neutro-mixed";
      j["base"] = domain_to_json(d.base_domain());
      break;
  }
  return j;
}

/// Carrier selectors shared by the table command and spec files.
inline CarrierMeta carrier_meta(const std::string& kind, std::uint64_t n, std::uint64_t m, std::uint64_t t,
                                std::uint64_t u, std::uint64_t k, std::uint64_t p) {
  CarrierMeta meta;
  if (kind == "loop") meta = {CarrierKind::loop_ln, 0, n, m, 0, 0};
  else if (kind == "groupoid") meta = {CarrierKind::groupoid_zn, 0, n, 0, t, u};
  else if (kind == "cyclic") meta = {CarrierKind::cyclic, k, 0, 0, 0, 0};
  else if (kind == "dihedral") meta = {CarrierKind::dihedral, 0, 0, m, 0, 0};
  else if (kind == "symmetric-group") meta = {CarrierKind::symmetric_group, k, 0, 0, 0, 0};
  else if (kind == "symmetric-semigroup") meta = {CarrierKind::symmetric_semigroup, k, 0, 0, 0, 0};
  else if (kind == "mult-semigroup") meta = {CarrierKind::mult_semigroup_zn, 0, n, 0, 0, 0};
  else if (kind == "additive-group") meta = {CarrierKind::additive_group_zn, 0, n, 0, 0, 0};
  else if (kind == "mult-group") meta = {CarrierKind::mult_group_zp, 0, p, 0, 0, 0};
  else
    fail(errc::invalid_argument, "unknown carrier \"" + kind +
                                     "\"; expected loop, groupoid, cyclic, dihedral, symmetric-group, "
                                     "symmetric-semigroup, mult-semigroup, additive-group or mult-group");
  return meta;
}

inline std::string carrier_selector(CarrierKind k) {
  switch (k) {
    case CarrierKind::loop_ln: return "loop";
    case CarrierKind::groupoid_zn: return "groupoid";
    case CarrierKind::cyclic: return "cyclic";
    case CarrierKind::dihedral: return "dihedral";
    case CarrierKind::symmetric_group: return "symmetric-group";
    case CarrierKind::symmetric_semigroup: return "symmetric-semigroup";
    case CarrierKind::mult_semigroup_zn: return "mult-semigroup";
    case CarrierKind::additive_group_zn: return "additive-group";
    case CarrierKind::mult_group_zp: return "mult-group";
    case CarrierKind::custom: return "custom";
  }
  return "custom";
}

/// {"kind": "loop", "n": 7, "m": 3} and the other selectors, or
/// {"kind": "custom", "labels": [...], "table": [[...]]} with row-major
/// element indices.
inline Magma carrier_from_json(const json& j) {
  const std::string where = "carrier";
  auto kind = detail::need_string(j, "kind", where);
  if (kind == "custom") {
    detail::only_keys(j, {"kind", "labels", "table"}, where);
    std::vector<std::string> labels;
    for (const auto& l : detail::need(j, "labels", where)) labels.push_back(l.get<std::string>());
    std::vector<Magma::Index> table;
    for (const auto& row : detail::lattice_table(detail::need(j, "table", where), "table")) {
      if (row.size() != labels.size()) fail(errc::invalid_argument, "carrier table must be k x k");
      table.insert(table.end(), row.begin(), row.end());
    }
    return Magma(std::move(labels), std::move(table));
  }
  auto get = [&](const char* key) -> std::uint64_t { return j.contains(key) ? detail::need_uint(j, key, where) : 0; };
  detail::only_keys(j, {"kind", "n", "m", "t", "u", "k", "p"}, where);
  return build_standard(carrier_meta(kind, get("n"), get("m"), get("t"), get("u"), get("k"), get("p")));
}

inline json carrier_to_json(const Magma& g) {
  const auto& m = g.meta();
  json j;
  j["kind"] = carrier_selector(m.kind);
  switch (m.kind) {
    case CarrierKind::loop_ln: j["n"] = m.n; j["m"] = m.m; break;
    case CarrierKind::groupoid_zn: j["n"] = m.n; j["t"] = m.t; j["u"] = m.u; break;
    case CarrierKind::cyclic:
    case CarrierKind::symmetric_group:
    case CarrierKind::symmetric_semigroup: j["k"] = m.k; break;
    case CarrierKind::dihedral: j["m"] = m.m; break;
    case CarrierKind::mult_semigroup_zn:
    case CarrierKind::additive_group_zn: j["n"] = m.n; break;
    case CarrierKind::mult_group_zp: j["p"] = m.n; break;
    case CarrierKind::custom: {
      j["labels"] = g.labels();
      json rows = json::array();
      for (Magma::Index a = 0; a < g.size(); ++a) {
        json r = json::array();
        for (Magma::Index b = 0; b < g.size(); ++b) r.push_back(g.op(a, b));
        rows.push_back(r);
      }
      j["table"] = rows;
      break;
    }
  }
  return j;
}

/// Parsed spec file. Exactly one of carrier, basis or matrix selects the
/// structure; none means the coefficient domain itself.
struct SpecFile {
  DomainSpec coefficients = DomainSpec::zn(2);
  std::optional<Magma> carrier;
  std::optional<json> basis;
  std::optional<MatrixSpec> matrix;
  std::optional<bool> absorb_zero_basis;
  bool interval_labels = false;

  SemiringHandle handle() const {
    if (matrix) return SemiringHandle::of_matrix(*matrix);
    if (carrier) {
      Magma g = carrier->relabeled(interval_labels);
      return SemiringHandle::of_formal(SemiringSpec::carrier(coefficients, std::move(g), absorb_zero_basis));
    }
    if (basis) {
      auto kind = detail::need_string(*basis, "kind", "basis");
      if (kind == "poly") return SemiringHandle::of_formal(SemiringSpec::poly(coefficients));
      if (kind == "poly-cyclic")
        return SemiringHandle::of_formal(SemiringSpec::poly_cyclic(coefficients, detail::need_uint(*basis, "k", "basis")));
      return SemiringHandle::of_formal(SemiringSpec::make(
          coefficients, GroupoidZPlusBasis{detail::need_uint(*basis, "t", "basis"), detail::need_uint(*basis, "u", "basis")},
          absorb_zero_basis));
    }
    return SemiringHandle::of_domain(coefficients);
  }
};

inline SpecFile spec_from_json(const json& j) {
  detail::only_keys(j, {"schema", "coefficients", "carrier", "basis", "matrix", "flags"}, "spec file");
  auto schema = detail::need(j, "schema", "spec file");
  if (!schema.is_string() || schema.get<std::string>() != kSchemaVersion)
    fail(errc::invalid_argument, std::string("spec file schema must be \"") + kSchemaVersion + "\"");
  SpecFile s;
  s.coefficients = domain_from_json(detail::need(j, "coefficients", "spec file"));
  int selectors = j.contains("carrier") + j.contains("basis") + j.contains("matrix");
  if (selectors > 1) fail(errc::invalid_argument, "spec file takes at most one of carrier, basis and matrix");
  if (j.contains("carrier")) s.carrier = carrier_from_json(j.at("carrier"));
  if (j.contains("basis")) {
    const auto& b = j.at("basis");
    auto kind = detail::need_string(b, "kind", "basis");
    if (kind == "poly") detail::only_keys(b, {"kind"}, "basis");
    else if (kind == "poly-cyclic") {
      detail::only_keys(b, {"kind", "k"}, "basis");
      if (detail::need_uint(b, "k", "basis") == 0) fail(errc::invalid_argument, "poly-cyclic needs k >= 1");
    } else if (kind == "groupoid-zplus") {
      detail::only_keys(b, {"kind", "t", "u"}, "basis");
      detail::need_uint(b, "t", "basis");
      detail::need_uint(b, "u", "basis");
    } else {
      fail(errc::invalid_argument, "unknown basis kind \"" + kind + "\"; expected poly, poly-cyclic or groupoid-zplus");
    }
    s.basis = b;
  }
  if (j.contains("matrix")) {
    const auto& m = j.at("matrix");
    detail::only_keys(m, {"shape", "n"}, "matrix");
    auto shape = detail::need_string(m, "shape", "matrix");
    if (shape != "row" && shape != "square") fail(errc::invalid_argument, "matrix shape must be row or square");
    auto n = detail::need_uint(m, "n", "matrix");
    if (n == 0) fail(errc::invalid_argument, "matrix dimension must be positive");
    s.matrix = MatrixSpec{s.coefficients, shape == "row" ? MatrixShape::row : MatrixShape::square, n};
  }
  if (j.contains("flags")) {
    const auto& f = j.at("flags");
    detail::only_keys(f, {"absorb_zero_basis", "interval_labels"}, "flags");
    if (f.contains("absorb_zero_basis")) s.absorb_zero_basis = f.at("absorb_zero_basis").get<bool>();
    if (f.contains("interval_labels")) s.interval_labels = f.at("interval_labels").get<bool>();
  }
  return s;
}

inline json spec_to_json(const SpecFile& s) {
  json j;
  j["schema"] = kSchemaVersion;
  j["coefficients"] = domain_to_json(s.coefficients);
  if (s.carrier) j["carrier"] = carrier_to_json(*s.carrier);
  if (s.basis) j["basis"] = *s.basis;
  if (s.matrix) j["matrix"] = {{"shape", s.matrix->shape == MatrixShape::row ? "row" : "square"}, {"n", s.matrix->n}};
  json flags = json::object();
  if (s.absorb_zero_basis) flags["absorb_zero_basis"] = *s.absorb_zero_basis;
  if (s.interval_labels) flags["interval_labels"] = true;
  if (!flags.empty()) j["flags"] = flags;
  return j;
}

inline SpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::invalid_argument, "cannot open spec file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw parse_error(e.byte > 0 ? e.byte - 1 : 0, std::string("invalid JSON in ") + path);
  }
  return spec_from_json(j);
}

/// {"structure", "corner", "labels", "rows"} with rendered cells.
inline json table_to_json(const Magma& g) {
  json j;
  j["structure"] = g.meta().describe();
  j["corner"] = table_corner(g);
  json labels = json::array();
  for (Magma::Index i = 0; i < g.size(); ++i) labels.push_back(g.label(i));
  j["labels"] = labels;
  json rows = json::array();
  for (Magma::Index a = 0; a < g.size(); ++a) {
    json r = json::array();
    for (Magma::Index b = 0; b < g.size(); ++b) r.push_back(g.label(g.op(a, b)));
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

/// Rebuilds a custom magma from a table JSON; labels keep their rendering.
inline Magma table_from_json(const json& j) {
  detail::only_keys(j, {"structure", "corner", "labels", "rows"}, "table");
  std::vector<std::string> labels;
  for (const auto& l : detail::need(j, "labels", "table")) labels.push_back(l.get<std::string>());
  std::vector<Magma::Index> table;
  for (const auto& row : detail::need(j, "rows", "table")) {
    if (row.size() != labels.size()) fail(errc::invalid_argument, "table rows must have one cell per label");
    for (const auto& cell : row) {
      auto it = std::find(labels.begin(), labels.end(), cell.get<std::string>());
      if (it == labels.end()) fail(errc::invalid_argument, "table cell " + cell.get<std::string>() + " is not a label");
      table.push_back(static_cast<Magma::Index>(it - labels.begin()));
    }
  }
  return Magma(std::move(labels), std::move(table));
}

inline json report_to_json(const AnalysisReport& r) {
  json j;
  j["query"] = r.name;
  j["structure"] = r.structure;
  j["exhaustive"] = r.exhaustive;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.flags.empty()) {
    json f;
    for (const auto& [k, v] : r.flags) f[k] = v;
    j["flags"] = f;
  }
  json findings = json::array();
  for (const auto& f : r.findings) findings.push_back({{"kind", f.kind}, {"witness", f.witness}});
  j["findings"] = findings;
  j["budget"] = {{"pairs_scanned", r.pairs_scanned},
                 {"elements_scanned", r.elements_scanned},
                 {"subsets_scanned", r.subsets_scanned}};
  return j;
}

inline AnalysisReport report_from_json(const json& j) {
  detail::only_keys(j, {"query", "structure", "exhaustive", "note", "flags", "findings", "budget"}, "report");
  AnalysisReport r;
  r.name = detail::need_string(j, "query", "report");
  r.structure = detail::need_string(j, "structure", "report");
  r.exhaustive = detail::need(j, "exhaustive", "report").get<bool>();
  if (j.contains("note")) r.note = j.at("note").get<std::string>();
  if (j.contains("flags"))
    for (const auto& [k, v] : j.at("flags").items()) r.flags.emplace_back(k, v.get<bool>());
  for (const auto& f : detail::need(j, "findings", "report")) {
    detail::only_keys(f, {"kind", "witness"}, "finding");
    r.findings.push_back({f.at("kind").get<std::string>(), f.at("witness").get<std::vector<std::string>>()});
  }
  const auto& b = detail::need(j, "budget", "report");
  detail::only_keys(b, {"pairs_scanned", "elements_scanned", "subsets_scanned"}, "budget");
  r.pairs_scanned = detail::need_uint(b, "pairs_scanned", "budget");
  r.elements_scanned = detail::need_uint(b, "elements_scanned", "budget");
  r.subsets_scanned = detail::need_uint(b, "subsets_scanned", "budget");
  return r;
}

}  // namespace isl
