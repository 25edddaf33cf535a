#pragma once

// Row (componentwise) and square (row-by-column) interval matrices.

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "isl/domain.hpp"
#include "isl/error.hpp"
#include "isl/formal_sum.hpp"

namespace isl {

enum class MatrixShape { row, square };

struct MatrixSpec {
  DomainSpec domain;
  MatrixShape shape = MatrixShape::square;
  std::size_t n = 1;

  std::size_t entry_count() const { return shape == MatrixShape::row ? n : n * n; }
  std::string describe() const {
    return (shape == MatrixShape::row ? "row(" : "square(") + std::to_string(n) + ") over " + domain.describe();
  }
  friend bool operator==(const MatrixSpec& a, const MatrixSpec& b) {
    return a.shape == b.shape && a.n == b.n && a.domain == b.domain;
  }
};

/// Predicates describing matrix subsemiring families.
enum class MatrixSubsetKind { diagonal, upper_triangular, lower_triangular, scalar, zero_pattern };

class IntervalMatrix {
 public:
  IntervalMatrix(MatrixSpec spec, std::vector<Endpoint> entries) : spec_(std::move(spec)), entries_(std::move(entries)) {
    if (spec_.n == 0) fail(errc::invalid_argument, "matrix dimension must be positive");
    if (entries_.size() != spec_.entry_count())
      fail(errc::invalid_argument, "expected " + std::to_string(spec_.entry_count()) + " entries, got " +
                                       std::to_string(entries_.size()));
    for (const auto& e : entries_)
      if (!spec_.domain.contains(e)) fail(errc::incompatible_domains, "matrix entry outside " + spec_.domain.describe());
  }

  /// Rejects m x n with m != n and m != 1.
  static IntervalMatrix with_dims(const DomainSpec& d, std::size_t rows, std::size_t cols, std::vector<Endpoint> entries) {
    if (rows == 1) return IntervalMatrix({d, MatrixShape::row, cols}, std::move(entries));
    if (rows != cols) fail(errc::unsupported, "rectangular m x n interval matrices with m != 1 do not form a semiring");
    return IntervalMatrix({d, MatrixShape::square, cols}, std::move(entries));
  }

  static IntervalMatrix zero(const MatrixSpec& spec) {
    return IntervalMatrix(spec, std::vector<Endpoint>(spec.entry_count(), spec.domain.zero()));
  }

  static IntervalMatrix identity(const MatrixSpec& spec) {
    auto one = spec.domain.one();
    if (!one) fail(errc::unsupported, spec.domain.describe() + " has no one");
    auto m = zero(spec);
    if (spec.shape == MatrixShape::row) m.entries_.assign(spec.n, *one);
    else
      for (std::size_t i = 0; i < spec.n; ++i) m.entries_[i * spec.n + i] = *one;
    return m;
  }

  const MatrixSpec& spec() const { return spec_; }
  const DomainSpec& domain() const { return spec_.domain; }
  MatrixShape shape() const { return spec_.shape; }
  std::size_t n() const { return spec_.n; }
  const std::vector<Endpoint>& entries() const { return entries_; }
  const Endpoint& at(std::size_t i, std::size_t j) const { return entries_[i * spec_.n + j]; }
  const Endpoint& at(std::size_t i) const { return entries_[i]; }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!spec_.domain.is_zero(e)) return false;
    return true;
  }

  /// `row([0,a],[0,b])` or `mat([0,a],[0,b];[0,c],[0,d])`.
  std::string to_string() const {
    std::string out = spec_.shape == MatrixShape::row ? "row(" : "mat(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += (spec_.shape == MatrixShape::square && i % spec_.n == 0) ? ";" : ",";
      out += spec_.domain.format(entries_[i]);
    }
    return out + ")";
  }

  /// Bracket layout, one matrix row per line.
  std::string render() const {
    if (spec_.shape == MatrixShape::row) {
      std::string out = "(";
      for (std::size_t i = 0; i < entries_.size(); ++i) out += (i ? ", " : "") + spec_.domain.format(entries_[i]);
      return out + ")";
    }
    std::vector<std::string> cells;
    std::size_t width = 0;
    for (const auto& e : entries_) {
      cells.push_back(spec_.domain.format(e));
      width = std::max(width, cells.back().size());
    }
    std::string out;
    for (std::size_t i = 0; i < spec_.n; ++i) {
      out += "[";
      for (std::size_t j = 0; j < spec_.n; ++j) {
        const auto& c = cells[i * spec_.n + j];
        out += (j ? " " : "") + std::string(width - c.size(), ' ') + c;
      }
      out += "]\n";
    }
    return out;
  }

  friend bool operator==(const IntervalMatrix& a, const IntervalMatrix& b) {
    return a.spec_ == b.spec_ && a.entries_ == b.entries_;
  }
  friend bool operator<(const IntervalMatrix& a, const IntervalMatrix& b) {
    for (std::size_t i = 0; i < a.entries_.size() && i < b.entries_.size(); ++i) {
      int c = a.spec_.domain.compare(a.entries_[i], b.entries_[i]);
      if (c != 0) return c < 0;
    }
    return a.entries_.size() < b.entries_.size();
  }

 private:
  friend IntervalMatrix mat_add(const IntervalMatrix&, const IntervalMatrix&);
  friend IntervalMatrix mat_mul(const IntervalMatrix&, const IntervalMatrix&);

  MatrixSpec spec_;
  std::vector<Endpoint> entries_;
};

inline void require_same_matrix_spec(const IntervalMatrix& a, const IntervalMatrix& b) {
  require_same_domain(a.domain(), b.domain());
  if (a.shape() != b.shape() || a.n() != b.n())
    fail(errc::spec_mismatch, "matrix shapes differ: " + a.spec().describe() + " vs " + b.spec().describe());
}

inline IntervalMatrix mat_add(const IntervalMatrix& a, const IntervalMatrix& b) {
  require_same_matrix_spec(a, b);
  IntervalMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] = a.domain().add(a.entries_[i], b.entries_[i]);
  return out;
}

inline IntervalMatrix mat_mul(const IntervalMatrix& a, const IntervalMatrix& b) {
  require_same_matrix_spec(a, b);
  const auto& d = a.domain();
  IntervalMatrix out = IntervalMatrix::zero(a.spec());
  if (a.shape() == MatrixShape::row) {
    for (std::size_t i = 0; i < a.n(); ++i) out.entries_[i] = d.mul(a.entries_[i], b.entries_[i]);
    return out;
  }
  const std::size_t n = a.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Endpoint acc = d.zero();
      for (std::size_t k = 0; k < n; ++k) acc = d.add(acc, d.mul(a.entries_[i * n + k], b.entries_[k * n + j]));
      out.entries_[i * n + j] = std::move(acc);
    }
  return out;
}

/// Structural membership test. `mask` (used by zero_pattern) marks the
/// positions allowed to be nonzero.
inline bool subset_predicate(const IntervalMatrix& m, MatrixSubsetKind kind, const std::vector<bool>& mask = {}) {
  const auto& d = m.domain();
  if (kind == MatrixSubsetKind::zero_pattern) {
    if (mask.size() != m.entries().size()) fail(errc::invalid_argument, "mask length must equal the entry count");
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (!mask[i] && !d.is_zero(m.at(i))) return false;
    return true;
  }
  if (m.shape() != MatrixShape::square) fail(errc::invalid_argument, "predicate requires a square matrix");
  const std::size_t n = m.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool zero = d.is_zero(m.at(i, j));
      switch (kind) {
        case MatrixSubsetKind::diagonal:
        case MatrixSubsetKind::scalar:
          if (i != j && !zero) return false;
          if (kind == MatrixSubsetKind::scalar && i == j && !(m.at(i, j) == m.at(0, 0))) return false;
          break;
        case MatrixSubsetKind::upper_triangular:
          if (i > j && !zero) return false;
          break;
        case MatrixSubsetKind::lower_triangular:
          if (i < j && !zero) return false;
          break;
        case MatrixSubsetKind::zero_pattern: break;
      }
    }
  return true;
}

/// Parses `row(c1,...,cn)` or `mat(r1;...;rn)` with comma-separated cells.
inline IntervalMatrix parse_matrix(const DomainSpec& d, std::string_view text, std::size_t offset = 0) {
  auto lead = detail::leading_space(text);
  auto body = detail::trim(text);
  std::size_t pos = offset + lead;
  bool is_row = body.substr(0, 4) == "row(";
  bool is_mat = body.substr(0, 4) == "mat(";
  if (!is_row && !is_mat) throw parse_error(pos, "expected row(...) or mat(...)");
  if (body.back() != ')') throw parse_error(pos + body.size() - 1, "expected ')'");
  auto inner = body.substr(4, body.size() - 5);
  std::vector<std::vector<Endpoint>> rows;
  for (auto [line, at] : detail::split_top_level(inner, ';')) {
    std::vector<Endpoint> cells;
    for (auto [cell, cat] : detail::split_top_level(line, ',')) {
      auto c = detail::trim(cell);
      std::size_t cpos = pos + 4 + at + cat + detail::leading_space(cell);
      if (c == "0") cells.push_back(d.zero());
      else cells.push_back(d.parse(c, cpos));
    }
    rows.push_back(std::move(cells));
  }
  if (is_row) {
    if (rows.size() != 1) throw parse_error(pos, "row(...) takes a single row");
    const std::size_t len = rows[0].size();
    return IntervalMatrix({d, MatrixShape::row, len}, std::move(rows[0]));
  }
  const std::size_t n = rows.size();
  std::vector<Endpoint> entries;
  for (auto& r : rows) {
    if (r.size() != n) {
      if (n == 1) {
        const std::size_t len = r.size();
        return IntervalMatrix({d, MatrixShape::row, len}, std::move(r));
      }
      fail(errc::unsupported, "rectangular m x n interval matrices with m != 1 do not form a semiring");
    }
    for (auto& e : r) entries.push_back(std::move(e));
  }
  return IntervalMatrix({d, MatrixShape::square, n}, std::move(entries));
}

/// All matrices of a finite spec in canonical (row-major, lexicographic) order.
inline std::vector<IntervalMatrix> enumerate_matrices(const MatrixSpec& spec, std::uint64_t budget = kMaxEnumeratedElements) {
  auto c = spec.domain.cardinality();
  if (!c) fail(errc::unsupported, "matrix enumeration needs a finite domain");
  const std::size_t cells = spec.entry_count();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) {
    if (total > budget / *c)
      fail(errc::budget_exceeded, "enumeration needs " + std::to_string(*c) + "^" + std::to_string(cells) +
                                      " matrices; the budget is " + std::to_string(budget));
    total *= *c;
  }
  auto elems = spec.domain.elements();
  std::vector<IntervalMatrix> out;
  out.reserve(total);
  std::vector<std::size_t> digits(cells, 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::vector<Endpoint> e;
    e.reserve(cells);
    for (auto dgt : digits) e.push_back(elems[dgt]);
    out.emplace_back(spec, std::move(e));
    for (std::size_t i = cells; i-- > 0;) {
      if (++digits[i] < elems.size()) break;
      digits[i] = 0;
    }
  }
  return out;
}

}  // namespace isl
