#pragma once

// Uniform view over domains, formal-sum semirings and matrix semirings.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "isl/domain.hpp"
#include "isl/error.hpp"
#include "isl/formal_sum.hpp"
#include "isl/matrix.hpp"
#include "isl/parallel.hpp"

namespace isl {

using Element = std::variant<Endpoint, FormalSum, IntervalMatrix>;

enum class HandleKind { domain, formal_sum, matrix };

class SemiringHandle {
 public:
  static SemiringHandle of_domain(DomainSpec d) { return SemiringHandle(Rep(std::in_place_index<0>, std::move(d))); }
  static SemiringHandle of_formal(SpecPtr s) { return SemiringHandle(Rep(std::in_place_index<1>, std::move(s))); }
  static SemiringHandle of_matrix(MatrixSpec m) { return SemiringHandle(Rep(std::in_place_index<2>, std::move(m))); }

  HandleKind kind() const { return static_cast<HandleKind>(rep_.index()); }
  const DomainSpec* domain() const { return std::get_if<DomainSpec>(&rep_); }
  const SemiringSpec* formal() const {
    auto* p = std::get_if<SpecPtr>(&rep_);
    return p ? p->get() : nullptr;
  }
  SpecPtr formal_ptr() const {
    auto* p = std::get_if<SpecPtr>(&rep_);
    return p ? *p : nullptr;
  }
  const MatrixSpec* matrix() const { return std::get_if<MatrixSpec>(&rep_); }

  /// Coefficient or entry domain.
  const DomainSpec& scalars() const {
    if (auto* d = domain()) return *d;
    if (auto* f = formal()) return f->coefficients();
    return matrix()->domain;
  }

  std::string describe() const {
    if (auto* d = domain()) return d->describe();
    if (auto* f = formal()) return f->describe();
    return matrix()->describe();
  }

  Element zero() const {
    if (auto* d = domain()) return d->zero();
    if (auto f = formal_ptr()) return FormalSum(f);
    return IntervalMatrix::zero(*matrix());
  }

  std::optional<Element> one() const {
    if (auto* d = domain()) {
      if (auto o = d->one()) return Element(*o);
      return std::nullopt;
    }
    if (auto f = formal_ptr()) {
      if (!f->coefficients().one() || !f->identity_key()) return std::nullopt;
      return Element(FormalSum::one(f));
    }
    if (!matrix()->domain.one()) return std::nullopt;
    return Element(IntervalMatrix::identity(*matrix()));
  }

  Element add(const Element& a, const Element& b) const {
    if (auto* d = domain()) return d->add(std::get<Endpoint>(a), std::get<Endpoint>(b));
    if (formal()) return fs_add(std::get<FormalSum>(a), std::get<FormalSum>(b));
    return mat_add(std::get<IntervalMatrix>(a), std::get<IntervalMatrix>(b));
  }

  Element mul(const Element& a, const Element& b) const {
    if (auto* d = domain()) return d->mul(std::get<Endpoint>(a), std::get<Endpoint>(b));
    if (formal()) return fs_mul(std::get<FormalSum>(a), std::get<FormalSum>(b));
    return mat_mul(std::get<IntervalMatrix>(a), std::get<IntervalMatrix>(b));
  }

  bool is_zero(const Element& a) const {
    if (auto* d = domain()) return d->is_zero(std::get<Endpoint>(a));
    if (formal()) return std::get<FormalSum>(a).is_zero();
    return std::get<IntervalMatrix>(a).is_zero();
  }

  bool equal(const Element& a, const Element& b) const { return a == b; }

  std::string render(const Element& a) const {
    if (auto* d = domain()) return d->format(std::get<Endpoint>(a));
    if (formal()) return std::get<FormalSum>(a).to_string();
    return std::get<IntervalMatrix>(a).to_string();
  }

  Element parse(std::string_view text, std::size_t offset = 0) const {
    if (auto* d = domain()) return d->parse(text, offset);
    if (auto f = formal_ptr()) return parse_formal_sum(f, text, offset);
    auto m = parse_matrix(matrix()->domain, text, offset);
    if (!(m.spec() == *matrix()))
      throw parse_error(offset, "matrix literal does not match " + matrix()->describe());
    return m;
  }

  bool is_finite() const {
    if (auto* d = domain()) return d->is_finite();
    if (auto* f = formal()) return f->is_finite();
    return matrix()->domain.is_finite();
  }

  /// Element count when finite and at most `budget`.
  std::optional<std::uint64_t> cardinality(std::uint64_t budget = kMaxEnumeratedElements) const {
    if (!is_finite()) return std::nullopt;
    if (auto* d = domain()) {
      auto c = d->cardinality();
      return c && *c <= budget ? c : std::nullopt;
    }
    std::uint64_t c = *scalars().cardinality();
    std::size_t slots = formal() ? formal()->basis_keys().size() : matrix()->entry_count();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < slots; ++i) {
      if (total > budget / c) return std::nullopt;
      total *= c;
    }
    return total;
  }

  /// Every element in canonical order; throws when over budget.
  std::vector<Element> elements(std::uint64_t budget = kMaxEnumeratedElements) const {
    if (!is_finite()) fail(errc::unsupported, describe() + " is infinite");
    if (!cardinality(budget)) fail(errc::budget_exceeded, describe() + " has more than " + std::to_string(budget) + " elements");
    std::vector<Element> out;
    if (auto* d = domain()) {
      for (auto& e : d->elements()) out.emplace_back(std::move(e));
    } else if (auto f = formal_ptr()) {
      for (auto& e : enumerate_elements(f)) out.emplace_back(std::move(e));
    } else {
      for (auto& e : enumerate_matrices(*matrix(), budget)) out.emplace_back(std::move(e));
    }
    return out;
  }

  friend bool operator==(const SemiringHandle& a, const SemiringHandle& b) {
    if (a.rep_.index() != b.rep_.index()) return false;
    if (auto* d = a.domain()) return *d == *b.domain();
    if (auto* f = a.formal()) return *f == *b.formal();
    return *a.matrix() == *b.matrix();
  }

 private:
  using Rep = std::variant<DomainSpec, SpecPtr, MatrixSpec>;
  explicit SemiringHandle(Rep r) : rep_(std::move(r)) {}
  Rep rep_;
};

}  // namespace isl
