#pragma once

// Expression language for eval: literals, `+`, binary `*` and parentheses.
// A coefficient followed by `*basis` is one literal term. Products of three
// or more factors must be parenthesized since fs_mul need not associate.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "isl/error.hpp"
#include "isl/formal_sum.hpp"
#include "isl/handle.hpp"

namespace isl {

struct Expr {
  enum class Kind { literal, sum, product };
  Kind kind = Kind::literal;
  std::string text;
  std::size_t pos = 0;
  std::vector<Expr> kids;

  friend bool operator==(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.text == b.text && a.kids == b.kids;
  }
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view s, std::size_t offset) : s_(s), off_(offset) {}

  Expr parse() {
    skip();
    if (i_ == s_.size()) throw parse_error(off_ + i_, "empty expression");
    Expr e = sum();
    skip();
    if (i_ != s_.size()) {
      if (s_[i_] == ')') throw parse_error(off_ + i_, "unbalanced ')'");
      throw parse_error(off_ + i_, "unexpected character '" + std::string(1, s_[i_]) + "'");
    }
    return e;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  Expr sum() {
    std::size_t start = i_;
    std::vector<Expr> parts{product()};
    skip();
    while (i_ < s_.size() && s_[i_] == '+') {
      ++i_;
      skip();
      parts.push_back(product());
      skip();
    }
    if (parts.size() == 1) return std::move(parts[0]);
    return {Expr::Kind::sum, "", off_ + start, std::move(parts)};
  }

  Expr product() {
    std::size_t start = i_;
    Expr lhs = factor();
    skip();
    if (i_ >= s_.size() || s_[i_] != '*') return lhs;
    ++i_;
    skip();
    Expr rhs = factor();
    skip();
    if (i_ < s_.size() && s_[i_] == '*')
      throw parse_error(off_ + i_, "products of three or more factors need parentheses");
    return {Expr::Kind::product, "", off_ + start, {std::move(lhs), std::move(rhs)}};
  }

  Expr factor() {
    skip();
    if (i_ >= s_.size()) throw parse_error(off_ + i_, "expected operand");
    if (s_[i_] == '(') {
      std::size_t open = i_++;
      Expr inner = sum();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') throw parse_error(off_ + open, "unbalanced '('");
      ++i_;
      return inner;
    }
    std::size_t start = i_;
    scan_atom();
    if (i_ == start) throw parse_error(off_ + i_, "expected operand");
    // `[..]*basis` binds as a single term
    if (s_[start] == '[') {
      std::size_t save = i_;
      skip();
      if (i_ < s_.size() && s_[i_] == '*') {
        ++i_;
        skip();
        if (i_ < s_.size() && starts_basis()) {
          scan_atom();
          return literal(start);
        }
      }
      i_ = save;
    }
    return literal(start);
  }

  bool starts_basis() const {
    char c = s_[i_];
    if (c == '[' || c == '(') return false;
    auto rest = s_.substr(i_);
    if (rest.substr(0, 4) == "row(" || rest.substr(0, 4) == "mat(") return false;
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
  }

  // One literal: a bracketed interval, row(...)/mat(...), or a bare token.
  void scan_atom() {
    auto rest = s_.substr(i_);
    if (s_[i_] == '[' || rest.substr(0, 4) == "row(" || rest.substr(0, 4) == "mat(") {
      char open = s_[i_] == '[' ? '[' : '(';
      char close = open == '[' ? ']' : ')';
      std::size_t start = i_;
      int depth = 0;
      for (; i_ < s_.size(); ++i_) {
        if (s_[i_] == open) ++depth;
        else if (s_[i_] == close && --depth == 0) {
          ++i_;
          return;
        }
      }
      throw parse_error(off_ + start, std::string("unterminated literal, expected '") + close + "'");
    }
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '^' || s_[i_] == '_')) ++i_;
  }

  Expr literal(std::size_t start) {
    return {Expr::Kind::literal, std::string(s_.substr(start, i_ - start)), off_ + start, {}};
  }

  std::string_view s_;
  std::size_t off_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Expr parse_expr(std::string_view text, std::size_t offset = 0) {
  return detail::ExprParser(text, offset).parse();
}

/// Canonical printer; parse_expr(print_expr(e)) == e.
inline std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::literal: return e.text;
    case Expr::Kind::sum: {
      std::string out;
      for (const auto& k : e.kids) {
        if (!out.empty()) out += " + ";
        out += k.kind == Expr::Kind::sum ? "(" + print_expr(k) + ")" : print_expr(k);
      }
      return out;
    }
    case Expr::Kind::product: {
      auto side = [](const Expr& k) {
        return k.kind == Expr::Kind::literal ? print_expr(k) : "(" + print_expr(k) + ")";
      };
      return side(e.kids[0]) + " * " + side(e.kids[1]);
    }
  }
  return "";
}

/// Evaluates against the handle. With `trace`, every formal-sum product
/// appends its convolution steps.
inline Element eval_expr(const Expr& e, const SemiringHandle& h, std::vector<TraceStep>* trace = nullptr) {
  switch (e.kind) {
    case Expr::Kind::literal: return h.parse(e.text, e.pos);
    case Expr::Kind::sum: {
      Element acc = eval_expr(e.kids[0], h, trace);
      for (std::size_t i = 1; i < e.kids.size(); ++i) acc = h.add(acc, eval_expr(e.kids[i], h, trace));
      return acc;
    }
    case Expr::Kind::product: {
      Element a = eval_expr(e.kids[0], h, trace);
      Element b = eval_expr(e.kids[1], h, trace);
      if (trace && h.formal()) return fs_mul(std::get<FormalSum>(a), std::get<FormalSum>(b), trace);
      return h.mul(a, b);
    }
  }
  return h.zero();
}

inline Element eval_expr(std::string_view text, const SemiringHandle& h, std::vector<TraceStep>* trace = nullptr) {
  return eval_expr(parse_expr(text), h, trace);
}

}  // namespace isl
