#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "gladder/common.hpp"

namespace gladder {

// Expression trees over x1..xd built from + - * /, integer powers, sin, cos and constants.
// Constants are held in long double so pi survives long double evaluation.
struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos } kind;
  long double value = 0;  // Const
  int index = 0;          // Var (0-based) or Pow exponent
  Expr a, b;
};

namespace expr {

inline Expr node(ExprNode::Kind k, Expr a = nullptr, Expr b = nullptr, int index = 0, long double v = 0) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  n->index = index;
  n->value = v;
  return n;
}

inline Expr constant(long double v) { return node(ExprNode::Const, nullptr, nullptr, 0, v); }
inline Expr var(int i) { return node(ExprNode::Var, nullptr, nullptr, i); }
inline bool is_const(const Expr& e, long double v) { return e->kind == ExprNode::Const && e->value == v; }
inline bool is_const(const Expr& e) { return e->kind == ExprNode::Const; }

template <class Real>
Real eval(const ExprNode& e, const Real* x) {
  using std::cos;
  using std::sin;
  switch (e.kind) {
    case ExprNode::Const: return static_cast<Real>(e.value);
    case ExprNode::Var: return x[e.index];
    case ExprNode::Add: return eval(*e.a, x) + eval(*e.b, x);
    case ExprNode::Sub: return eval(*e.a, x) - eval(*e.b, x);
    case ExprNode::Mul: return eval(*e.a, x) * eval(*e.b, x);
    case ExprNode::Div: return eval(*e.a, x) / eval(*e.b, x);
    case ExprNode::Neg: return -eval(*e.a, x);
    case ExprNode::Pow: {
      Real base = eval(*e.a, x), r = 1;
      int k = e.index < 0 ? -e.index : e.index;
      for (; k > 0; k >>= 1, base *= base)
        if (k & 1) r *= base;
      return e.index < 0 ? 1 / r : r;
    }
    case ExprNode::Sin: return sin(eval(*e.a, x));
    case ExprNode::Cos: return cos(eval(*e.a, x));
  }
  return 0;
}

inline Expr add(Expr a, Expr b) {
  if (is_const(a) && is_const(b)) return constant(a->value + b->value);
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  return node(ExprNode::Add, a, b);
}
inline Expr neg(Expr a) {
  if (is_const(a)) return constant(-a->value);
  if (a->kind == ExprNode::Neg) return a->a;
  return node(ExprNode::Neg, a);
}
inline Expr sub(Expr a, Expr b) {
  if (is_const(a) && is_const(b)) return constant(a->value - b->value);
  if (is_const(b, 0)) return a;
  if (is_const(a, 0)) return neg(b);
  return node(ExprNode::Sub, a, b);
}
inline Expr mul(Expr a, Expr b) {
  if (is_const(a) && is_const(b)) return constant(a->value * b->value);
  if (is_const(a, 0) || is_const(b, 0)) return constant(0);
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  if (is_const(a, -1)) return neg(b);
  if (is_const(b, -1)) return neg(a);
  return node(ExprNode::Mul, a, b);
}
inline Expr div(Expr a, Expr b) {
  if (is_const(a) && is_const(b) && b->value != 0) return constant(a->value / b->value);
  if (is_const(a, 0)) return constant(0);
  if (is_const(b, 1)) return a;
  return node(ExprNode::Div, a, b);
}
inline Expr pow(Expr a, int k) {
  if (k == 0) return constant(1);
  if (k == 1) return a;
  if (is_const(a)) return constant(std::pow(a->value, static_cast<long double>(k)));
  return node(ExprNode::Pow, a, nullptr, k);
}
inline Expr sin(Expr a) {
  if (is_const(a)) return constant(std::sin(a->value));
  return node(ExprNode::Sin, a);
}
inline Expr cos(Expr a) {
  if (is_const(a)) return constant(std::cos(a->value));
  return node(ExprNode::Cos, a);
}

inline Expr derivative(const Expr& e, int i) {
  switch (e->kind) {
    case ExprNode::Const: return constant(0);
    case ExprNode::Var: return constant(e->index == i ? 1 : 0);
    case ExprNode::Add: return add(derivative(e->a, i), derivative(e->b, i));
    case ExprNode::Sub: return sub(derivative(e->a, i), derivative(e->b, i));
    case ExprNode::Mul:
      return add(mul(derivative(e->a, i), e->b), mul(e->a, derivative(e->b, i)));
    case ExprNode::Div:
      return div(sub(mul(derivative(e->a, i), e->b), mul(e->a, derivative(e->b, i))), pow(e->b, 2));
    case ExprNode::Neg: return neg(derivative(e->a, i));
    case ExprNode::Pow:
      return mul(mul(constant(e->index), pow(e->a, e->index - 1)), derivative(e->a, i));
    case ExprNode::Sin: return mul(cos(e->a), derivative(e->a, i));
    case ExprNode::Cos: return neg(mul(sin(e->a), derivative(e->a, i)));
  }
  return constant(0);
}

inline int max_variable(const Expr& e) {
  if (!e) return -1;
  if (e->kind == ExprNode::Var) return e->index;
  return std::max(max_variable(e->a), max_variable(e->b));
}

inline std::string to_string(const Expr& e) {
  auto bin = [&](const char* op) { return "(" + to_string(e->a) + " " + op + " " + to_string(e->b) + ")"; };
  switch (e->kind) {
    case ExprNode::Const: {
      std::ostringstream s;
      s.precision(21);
      s << e->value;
      return s.str();
    }
    case ExprNode::Var: return "x" + std::to_string(e->index + 1);
    case ExprNode::Add: return bin("+");
    case ExprNode::Sub: return bin("-");
    case ExprNode::Mul: return bin("*");
    case ExprNode::Div: return bin("/");
    case ExprNode::Neg: return "(-" + to_string(e->a) + ")";
    case ExprNode::Pow: return to_string(e->a) + "^" + std::to_string(e->index);
    case ExprNode::Sin: return "sin(" + to_string(e->a) + ")";
    case ExprNode::Cos: return "cos(" + to_string(e->a) + ")";
  }
  return "?";
}

// Recursive descent:
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | '+' unary | power
//   power := atom ('^' ['-'] integer)?
//   atom  := number | 'pi' | xK | ('sin'|'cos') '(' expr ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (p_ != s_.size()) fail("operator or end of input");
    return e;
  }

 private:
  std::string s_;
  std::size_t p_ = 0;

  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = p_ < s_.size() ? "'" + std::string(1, s_[p_]) + "'" : "end of input";
    throw ParseError(ErrorCode::SyntaxError, p_, expected, "unexpected " + found);
  }
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool accept(char c) {
    skip();
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'");
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+')) e = add(e, term());
      else if (accept('-')) e = sub(e, term());
      else return e;
    }
  }
  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) e = mul(e, unary());
      else if (accept('/')) e = div(e, unary());
      else return e;
    }
  }
  Expr unary() {
    if (accept('-')) return neg(unary());
    if (accept('+')) return unary();
    return power();
  }
  Expr power() {
    Expr base = atom();
    if (!accept('^')) return base;
    bool negative = accept('-');
    skip();
    std::size_t start = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (start == p_) fail("integer exponent");
    int k = std::stoi(s_.substr(start, p_ - start));
    return negative ? div(constant(1), pow(base, k)) : pow(base, k);
  }
  Expr atom() {
    skip();
    if (p_ >= s_.size()) fail("number, variable, function or '('");
    char c = s_[p_];
    if (c == '(') {
      ++p_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + p_;
      char* end = nullptr;
      long double v = std::strtold(begin, &end);
      if (end == begin) fail("number");
      p_ += static_cast<std::size_t>(end - begin);
      return constant(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = p_;
      while (p_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[p_]))) ++p_;
      std::string id = s_.substr(start, p_ - start);
      if (id == "pi") return constant(3.141592653589793238462643383279502884L);
      if (id == "sin" || id == "cos") {
        expect('(');
        Expr arg = expr();
        expect(')');
        return id == "sin" ? sin(arg) : cos(arg);
      }
      if (id.size() >= 2 && id[0] == 'x' && id.find_first_not_of("0123456789", 1) == std::string::npos) {
        int k = std::stoi(id.substr(1));
        if (k >= 1) return var(k - 1);
      }
      throw ParseError(ErrorCode::UnknownSymbol, start, "x1..xd, pi, sin, cos",
                       "unknown symbol '" + id + "'");
    }
    fail("number, variable, function or '('");
  }
};

}  // namespace expr

inline Expr parse_expression(const std::string& text) { return expr::Parser(text).parse(); }

}  // namespace gladder
