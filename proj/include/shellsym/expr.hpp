#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shellsym {

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Raised by parse() for malformed input. offset() is the byte offset of the
/// offending token in the source text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Raised when an expression is evaluated (or constant-folded) outside the
/// domain of one of its functions: log of a nonpositive argument, a
/// non-integer power of a negative base, or a negative power of zero.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Op : std::uint8_t {
  constant,
  variable,
  sum,
  product,
  power,
  negate,
  sin,
  cos,
  exp,
  log,
};

// Immutable expression tree in the two spatial variables x1, x2.
//
// Nodes are shared and never mutated, so copies are cheap and an Expr may be
// evaluated from several threads at once. All constructors go through the
// smart constructors below, which fold constants, flatten nested sums and
// products, drop zero summands and unit factors, and merge like terms that
// are structurally identical. No further simplification is attempted.
class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(double value);
  static Expr variable(int index);  // index 1 or 2

  Op op() const;
  double value() const;     // constant value, or the exponent of a power
  int index() const;        // variable index
  std::span<const Expr> args() const;
  std::size_t hash() const;

  bool is_constant() const { return op() == Op::constant; }
  bool is_constant(double v) const { return is_constant() && value() == v; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  static Expr make(Op op, double value, int index, std::vector<Expr> args);

  std::shared_ptr<const Node> node_;

  friend Expr sum(std::vector<Expr> terms);
  friend Expr product(std::vector<Expr> factors);
  friend Expr pow(const Expr& base, double exponent);
  friend Expr operator-(const Expr& e);
  friend Expr apply(Op fn, const Expr& arg);
};

Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr pow(const Expr& base, double exponent);
Expr apply(Op fn, const Expr& arg);  // fn is one of sin, cos, exp, log

inline Expr sin(const Expr& e) { return apply(Op::sin, e); }
inline Expr cos(const Expr& e) { return apply(Op::cos, e); }
inline Expr exp(const Expr& e) { return apply(Op::exp, e); }
inline Expr log(const Expr& e) { return apply(Op::log, e); }

Expr operator-(const Expr& e);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator*(double c, const Expr& e);

inline Expr x1() { return Expr::variable(1); }
inline Expr x2() { return Expr::variable(2); }

/// Parses the expression grammar
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := atom ('^' atom)?
///   atom   := number | 'x1' | 'x2' | 'pi' | func '(' expr ')'
///           | '(' expr ')' | '-' atom
///   func   := 'sin' | 'cos' | 'exp' | 'log'
///
/// The exponent of '^' must fold to a constant. Note that unary minus binds
/// tighter than '^', so "-x1^2" is (-x1)^2.
Expr parse(std::string_view text);

/// Exact partial derivative with respect to x1 (var == 1) or x2 (var == 2).
Expr diff(const Expr& e, int var);

double eval(const Expr& e, Point2 x);

/// Prints in the parse() grammar; parse(to_string(e)) evaluates identically.
std::string to_string(const Expr& e);

// Differential operators used throughout the shell equations.
Expr laplacian(const Expr& u);
Expr biharmonic(const Expr& u);
/// Monge-Ampere bracket [u,v] = u,11 v,22 + u,22 v,11 - 2 u,12 v,12.
Expr bracket(const Expr& u, const Expr& v);

}  // namespace shellsym
