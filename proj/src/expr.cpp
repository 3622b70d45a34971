#include "shellsym/expr.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

namespace shellsym {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)),
      offset_(offset) {}

struct Expr::Node {
  Op op;
  double value;
  int index;
  std::vector<Expr> args;
  std::size_t hash;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

double power_value(double base, double exponent) {
  if (base < 0.0 && exponent != std::floor(exponent))
    throw DomainError("non-integer power of a negative base");
  if (base == 0.0 && exponent < 0.0) throw DomainError("negative power of zero");
  return checked(std::pow(base, exponent), "power");
}

double apply_value(Op fn, double v) {
  switch (fn) {
    case Op::sin: return std::sin(v);
    case Op::cos: return std::cos(v);
    case Op::exp: return checked(std::exp(v), "exp");
    case Op::log:
      if (v <= 0.0) throw DomainError("log of a nonpositive argument");
      return std::log(v);
    default: throw std::logic_error("apply_value: not a function op");
  }
}

}  // namespace

Expr::Expr() : Expr(constant(0.0)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::make(Op op, double value, int index, std::vector<Expr> args) {
  std::size_t h = mix(static_cast<std::size_t>(op), std::bit_cast<std::uint64_t>(value));
  h = mix(h, static_cast<std::size_t>(index));
  for (const auto& a : args) h = mix(h, a.hash());
  return Expr(std::make_shared<const Node>(Node{op, value, index, std::move(args), h}));
}

Expr Expr::constant(double value) {
  // -0.0 and 0.0 must hash alike
  if (value == 0.0) value = 0.0;
  return make(Op::constant, value, 0, {});
}

Expr Expr::variable(int index) {
  if (index != 1 && index != 2) throw std::invalid_argument("variable index must be 1 or 2");
  return make(Op::variable, 0.0, index, {});
}

Op Expr::op() const { return node_->op; }
double Expr::value() const { return node_->value; }
int Expr::index() const { return node_->index; }
std::span<const Expr> Expr::args() const { return node_->args; }
std::size_t Expr::hash() const { return node_->hash; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.op() != b.op() || a.value() != b.value() ||
      a.index() != b.index() || a.args().size() != b.args().size())
    return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!(a.args()[i] == b.args()[i])) return false;
  return true;
}

namespace {

// Splits e into coefficient * rest. rest is empty for constants.
std::pair<double, std::optional<Expr>> split_coefficient(const Expr& e) {
  switch (e.op()) {
    case Op::constant: return {e.value(), std::nullopt};
    case Op::negate: {
      auto [c, rest] = split_coefficient(e.args()[0]);
      return {-c, rest};
    }
    case Op::product:
      if (e.args()[0].is_constant()) {
        std::vector<Expr> rest(e.args().begin() + 1, e.args().end());
        return {e.args()[0].value(), product(std::move(rest))};
      }
      return {1.0, e};
    default: return {1.0, e};
  }
}

void flatten_factors(const Expr& f, double& coef, std::vector<Expr>& out) {
  switch (f.op()) {
    case Op::constant: coef *= f.value(); break;
    case Op::negate:
      coef = -coef;
      flatten_factors(f.args()[0], coef, out);
      break;
    case Op::product:
      for (const auto& g : f.args()) flatten_factors(g, coef, out);
      break;
    default: out.push_back(f);
  }
}

}  // namespace

Expr sum(std::vector<Expr> terms) {
  double constant = 0.0;
  std::vector<std::pair<double, Expr>> parts;
  auto add = [&](const Expr& t, auto& self) -> void {
    if (t.op() == Op::sum) {
      for (const auto& u : t.args()) self(u, self);
      return;
    }
    auto [c, rest] = split_coefficient(t);
    if (!rest) {
      constant += c;
      return;
    }
    for (auto& [pc, pe] : parts) {
      if (pe == *rest) {
        pc += c;
        return;
      }
    }
    parts.emplace_back(c, *rest);
  };
  for (const auto& t : terms) add(t, add);

  std::vector<Expr> out;
  for (auto& [c, e] : parts) {
    if (c == 0.0) continue;
    out.push_back(c == 1.0 ? e : product({Expr::constant(c), e}));
  }
  if (constant != 0.0) out.push_back(Expr::constant(checked(constant, "sum")));
  if (out.empty()) return Expr::constant(0.0);
  if (out.size() == 1) return out.front();
  return Expr::make(Op::sum, 0.0, 0, std::move(out));
}

Expr product(std::vector<Expr> factors) {
  double coef = 1.0;
  std::vector<Expr> rest;
  for (const auto& f : factors) flatten_factors(f, coef, rest);
  checked(coef, "product");
  if (coef == 0.0) return Expr::constant(0.0);
  if (rest.empty()) return Expr::constant(coef);
  // Repeated factors with integer exponents become powers: a*a -> a^2.
  std::vector<std::pair<Expr, double>> merged;
  for (auto& f : rest) {
    const bool is_pow = f.op() == Op::power;
    const Expr base = is_pow ? f.args()[0] : f;
    const double k = is_pow ? f.value() : 1.0;
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& m) {
      return m.first == base && std::trunc(m.second) == m.second && std::trunc(k) == k;
    });
    if (it == merged.end())
      merged.emplace_back(base, k);
    else
      it->second += k;
  }
  rest.clear();
  for (auto& [base, k] : merged) {
    Expr f = pow(base, k);
    if (f.is_constant(1.0)) continue;
    flatten_factors(f, coef, rest);
  }
  if (rest.empty()) return Expr::constant(coef);
  if (coef == 1.0 && rest.size() == 1) return rest.front();
  // A constant multiplying a single sum is distributed over its terms.
  if (rest.size() == 1 && rest.front().op() == Op::sum) {
    std::vector<Expr> terms;
    for (const auto& t : rest.front().args()) terms.push_back(product({Expr::constant(coef), t}));
    return sum(std::move(terms));
  }
  std::vector<Expr> out;
  out.reserve(rest.size() + 1);
  if (coef != 1.0) out.push_back(Expr::constant(coef));
  for (auto& f : rest) out.push_back(std::move(f));
  return Expr::make(Op::product, 0.0, 0, std::move(out));
}

Expr pow(const Expr& base, double exponent) {
  if (exponent == 0.0) return Expr::constant(1.0);
  if (exponent == 1.0) return base;
  if (base.is_constant()) return Expr::constant(power_value(base.value(), exponent));
  return Expr::make(Op::power, exponent, 0, {base});
}

Expr apply(Op fn, const Expr& arg) {
  if (fn != Op::sin && fn != Op::cos && fn != Op::exp && fn != Op::log)
    throw std::invalid_argument("apply: not a function op");
  if (arg.is_constant()) return Expr::constant(apply_value(fn, arg.value()));
  return Expr::make(fn, 0.0, 0, {arg});
}

Expr operator-(const Expr& e) {
  switch (e.op()) {
    case Op::constant: return Expr::constant(-e.value());
    case Op::negate: return e.args()[0];
    case Op::product: return product({Expr::constant(-1.0), e});
    default: return Expr::make(Op::negate, 0.0, 0, {e});
  }
}

Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return product({a, pow(b, -1.0)}); }
Expr operator*(double c, const Expr& e) { return product({Expr::constant(c), e}); }

// ---------------------------------------------------------------------------
// Differentiation and evaluation

Expr diff(const Expr& e, int var) {
  if (var != 1 && var != 2) throw std::invalid_argument("diff: var must be 1 or 2");
  switch (e.op()) {
    case Op::constant: return Expr::constant(0.0);
    case Op::variable: return Expr::constant(e.index() == var ? 1.0 : 0.0);
    case Op::sum: {
      std::vector<Expr> terms;
      for (const auto& t : e.args()) terms.push_back(diff(t, var));
      return sum(std::move(terms));
    }
    case Op::product: {
      const auto args = e.args();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < args.size(); ++i) {
        Expr d = diff(args[i], var);
        if (d.is_constant(0.0)) continue;
        std::vector<Expr> fs(args.begin(), args.end());
        fs[i] = d;
        terms.push_back(product(std::move(fs)));
      }
      return sum(std::move(terms));
    }
    case Op::power: {
      const Expr& base = e.args()[0];
      const double n = e.value();
      return product({Expr::constant(n), pow(base, n - 1.0), diff(base, var)});
    }
    case Op::negate: return -diff(e.args()[0], var);
    case Op::sin: return product({cos(e.args()[0]), diff(e.args()[0], var)});
    case Op::cos: return -product({sin(e.args()[0]), diff(e.args()[0], var)});
    case Op::exp: return product({e, diff(e.args()[0], var)});
    case Op::log: return product({diff(e.args()[0], var), pow(e.args()[0], -1.0)});
  }
  throw std::logic_error("diff: unknown op");
}

namespace {

double eval_node(const Expr& e, Point2 x) {
  switch (e.op()) {
    case Op::constant: return e.value();
    case Op::variable: return e.index() == 1 ? x.x1 : x.x2;
    case Op::sum: {
      double s = 0.0;
      for (const auto& t : e.args()) s += eval_node(t, x);
      return s;
    }
    case Op::product: {
      double p = 1.0;
      for (const auto& t : e.args()) p *= eval_node(t, x);
      return p;
    }
    case Op::power: return power_value(eval_node(e.args()[0], x), e.value());
    case Op::negate: return -eval_node(e.args()[0], x);
    default: return apply_value(e.op(), eval_node(e.args()[0], x));
  }
}

}  // namespace

double eval(const Expr& e, Point2 x) { return checked(eval_node(e, x), "eval"); }

Expr laplacian(const Expr& u) { return diff(diff(u, 1), 1) + diff(diff(u, 2), 2); }

Expr biharmonic(const Expr& u) { return laplacian(laplacian(u)); }

Expr bracket(const Expr& u, const Expr& v) {
  const Expr u1 = diff(u, 1), u2 = diff(u, 2);
  const Expr v1 = diff(v, 1), v2 = diff(v, 2);
  return sum({product({diff(u1, 1), diff(v2, 2)}), product({diff(u2, 2), diff(v1, 1)}),
              product({Expr::constant(-2.0), diff(u1, 2), diff(v1, 2)})});
}

// ---------------------------------------------------------------------------
// Printing

namespace {

enum Prec { kSum = 1, kProduct = 2, kPower = 3 };

std::string number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void print(const Expr& e, int ctx, std::string& out);

void print_product(double coef, std::span<const Expr> factors, int ctx, std::string& out) {
  const bool paren = ctx > kProduct || (ctx == kProduct && coef < 0.0);
  if (paren) out += '(';
  if (coef == -1.0 && factors.front().op() != Op::power) {
    out += '-';
  } else if (coef != 1.0) {
    out += number(coef);
    out += '*';
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += '*';
    print(factors[i], kProduct, out);
  }
  if (paren) out += ')';
}

void print_term(double coef, const Expr& rest, std::string& out) {
  if (rest.op() == Op::product)
    print_product(coef, rest.args(), kSum, out);
  else
    print_product(coef, std::span<const Expr>(&rest, 1), kSum, out);
}

void print(const Expr& e, int ctx, std::string& out) {
  switch (e.op()) {
    case Op::constant:
      if (e.value() < 0.0 && ctx > kSum) {
        out += '(' + number(e.value()) + ')';
      } else {
        out += number(e.value());
      }
      return;
    case Op::variable: out += e.index() == 1 ? "x1" : "x2"; return;
    case Op::sum: {
      if (ctx > kSum) out += '(';
      bool first = true;
      for (const auto& t : e.args()) {
        auto [c, rest] = split_coefficient(t);
        if (first) {
          print(t, kSum, out);
        } else if (c < 0.0) {
          out += " - ";
          if (rest)
            print_term(-c, *rest, out);
          else
            out += number(-c);
        } else {
          out += " + ";
          print(t, kSum, out);
        }
        first = false;
      }
      if (ctx > kSum) out += ')';
      return;
    }
    case Op::product: {
      auto args = e.args();
      if (args.front().is_constant())
        print_product(args.front().value(), args.subspan(1), ctx, out);
      else
        print_product(1.0, args, ctx, out);
      return;
    }
    case Op::power: {
      if (ctx >= kPower) out += '(';
      print(e.args()[0], kPower, out);
      out += '^';
      const double n = e.value();
      out += n < 0.0 ? '(' + number(n) + ')' : number(n);
      if (ctx >= kPower) out += ')';
      return;
    }
    case Op::negate:
      if (ctx >= kPower) out += '(';
      out += "-(";
      print(e.args()[0], kSum, out);
      out += ')';
      if (ctx >= kPower) out += ')';
      return;
    case Op::sin:
    case Op::cos:
    case Op::exp:
    case Op::log: {
      static constexpr const char* names[] = {"sin", "cos", "exp", "log"};
      out += names[static_cast<int>(e.op()) - static_cast<int>(Op::sin)];
      out += '(';
      print(e.args()[0], kSum, out);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, kSum, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    throw ParseError(what, at);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  template <class F>
  Expr guarded(std::size_t at, F&& build) const {
    try {
      return build();
    } catch (const DomainError& err) {
      fail_at(std::string("domain error: ") + err.what(), at);
    }
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(-term());
      } else {
        break;
      }
    }
    return sum(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors{factor()};
    for (;;) {
      if (accept('*')) {
        factors.push_back(factor());
      } else if (accept('/')) {
        skip_ws();
        const std::size_t at = pos_;
        Expr d = factor();
        factors.push_back(guarded(at, [&] { return pow(d, -1.0); }));
      } else {
        break;
      }
    }
    return product(std::move(factors));
  }

  Expr factor() {
    skip_ws();
    const std::size_t at = pos_;
    Expr base = atom();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t exp_at = pos_;
    Expr exponent = atom();
    if (!exponent.is_constant()) fail_at("exponent must be a constant", exp_at);
    return guarded(at, [&] { return pow(base, exponent.value()); });
  }

  Expr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number_literal();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number_literal() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) fail_at("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail_at("malformed exponent in number", start);
    }
    double v = 0.0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_ || !std::isfinite(v))
      fail_at("malformed number", start);
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x1") return Expr::variable(1);
    if (name == "x2") return Expr::variable(2);
    if (name == "pi") return Expr::constant(std::numbers::pi);
    Op fn;
    if (name == "sin") {
      fn = Op::sin;
    } else if (name == "cos") {
      fn = Op::cos;
    } else if (name == "exp") {
      fn = Op::exp;
    } else if (name == "log") {
      fn = Op::log;
    } else {
      fail_at("unknown identifier '" + std::string(name) + "'", start);
    }
    if (!accept('(')) fail("expected '(' after function '" + std::string(name) + "'");
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ')')
      fail("function '" + std::string(name) + "' takes exactly one argument");
    Expr arg = expr();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ',')
      fail("function '" + std::string(name) + "' takes exactly one argument");
    expect(')');
    return guarded(start, [&] { return apply(fn, arg); });
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace shellsym
