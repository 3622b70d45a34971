#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include "shellsym/expr.hpp"
#include "shellsym/random.hpp"

namespace test {

// Random smooth expression in x1, x2 built from the public constructors.
// Everything stays finite and inside the function domains on [-2, 2]^2.
inline shellsym::Expr random_expr(shellsym::Rng& rng, int depth) {
  using namespace shellsym;
  if (depth == 0) {
    switch (rng.integer(0, 2)) {
      case 0: return x1();
      case 1: return x2();
      default: return Expr::constant(std::round(rng.uniform(-3, 3) * 4) / 4);
    }
  }
  const Expr a = random_expr(rng, depth - 1);
  switch (rng.integer(0, 8)) {
    case 0: return a + random_expr(rng, depth - 1);
    case 1: return a - random_expr(rng, depth - 1);
    case 2: return a * random_expr(rng, depth - 1);
    case 3: return pow(a, rng.integer(2, 3));
    case 4: return sin(a);
    case 5: return cos(a);
    case 6: return exp(0.25 * sin(a));
    case 7: return log(Expr::constant(2.0) + cos(a));
    default: return a / (Expr::constant(2.0) + sin(random_expr(rng, depth - 1)));
  }
}

// Fourth-order central difference of e along var.
inline double fd(const shellsym::Expr& e, shellsym::Point2 x, int var, double h) {
  auto at = [&](double s) {
    shellsym::Point2 y = x;
    (var == 1 ? y.x1 : y.x2) += s;
    return shellsym::eval(e, y);
  };
  return (8 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12 * h);
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("shellsym_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace test
