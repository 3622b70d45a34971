#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace shellsym {

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Square band matrix with kl sub- and ku super-diagonals. Rows are stored
/// contiguously with kl extra super-diagonals of room for pivoting fill.
class BandedMatrix {
 public:
  BandedMatrix(int n, int kl, int ku);

  int size() const { return n_; }
  int lower() const { return kl_; }
  int upper() const { return ku_; }

  bool in_band(int r, int c) const { return c - r <= ku_ && r - c <= kl_; }
  void add(int r, int c, double v);
  double operator()(int r, int c) const;

  /// y = A x
  std::vector<double> multiply(std::span<const double> x) const;

 private:
  friend class BandedLU;
  double* row(int r) { return data_.data() + static_cast<std::size_t>(r) * ld_; }
  const double* row(int r) const { return data_.data() + static_cast<std::size_t>(r) * ld_; }

  int n_, kl_, ku_, ld_;
  std::vector<double> data_;
};

/// LU factorization with partial pivoting restricted to the band.
class BandedLU {
 public:
  /// Throws SingularMatrix when a pivot column is exactly zero.
  explicit BandedLU(BandedMatrix a);

  /// Overwrites b with the solution of A x = b.
  void solve(std::span<double> b) const;

 private:
  BandedMatrix lu_;
  std::vector<double> lower_;  // n x kl multipliers
  std::vector<int> pivot_;
};

}  // namespace shellsym
