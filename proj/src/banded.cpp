#include "shellsym/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shellsym/kernels.hpp"

namespace shellsym {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1),
      data_(static_cast<std::size_t>(n) * (2 * kl + ku + 1), 0.0) {
  if (n <= 0 || kl < 0 || ku < 0) throw std::invalid_argument("invalid band matrix shape");
}

// Row r holds columns r-kl .. r+ku+kl at offsets 0 .. ld-1.
void BandedMatrix::add(int r, int c, double v) {
  if (!in_band(r, c) || r < 0 || c < 0 || r >= n_ || c >= n_)
    throw std::out_of_range("entry (" + std::to_string(r) + ", " + std::to_string(c) +
                            ") outside the band");
  row(r)[c - r + kl_] += v;
}

double BandedMatrix::operator()(int r, int c) const {
  if (r < 0 || c < 0 || r >= n_ || c >= n_ || !in_band(r, c)) return 0.0;
  return row(r)[c - r + kl_];
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  for (int r = 0; r < n_; ++r) {
    const int c0 = std::max(0, r - kl_), c1 = std::min(n_ - 1, r + ku_);
    double s = 0.0;
    for (int c = c0; c <= c1; ++c) s += row(r)[c - r + kl_] * x[c];
    y[r] = s;
  }
  return y;
}

BandedLU::BandedLU(BandedMatrix a)
    : lu_(std::move(a)),
      lower_(static_cast<std::size_t>(lu_.n_) * std::max(lu_.kl_, 1), 0.0),
      pivot_(lu_.n_) {
  const int n = lu_.n_, kl = lu_.kl_, ku = lu_.ku_;
  const auto& k = kernels::active();
  for (int col = 0; col < n; ++col) {
    const int last = std::min(n - 1, col + kl);
    int p = col;
    double best = std::abs(lu_.row(col)[kl]);
    for (int r = col + 1; r <= last; ++r) {
      const double v = std::abs(lu_.row(r)[col - r + kl]);
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (best == 0.0 || !std::isfinite(best))
      throw SingularMatrix("singular matrix: zero pivot in column " + std::to_string(col));
    pivot_[col] = p;
    const int cend = std::min(n - 1, col + ku + kl);
    if (p != col) {
      double* rc = lu_.row(col) + kl;               // column col in row col
      double* rp = lu_.row(p) + (col - p + kl);     // column col in row p
      std::swap_ranges(rc, rc + (cend - col + 1), rp);
    }
    const double* prow = lu_.row(col) + kl;
    const double inv = 1.0 / prow[0];
    double* mult = lower_.data() + static_cast<std::size_t>(col) * std::max(kl, 1);
    for (int r = col + 1; r <= last; ++r) {
      double* rr = lu_.row(r) + (col - r + kl);
      const double l = rr[0] * inv;
      mult[r - col - 1] = l;
      rr[0] = 0.0;
      if (l != 0.0) k.axpy(cend - col, -l, prow + 1, rr + 1);
    }
  }
}

void BandedLU::solve(std::span<double> b) const {
  const int n = lu_.n_, kl = lu_.kl_, ku = lu_.ku_;
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("right-hand side size mismatch");
  const auto& k = kernels::active();
  for (int col = 0; col < n; ++col) {
    if (pivot_[col] != col) std::swap(b[col], b[pivot_[col]]);
    const int len = std::min(n - 1, col + kl) - col;
    if (len > 0 && b[col] != 0.0)
      k.axpy(len, -b[col], lower_.data() + static_cast<std::size_t>(col) * std::max(kl, 1),
             b.data() + col + 1);
  }
  for (int r = n - 1; r >= 0; --r) {
    const double* rr = lu_.row(r) + kl;
    const int len = std::min(n - 1, r + ku + kl) - r;
    const double s = len > 0 ? k.dot(len, rr + 1, b.data() + r + 1) : 0.0;
    b[r] = (b[r] - s) / rr[0];
  }
}

}  // namespace shellsym
