#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "uccsim/rng.hpp"

namespace uccsim {

/// Dense row-major real matrix.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static RealMatrix identity(std::size_t d);
  static RealMatrix diagonal(const std::vector<double>& entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<double>& data() const noexcept { return data_; }

  RealMatrix transpose() const;
  RealMatrix operator*(const RealMatrix& other) const;
  RealMatrix operator*(double s) const;
  std::vector<double> apply(const std::vector<double>& v) const;
  std::vector<double> apply_transpose(const std::vector<double>& v) const;

  /// max |this - other| over entries; dimensions must agree.
  double max_abs_diff(const RealMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Kronecker product; the row index of a (x) b is i_a * b.rows() + i_b.
RealMatrix kronecker(const RealMatrix& a, const RealMatrix& b);
RealMatrix tensor_power(const RealMatrix& a, int t);

/// 4x4 matrix N(a), rows and columns indexed by 2 * (set bit) + (input bit).
RealMatrix build_N(double a);

/// Largest singular value via power iteration on A^T A.
double spectral_norm(const RealMatrix& a, double tolerance = 1e-12);

/// Eigenvalues (lambda1, lambda2) of N(a)^T N(a), lambda1 >= lambda2.
std::pair<double, double> lambda_closed_form(double a);

/// 1 + sqrt(2) a + a^2 + a^4 / 2 + a^5 / sqrt(2).
double spectral_bound_rhs(double a);

/// Signed nu_p matrix over rows (S, x) and columns (T, y), n <= 5. Row index is
/// sum_j (2 S_j + x_j) 4^(j-1).
RealMatrix build_M(int n, double p);

/// Exact max over rectangles of |1_C M 1_D| for n = 1.
double discrepancy_exact(int n, double p);

/// Best rectangle found by alternating maximization from random starts. A
/// lower estimate of the discrepancy, never an exact value.
double discrepancy_lower_estimate(int n, double p, int restarts, Rng& rng);

/// (1-p)^(2n) * ||N(p/(1-p))||^n.
double disc_spectral_bound(int n, double p);
/// log2 of disc_spectral_bound, finite for large n.
double disc_spectral_bound_log2(int n, double p);

/// max(0, log2(2 eps / disc)).
double cc_lower_bound(double disc, double eps);
/// Same with log2(disc) given directly.
double cc_lower_bound_log2(double log2_disc, double eps);

/// -log2(disc_spectral_bound(n, p)) / (p n).
double gamma_estimate(int n, double p);

}  // namespace uccsim
