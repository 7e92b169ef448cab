#include "uccsim/lowerbound.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "uccsim/bits.hpp"
#include "uccsim/error.hpp"

namespace uccsim {

namespace {

constexpr int kMaxMatrixN = 5;
constexpr std::size_t kMaxEntries = std::size_t{1} << 26;

void check_a(double a) {
  require(a > 0.0 && a < 1.0, ErrorCode::InvalidArgument, "a must lie in (0, 1)");
}

void check_p(double p) {
  require(p > 0.0 && p < 0.5, ErrorCode::InvalidArgument, "p must lie in (0, 1/2)");
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Given per-column sums v of the chosen rows, the best column set takes the
/// positive or the negative part.
double best_side(const std::vector<double>& v, std::vector<std::uint8_t>* pick) {
  double pos = 0.0;
  double neg = 0.0;
  for (double x : v) (x > 0.0 ? pos : neg) += x;
  const bool positive = pos >= -neg;
  if (pick != nullptr) {
    pick->assign(v.size(), 0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      (*pick)[j] = positive ? v[j] > 0.0 : v[j] < 0.0;
    }
  }
  return positive ? pos : -neg;
}

}  // namespace

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols) {
  require(rows > 0 && cols > 0, ErrorCode::InvalidArgument,
          "matrix dimensions must be positive");
  require(rows <= kMaxEntries / cols, ErrorCode::TooLarge, "matrix too large");
  data_.assign(rows * cols, fill);
}

RealMatrix RealMatrix::identity(std::size_t d) {
  RealMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::diagonal(const std::vector<double>& entries) {
  RealMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

RealMatrix RealMatrix::transpose() const {
  RealMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

RealMatrix RealMatrix::operator*(const RealMatrix& other) const {
  require(cols_ == other.rows_, ErrorCode::DomainMismatch,
          "matrix product dimensions differ");
  RealMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double v = (*this)(r, k);
      if (v == 0.0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += v * other(k, c);
    }
  }
  return out;
}

RealMatrix RealMatrix::operator*(double s) const {
  RealMatrix out = *this;
  for (double& v : out.data_) v *= s;
  return out;
}

std::vector<double> RealMatrix::apply(const std::vector<double>& v) const {
  require(v.size() == cols_, ErrorCode::DomainMismatch, "vector length differs");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* row = &data_[r * cols_];
    double s = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) s += row[c] * v[c];
    out[r] = s;
  }
  return out;
}

std::vector<double> RealMatrix::apply_transpose(const std::vector<double>& v) const {
  require(v.size() == rows_, ErrorCode::DomainMismatch, "vector length differs");
  std::vector<double> out(cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* row = &data_[r * cols_];
    const double w = v[r];
    for (std::size_t c = 0; c < cols_; ++c) out[c] += row[c] * w;
  }
  return out;
}

double RealMatrix::max_abs_diff(const RealMatrix& other) const {
  require(rows_ == other.rows_ && cols_ == other.cols_, ErrorCode::DomainMismatch,
          "matrix dimensions differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  }
  return worst;
}

RealMatrix kronecker(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra) {
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
      const double v = a(ra, ca);
      for (std::size_t rb = 0; rb < b.rows(); ++rb) {
        for (std::size_t cb = 0; cb < b.cols(); ++cb) {
          out(ra * b.rows() + rb, ca * b.cols() + cb) = v * b(rb, cb);
        }
      }
    }
  }
  return out;
}

RealMatrix tensor_power(const RealMatrix& a, int t) {
  require(t >= 1, ErrorCode::InvalidArgument, "tensor power needs t >= 1");
  double rows = 1.0;
  double cols = 1.0;
  for (int i = 0; i < t; ++i) {
    rows *= static_cast<double>(a.rows());
    cols *= static_cast<double>(a.cols());
  }
  require(rows * cols <= static_cast<double>(kMaxEntries), ErrorCode::TooLarge,
          "tensor power too large");
  RealMatrix out = a;
  for (int i = 1; i < t; ++i) out = kronecker(out, a);
  return out;
}

RealMatrix build_N(double a) {
  check_a(a);
  RealMatrix n(4, 4);
  for (std::size_t r = 0; r < 4; ++r) {
    const std::uint64_t s = r >> 1;
    const std::uint64_t x = r & 1;
    for (std::size_t c = 0; c < 4; ++c) {
      const std::uint64_t t = c >> 1;
      const std::uint64_t y = c & 1;
      const double sign = (t & (x ^ y)) != 0 ? -1.0 : 1.0;
      n(r, c) = sign * std::pow(a, static_cast<double>((s ^ t) + (x ^ y)));
    }
  }
  return n;
}

double spectral_norm(const RealMatrix& a, double tolerance) {
  require(a.square(), ErrorCode::InvalidArgument, "spectral norm needs a square matrix");
  const std::size_t d = a.cols();
  std::vector<double> v(d, 1.0);
  v[0] += 1.0;
  double norm = std::sqrt(dot(v, v));
  for (double& x : v) x /= norm;

  double lambda = 0.0;
  constexpr int kMaxIterations = 2'000'000;
  for (int it = 0; it < kMaxIterations; ++it) {
    std::vector<double> w = a.apply_transpose(a.apply(v));
    lambda = dot(v, w);
    double residual = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double e = w[i] - lambda * v[i];
      residual += e * e;
    }
    norm = std::sqrt(dot(w, w));
    if (norm == 0.0) return 0.0;
    if (std::sqrt(residual) <= tolerance * std::max(lambda, 1e-300)) break;
    for (std::size_t i = 0; i < d; ++i) v[i] = w[i] / norm;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

std::pair<double, double> lambda_closed_form(double a) {
  check_a(a);
  const double a2 = a * a;
  const double a4 = a2 * a2;
  const double cross = 2.0 * a * std::sqrt(2.0 * (a4 + 1.0));
  return {2.0 * a2 + a4 + cross + 1.0, 2.0 * a2 + a4 - cross + 1.0};
}

double spectral_bound_rhs(double a) {
  check_a(a);
  const double a2 = a * a;
  const double a4 = a2 * a2;
  return 1.0 + std::numbers::sqrt2 * a + a2 + a4 / 2.0 + a4 * a / std::numbers::sqrt2;
}

RealMatrix build_M(int n, double p) {
  require(n >= 1 && n <= kMaxMatrixN, ErrorCode::TooLarge, "build_M needs 1 <= n <= 5");
  check_p(p);
  const std::size_t d = std::size_t{1} << (2 * n);
  RealMatrix m(d, d);
  // Split a base-4 index into its set and input bitmasks.
  auto split = [n](std::size_t idx) {
    std::uint64_t set = 0;
    std::uint64_t input = 0;
    for (int j = 0; j < n; ++j) {
      const std::size_t digit = (idx >> (2 * j)) & 3U;
      set |= static_cast<std::uint64_t>(digit >> 1) << j;
      input |= static_cast<std::uint64_t>(digit & 1U) << j;
    }
    return std::pair{set, input};
  };
  const double half_n = std::ldexp(1.0, -n);
  for (std::size_t r = 0; r < d; ++r) {
    const auto [s, x] = split(r);
    for (std::size_t c = 0; c < d; ++c) {
      const auto [t, y] = split(c);
      const int dst = std::popcount(s ^ t);
      const int dxy = std::popcount(x ^ y);
      // D_{2p}(S, T) * mu_p(x, y)
      const double d_mass = half_n * std::pow(p, dst) * std::pow(1.0 - p, n - dst);
      const double mu_mass = half_n * std::pow(p, dxy) * std::pow(1.0 - p, n - dxy);
      const double sign = parity_of(t & (x ^ y)) != 0 ? -1.0 : 1.0;
      m(r, c) = sign * d_mass * mu_mass;
    }
  }
  return m;
}

double discrepancy_exact(int n, double p) {
  require(n == 1, ErrorCode::InvalidArgument, "exact discrepancy is limited to n = 1");
  const RealMatrix m = build_M(n, p);
  const std::size_t d = m.rows();
  double best = 0.0;
  std::vector<double> v(d);
  for (std::uint32_t mask = 1; mask < (1U << d); ++mask) {
    std::fill(v.begin(), v.end(), 0.0);
    for (std::size_t r = 0; r < d; ++r) {
      if (((mask >> r) & 1U) == 0) continue;
      for (std::size_t c = 0; c < d; ++c) v[c] += m(r, c);
    }
    best = std::max(best, best_side(v, nullptr));
  }
  return best;
}

double discrepancy_lower_estimate(int n, double p, int restarts, Rng& rng) {
  require(restarts >= 1, ErrorCode::InvalidArgument, "need at least one restart");
  const RealMatrix m = build_M(n, p);
  const RealMatrix mt = m.transpose();
  const std::size_t d = m.rows();
  double best = 0.0;
  std::vector<double> v(d);
  std::vector<std::uint8_t> rows(d);
  std::vector<std::uint8_t> cols(d);
  auto sums = [d](const RealMatrix& mat, const std::vector<std::uint8_t>& pick,
                  std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t r = 0; r < d; ++r) {
      if (pick[r] == 0) continue;
      for (std::size_t c = 0; c < d; ++c) out[c] += mat(r, c);
    }
  };
  for (int attempt = 0; attempt < restarts; ++attempt) {
    for (auto& b : rows) b = static_cast<std::uint8_t>(rng.bits(1));
    double value = -1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
      sums(m, rows, v);
      best_side(v, &cols);
      sums(mt, cols, v);
      const double next = best_side(v, &rows);
      if (next <= value + 1e-18) {
        value = std::max(value, next);
        break;
      }
      value = next;
    }
    best = std::max(best, value);
  }
  return best;
}

double disc_spectral_bound_log2(int n, double p) {
  require(n >= 1, ErrorCode::InvalidArgument, "n must be positive");
  check_p(p);
  const double a = p / (1.0 - p);
  const double per_coordinate =
      2.0 * std::log2(1.0 - p) + std::log2(spectral_norm(build_N(a)));
  return static_cast<double>(n) * per_coordinate;
}

double disc_spectral_bound(int n, double p) {
  return std::exp2(disc_spectral_bound_log2(n, p));
}

double cc_lower_bound_log2(double log2_disc, double eps) {
  require(eps > 0.0 && eps <= 0.5, ErrorCode::InvalidArgument, "eps must lie in (0, 1/2]");
  require(std::isfinite(log2_disc), ErrorCode::InvalidArgument, "discrepancy must be positive");
  return std::max(0.0, 1.0 + std::log2(eps) - log2_disc);
}

double cc_lower_bound(double disc, double eps) {
  require(eps > 0.0 && eps <= 0.5, ErrorCode::InvalidArgument, "eps must lie in (0, 1/2]");
  require(disc > 0.0, ErrorCode::InvalidArgument, "discrepancy must be positive");
  return std::max(0.0, std::log2(2.0 * eps / disc));
}

double gamma_estimate(int n, double p) {
  return -disc_spectral_bound_log2(n, p) / (p * static_cast<double>(n));
}

}  // namespace uccsim
