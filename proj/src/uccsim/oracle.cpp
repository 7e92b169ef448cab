#include "uccsim/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "uccsim/error.hpp"

namespace uccsim {

namespace {

void check_oracle_domain(const BoolFunction& f, const JointDistribution& mu) {
  require_same(f.domain(), mu.domain());
  require(f.domain().x_size() <= kOracleMaxX && f.domain().y_size() <= kOracleMaxY,
          ErrorCode::TooLarge, "oracle needs |X| <= 8 and |Y| <= 16");
}

/// mass1[x][y] and mass0[x][y] for the block sums.
struct Masses {
  std::uint64_t nx = 0;
  std::uint64_t ny = 0;
  std::vector<double> one;
  std::vector<double> zero;
};

Masses split_masses(const BoolFunction& f, const JointDistribution& mu) {
  Masses m;
  m.nx = f.domain().x_size();
  m.ny = f.domain().y_size();
  m.one.assign(m.nx * m.ny, 0.0);
  m.zero.assign(m.nx * m.ny, 0.0);
  for (std::uint64_t x = 0; x < m.nx; ++x) {
    for (std::uint64_t y = 0; y < m.ny; ++y) {
      (f(x, y) ? m.one : m.zero)[x * m.ny + y] = mu.mass(x, y);
    }
  }
  return m;
}

double partition_error(const Masses& m, const std::vector<std::uint32_t>& blocks,
                       std::uint32_t count, std::vector<double>& one,
                       std::vector<double>& zero) {
  one.assign(static_cast<std::size_t>(count) * m.ny, 0.0);
  zero.assign(static_cast<std::size_t>(count) * m.ny, 0.0);
  for (std::uint64_t x = 0; x < m.nx; ++x) {
    const std::size_t base = static_cast<std::size_t>(blocks[x]) * m.ny;
    for (std::uint64_t y = 0; y < m.ny; ++y) {
      one[base + y] += m.one[x * m.ny + y];
      zero[base + y] += m.zero[x * m.ny + y];
    }
  }
  double err = 0.0;
  for (std::size_t i = 0; i < one.size(); ++i) err += std::min(one[i], zero[i]);
  return err;
}

}  // namespace

OneWayProtocol majority_protocol(const BoolFunction& f, const JointDistribution& mu,
                                 const std::vector<std::uint32_t>& blocks) {
  require_same(f.domain(), mu.domain());
  const Domain d = f.domain();
  require(blocks.size() == d.x_size(), ErrorCode::DomainMismatch,
          "partition must assign every x");
  const std::uint32_t count = *std::max_element(blocks.begin(), blocks.end()) + 1;
  std::vector<double> score(static_cast<std::size_t>(count) * d.y_size(), 0.0);
  for (std::uint64_t x = 0; x < d.x_size(); ++x) {
    for (std::uint64_t y = 0; y < d.y_size(); ++y) {
      score[blocks[x] * d.y_size() + y] += f(x, y) ? mu.mass(x, y) : -mu.mass(x, y);
    }
  }
  std::vector<std::uint8_t> deciders(score.size());
  for (std::size_t i = 0; i < score.size(); ++i) deciders[i] = score[i] > 0.0;
  return OneWayProtocol(d, count, blocks, std::move(deciders));
}

std::vector<double> best_error_by_message_count(const BoolFunction& f,
                                                const JointDistribution& mu) {
  check_oracle_domain(f, mu);
  const Masses m = split_masses(f, mu);
  const std::size_t nx = m.nx;
  std::vector<double> best(nx + 1, std::numeric_limits<double>::infinity());

  // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<std::uint32_t> a(nx, 0);
  std::vector<std::uint32_t> prefix_max(nx, 0);
  std::vector<double> one;
  std::vector<double> zero;
  while (true) {
    const std::uint32_t count = prefix_max[nx - 1] + 1;
    const double err = partition_error(m, a, count, one, zero);
    best[count] = std::min(best[count], err);

    std::size_t i = nx - 1;
    while (i > 0 && a[i] > prefix_max[i - 1]) --i;
    if (i == 0) break;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < nx; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  for (std::size_t l = 2; l <= nx; ++l) best[l] = std::min(best[l], best[l - 1]);
  return best;
}

int exact_one_way_cc(const BoolFunction& f, const JointDistribution& mu, double eps) {
  require(eps >= 0.0, ErrorCode::InvalidArgument, "eps must be non-negative");
  const std::vector<double> best = best_error_by_message_count(f, mu);
  const std::size_t nx = best.size() - 1;
  for (int bits = 0;; ++bits) {
    const std::size_t l = std::min<std::size_t>(std::size_t{1} << bits, nx);
    if (best[l] <= eps + kOracleTolerance) return bits;
    if (l == nx) break;
  }
  // Singletons compute f exactly; unreachable.
  fail(ErrorCode::Validation, "no protocol reaches the error budget");
}

bool certify_membership_owF(const BoolFunction& f, const BoolFunction& g,
                            const JointDistribution& mu, int k, double eps,
                            double delta) {
  require(k >= 0, ErrorCode::InvalidArgument, "k must be non-negative");
  return exact_one_way_cc(f, mu, eps) <= k && exact_one_way_cc(g, mu, eps) <= k &&
         distance_mu(f, g, mu) <= delta + kOracleTolerance;
}

}  // namespace uccsim
