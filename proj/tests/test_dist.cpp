#include <doctest.h>

#include <cmath>
#include <vector>

#include "uccsim/distribution.hpp"

using namespace uccsim;

namespace {

std::vector<double> random_simplex(std::size_t size, Rng& rng) {
  std::vector<double> v(size);
  double total = 0.0;
  for (double& e : v) total += (e = rng.uniform() + 1e-3);
  for (double& e : v) e /= total;
  return v;
}

// Reference I(X;Y) straight from the definition.
double mi_reference(const std::vector<double>& m, int xb, int yb) {
  const std::size_t nx = std::size_t{1} << xb, ny = std::size_t{1} << yb;
  std::vector<double> px(nx, 0.0), py(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      px[x] += m[x * ny + y];
      py[y] += m[x * ny + y];
    }
  }
  double mi = 0.0;
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      const double v = m[x * ny + y];
      if (v > 0) mi += v * std::log2(v / (px[x] * py[y]));
    }
  }
  return mi;
}

}  // namespace

TEST_CASE("noisy hypercube mass") {
  const JointDistribution mu = JointDistribution::noisy_hypercube(3, 0.2);
  double total = 0.0;
  for (std::uint64_t x = 0; x < 8; ++x) {
    for (std::uint64_t y = 0; y < 8; ++y) {
      const int d = std::popcount(x ^ y);
      CHECK(mu.mass(x, y) ==
            doctest::Approx(std::pow(0.2, d) * std::pow(0.8, 3 - d) / 8).epsilon(1e-14));
      total += mu.mass(x, y);
    }
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("dense tables must be a distribution") {
  CHECK_THROWS_AS(JointDistribution::dense({1, 1}, {0.5, 0.5, 0.5, 0.0}), Error);
  CHECK_THROWS_AS(JointDistribution::dense({1, 1}, {1.5, -0.5, 0.0, 0.0}), Error);
  CHECK_THROWS_AS(JointDistribution::dense({1, 1}, {1.0, 0.0, 0.0}), Error);
}

TEST_CASE("marginal_x examples") {
  for (double m : JointDistribution::noisy_hypercube(2, 0.1).marginal_x()) CHECK(m == doctest::Approx(0.25));
  for (double m : JointDistribution::uniform_product(2).marginal_x()) CHECK(m == doctest::Approx(0.25));
  const JointDistribution t = JointDistribution::dense({1, 1}, {0.5, 0.0, 0.25, 0.25});
  CHECK(t.marginal_x() == std::vector<double>{0.5, 0.5});
  CHECK(t.marginal_y() == std::vector<double>{0.75, 0.25});
}

TEST_CASE("conditional_y_given_x examples") {
  SUBCASE("noisy copy is a per-bit product") {
    const JointDistribution mu = JointDistribution::noisy_hypercube(3, 0.1);
    const ConditionalDistribution c = mu.conditional_y_given_x(BitString::from_text("101"));
    for (std::uint64_t y = 0; y < 8; ++y) {
      double expected = 1.0;
      for (int i = 0; i < 3; ++i) expected *= (((5 >> i) & 1) == ((y >> i) & 1)) ? 0.9 : 0.1;
      CHECK(c.prob(y) == doctest::Approx(expected).epsilon(1e-14));
    }
  }
  SUBCASE("product conditional is the Y marginal") {
    const JointDistribution mu = JointDistribution::uniform_product(2);
    for (std::uint64_t x = 0; x < 4; ++x) {
      for (double v : mu.conditional_y_given_x(x).to_vector()) CHECK(v == doctest::Approx(0.25));
    }
  }
  SUBCASE("dense row normalizes") {
    const JointDistribution mu = JointDistribution::dense({1, 1}, {0.2, 0.6, 0.1, 0.1});
    const auto c = mu.conditional_y_given_x(std::uint64_t{0}).to_vector();
    CHECK(c[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(c[1] == doctest::Approx(0.75).epsilon(1e-14));
  }
  SUBCASE("zero-mass x is undefined") {
    const JointDistribution mu = JointDistribution::dense({1, 1}, {0.5, 0.5, 0.0, 0.0});
    try {
      (void)mu.conditional_y_given_x(std::uint64_t{1});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Undefined);
    }
  }
}

TEST_CASE("noisy copy extremes") {
  Rng rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    const BitString x(20, rng.bits(20));
    CHECK(sample_noisy_copy(x, 0.0, rng) == x);
    CHECK(sample_noisy_copy(x, 1.0, rng) == (x ^ BitString(20, (1u << 20) - 1)));
  }
  CHECK_THROWS_AS(sample_noisy_copy(BitString(2, 0), 1.5, rng), Error);
}

TEST_CASE("noisy copy flip rate over 10^5 coordinates") {
  // 1600 draws of a 64-bit copy, 102400 coordinates in total.
  Rng rng(17);
  std::uint64_t flips = 0, coords = 0;
  for (int rep = 0; rep < 1600; ++rep) {
    const BitString x(64, rng.next());
    flips += static_cast<std::uint64_t>((sample_noisy_copy(x, 0.3, rng) ^ x).weight());
    coords += 64;
  }
  CHECK(static_cast<double>(flips) / static_cast<double>(coords) == doctest::Approx(0.3).epsilon(0.01 / 0.3));
}

TEST_CASE("kl_divergence examples") {
  const std::vector<double> half{0.5, 0.5};
  CHECK(kl_divergence(half, half) == 0.0);
  CHECK(kl_divergence(std::vector<double>{1.0, 0.0}, half) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(kl_divergence(std::vector<double>{0.75, 0.25}, half) ==
        doctest::Approx(0.18872187554086714).epsilon(1e-12));
  try {
    (void)kl_divergence(half, std::vector<double>{1.0, 0.0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Undefined);
  }
}

TEST_CASE("kl_divergence is nonnegative and zero only at equality") {
  Rng rng(23);
  for (int rep = 0; rep < 200; ++rep) {
    const auto p = random_simplex(6, rng);
    const auto q = random_simplex(6, rng);
    CHECK(kl_divergence(p, q) > 0.0);
    CHECK(kl_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("mutual_information examples") {
  CHECK(mutual_information(JointDistribution::uniform_product(4)) == doctest::Approx(0.0));
  CHECK(mutual_information(JointDistribution::dense({1, 1}, {0.5, 0.0, 0.0, 0.5})) ==
        doctest::Approx(1.0).epsilon(1e-14));
  for (int n = 1; n <= 3; ++n) {
    for (double p : {0.05, 0.1, 0.3}) {
      const JointDistribution mu = JointDistribution::noisy_hypercube(n, p);
      const double closed = n * (1.0 - binary_entropy(p));
      CHECK(mutual_information(mu) == doctest::Approx(closed).epsilon(1e-12));
      CHECK(mi_reference(mu.materialize().dense_masses(), n, n) ==
            doctest::Approx(closed).epsilon(1e-12));
    }
  }
  CHECK(mutual_information(JointDistribution::noisy_hypercube(8, 0.1)) ==
        doctest::Approx(4.24803525128575).epsilon(1e-12));
}

TEST_CASE("mutual information vanishes exactly on product tables") {
  Rng rng(29);
  for (int n = 1; n <= 3; ++n) {
    const std::size_t side = std::size_t{1} << n;
    for (int rep = 0; rep < 20; ++rep) {
      const auto a = random_simplex(side, rng);
      const auto b = random_simplex(side, rng);
      std::vector<double> prod(side * side), joint = random_simplex(side * side, rng);
      for (std::size_t x = 0; x < side; ++x) {
        for (std::size_t y = 0; y < side; ++y) prod[x * side + y] = a[x] * b[y];
      }
      CHECK(mutual_information(JointDistribution::dense({n, n}, prod)) ==
            doctest::Approx(0.0).epsilon(1e-12));
      const double mi = mutual_information(JointDistribution::dense({n, n}, joint));
      CHECK(mi > 1e-9);
      CHECK(mi == doctest::Approx(mi_reference(joint, n, n)).epsilon(1e-12));
    }
  }
}

TEST_CASE("empirical law of sample within TV 0.02") {
  Rng rng(31);
  const JointDistribution dense = JointDistribution::dense({3, 3}, random_simplex(64, rng));
  for (const JointDistribution& mu : {JointDistribution::noisy_hypercube(3, 0.2), dense}) {
    std::vector<double> counts(64, 0.0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
      auto [x, y] = mu.sample(rng);
      counts[mu.domain().index(x, y)] += 1.0;
    }
    double tv = 0.0;
    for (std::uint64_t x = 0; x < 8; ++x) {
      for (std::uint64_t y = 0; y < 8; ++y) tv += std::abs(counts[x * 8 + y] / draws - mu.mass(x, y));
    }
    CHECK(tv / 2 <= 0.02);
  }
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.2) == doctest::Approx(0.7219280948873623).epsilon(1e-14));
}

TEST_CASE("sampling factors of the implicit kinds") {
  for (const auto& f : JointDistribution::uniform_product(5).sampling_factors()) CHECK(f.independent_of_x());
  const auto factors = JointDistribution::noisy_hypercube(4, 0.1).sampling_factors();
  REQUIRE(!factors.empty());
  std::vector<double> cond;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::uint64_t x = 0; x < 16; ++x) {
      JointDistribution::noisy_hypercube(4, 0.1).factor_conditional(i, x, cond);
      for (std::size_t u = 0; u < cond.size(); ++u) {
        CHECK(cond[u] <= factors[i].envelope * factors[i].reference[u] + 1e-12);
      }
    }
  }
}
