#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "uccsim/agreement.hpp"
#include "uccsim/distribution.hpp"

using namespace uccsim;

TEST_CASE("D_rho sampling") {
  Rng rng(1);
  for (int rep = 0; rep < 50; ++rep) {
    const auto [f, g] = sample_D_rho(64, 0.0, rng);
    CHECK(f == g);
  }
  const auto [f, g] = sample_D_rho(10000, 0.25, rng);
  CHECK(std::abs(relative_distance(f, g) - 0.25) <= 0.02);
  CHECK_THROWS_AS(sample_D_rho(10, 0.6, rng), Error);
}

TEST_CASE("closeness audit at |Y| = 120") {
  Rng rng(2);
  int far = 0;
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) {
    const auto [f, g] = sample_D_rho(120, 0.1, rng);
    far += relative_distance(f, g) > 0.2;
  }
  CHECK(static_cast<double>(far) / samples <= std::exp(-0.1 * 120 / 3));
}

TEST_CASE("hamming ball examples") {
  CHECK(hamming_ball_size(12, 0) == 1);
  CHECK(hamming_ball_size(12, 3) == 299);
  CHECK(std::log2(299.0) <= binary_entropy(0.25) * 12);
  CHECK(binary_entropy(0.25) * 12 == doctest::Approx(9.735337493509594).epsilon(1e-14));
  CHECK(hamming_ball_size(62, 62) == (std::uint64_t{1} << 62));
  CHECK_THROWS_AS(hamming_ball_size(10, 11), Error);
  CHECK_THROWS_AS(hamming_ball_size(63, 1), Error);
}

TEST_CASE("hamming balls stay under the entropy bound") {
  for (int y = 1; y <= 24; ++y) {
    for (int i = 1; i <= 9; ++i) {
      const double d2 = 0.05 * i;
      const int radius = static_cast<int>(std::floor(d2 * y));
      CHECK(static_cast<double>(hamming_ball_size(y, radius)) <=
            std::exp2(binary_entropy(d2) * y));
    }
  }
}

TEST_CASE("min_entropy examples") {
  CHECK(min_entropy(std::vector<double>(8, 0.125)) == 3.0);
  CHECK(min_entropy(std::vector<double>{0.0, 1.0, 0.0}) == 0.0);
  CHECK(min_entropy(std::vector<double>{0.5, 0.25, 0.25}) == 1.0);
  CHECK_THROWS_AS(min_entropy(std::vector<double>{}), Error);
  CHECK_THROWS_AS(min_entropy(std::vector<double>{0.0, 0.0}), Error);
}

TEST_CASE("example code") {
  const auto code = example_code_10_4();
  CHECK(code.size() == 16);
  CHECK(std::set<std::uint32_t>(code.begin(), code.end()).size() == 16);
  int min_dist = 10;
  for (std::size_t i = 0; i < code.size(); ++i) {
    CHECK(code[i] < 1024);
    for (std::size_t j = i + 1; j < code.size(); ++j) {
      min_dist = std::min(min_dist, std::popcount(code[i] ^ code[j]));
    }
  }
  CHECK(min_dist == 4);
}

TEST_CASE("entropy audit examples") {
  SUBCASE("identity with delta2 = 0") {
    const EntropyAudit a = agreement_entropy_audit(10, AgreementStrategy::identity(), 0.0);
    CHECK(a.min_entropy == 10.0);
    CHECK(a.required == 10.0);
    CHECK(a.passed);
  }
  SUBCASE("nearest codeword on the [10,4] code") {
    const auto strat = AgreementStrategy::nearest_codeword(example_code_10_4(), 2);
    const EntropyAudit a = agreement_entropy_audit(10, strat, 0.2);
    CHECK(a.radius == 2);
    CHECK(a.required == doctest::Approx(2.780719051126377).epsilon(1e-14));
    CHECK(a.min_entropy == doctest::Approx(4.192645077942396).epsilon(1e-14));
    CHECK(a.distinct_outputs == 480);
    CHECK(a.passed);
  }
  SUBCASE("constant strategy is rejected") {
    try {
      (void)agreement_entropy_audit(10, AgreementStrategy::constant(0), 0.3);
      FAIL("expected a validation error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Validation);
      // First f' of weight 4 in index order is 15.
      CHECK(std::string(e.what()).find("0000001111") != std::string::npos);
    }
  }
  SUBCASE("table strategy too small") {
    CHECK_THROWS_AS(agreement_entropy_audit(3, AgreementStrategy::table({0, 1}), 0.3), Error);
  }
  CHECK_THROWS_AS(agreement_entropy_audit(21, AgreementStrategy::identity(), 0.1), Error);
}

TEST_CASE("linear code span") {
  const std::vector<std::uint32_t> gen{0b011, 0b110};
  auto words = linear_code(gen);
  std::sort(words.begin(), words.end());
  CHECK(words == std::vector<std::uint32_t>{0b000, 0b011, 0b101, 0b110});
}

TEST_CASE("chernoff examples") {
  CHECK(chernoff_bound(100, 50, ChernoffKind::LowerTail, 0.0) == 1.0);
  CHECK(chernoff_bound(100, 50, ChernoffKind::UpperTail, 0.0) == 1.0);
  CHECK(chernoff_bound(100, 50, ChernoffKind::Additive, 20.0) ==
        doctest::Approx(3.354626279025118e-4).epsilon(1e-14));
  CHECK(chernoff_bound(100, 30, ChernoffKind::LowerTail, 0.5) == doctest::Approx(std::exp(-3.75)));
  CHECK(chernoff_bound(100, 30, ChernoffKind::UpperTail, 0.5) == doctest::Approx(std::exp(-2.5)));
  CHECK_THROWS_AS(chernoff_bound(100, 30, ChernoffKind::UpperTail, 1.5), Error);
  CHECK_THROWS_AS(chernoff_bound(100, 30, ChernoffKind::Additive, -1.0), Error);
  CHECK_THROWS_AS(chernoff_bound(100, 130, ChernoffKind::Additive, 1.0), Error);
  CHECK(to_string(ChernoffKind::Additive) == "additive");
}

TEST_CASE("chernoff tails dominate simulated frequencies") {
  Rng rng(3);
  struct Point {
    int n;
    double mean;
    ChernoffKind kind;
    double param;
  };
  const Point grid[] = {{60, 6, ChernoffKind::UpperTail, 1.0},
                        {100, 30, ChernoffKind::LowerTail, 0.3}};
  for (const Point& p : grid) {
    const double freq = chernoff_tail_frequency(p.n, p.mean, p.kind, p.param, 20000, rng);
    CHECK(freq <= chernoff_bound(p.n, p.mean, p.kind, p.param));
  }
}
