#include "uccsim/families.hpp"

#include <cmath>

#include "uccsim/distribution.hpp"

namespace uccsim {

namespace {

void check_probability(double p, const char* what) {
  require(p >= 0.0 && p <= 1.0, ErrorCode::InvalidArgument, what);
}

}  // namespace

bool eval_parity(const BitString& s, const BitString& x, const BitString& y) {
  require(s.size() == x.size() && x.size() == y.size(), ErrorCode::DomainMismatch,
          "parity arguments differ in length");
  return parity_of(s.value() & (x.value() ^ y.value())) != 0;
}

std::shared_ptr<const OneWayProtocol> parity_protocol(int n, std::uint64_t mask) {
  require(n >= 0 && n <= kMaxTableBitsPerSide, ErrorCode::TooLarge,
          "parity protocol tables need n <= 14");
  require(n == 64 || (mask >> n) == 0, ErrorCode::InvalidArgument,
          "mask has bits beyond n");
  const Domain d = Domain::hypercube(n);
  std::vector<std::uint32_t> partition(d.x_size());
  for (std::uint64_t x = 0; x < d.x_size(); ++x) {
    partition[x] = static_cast<std::uint32_t>(parity_of(mask & x));
  }
  std::vector<std::uint8_t> deciders(2 * d.y_size());
  for (std::uint64_t b = 0; b < 2; ++b) {
    for (std::uint64_t y = 0; y < d.y_size(); ++y) {
      deciders[b * d.y_size() + y] =
          static_cast<std::uint8_t>(b ^ static_cast<std::uint64_t>(parity_of(mask & y)));
    }
  }
  return std::make_shared<const OneWayProtocol>(d, 2, std::move(partition),
                                                std::move(deciders));
}

double parity_distance_exact(int symmetric_difference, double p) {
  check_probability(p, "p must lie in [0, 1]");
  require(symmetric_difference >= 0, ErrorCode::InvalidArgument,
          "negative symmetric difference");
  return (1.0 - std::pow(1.0 - 2.0 * p, symmetric_difference)) / 2.0;
}

double parity_distance_exact(const BitString& s, const BitString& t, double p) {
  return parity_distance_exact((s ^ t).weight(), p);
}

bool FamilyPair::in_family() const {
  return symmetric_difference() <= q * static_cast<double>(s.size()) + 1e-12;
}

FamilyPair sample_Dq(int n, double q, Rng& rng) {
  check_probability(q, "q must lie in [0, 1]");
  require(n >= 1 && n <= 64, ErrorCode::InvalidArgument, "n must be in [1, 64]");
  FamilyPair pair;
  pair.s = BitString(n, rng.bits(n));
  pair.t = sample_noisy_copy(pair.s, q / 2.0, rng);
  pair.q = q;
  return pair;
}

NuSample sample_nu(int n, double p, double q, Rng& rng) {
  check_probability(p, "p must lie in [0, 1]");
  const FamilyPair pair = sample_Dq(n, q, rng);
  NuSample out;
  out.s = pair.s;
  out.t = pair.t;
  out.x = BitString(n, rng.bits(n));
  out.y = sample_noisy_copy(out.x, p, rng);
  return out;
}

bool eval_F(const BitString& s, const BitString& x, const BitString& t,
            const BitString& y) {
  require(s.size() == t.size(), ErrorCode::DomainMismatch, "S and T differ in length");
  return eval_parity(t, x, y);
}

}  // namespace uccsim
