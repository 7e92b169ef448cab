#include "uccsim/agreement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "uccsim/bits.hpp"
#include "uccsim/distribution.hpp"
#include "uccsim/error.hpp"

namespace uccsim {

namespace {

constexpr int kMaxAuditBits = 20;

}  // namespace

std::pair<BobOnlyFunction, BobOnlyFunction> sample_D_rho(std::size_t size_y, double rho,
                                                         Rng& rng) {
  require(rho >= 0.0 && rho <= 0.5, ErrorCode::InvalidArgument,
          "rho must lie in [0, 1/2]");
  BobOnlyFunction f(size_y);
  BobOnlyFunction g(size_y);
  for (std::size_t i = 0; i < size_y; ++i) {
    f[i] = static_cast<std::uint8_t>(rng.bits(1));
    g[i] = f[i] ^ static_cast<std::uint8_t>(rng.bernoulli(rho));
  }
  return {std::move(f), std::move(g)};
}

double relative_distance(const BobOnlyFunction& a, const BobOnlyFunction& b) {
  require(a.size() == b.size(), ErrorCode::DomainMismatch, "tables differ in length");
  require(!a.empty(), ErrorCode::InvalidArgument, "empty tables");
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] != b[i];
  return static_cast<double>(diff) / static_cast<double>(a.size());
}

std::uint64_t hamming_ball_size(int size_y, int radius) {
  require(size_y >= 0 && size_y <= 62, ErrorCode::TooLarge, "|Y| must be at most 62");
  require(radius >= 0 && radius <= size_y, ErrorCode::InvalidArgument,
          "radius must lie in [0, |Y|]");
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(size_y, i)
  for (int i = 0; i <= radius; ++i) {
    total += binom;
    binom = binom * static_cast<std::uint64_t>(size_y - i) / static_cast<std::uint64_t>(i + 1);
  }
  return total;
}

double min_entropy(std::span<const double> dist) {
  double top = 0.0;
  for (double v : dist) {
    require(v >= 0.0, ErrorCode::InvalidArgument, "negative mass");
    top = std::max(top, v);
  }
  if (!(top > 0.0)) fail(ErrorCode::Undefined, "empty support");
  return -std::log2(top);
}

AgreementStrategy AgreementStrategy::identity() {
  return {"identity", [](std::uint32_t f) { return f; }};
}

AgreementStrategy AgreementStrategy::constant(std::uint32_t value) {
  return {"constant", [value](std::uint32_t) { return value; }};
}

AgreementStrategy AgreementStrategy::nearest_codeword(std::vector<std::uint32_t> code,
                                                      int radius) {
  require(!code.empty(), ErrorCode::InvalidArgument, "empty code");
  return {"nearest_codeword", [code = std::move(code), radius](std::uint32_t f) {
            int best = radius + 1;
            std::uint32_t out = f;
            for (std::uint32_t c : code) {
              const int d = std::popcount(c ^ f);
              if (d < best) {
                best = d;
                out = c;
              }
            }
            return out;
          }};
}

AgreementStrategy AgreementStrategy::table(std::vector<std::uint32_t> outputs) {
  return {"table", [outputs = std::move(outputs)](std::uint32_t f) {
            require(f < outputs.size(), ErrorCode::InvalidArgument,
                    "strategy table is shorter than 2^|Y|");
            return outputs[f];
          }};
}

std::vector<std::uint32_t> linear_code(std::span<const std::uint32_t> generator) {
  require(generator.size() <= 20, ErrorCode::TooLarge, "generator has too many rows");
  std::vector<std::uint32_t> words;
  const std::uint32_t count = 1U << generator.size();
  words.reserve(count);
  for (std::uint32_t m = 0; m < count; ++m) {
    std::uint32_t w = 0;
    for (std::size_t r = 0; r < generator.size(); ++r) {
      if ((m >> r) & 1U) w ^= generator[r];
    }
    words.push_back(w);
  }
  return words;
}

std::vector<std::uint32_t> example_code_10_4() {
  // Systematic generator [I_4 | A]; every nonzero codeword has weight >= 4.
  static constexpr std::uint32_t kRows[] = {
      0b0001110001,
      0b0010110010,
      0b0011010100,
      0b0011101000,
  };
  return linear_code(kRows);
}

EntropyAudit agreement_entropy_audit(int size_y, const AgreementStrategy& strategy,
                                     double delta2) {
  require(size_y >= 1 && size_y <= kMaxAuditBits, ErrorCode::TooLarge,
          "audit enumerates |Y| <= 20 only");
  require(delta2 >= 0.0 && delta2 <= 1.0, ErrorCode::InvalidArgument,
          "delta2 must lie in [0, 1]");
  EntropyAudit audit;
  audit.size_y = size_y;
  audit.delta2 = delta2;
  audit.radius = static_cast<int>(std::floor(delta2 * size_y + 1e-9));

  const std::uint32_t count = 1U << size_y;
  std::vector<std::uint32_t> hits(count, 0);
  for (std::uint32_t f = 0; f < count; ++f) {
    const std::uint32_t q = strategy.map(f);
    if (q >= count || std::popcount(q ^ f) > audit.radius) {
      fail(ErrorCode::Validation, "strategy '" + strategy.name +
                                      "' violates the distance constraint at f' = " +
                                      BitString(size_y, f).to_text());
    }
    ++hits[q];
  }
  std::uint32_t top = 0;
  for (std::uint32_t h : hits) {
    top = std::max(top, h);
    audit.distinct_outputs += h > 0;
  }
  audit.min_entropy = static_cast<double>(size_y) - std::log2(static_cast<double>(top));
  audit.required = (1.0 - binary_entropy(delta2)) * size_y;
  audit.passed = audit.min_entropy >= audit.required;
  return audit;
}

double chernoff_bound(int n, double mean, ChernoffKind kind, double param) {
  require(n >= 1, ErrorCode::InvalidArgument, "n must be positive");
  require(mean >= 0.0 && mean <= n, ErrorCode::InvalidArgument,
          "mean must lie in [0, n]");
  switch (kind) {
    case ChernoffKind::LowerTail:
      require(param >= 0.0 && param <= 1.0, ErrorCode::InvalidArgument,
              "delta must lie in [0, 1]");
      return std::exp(-param * param * mean / 2.0);
    case ChernoffKind::UpperTail:
      require(param >= 0.0 && param <= 1.0, ErrorCode::InvalidArgument,
              "delta must lie in [0, 1]");
      return std::exp(-param * param * mean / 3.0);
    case ChernoffKind::Additive:
      require(param >= 0.0, ErrorCode::InvalidArgument, "a must be non-negative");
      return std::exp(-2.0 * param * param / n);
  }
  return 1.0;
}

double chernoff_tail_frequency(int n, double mean, ChernoffKind kind, double param,
                               int samples, Rng& rng) {
  chernoff_bound(n, mean, kind, param);
  require(samples >= 1, ErrorCode::InvalidArgument, "need at least one sample");
  const double q = mean / n;
  std::uint64_t hits = 0;
  for (int s = 0; s < samples; ++s) {
    int x = 0;
    for (int i = 0; i < n; ++i) x += rng.bernoulli(q);
    bool event = false;
    switch (kind) {
      case ChernoffKind::LowerTail:
        event = x < (1.0 - param) * mean;
        break;
      case ChernoffKind::UpperTail:
        event = x > (1.0 + param) * mean;
        break;
      case ChernoffKind::Additive:
        event = x > mean + param;
        break;
    }
    hits += event;
  }
  return static_cast<double>(hits) / samples;
}

std::string to_string(ChernoffKind kind) {
  switch (kind) {
    case ChernoffKind::LowerTail:
      return "lower";
    case ChernoffKind::UpperTail:
      return "upper";
    case ChernoffKind::Additive:
      return "additive";
  }
  return "?";
}

}  // namespace uccsim
