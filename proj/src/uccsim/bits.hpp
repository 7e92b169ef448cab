#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "uccsim/error.hpp"

namespace uccsim {

/// Fixed-length binary vector of at most 64 bits.
///
/// Bit positions are 1-based; position 1 is the least significant bit of the
/// integer encoding. Inputs x, y and subset masks S, T all use this layout, so
/// the inner product <S, z> is popcount(S & z) mod 2.
class BitString {
 public:
  static constexpr int kMaxBits = 64;

  BitString() = default;
  BitString(int n, std::uint64_t value) : n_(n), value_(value) {
    require(n >= 0 && n <= kMaxBits, ErrorCode::InvalidArgument,
            "BitString length must be in [0, 64]");
    require(n == 64 || (value >> n) == 0, ErrorCode::InvalidArgument,
            "BitString value has bits beyond its length");
  }

  /// Parses text written most significant first, like a binary literal: the
  /// last character is position 1, so "01" has x_1 = 1 and x_2 = 0.
  static BitString from_text(const std::string& text) {
    require(text.size() <= kMaxBits, ErrorCode::InvalidArgument,
            "BitString text longer than 64 characters");
    std::uint64_t v = 0;
    for (char c : text) {
      require(c == '0' || c == '1', ErrorCode::InvalidArgument,
              "BitString text must be 0/1 only");
      v = (v << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return BitString(static_cast<int>(text.size()), v);
  }

  int size() const noexcept { return n_; }
  std::uint64_t value() const noexcept { return value_; }

  bool operator[](int pos) const {
    require(pos >= 1 && pos <= n_, ErrorCode::InvalidArgument,
            "BitString index out of range");
    return (value_ >> (pos - 1)) & 1U;
  }

  int weight() const noexcept { return std::popcount(value_); }

  BitString operator^(const BitString& other) const {
    require(n_ == other.n_, ErrorCode::DomainMismatch,
            "xor of BitStrings with different lengths");
    return BitString(n_, value_ ^ other.value_);
  }

  BitString operator&(const BitString& other) const {
    require(n_ == other.n_, ErrorCode::DomainMismatch,
            "and of BitStrings with different lengths");
    return BitString(n_, value_ & other.value_);
  }

  bool operator==(const BitString&) const = default;

  /// Inverse of from_text.
  std::string to_text() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i) {
      if ((value_ >> i) & 1U) s[static_cast<std::size_t>(n_ - 1 - i)] = '1';
    }
    return s;
  }

 private:
  int n_ = 0;
  std::uint64_t value_ = 0;
};

inline int parity_of(std::uint64_t v) noexcept { return std::popcount(v) & 1; }

/// Input space X x Y = {0,1}^x_bits x {0,1}^y_bits.
struct Domain {
  int x_bits = 0;
  int y_bits = 0;

  std::uint64_t x_size() const noexcept { return std::uint64_t{1} << x_bits; }
  std::uint64_t y_size() const noexcept { return std::uint64_t{1} << y_bits; }
  std::uint64_t size() const noexcept { return x_size() * y_size(); }
  std::uint64_t index(std::uint64_t x, std::uint64_t y) const noexcept {
    return (x << y_bits) | y;
  }

  bool operator==(const Domain&) const = default;

  static Domain hypercube(int n) { return Domain{n, n}; }
};

// Dense tables over X x Y are capped at 14 bits per side.
inline constexpr int kMaxTableBitsPerSide = 14;

inline void require_same(const Domain& a, const Domain& b) {
  require(a == b, ErrorCode::DomainMismatch, "domains differ");
}

}  // namespace uccsim
