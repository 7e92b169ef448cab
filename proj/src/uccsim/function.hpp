#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "uccsim/bits.hpp"

namespace uccsim {

class JointDistribution;

/// Truth table Y -> {0,1}; the restriction f_x of a two-party function.
struct RestrictedFunction {
  int y_bits = 0;
  std::vector<std::uint8_t> values;

  bool operator()(std::uint64_t y) const { return values[y] != 0; }
  std::uint64_t size() const noexcept { return values.size(); }
};

/// Canonical one-way protocol: Alice sends pi(x) in [0, L), Bob outputs
/// deciders[pi(x)](y). Message indices are 0-based here.
class OneWayProtocol {
 public:
  OneWayProtocol(Domain domain, std::uint32_t message_count,
                 std::vector<std::uint32_t> partition,
                 std::vector<std::uint8_t> deciders);

  const Domain& domain() const noexcept { return domain_; }
  std::uint32_t message_count() const noexcept { return message_count_; }

  /// ceil(log2 L) bits.
  int cost_bits() const noexcept;
  bool within_budget(int k) const noexcept;

  std::uint32_t message(std::uint64_t x) const { return partition_[x]; }
  bool decide(std::uint32_t message, std::uint64_t y) const {
    return deciders_[message * domain_.y_size() + y] != 0;
  }
  bool evaluate(std::uint64_t x, std::uint64_t y) const {
    return decide(message(x), y);
  }
  bool evaluate(const BitString& x, const BitString& y) const;

  RestrictedFunction decider(std::uint32_t message) const;
  const std::vector<std::uint32_t>& partition() const noexcept { return partition_; }
  const std::vector<std::uint8_t>& decider_table() const noexcept { return deciders_; }

 private:
  Domain domain_;
  std::uint32_t message_count_;
  std::vector<std::uint32_t> partition_;
  std::vector<std::uint8_t> deciders_;
};

/// Boolean function X x Y -> {0,1}, either tabulated or in a structured form.
///
/// Structured forms evaluate in O(1) without a table, which is what lets
/// parity functions and protocol-induced functions run at sizes where a
/// dense table would not fit.
class BoolFunction {
 public:
  enum class Kind { Table, Parity, Constant, Protocol };

  static BoolFunction table(Domain domain, std::vector<std::uint8_t> values);
  /// f_S(x, y) = <S, x xor y> mod 2 over {0,1}^n x {0,1}^n.
  static BoolFunction parity(int n, std::uint64_t mask);
  static BoolFunction constant(Domain domain, bool value);
  static BoolFunction from_protocol(std::shared_ptr<const OneWayProtocol> protocol);

  template <class Fn>
  static BoolFunction tabulate(Domain domain, Fn&& fn) {
    check_table_size(domain);
    std::vector<std::uint8_t> values(domain.size());
    for (std::uint64_t x = 0; x < domain.x_size(); ++x) {
      for (std::uint64_t y = 0; y < domain.y_size(); ++y) {
        values[domain.index(x, y)] = fn(x, y) ? 1 : 0;
      }
    }
    return table(domain, std::move(values));
  }

  Kind kind() const noexcept { return kind_; }
  const Domain& domain() const noexcept { return domain_; }

  bool operator()(std::uint64_t x, std::uint64_t y) const {
    switch (kind_) {
      case Kind::Table:
        return (*table_)[domain_.index(x, y)] != 0;
      case Kind::Parity:
        return parity_of(mask_ & (x ^ y)) != 0;
      case Kind::Constant:
        return constant_;
      case Kind::Protocol:
        return protocol_->evaluate(x, y);
    }
    return false;
  }

  bool evaluate(const BitString& x, const BitString& y) const;

  BoolFunction tabulated() const;
  BoolFunction complement() const;

  std::uint64_t parity_mask() const noexcept { return mask_; }
  bool constant_value() const noexcept { return constant_; }
  const std::vector<std::uint8_t>& table_values() const;
  const std::shared_ptr<const OneWayProtocol>& protocol() const noexcept {
    return protocol_;
  }

  static void check_table_size(const Domain& domain);

 private:
  BoolFunction(Kind kind, Domain domain) : kind_(kind), domain_(domain) {}

  Kind kind_;
  Domain domain_;
  std::shared_ptr<const std::vector<std::uint8_t>> table_;
  std::uint64_t mask_ = 0;
  bool constant_ = false;
  std::shared_ptr<const OneWayProtocol> protocol_;
};

RestrictedFunction restrict(const BoolFunction& f, const BitString& x);
RestrictedFunction restrict(const BoolFunction& f, std::uint64_t x);

/// Pr_{(x,y)~mu}[f(x,y) != g(x,y)], summed exactly over the domain.
double distance_mu(const BoolFunction& f, const BoolFunction& g,
                   const JointDistribution& mu);

/// Pr_{(x,y)~mu}[P(x,y) != g(x,y)].
double protocol_error(const OneWayProtocol& protocol, const BoolFunction& g,
                      const JointDistribution& mu);

}  // namespace uccsim
