#include "uccsim/function.hpp"

#include <bit>

#include "uccsim/distribution.hpp"
#include "uccsim/error.hpp"

namespace uccsim {

// ---------------------------------------------------------------------------
// OneWayProtocol

OneWayProtocol::OneWayProtocol(Domain domain, std::uint32_t message_count,
                               std::vector<std::uint32_t> partition,
                               std::vector<std::uint8_t> deciders)
    : domain_(domain),
      message_count_(message_count),
      partition_(std::move(partition)),
      deciders_(std::move(deciders)) {
  BoolFunction::check_table_size(Domain{domain.x_bits, 0});
  BoolFunction::check_table_size(Domain{0, domain.y_bits});
  require(message_count_ >= 1, ErrorCode::InvalidArgument,
          "a protocol needs at least one message");
  require(partition_.size() == domain_.x_size(), ErrorCode::DomainMismatch,
          "partition table size does not match |X|");
  require(deciders_.size() == std::uint64_t{message_count_} * domain_.y_size(),
          ErrorCode::DomainMismatch, "decider tables do not match L x |Y|");
  for (std::uint32_t m : partition_) {
    require(m < message_count_, ErrorCode::InvalidArgument,
            "partition maps outside [0, L)");
  }
  for (auto& b : deciders_) b = b ? 1 : 0;
}

int OneWayProtocol::cost_bits() const noexcept {
  return message_count_ <= 1 ? 0 : std::bit_width(message_count_ - 1);
}

bool OneWayProtocol::within_budget(int k) const noexcept {
  return k >= 0 && (k >= 32 || message_count_ <= (std::uint64_t{1} << k));
}

bool OneWayProtocol::evaluate(const BitString& x, const BitString& y) const {
  require(x.size() == domain_.x_bits && y.size() == domain_.y_bits,
          ErrorCode::DomainMismatch, "input lengths do not match protocol domain");
  return evaluate(x.value(), y.value());
}

RestrictedFunction OneWayProtocol::decider(std::uint32_t message) const {
  require(message < message_count_, ErrorCode::InvalidArgument,
          "message index out of range");
  RestrictedFunction r;
  r.y_bits = domain_.y_bits;
  const auto begin = deciders_.begin() +
                     static_cast<std::ptrdiff_t>(message * domain_.y_size());
  r.values.assign(begin, begin + static_cast<std::ptrdiff_t>(domain_.y_size()));
  return r;
}

// ---------------------------------------------------------------------------
// BoolFunction

void BoolFunction::check_table_size(const Domain& domain) {
  require(domain.x_bits >= 0 && domain.y_bits >= 0, ErrorCode::InvalidArgument,
          "negative domain size");
  require(domain.x_bits <= kMaxTableBitsPerSide &&
              domain.y_bits <= kMaxTableBitsPerSide,
          ErrorCode::TooLarge, "truth tables are capped at 14 bits per side");
}

BoolFunction BoolFunction::table(Domain domain, std::vector<std::uint8_t> values) {
  check_table_size(domain);
  require(values.size() == domain.size(), ErrorCode::DomainMismatch,
          "truth table size does not match domain");
  for (auto& v : values) v = v ? 1 : 0;
  BoolFunction f(Kind::Table, domain);
  f.table_ = std::make_shared<const std::vector<std::uint8_t>>(std::move(values));
  return f;
}

BoolFunction BoolFunction::parity(int n, std::uint64_t mask) {
  require(n >= 0 && n <= 63, ErrorCode::InvalidArgument,
          "parity dimension must be in [0, 63]");
  require((mask >> n) == 0, ErrorCode::InvalidArgument,
          "parity mask has bits beyond n");
  BoolFunction f(Kind::Parity, Domain::hypercube(n));
  f.mask_ = mask;
  return f;
}

BoolFunction BoolFunction::constant(Domain domain, bool value) {
  BoolFunction f(Kind::Constant, domain);
  f.constant_ = value;
  return f;
}

BoolFunction BoolFunction::from_protocol(std::shared_ptr<const OneWayProtocol> protocol) {
  require(protocol != nullptr, ErrorCode::InvalidArgument, "null protocol");
  BoolFunction f(Kind::Protocol, protocol->domain());
  f.protocol_ = std::move(protocol);
  return f;
}

bool BoolFunction::evaluate(const BitString& x, const BitString& y) const {
  require(x.size() == domain_.x_bits && y.size() == domain_.y_bits,
          ErrorCode::DomainMismatch, "input lengths do not match function domain");
  return (*this)(x.value(), y.value());
}

BoolFunction BoolFunction::tabulated() const {
  if (kind_ == Kind::Table) return *this;
  return tabulate(domain_, [this](std::uint64_t x, std::uint64_t y) {
    return (*this)(x, y);
  });
}

BoolFunction BoolFunction::complement() const {
  if (kind_ == Kind::Constant) return constant(domain_, !constant_);
  return tabulate(domain_, [this](std::uint64_t x, std::uint64_t y) {
    return !(*this)(x, y);
  });
}

const std::vector<std::uint8_t>& BoolFunction::table_values() const {
  require(kind_ == Kind::Table, ErrorCode::InvalidArgument,
          "function is not tabulated");
  return *table_;
}

// ---------------------------------------------------------------------------
// Operations

RestrictedFunction restrict(const BoolFunction& f, std::uint64_t x) {
  const Domain& d = f.domain();
  require(x < d.x_size(), ErrorCode::DomainMismatch, "x outside function domain");
  BoolFunction::check_table_size(Domain{0, d.y_bits});
  RestrictedFunction r;
  r.y_bits = d.y_bits;
  r.values.resize(d.y_size());
  for (std::uint64_t y = 0; y < d.y_size(); ++y) r.values[y] = f(x, y) ? 1 : 0;
  return r;
}

RestrictedFunction restrict(const BoolFunction& f, const BitString& x) {
  require(x.size() == f.domain().x_bits, ErrorCode::DomainMismatch,
          "x length does not match function domain");
  return restrict(f, x.value());
}

namespace {

template <class Fn>
double weighted_disagreement(const JointDistribution& mu, Fn&& differs) {
  const Domain& d = mu.domain();
  require(d.x_bits + d.y_bits <= 2 * kMaxTableBitsPerSide, ErrorCode::TooLarge,
          "exact distance needs |X x Y| <= 2^28");
  double total = 0.0;
  for (std::uint64_t x = 0; x < d.x_size(); ++x) {
    for (std::uint64_t y = 0; y < d.y_size(); ++y) {
      if (differs(x, y)) total += mu.mass(x, y);
    }
  }
  return total;
}

}  // namespace

double distance_mu(const BoolFunction& f, const BoolFunction& g,
                   const JointDistribution& mu) {
  require_same(f.domain(), g.domain());
  require_same(f.domain(), mu.domain());
  return weighted_disagreement(mu, [&](std::uint64_t x, std::uint64_t y) {
    return f(x, y) != g(x, y);
  });
}

double protocol_error(const OneWayProtocol& protocol, const BoolFunction& g,
                      const JointDistribution& mu) {
  require_same(protocol.domain(), g.domain());
  require_same(g.domain(), mu.domain());
  return weighted_disagreement(mu, [&](std::uint64_t x, std::uint64_t y) {
    return protocol.evaluate(x, y) != g(x, y);
  });
}

}  // namespace uccsim
