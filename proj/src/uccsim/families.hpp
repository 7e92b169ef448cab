#pragma once

#include <cstdint>
#include <memory>
#include <utility>

#include "uccsim/bits.hpp"
#include "uccsim/function.hpp"
#include "uccsim/rng.hpp"

namespace uccsim {

/// f_S(x, y) = XOR over i in S of (x_i xor y_i).
bool eval_parity(const BitString& s, const BitString& x, const BitString& y);

/// One-bit protocol for f_S: Alice sends <S, x>, Bob outputs it xor <S, y>.
std::shared_ptr<const OneWayProtocol> parity_protocol(int n, std::uint64_t mask);

/// Exact delta_{mu_p}(f_S, f_T) = (1 - (1 - 2p)^|S xor T|) / 2.
double parity_distance_exact(const BitString& s, const BitString& t, double p);
double parity_distance_exact(int symmetric_difference, double p);

/// A pair (f_S, f_T) with closeness parameter q.
struct FamilyPair {
  BitString s;
  BitString t;
  double q = 0.0;

  int symmetric_difference() const { return (s ^ t).weight(); }
  /// |S xor T| <= q n.
  bool in_family() const;
};

/// S uniform, T a (q/2)-noisy copy of S.
FamilyPair sample_Dq(int n, double q, Rng& rng);

struct NuSample {
  BitString s, x;
  BitString t, y;
};

/// (S, T) ~ D_q and, independently, (x, y) ~ mu_p.
NuSample sample_nu(int n, double p, double q, Rng& rng);

/// F((S, x), (T, y)) = f_T(x xor y); S is ignored.
bool eval_F(const BitString& s, const BitString& x, const BitString& t,
            const BitString& y);

}  // namespace uccsim
