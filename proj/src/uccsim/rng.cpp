#include "uccsim/rng.hpp"

namespace uccsim {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Rejection on the top multiple of bound keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t w;
  do {
    w = engine_();
  } while (w >= limit);
  return w % bound;
}

}  // namespace uccsim
