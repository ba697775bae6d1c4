#pragma once

#include <stdexcept>

#include "oblab/rng.hpp"

namespace oblab {

// Scale parameter b of a Laplace(0, b) law. In the algorithms b is always
// 1/epsilon for some (possibly derived) privacy parameter epsilon.
struct LaplaceScale {
  double b;

  explicit LaplaceScale(double scale) : b(scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("LaplaceScale: b must be > 0");
  }
};

// Inverse-CDF transform of a single uniform draw u in (0,1).
// Satisfies laplace_from_uniform(s, 1-u) == -laplace_from_uniform(s, u)
// and maps u = 0.5 to exactly 0.
double laplace_from_uniform(LaplaceScale s, double u);

// One Laplace(0, b) sample; consumes exactly one uniform from the stream.
// Tail law: Pr[X <= -t*b] = Pr[X >= t*b] = exp(-t)/2 for t > 0.
double laplace(LaplaceScale s, Rng& rng);

// Laplace(0, b) clamped to [-bound, +bound]. The clamp mass at each end
// equals the one-sided tail exp(-bound/b)/2.
double truncated_laplace(LaplaceScale s, double bound, Rng& rng);

}  // namespace oblab
