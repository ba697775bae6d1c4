#include "oblab/noise.hpp"

#include <algorithm>
#include <cmath>

namespace oblab {

double laplace_from_uniform(LaplaceScale s, double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("laplace_from_uniform: u must be in (0,1)");
  if (u <= 0.5) return s.b * std::log(2.0 * u);
  return -s.b * std::log(2.0 * (1.0 - u));
}

double laplace(LaplaceScale s, Rng& rng) { return laplace_from_uniform(s, rng.uniform_unit()); }

double truncated_laplace(LaplaceScale s, double bound, Rng& rng) {
  if (!(bound > 0.0)) throw std::invalid_argument("truncated_laplace: bound must be > 0");
  return std::clamp(laplace(s, rng), -bound, bound);
}

}  // namespace oblab
