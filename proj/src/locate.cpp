#include "oblab/locate.hpp"

#include <cmath>
#include <stdexcept>

#include "oblab/noise.hpp"

namespace oblab {

LocateParams::LocateParams(std::size_t n_, double epsilon_, double delta_)
    : n(n_), epsilon(epsilon_), delta(delta_) {
  if (n < 4) throw std::invalid_argument("LocateParams: n must be >= 4");
  if (!(epsilon > 0.0)) throw std::invalid_argument("LocateParams: epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("LocateParams: delta in (0,1)");
  eps_prime = epsilon / (2.0 * std::log2(2.0 / delta));
  threshold = std::log(std::log2(static_cast<double>(n)) / delta) / eps_prime;
}

LocateResult do_locate(TracedStore<double>& store, const std::function<bool(double)>& pred,
                       const LocateParams& params, Rng& rng) {
  const std::size_t n = store.capacity();
  if (n != params.n) throw std::invalid_argument("do_locate: params sized for a different dataset");

  const LaplaceScale scale(1.0 / params.eps_prime);
  std::size_t hits = 0;
  for (std::size_t i = 1; i <= n / 2; ++i) {
    const std::size_t j = rng.uniform_index(n);
    if (pred(store.read(j))) ++hits;
    if ((i & (i - 1)) == 0) {  // i is a power of two
      const double noisy = params.threshold + laplace(scale, rng);
      if (static_cast<double>(hits) > std::max(noisy, 0.0))
        return {true, true, static_cast<std::uint64_t>(i), i};
    }
  }

  // Fallback: exhaustive scan in address order; trace is input-independent.
  bool found = false;
  for (std::size_t a = 0; a < n; ++a)
    if (pred(store.read(a))) found = true;
  return {found, false, 0, n / 2 + n};
}

std::size_t locate_probe_count(const AccessTrace& trace) {
  for (const auto& e : trace.events())
    if (e.kind != AccessKind::Read)
      throw std::invalid_argument("locate_probe_count: trace contains writes, not a Locate trace");
  return trace.size();
}

}  // namespace oblab
