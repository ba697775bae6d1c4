#pragma once

#include <cstdint>
#include <functional>

#include "oblab/rng.hpp"
#include "oblab/trace.hpp"

namespace oblab {

struct LocateParams {
  std::size_t n;
  double epsilon;
  double delta;
  double eps_prime;  // epsilon / (2 * log2(2/delta))
  double threshold;  // T = (1/eps_prime) * ln(log2(n) / delta)

  LocateParams(std::size_t n_, double epsilon_, double delta_);
};

struct LocateResult {
  bool found;                 // always equals the true existence bit
  bool halted_at_checkpoint;  // early positive exit before the fallback scan
  std::uint64_t checkpoint;   // the power-of-two i at which it halted, else 0
  std::size_t probes;
};

// Existence check for `pred` over the traced dataset. Samples uniformly with
// replacement for n/2 rounds, comparing the hit count to a freshly noised
// threshold at every power-of-two round; falls back to a full in-order scan.
// Predicate evaluation happens in private memory and emits no events.
LocateResult do_locate(TracedStore<double>& store, const std::function<bool(double)>& pred,
                       const LocateParams& params, Rng& rng);

// Number of probes (read events) in a do_locate trace. Rejects traces that
// cannot have come from do_locate.
std::size_t locate_probe_count(const AccessTrace& trace);

}  // namespace oblab
