#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "oblab/rng.hpp"
#include "oblab/trace.hpp"

namespace oblab {

// Derived parameters of the noisy chunked search over n sorted records.
// Division-by-powers-of-two counts (the per-level budget split) use log2;
// the noise half-width uses the natural log so the Laplace tail bound
// Pr[|Lap(1/e')| >= t/e'] = exp(-t) applies as written.
struct SearchParams {
  std::size_t n;
  double epsilon;
  double beta;
  double eps_prime;   // epsilon / (2.5 * log2 n)
  double beta_prime;  // beta / (2.5 * log2 n)
  std::size_t k;      // ceil(4 * ln(1/beta_prime) / eps_prime), chunk count
  double half_width;  // w = ln(1/beta_prime) / eps_prime, in chunks
  bool theory_regime; // beta < 1/n and epsilon < (log2 n)^2

  SearchParams(std::size_t n_, double epsilon_, double beta_);
};

struct SearchOutcome {
  std::size_t index;       // rank boundary in [0, n]: max i with x_i <= a, else 0
  std::size_t iterations;  // executions of the narrowing loop
  std::size_t probes;      // traced reads
  bool noise_within_bound; // every |draw| <= w this run (instrumentation)
  // Candidate window after each narrowing step, starting from (0, n).
  std::vector<std::pair<std::size_t, std::size_t>> windows;
};

// Noisy binary search: probes k evenly spaced records per pass, shifts the
// candidate window by a Laplace-noised chunk index, and finishes with a scan
// of the surviving window. Logical positions are 1-based; position p lives at
// store address offset + p - 1. Returns the true boundary with probability
// >= 1 - beta; with truncated_noise the window provably never loses the
// answer and the result is always exact.
SearchOutcome do_search(TracedStore<double>& store, std::size_t offset, std::size_t length,
                        double a, const SearchParams& params, Rng& rng,
                        bool truncated_noise = false);

SearchOutcome do_search(TracedStore<double>& store, double a, const SearchParams& params, Rng& rng,
                        bool truncated_noise = false);

inline SearchOutcome search_exact_variant(TracedStore<double>& store, double a,
                                          const SearchParams& params, Rng& rng) {
  return do_search(store, a, params, rng, /*truncated_noise=*/true);
}

struct PrefixSumOutcome {
  std::size_t index;     // boundary found by the search
  double sum;            // sum of records 1..index
  std::size_t probes;    // search probes + padded scan reads
  std::size_t padded_to; // number of records read by the summing scan
  bool clamped;          // padding landed outside [index, n] and was clamped
  SearchOutcome search;
};

// Sum of all records <= a: runs the search, then scans a noise-padded prefix
// of ceil(index + Lap(1/pad_epsilon) + ln(1/pad_delta)/pad_epsilon) records,
// accumulating only the true prefix. Padding noise has its own budget knobs,
// separate from the search epsilon.
PrefixSumOutcome do_prefix_sum(TracedStore<double>& store, double a, double pad_epsilon,
                               double pad_delta, const SearchParams& params, Rng& rng,
                               bool truncated_noise = false);

// Independent oracle: max position p with x_p <= a by plain scan (untraced).
std::size_t exact_rank(const TracedStore<double>& store, std::size_t offset, std::size_t length,
                       double a);
std::size_t exact_rank(const TracedStore<double>& store, double a);
double exact_prefix_sum(const TracedStore<double>& store, double a);

}  // namespace oblab
