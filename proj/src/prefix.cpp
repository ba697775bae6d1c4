#include "oblab/prefix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "oblab/noise.hpp"

namespace oblab {

SearchParams::SearchParams(std::size_t n_, double epsilon_, double beta_)
    : n(n_), epsilon(epsilon_), beta(beta_) {
  if (n < 1) throw std::invalid_argument("SearchParams: n must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("SearchParams: epsilon must be > 0");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("SearchParams: beta in (0,1)");
  const double levels = 2.5 * std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  eps_prime = epsilon / levels;
  beta_prime = beta / levels;
  half_width = std::log(1.0 / beta_prime) / eps_prime;
  k = static_cast<std::size_t>(std::ceil(4.0 * half_width));
  if (!(half_width > 1.0))
    throw std::invalid_argument("SearchParams: noise half-width must exceed one chunk");
  const double log2n = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  theory_regime = beta < 1.0 / static_cast<double>(n) && epsilon < log2n * log2n;
}

namespace {

std::int64_t floor_to_i64(double x) { return static_cast<std::int64_t>(std::floor(x)); }

}  // namespace

SearchOutcome do_search(TracedStore<double>& store, std::size_t offset, std::size_t length,
                        double a, const SearchParams& params, Rng& rng, bool truncated_noise) {
  if (offset + length > store.capacity())
    throw std::invalid_argument("do_search: window exceeds store capacity");
  if (params.n != length) throw std::invalid_argument("do_search: params sized for a different length");

  const auto n = static_cast<std::int64_t>(length);
  const double w = params.half_width;
  const auto k = static_cast<std::int64_t>(params.k);
  const LaplaceScale scale(1.0 / params.eps_prime);

  SearchOutcome out{};
  out.noise_within_bound = true;
  out.windows.emplace_back(0, length);

  std::int64_t lo = 0, hi = n;  // candidate window over positions, answer in [lo, hi]
  while (hi - lo > k) {
    // k chunks of real width (hi-lo)/k; probe the chunk endpoints
    // q_i = lo + floor(i*(hi-lo)/k), so the k-th probe lands on hi exactly
    // and no remainder cells escape the window update below.
    const std::int64_t span = hi - lo;
    std::int64_t chunk_index = 0;  // max i in [1,k] with x_{q_i} <= a
    for (std::int64_t i = 1; i <= k; ++i) {
      const std::int64_t q = lo + (i * span) / k;
      const double y = store.read(offset + static_cast<std::size_t>(q) - 1);
      if (y <= a) chunk_index = i;
    }
    out.probes += static_cast<std::size_t>(k);

    const double noise =
        truncated_noise ? truncated_laplace(scale, w, rng) : laplace(scale, rng);
    if (std::abs(noise) > w) out.noise_within_bound = false;

    // Both updates use the pre-update lo, and the window depends on the
    // probes only through chunk_index + noise.
    const double center = static_cast<double>(chunk_index) + noise;
    const double width = static_cast<double>(span) / static_cast<double>(k);
    std::int64_t new_lo = lo + floor_to_i64((center - w) * width);
    std::int64_t new_hi = lo + floor_to_i64((center + w + 1.0) * width);
    lo = std::clamp<std::int64_t>(new_lo, 0, n);
    hi = std::clamp<std::int64_t>(new_hi, 0, n);
    ++out.iterations;
    out.windows.emplace_back(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi));
  }

  // Scan positions lo+1..hi; if none qualifies the boundary is lo itself.
  std::size_t result = static_cast<std::size_t>(lo);
  double prev = -std::numeric_limits<double>::infinity();
  for (std::int64_t p = lo + 1; p <= hi; ++p) {
    const double y = store.read(offset + static_cast<std::size_t>(p) - 1);
    if (y < prev) throw std::runtime_error("do_search: dataset is not sorted");
    prev = y;
    if (y <= a) result = static_cast<std::size_t>(p);
  }
  out.probes += static_cast<std::size_t>(hi - lo);
  out.index = result;
  return out;
}

SearchOutcome do_search(TracedStore<double>& store, double a, const SearchParams& params, Rng& rng,
                        bool truncated_noise) {
  return do_search(store, 0, store.capacity(), a, params, rng, truncated_noise);
}

PrefixSumOutcome do_prefix_sum(TracedStore<double>& store, double a, double pad_epsilon,
                               double pad_delta, const SearchParams& params, Rng& rng,
                               bool truncated_noise) {
  if (!(pad_epsilon > 0.0)) throw std::invalid_argument("do_prefix_sum: pad_epsilon must be > 0");
  if (!(pad_delta > 0.0 && pad_delta < 1.0))
    throw std::invalid_argument("do_prefix_sum: pad_delta in (0,1)");

  PrefixSumOutcome out{};
  out.search = do_search(store, a, params, rng, truncated_noise);
  out.index = out.search.index;

  const auto n = static_cast<std::int64_t>(store.capacity());
  const double shift = std::log(1.0 / pad_delta) / pad_epsilon;
  const double padded = std::ceil(static_cast<double>(out.index) +
                                  laplace(LaplaceScale(1.0 / pad_epsilon), rng) + shift);
  std::int64_t scan_to = padded >= static_cast<double>(n) ? n : floor_to_i64(padded);
  out.clamped = scan_to < static_cast<std::int64_t>(out.index) || padded > static_cast<double>(n);
  scan_to = std::clamp<std::int64_t>(scan_to, static_cast<std::int64_t>(out.index), n);

  double sum = 0.0;
  for (std::int64_t p = 1; p <= scan_to; ++p) {
    const double y = store.read(static_cast<std::size_t>(p) - 1);
    if (p <= static_cast<std::int64_t>(out.index)) sum += y;
  }
  out.sum = sum;
  out.padded_to = static_cast<std::size_t>(scan_to);
  out.probes = out.search.probes + out.padded_to;
  return out;
}

std::size_t exact_rank(const TracedStore<double>& store, std::size_t offset, std::size_t length,
                       double a) {
  std::size_t best = 0;
  for (std::size_t p = 1; p <= length; ++p)
    if (store.peek(offset + p - 1) <= a) best = p;
  return best;
}

std::size_t exact_rank(const TracedStore<double>& store, double a) {
  return exact_rank(store, 0, store.capacity(), a);
}

double exact_prefix_sum(const TracedStore<double>& store, double a) {
  const std::size_t r = exact_rank(store, a);
  double sum = 0.0;
  for (std::size_t p = 0; p < r; ++p) sum += store.peek(p);
  return sum;
}

}  // namespace oblab
