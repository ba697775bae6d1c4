#include <cmath>
#include <vector>

#include "doctest.h"
#include "oblab/prefix.hpp"

using namespace oblab;

namespace {

std::vector<double> sorted_uniform(std::size_t n, Rng& rng) {
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform_unit() * 1000.0;
  std::sort(x.begin(), x.end());
  return x;
}

void check_shrink(const SearchOutcome& out) {
  for (std::size_t s = 1; s < out.windows.size(); ++s) {
    const double before =
        static_cast<double>(out.windows[s - 1].second - out.windows[s - 1].first);
    const double after = static_cast<double>(out.windows[s].second - out.windows[s].first);
    CHECK(after <= 0.75 * before);
  }
}

}  // namespace

TEST_CASE("search parameter formulas") {
  const SearchParams p(4096, 2.0, 0.01);
  CHECK(p.eps_prime == doctest::Approx(2.0 / 30.0));
  CHECK(p.beta_prime == doctest::Approx(0.01 / 30.0));
  CHECK(p.half_width == doctest::Approx(120.09551351475369));
  CHECK(p.k == 481);
  CHECK_FALSE(p.theory_regime);  // beta = 0.01 > 1/4096
  CHECK(SearchParams(4096, 2.0, 1e-4).theory_regime);
  CHECK_THROWS_AS(SearchParams(16, 0.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(SearchParams(16, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("boundary queries") {
  const std::size_t n = 128;
  std::vector<double> data(n);
  for (std::size_t i = 0; i < n; ++i) data[i] = static_cast<double>(i + 1);
  const SearchParams params(n, 4.0, 0.01);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng r1 = Rng::substream(1, seed), r2 = Rng::substream(2, seed);
    TracedStore<double> s1(data), s2(data);
    CHECK(search_exact_variant(s1, 0.5, params, r1).index == 0);
    CHECK(search_exact_variant(s2, 4096.0, params, r2).index == n);
  }
}

TEST_CASE("search matches the scan oracle within beta") {
  const std::size_t n = 4096;
  const SearchParams params(n, 2.0, 0.01);
  Rng gen(12);
  std::size_t mismatches = 0;
  const std::size_t trials = 200;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto data = sorted_uniform(n, gen);
    const double a = gen.uniform_unit() * 1100.0 - 50.0;
    TracedStore<double> store(data);
    Rng rng = Rng::substream(404, t);
    const auto out = do_search(store, a, params, rng);

    CHECK(out.iterations <= 30);
    CHECK(out.probes <= 31 * params.k);
    check_shrink(out);

    const std::size_t truth = exact_rank(store, a);
    if (out.index != truth) ++mismatches;
    if (out.noise_within_bound) {
      // Conditional correctness: tame noise keeps the answer in the window.
      CHECK(out.index == truth);
      for (const auto& [lo, hi] : out.windows) {
        CHECK(lo <= truth);
        CHECK(truth <= hi);
      }
    }
  }
  const double bound = 0.01 + 3.0 * std::sqrt(0.01 * 0.99 / static_cast<double>(trials));
  CHECK(static_cast<double>(mismatches) / static_cast<double>(trials) <= bound);
}

TEST_CASE("exact variant never errs across a full sweep") {
  const std::size_t n = 256;
  std::vector<double> data(n);
  for (std::size_t i = 0; i < n; ++i) data[i] = static_cast<double>(2 * (i + 1));
  const SearchParams params(n, 4.0, 0.003);
  REQUIRE(params.k < n);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    for (std::size_t gap = 0; gap <= n; ++gap) {
      const double a = 2.0 * static_cast<double>(gap) + 1.0;  // between ranks gap and gap+1
      TracedStore<double> store(data);
      Rng rng = Rng::substream(505 + seed, gap);
      const auto out = search_exact_variant(store, a, params, rng);
      CHECK(out.index == gap);
      CHECK(out.noise_within_bound);
    }
  }
}

TEST_CASE("unsorted data is detected during the scan") {
  std::vector<double> bad{1.0, 5.0, 3.0, 7.0};
  const SearchParams params(4, 1.0, 0.2);  // k >= n, pure scan
  TracedStore<double> store(bad);
  Rng rng(1);
  CHECK_THROWS_AS(do_search(store, 4.0, params, rng), std::runtime_error);
}

TEST_CASE("prefix sum on a toy array") {
  const std::vector<double> data{1.0, 2.0, 3.0, 4.0};
  const SearchParams params(4, 1.0, 0.2);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    TracedStore<double> store(data);
    Rng rng = Rng::substream(606, seed);
    const auto out = do_prefix_sum(store, 2.5, 1.0, 0.05, params, rng, true);
    CHECK(out.index == 2);
    CHECK(out.sum == 3.0);
    CHECK(out.padded_to >= out.index);
    CHECK(out.padded_to <= 4);
    CHECK(out.probes == out.search.probes + out.padded_to);
  }
}

TEST_CASE("prefix sum equals the oracle whenever the search was right") {
  const std::size_t n = 512;
  const SearchParams params(n, 4.0, 0.01);
  Rng gen(21);
  for (std::uint64_t t = 0; t < 60; ++t) {
    auto data = sorted_uniform(n, gen);
    const double a = gen.uniform_unit() * 1000.0;
    TracedStore<double> store(data);
    Rng rng = Rng::substream(707, t);
    const auto out = do_prefix_sum(store, a, 1.0, 0.01, params, rng);
    if (out.index == exact_rank(store, a))
      CHECK(out.sum == doctest::Approx(exact_prefix_sum(store, a)));
  }
}

TEST_CASE("prefix padding clamps at the dataset end") {
  const std::size_t n = 32;
  std::vector<double> data(n);
  for (std::size_t i = 0; i < n; ++i) data[i] = static_cast<double>(i);
  const SearchParams params(n, 2.0, 0.1);
  TracedStore<double> store(data);
  Rng rng(9);
  const auto out = do_prefix_sum(store, 1e9, 0.5, 0.01, params, rng, true);  // rank n
  CHECK(out.index == n);
  CHECK(out.padded_to == n);
  CHECK(out.clamped);
}

TEST_CASE("suffix search works through the offset view") {
  const std::size_t n = 64, offset = 16, len = n - offset;
  std::vector<double> data(n);
  for (std::size_t i = 0; i < n; ++i) data[i] = static_cast<double>(i + 1);
  const SearchParams params(len, 4.0, 0.05);
  TracedStore<double> store(data);
  Rng rng(13);
  const auto out = do_search(store, offset, len, 40.5, params, rng, true);
  CHECK(out.index == exact_rank(store, offset, len, 40.5));
  CHECK(out.index == 24);  // values 17..40 qualify within the suffix
  for (const auto& e : store.trace().events()) CHECK(e.address >= offset);
}

TEST_CASE("params sized for a different dataset are rejected") {
  TracedStore<double> store(std::vector<double>(10, 0.0));
  const SearchParams params(12, 1.0, 0.05);
  Rng rng(1);
  CHECK_THROWS_AS(do_search(store, 1.0, params, rng), std::invalid_argument);
}
