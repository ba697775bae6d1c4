#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oblab/locate.hpp"

using namespace oblab;

namespace {

const auto is_one = [](double v) { return v == 1.0; };

std::vector<double> dataset_with_ones(std::size_t n, std::size_t ones, Rng& rng) {
  std::vector<double> x(n, 0.0);
  const auto pos = rng.sample_distinct(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(ones));
  for (auto p : pos) x[p] = 1.0;
  return x;
}

}  // namespace

TEST_CASE("locate parameter formulas") {
  const LocateParams p(64, 1.0, 0.01);
  CHECK(p.eps_prime == doctest::Approx(0.06541201032390638));
  CHECK(p.threshold == doctest::Approx(97.79442068115488));
  CHECK_THROWS_AS(LocateParams(2, 1.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(LocateParams(64, -1.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(LocateParams(64, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("locate output always equals the existence bit") {
  const std::size_t n = 64;
  const LocateParams params(n, 1.0, 0.01);
  Rng gen(5);
  for (std::size_t ones : {0u, 1u, 16u, 64u}) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto data = dataset_with_ones(n, ones, gen);
      TracedStore<double> store(data);
      Rng rng = Rng::substream(101, seed * 7 + ones);
      const auto res = do_locate(store, is_one, params, rng);
      CHECK(res.found == (ones > 0));
    }
  }
}

TEST_CASE("empty predicate runs probe exactly n/2 + n cells") {
  const std::size_t n = 64;
  const LocateParams params(n, 1.0, 0.01);
  TracedStore<double> store(std::vector<double>(n, 0.0));
  Rng rng(3);
  const auto res = do_locate(store, is_one, params, rng);
  CHECK_FALSE(res.found);
  CHECK_FALSE(res.halted_at_checkpoint);
  CHECK(res.probes == n / 2 + n);
  CHECK(locate_probe_count(store.trace()) == n / 2 + n);
  // Fallback scan is the last n reads in address order.
  for (std::size_t a = 0; a < n; ++a)
    CHECK(store.trace().events()[n / 2 + a].address == a);
}

TEST_CASE("early halt probes exactly the checkpoint count") {
  const std::size_t n = 256;
  const LocateParams params(n, 4.0, 0.2);  // generous budget so halting is common
  std::size_t halted = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    TracedStore<double> store(std::vector<double>(n, 1.0));
    Rng rng = Rng::substream(55, seed);
    const auto res = do_locate(store, is_one, params, rng);
    CHECK(res.found);
    if (res.halted_at_checkpoint) {
      ++halted;
      CHECK(res.probes == res.checkpoint);
      CHECK((res.checkpoint & (res.checkpoint - 1)) == 0);
      CHECK(locate_probe_count(store.trace()) == res.probes);
    }
  }
  CHECK(halted > 50);
}

TEST_CASE("probe count rejects traces with writes") {
  AccessTrace t;
  t.append(AccessKind::Read, 0);
  t.append(AccessKind::Write, 1);
  CHECK_THROWS_AS(locate_probe_count(t), std::invalid_argument);
}

TEST_CASE("median probes track T/p at moderate scale") {
  const std::size_t n = 4096;
  const double p = 0.25;
  const LocateParams params(n, 1.0, 0.01);
  Rng gen(77);
  std::vector<std::size_t> probes;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto data = dataset_with_ones(n, static_cast<std::size_t>(p * n), gen);
    TracedStore<double> store(data);
    Rng rng = Rng::substream(202, seed);
    probes.push_back(do_locate(store, is_one, params, rng).probes);
  }
  std::nth_element(probes.begin(), probes.begin() + probes.size() / 2, probes.end());
  const double budget = 8.0 * params.threshold / p;
  double cap = 1.0;
  while (cap < budget) cap *= 2.0;
  CHECK(static_cast<double>(probes[probes.size() / 2]) <= cap);
}

TEST_CASE("no index is sampled implausibly often") {
  // With n/2 uniform draws over [n], seeing any index more than
  // 2*log2(2/delta) times should happen in at most a delta/2 fraction of
  // runs. Sampled addresses are read off the trace of full (no-halt) runs.
  const std::size_t n = 1024;
  const double delta = 0.01;
  const LocateParams params(n, 1.0, delta);
  const auto cap = static_cast<std::size_t>(2.0 * std::log2(2.0 / delta));
  const std::size_t runs = 2000;
  std::size_t bad_runs = 0;
  std::vector<std::size_t> freq(n);
  for (std::uint64_t seed = 0; seed < runs; ++seed) {
    TracedStore<double> store(std::vector<double>(n, 0.0));
    Rng rng = Rng::substream(303, seed);
    do_locate(store, is_one, params, rng);
    std::fill(freq.begin(), freq.end(), 0);
    bool bad = false;
    for (std::size_t i = 0; i < n / 2; ++i) {
      const auto addr = store.trace().events()[i].address;
      if (++freq[addr] > cap) bad = true;
    }
    if (bad) ++bad_runs;
  }
  const double bound = delta / 2.0 + 3.0 * std::sqrt(delta / 2.0 * (1 - delta / 2.0) / runs);
  CHECK(static_cast<double>(bad_runs) / static_cast<double>(runs) <= bound);
}
