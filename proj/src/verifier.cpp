#include "oblab/verifier.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/binomial.hpp>

#include "oblab/dense_tester.hpp"
#include "oblab/locate.hpp"
#include "oblab/prefix.hpp"

namespace oblab {

bool is_dataset_entry_neighbor(const std::vector<double>& x0, const std::vector<double>& x1) {
  if (x0.size() != x1.size()) return false;
  std::size_t diff = 0;
  for (std::size_t i = 0; i < x0.size(); ++i)
    if (x0[i] != x1[i]) ++diff;
  return diff == 1;
}

bool is_sorted_multiset_neighbor(const std::vector<double>& x0, const std::vector<double>& x1) {
  if (x0.size() != x1.size() || x0.empty()) return false;
  if (!std::is_sorted(x0.begin(), x0.end()) || !std::is_sorted(x1.begin(), x1.end())) return false;
  // Multiset intersection size must be at least n-1.
  std::size_t shared = 0, i = 0, j = 0;
  while (i < x0.size() && j < x1.size()) {
    if (x0[i] == x1[j]) ++shared, ++i, ++j;
    else if (x0[i] < x1[j]) ++i;
    else ++j;
  }
  return shared + 1 >= x0.size();
}

bool is_graph_node_neighbor(const DenseGraph& g0, const DenseGraph& g1) {
  const std::size_t n = g0.vertex_count();
  if (n != g1.vertex_count()) return false;
  std::vector<std::pair<std::size_t, std::size_t>> diffs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (g0.at(u, v) != g1.at(u, v)) diffs.emplace_back(u, v);
  if (diffs.empty()) return false;
  // All differing pairs must share one vertex.
  for (std::size_t w : {diffs[0].first, diffs[0].second}) {
    bool all = true;
    for (const auto& [u, v] : diffs)
      if (u != w && v != w) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cp_lower(std::uint64_t successes, std::uint64_t trials) {
  if (successes == 0) return 0.0;
  return boost::math::binomial_distribution<double>::find_lower_bound_on_p(
      static_cast<double>(trials), static_cast<double>(successes), 0.025);
}

double cp_upper(std::uint64_t successes, std::uint64_t trials) {
  if (successes == trials) return 1.0;
  return boost::math::binomial_distribution<double>::find_upper_bound_on_p(
      static_cast<double>(trials), static_cast<double>(successes), 0.025);
}

struct CandidateEval {
  double lo = -kInf;
  double point = -kInf;
  double hi = -kInf;
};

// One direction of the ratio test for an event set with `num` hits on the
// numerator input and `den` hits on the denominator input.
CandidateEval evaluate_set(std::uint64_t num, std::uint64_t den, std::uint64_t trials,
                           double delta) {
  CandidateEval e;
  const double n_trials = static_cast<double>(trials);
  const double p_num = static_cast<double>(num) / n_trials;
  const double p_den = static_cast<double>(den) / n_trials;

  if (p_num - delta > 0.0) e.point = p_den > 0.0 ? std::log((p_num - delta) / p_den) : kInf;

  const double lo_num = cp_lower(num, trials) - delta;
  if (lo_num > 0.0) e.lo = std::log(lo_num / cp_upper(den, trials));

  const double hi_num = cp_upper(num, trials) - delta;
  if (hi_num > 0.0) {
    const double den_lo = cp_lower(den, trials);
    e.hi = den_lo > 0.0 ? std::log(hi_num / den_lo) : kInf;
  }
  return e;
}

struct TokenCounts {
  std::uint64_t c0 = 0;
  std::uint64_t c1 = 0;
};

using CountMap = std::map<TokenSeq, TokenCounts>;

void collect(const TraceSampler& sampler, int which, std::uint64_t base_seed, std::size_t trials,
             unsigned threads, CountMap& into) {
  threads = std::max(1u, threads);
  std::vector<CountMap> partial(threads);
  std::vector<std::thread> pool;
  const std::size_t chunk = (trials + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(trials, begin + chunk);
      for (std::size_t t = begin; t < end; ++t) {
        Rng r = Rng::substream(base_seed, t);
        TokenSeq tok = sampler(r);
        auto& c = partial[w][std::move(tok)];
        ++(which == 0 ? c.c0 : c.c1);
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& p : partial)
    for (const auto& [tok, cnt] : p) {
      auto& c = into[tok];
      c.c0 += cnt.c0;
      c.c1 += cnt.c1;
    }
}

}  // namespace

EpsilonEstimate estimate_privacy(const TraceSampler& sample0, const TraceSampler& sample1,
                                 double delta, std::size_t trials, Rng& rng,
                                 const std::string& event_family, unsigned threads) {
  if (trials < 1000) throw std::invalid_argument("estimate_privacy: need at least 1000 trials");
  if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("estimate_privacy: delta in [0,1)");

  CountMap counts;
  collect(sample0, 0, rng.next_u64(), trials, threads, counts);
  collect(sample1, 1, rng.next_u64(), trials, threads, counts);

  std::vector<TokenCounts> entries;
  entries.reserve(counts.size());
  for (const auto& [tok, c] : counts) entries.push_back(c);

  CandidateEval best;
  auto consider = [&best](const CandidateEval& e) {
    if (e.lo > best.lo || (e.lo == best.lo && e.point > best.point)) best = e;
  };

  for (int dir = 0; dir < 2; ++dir) {
    auto num_of = [dir](const TokenCounts& c) { return dir == 0 ? c.c0 : c.c1; };
    auto den_of = [dir](const TokenCounts& c) { return dir == 0 ? c.c1 : c.c0; };

    // Singletons.
    for (const auto& c : entries) consider(evaluate_set(num_of(c), den_of(c), trials, delta));

    // Greedy unions: prefixes in decreasing empirical likelihood ratio.
    std::vector<std::size_t> order(entries.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double ra = (static_cast<double>(num_of(entries[a])) + 0.5) /
                        (static_cast<double>(den_of(entries[a])) + 0.5);
      const double rb = (static_cast<double>(num_of(entries[b])) + 0.5) /
                        (static_cast<double>(den_of(entries[b])) + 0.5);
      return ra > rb;
    });
    std::uint64_t cum_num = 0, cum_den = 0;
    for (std::size_t idx : order) {
      cum_num += num_of(entries[idx]);
      cum_den += den_of(entries[idx]);
      consider(evaluate_set(cum_num, cum_den, trials, delta));
    }
  }

  EpsilonEstimate est;
  est.delta_used = delta;
  est.event_family = event_family;
  est.trials = trials;
  est.degenerate = counts.size() <= 1;
  est.eps_hat = std::max(best.point, 0.0);
  est.ci_low = std::min(std::max(best.lo, 0.0), est.eps_hat);
  est.ci_high = std::max(best.hi, est.eps_hat);
  return est;
}

int run_experiment(const DatasetExperiment& exp, int b, Rng& rng) {
  if (b != 0 && b != 1) throw std::invalid_argument("run_experiment: b must be 0 or 1");
  auto [x0, x1] = exp.choose(rng);
  bool ok = false;
  switch (exp.kind) {
    case NeighborKind::DatasetEntry: ok = is_dataset_entry_neighbor(x0, x1); break;
    case NeighborKind::SortedMultiset: ok = is_sorted_multiset_neighbor(x0, x1); break;
    case NeighborKind::GraphNode:
      throw std::invalid_argument("run_experiment: graph pairs need the graph harness");
  }
  if (!ok) throw std::invalid_argument("run_experiment: adversary is not neighbor-respecting");
  const AccessTrace trace = exp.mechanism(b == 0 ? x0 : x1, rng);
  return exp.guess(trace) ? 1 : 0;
}

double measure_advantage(const DatasetExperiment& exp, std::size_t trials, Rng& rng) {
  const std::uint64_t base = rng.next_u64();
  std::array<std::uint64_t, 2> ones{0, 0};
  for (int b = 0; b < 2; ++b) {
    for (std::size_t t = 0; t < trials; ++t) {
      Rng r = Rng::substream(base ^ static_cast<std::uint64_t>(b + 1), t);
      ones[b] += static_cast<std::uint64_t>(run_experiment(exp, b, r));
    }
  }
  return std::abs(static_cast<double>(ones[0]) - static_cast<double>(ones[1])) /
         static_cast<double>(trials);
}

EpsilonEstimate audit_search(std::size_t n, double epsilon, double beta, double delta,
                             std::size_t trials, std::uint64_t seed, unsigned threads) {
  std::vector<double> x0(n);
  for (std::size_t p = 0; p < n; ++p) x0[p] = static_cast<double>(p + 1);
  std::vector<double> x1 = x0;
  x1[n / 2 - 1] = static_cast<double>(n / 2) + 0.5;
  if (!is_sorted_multiset_neighbor(x0, x1))
    throw std::logic_error("audit_search: canonical pair is not a neighbor pair");

  const double a = static_cast<double>(n / 2) + 0.25;
  const SearchParams params(n, epsilon, beta);
  auto sampler = [a, params](std::vector<double> data) {
    return [a, params, data = std::move(data)](Rng& r) {
      TracedStore<double> store(data);
      do_search(store, a, params, r);
      return project_trace(store.trace(), Projection::IntervalSummary);
    };
  };
  Rng rng(seed);
  return estimate_privacy(sampler(x0), sampler(x1), delta, trials, rng,
                          projection_name(Projection::IntervalSummary), threads);
}

EpsilonEstimate audit_locate(std::size_t n, double epsilon, double delta, std::size_t trials,
                             std::uint64_t seed, unsigned threads) {
  std::vector<double> x0(n, 0.0);
  x0[n / 2] = 1.0;
  std::vector<double> x1(n, 0.0);
  if (!is_dataset_entry_neighbor(x0, x1))
    throw std::logic_error("audit_locate: canonical pair is not a neighbor pair");

  const LocateParams params(n, epsilon, delta);
  const double audit_delta = delta * (1.0 + std::exp(epsilon));  // the mechanism's DO level
  auto sampler = [params](std::vector<double> data) {
    return [params, data = std::move(data)](Rng& r) {
      TracedStore<double> store(data);
      do_locate(store, [](double v) { return v > 0.5; }, params, r);
      return project_trace(store.trace(), Projection::LengthOnly);
    };
  };
  Rng rng(seed);
  return estimate_privacy(sampler(x0), sampler(x1), audit_delta, trials, rng,
                          "halting-checkpoint", threads);
}

EpsilonEstimate audit_tester(std::size_t n, double epsilon, double delta, double beta, double gamma,
                             std::size_t sample_size, std::size_t trials, std::uint64_t seed,
                             unsigned threads) {
  DenseGraph g0(n);
  const std::size_t half = n / 2;
  for (std::size_t u = 0; u < half; ++u)
    for (std::size_t v = half; v < n; ++v) g0.set_edge(u, v, true);
  DenseGraph g1 = g0.clone();
  for (std::size_t v = 1; v < n; ++v) g1.set_edge(0, v, true);
  if (!is_graph_node_neighbor(g0, g1))
    throw std::logic_error("audit_tester: canonical pair is not a neighbor pair");

  const BaseTesterConfig cfg(beta, gamma, sample_size);
  const DoTesterParams params(epsilon, delta);
  const double audit_delta = delta * (1.0 + std::exp(epsilon));
  auto sampler = [cfg, params](const DenseGraph& g) {
    return [cfg, params, graph = g.clone()](Rng& r) {
      // The adversary sees the probe count and the published output bit.
      const DoTesterResult res = do_tester(graph, cfg, params, r);
      return TokenSeq{res.probes, res.accept ? 1u : 0u};
    };
  };
  Rng rng(seed);
  return estimate_privacy(sampler(g0), sampler(g1), audit_delta, trials, rng,
                          "blocks-plus-output", threads);
}

std::vector<std::size_t> naive_walk_tester(BoundedDegreeGraph& g, std::size_t q, Rng& rng) {
  const std::size_t n = g.vertex_count();
  q = std::min(q, n);
  std::vector<std::size_t> probes;
  probes.reserve(q);
  std::vector<std::uint8_t> probed(n, 0);
  auto visit = [&](std::size_t v) {
    g.probe_vertex(v);
    probed[v] = 1;
    probes.push_back(v);
  };

  visit(rng.uniform_index(n));
  while (probes.size() < q) {
    std::size_t next = n;
    // Prefer an unseen neighbor of the most recently probed vertex.
    for (auto it = probes.rbegin(); it != probes.rend() && next == n; ++it) {
      std::size_t options[8];
      std::size_t count = 0;
      for (std::size_t w : g.neighbors_of(*it))
        if (!probed[w] && count < 8) options[count++] = w;
      if (count > 0) next = options[rng.uniform_index(count)];
    }
    while (next == n || probed[next]) next = rng.uniform_index(n);
    visit(next);
  }
  return probes;
}

std::vector<std::size_t> fixed_probe_tester(BoundedDegreeGraph& g, std::size_t q, Rng& rng) {
  (void)rng;
  q = std::min(q, g.vertex_count());
  std::vector<std::size_t> probes(q);
  for (std::size_t v = 0; v < q; ++v) {
    g.probe_vertex(v);
    probes[v] = v;
  }
  return probes;
}

bool rewiring_distinguisher(const std::vector<std::size_t>& probes, const BoundedDegreeGraph& h1,
                            const BoundedDegreeGraph& h2,
                            const std::vector<std::uint32_t>& cycle_order, std::size_t i) {
  const std::size_t n = cycle_order.size();
  const std::size_t a = cycle_order[i % n];
  const std::size_t t1 = cycle_order[(i + 1) % n];
  const std::size_t t2 = cycle_order[(i + 2) % n];

  const auto close = [&](std::size_t u, std::size_t v) {
    return bounded_distance(h1, u, v, 2) <= 2 || bounded_distance(h2, u, v, 2) <= 2;
  };
  const auto is_target = [&](std::size_t u, std::size_t v) {
    return (u == a && (v == t1 || v == t2)) || (v == a && (u == t1 || u == t2));
  };

  std::vector<std::size_t> seen;
  seen.reserve(probes.size());
  for (std::size_t w : probes) {
    bool any_completed = false;
    bool all_targets = true;
    for (std::size_t v : seen) {
      if (v == w || !close(v, w)) continue;
      any_completed = true;
      if (!is_target(v, w)) all_targets = false;
    }
    if (any_completed) return all_targets;
    seen.push_back(w);
  }
  return false;
}

LowerBoundReport lowerbound_demo(std::size_t n, std::size_t q, std::size_t trials,
                                 std::uint64_t seed, bool oblivious_tester, unsigned threads) {
  if (n < 9 || n % 3 != 0) throw std::invalid_argument("lowerbound_demo: n must be >= 9, divisible by 3");
  if (q < 2) throw std::invalid_argument("lowerbound_demo: probe budget must be >= 2");
  if (trials == 0) throw std::invalid_argument("lowerbound_demo: trials must be >= 1");

  const BoundedDegreeGraph base = BoundedDegreeGraph::cycle(n);
  std::atomic<std::uint64_t> hits_h1{0}, hits_h2{0};

  threads = std::max(1u, threads);
  std::vector<std::thread> pool;
  const std::size_t chunk = (trials + threads - 1) / threads;
  for (unsigned wkr = 0; wkr < threads; ++wkr) {
    pool.emplace_back([&, wkr] {
      const std::size_t begin = wkr * chunk;
      const std::size_t end = std::min(trials, begin + chunk);
      std::uint64_t local1 = 0, local2 = 0;
      for (std::size_t t = begin; t < end; ++t) {
        Rng r = Rng::substream(seed, t);
        auto [h1, perm] = random_isomorphism(base, r);
        auto rewired = make_h2(h1, perm, r);
        const auto probes1 = oblivious_tester ? fixed_probe_tester(h1, q, r)
                                              : naive_walk_tester(h1, q, r);
        if (rewiring_distinguisher(probes1, h1, rewired.h2, perm, rewired.i)) ++local1;
        const auto probes2 = oblivious_tester ? fixed_probe_tester(rewired.h2, q, r)
                                              : naive_walk_tester(rewired.h2, q, r);
        if (rewiring_distinguisher(probes2, h1, rewired.h2, perm, rewired.i)) ++local2;
      }
      hits_h1 += local1;
      hits_h2 += local2;
    });
  }
  for (auto& th : pool) th.join();

  LowerBoundReport rep;
  rep.n = n;
  rep.probe_budget = q;
  rep.trials = trials;
  rep.adv_h1 = static_cast<double>(hits_h1.load()) / static_cast<double>(trials);
  rep.adv_h2 = static_cast<double>(hits_h2.load()) / static_cast<double>(trials);
  rep.ratio = rep.adv_h1 / std::max(rep.adv_h2, 1.0 / static_cast<double>(trials));
  return rep;
}

}  // namespace oblab
