#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "oblab/graphs.hpp"
#include "oblab/rng.hpp"
#include "oblab/trace.hpp"

namespace oblab {

// Neighbor relations the experiment quantifies over. Validators check the
// declared relation actually holds before any trace is collected.
enum class NeighborKind { DatasetEntry, GraphNode, SortedMultiset };

bool is_dataset_entry_neighbor(const std::vector<double>& x0, const std::vector<double>& x1);
bool is_sorted_multiset_neighbor(const std::vector<double>& x0, const std::vector<double>& x1);
bool is_graph_node_neighbor(const DenseGraph& g0, const DenseGraph& g1);

// Auditor output. The estimator can only falsify privacy, never prove it:
// eps_hat is an empirical lower estimate of the true epsilon, with a 95%
// Clopper-Pearson interval [ci_low, ci_high]. Event sets are selected by
// their confidence-corrected likelihood ratio, so rare-token sampling noise
// does not masquerade as leakage. Disjoint supports at the given delta level
// surface as infinite eps_hat / ci_high.
struct EpsilonEstimate {
  double eps_hat = 0.0;
  double delta_used = 0.0;
  std::string event_family;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t trials = 0;
  bool degenerate = false;  // a single token covered every run on both inputs
};

// Samples one projected trace of the mechanism bound to one of the inputs.
using TraceSampler = std::function<TokenSeq(Rng&)>;

// Runs each sampler `trials` times, then maximizes ln((p0(S)-delta)/p1(S))
// over observed token sets S (singletons plus greedy ratio-ordered unions),
// in both directions.
EpsilonEstimate estimate_privacy(const TraceSampler& sample0, const TraceSampler& sample1,
                                 double delta, std::size_t trials, Rng& rng,
                                 const std::string& event_family, unsigned threads = 1);

// Two-phase distinguishing game over a dataset mechanism: A1 proposes the
// neighbor pair, the oracle runs the mechanism on x_b exposing only traces,
// A2 guesses b.
struct DatasetExperiment {
  NeighborKind kind;
  std::function<std::pair<std::vector<double>, std::vector<double>>(Rng&)> choose;  // A1
  std::function<AccessTrace(const std::vector<double>&, Rng&)> mechanism;
  std::function<int(const AccessTrace&)> guess;  // A2
};

int run_experiment(const DatasetExperiment& exp, int b, Rng& rng);

// |Pr[Exp_0 = 1] - Pr[Exp_1 = 1]| over `trials` runs of each arm.
double measure_advantage(const DatasetExperiment& exp, std::size_t trials, Rng& rng);

// Canonical audits used by the CLI and the acceptance suite. Each builds the
// module's canonical neighbor pair, runs the mechanism under its natural
// projection, and audits at the delta level of the mechanism's guarantee.
EpsilonEstimate audit_search(std::size_t n, double epsilon, double beta, double delta,
                             std::size_t trials, std::uint64_t seed, unsigned threads = 1);
EpsilonEstimate audit_locate(std::size_t n, double epsilon, double delta, std::size_t trials,
                             std::uint64_t seed, unsigned threads = 1);
EpsilonEstimate audit_tester(std::size_t n, double epsilon, double delta, double beta, double gamma,
                             std::size_t sample_size, std::size_t trials, std::uint64_t seed,
                             unsigned threads = 1);

// Adaptive probe strategies for the connectivity lower-bound demo. Both
// probe exactly q vertices through the traced store and return them in
// probe order.
std::vector<std::size_t> naive_walk_tester(BoundedDegreeGraph& g, std::size_t q, Rng& rng);
std::vector<std::size_t> fixed_probe_tester(BoundedDegreeGraph& g, std::size_t q, Rng& rng);

// The distinguisher: returns 1 iff u_i together with u_{i+1} or u_{i+2} is
// probed before any other pair of vertices at distance <= 2 in h1 or h2 has
// been probed. Pure function of the probe sequence and (h1, h2, i).
bool rewiring_distinguisher(const std::vector<std::size_t>& probes, const BoundedDegreeGraph& h1,
                            const BoundedDegreeGraph& h2,
                            const std::vector<std::uint32_t>& cycle_order, std::size_t i);

struct LowerBoundReport {
  std::size_t n = 0;
  std::size_t probe_budget = 0;
  std::size_t trials = 0;
  double adv_h1 = 0.0;
  double adv_h2 = 0.0;
  double ratio = 0.0;  // adv_h1 / max(adv_h2, 1/trials)
};

// Samples (H1, H2, i, j), runs the chosen tester on each graph, and applies
// the distinguisher; a ratio far above e^{4 epsilon} falsifies differential
// obliviousness of the tester.
LowerBoundReport lowerbound_demo(std::size_t n, std::size_t q, std::size_t trials,
                                 std::uint64_t seed, bool oblivious_tester = false,
                                 unsigned threads = 1);

}  // namespace oblab
