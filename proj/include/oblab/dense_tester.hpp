#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "oblab/graphs.hpp"
#include "oblab/rng.hpp"
#include "oblab/trace.hpp"

namespace oblab {

// Configuration of the plugged-in one-sided base tester. sample_size is the
// number of vertices it probes per run; constant in n.
struct BaseTesterConfig {
  double beta;
  double gamma;
  std::size_t sample_size;

  BaseTesterConfig(double beta_, double gamma_, std::size_t sample_size_);

  // Bundled default for bipartiteness: ceil((8/gamma^2) * log2(8/gamma)).
  // A fixture constant; benches may override sample_size to fit small n.
  static BaseTesterConfig bipartiteness(double beta, double gamma);
};

struct BaseTesterResult {
  bool accept;
  std::vector<std::size_t> probed;  // the sampled vertex set A
};

// Samples `sample_size` distinct vertices, reads every ordered adjacency
// pair among them through the traced store, and accepts iff the induced
// subgraph is 2-colorable. One-sided: bipartite inputs always accept.
BaseTesterResult base_bipartite_tester(DenseGraph& g, const BaseTesterConfig& cfg, Rng& rng);

using BaseTester = std::function<BaseTesterResult(DenseGraph&, Rng&)>;

struct DoTesterParams {
  double epsilon;
  double delta;
  double threshold_base;  // T = ln(1/(2 delta)) / epsilon
  std::size_t rounds;     // ceil(4T)

  DoTesterParams(double epsilon_, double delta_);
};

struct DoTesterResult {
  bool accept;
  std::size_t base_accepts;  // count c of accepting rounds
  double noisy_threshold;    // 3T + Lap(1/epsilon)
  std::size_t probes;
  AccessTrace trace;  // per-round stores concatenated in issue order
};

// Runs the base tester `rounds` times, removing each round's probed set from
// the graph, then accepts iff the accept count reaches min(3T + Lap(1/eps), 4T).
// The default base is the bundled bipartiteness tester.
DoTesterResult do_tester(const DenseGraph& g, const BaseTesterConfig& cfg,
                         const DoTesterParams& params, Rng& rng, const BaseTester& base = {});

}  // namespace oblab
