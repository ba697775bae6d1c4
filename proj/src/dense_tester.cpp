#include "oblab/dense_tester.hpp"

#include <cmath>
#include <stdexcept>

#include "oblab/noise.hpp"

namespace oblab {

BaseTesterConfig::BaseTesterConfig(double beta_, double gamma_, std::size_t sample_size_)
    : beta(beta_), gamma(gamma_), sample_size(sample_size_) {
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("BaseTesterConfig: beta in (0,1]");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("BaseTesterConfig: gamma in (0,1)");
  if (sample_size < 1) throw std::invalid_argument("BaseTesterConfig: sample_size >= 1");
}

BaseTesterConfig BaseTesterConfig::bipartiteness(double beta, double gamma) {
  const double c = std::ceil(8.0 / (gamma * gamma) * std::log2(8.0 / gamma));
  return BaseTesterConfig(beta, gamma, static_cast<std::size_t>(c));
}

BaseTesterResult base_bipartite_tester(DenseGraph& g, const BaseTesterConfig& cfg, Rng& rng) {
  const std::size_t n = g.vertex_count();
  const std::size_t c = cfg.sample_size;
  if (n < c) throw std::invalid_argument("base_bipartite_tester: graph smaller than sample size");

  const auto sample = rng.sample_distinct(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(c));

  // Probe every ordered pair, then 2-color the sampled subgraph locally.
  std::vector<std::uint8_t> local(c * c, 0);
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b) local[a * c + b] = g.probe(sample[a], sample[b]) ? 1 : 0;

  std::vector<int> color(c, -1);
  std::vector<std::size_t> stack;
  bool two_colorable = true;
  for (std::size_t s = 0; s < c && two_colorable; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    stack.assign(1, s);
    while (!stack.empty() && two_colorable) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < c; ++v) {
        if (!local[u * c + v]) continue;
        if (color[v] == -1) {
          color[v] = 1 - color[u];
          stack.push_back(v);
        } else if (color[v] == color[u]) {
          two_colorable = false;
          break;
        }
      }
    }
  }

  return {two_colorable, std::vector<std::size_t>(sample.begin(), sample.end())};
}

DoTesterParams::DoTesterParams(double epsilon_, double delta_) : epsilon(epsilon_), delta(delta_) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("DoTesterParams: epsilon must be > 0");
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("DoTesterParams: delta in (0,1/2)");
  threshold_base = std::log(1.0 / (2.0 * delta)) / epsilon;
  rounds = static_cast<std::size_t>(std::ceil(4.0 * threshold_base));
}

DoTesterResult do_tester(const DenseGraph& g, const BaseTesterConfig& cfg,
                         const DoTesterParams& params, Rng& rng, const BaseTester& base) {
  const std::size_t needed = (params.rounds + 1) * cfg.sample_size;
  if (g.vertex_count() < needed)
    throw std::invalid_argument("do_tester: graph too small for rounds * sample_size removals");

  const BaseTester& run_base =
      base ? base : [&cfg](DenseGraph& graph, Rng& r) { return base_bipartite_tester(graph, cfg, r); };

  DoTesterResult result{};
  DenseGraph current = g.clone();
  std::size_t accepts = 0;
  for (std::size_t round = 0; round < params.rounds; ++round) {
    const BaseTesterResult r = run_base(current, rng);
    if (r.accept) ++accepts;
    result.trace.append_all(current.trace());
    current = current.induced_subgraph(r.probed);
  }

  const double noisy = 3.0 * params.threshold_base + laplace(LaplaceScale(1.0 / params.epsilon), rng);
  result.base_accepts = accepts;
  result.noisy_threshold = noisy;
  result.accept = static_cast<double>(accepts) >= std::min(noisy, 4.0 * params.threshold_base);
  result.probes = result.trace.size();
  return result;
}

}  // namespace oblab
