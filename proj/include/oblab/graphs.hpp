#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "oblab/rng.hpp"
#include "oblab/trace.hpp"

namespace oblab {

// Adjacency-matrix graph over a traced store; cell index n*u + v. Symmetric
// with zero diagonal. Probes are traced; construction and oracle access are
// not (the graph is the algorithm's input, not something it computed).
class DenseGraph {
 public:
  explicit DenseGraph(std::size_t n);

  static DenseGraph complete(std::size_t n);
  static DenseGraph from_edges(std::size_t n,
                               const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);
  // Random bipartite graph on a uniformly chosen balanced bipartition; each
  // cross pair becomes an edge independently with probability edge_prob.
  static DenseGraph random_bipartite(std::size_t n, double edge_prob, Rng& rng);

  std::size_t vertex_count() const { return n_; }

  // Traced adjacency probe.
  bool probe(std::size_t u, std::size_t v);

  // Untraced access for oracles and fixtures.
  bool at(std::size_t u, std::size_t v) const;
  void set_edge(std::size_t u, std::size_t v, bool present);

  // Deep copy with an empty trace.
  DenseGraph clone() const;

  // Graph on the surviving vertices, indices re-packed in increasing order
  // of the original labels. Fresh store, fresh trace.
  DenseGraph induced_subgraph(const std::vector<std::size_t>& removed) const;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

  AccessTrace& trace() { return store_.trace(); }
  const AccessTrace& trace() const { return store_.trace(); }

 private:
  std::size_t n_;
  TracedStore<std::uint8_t> store_;
};

// 2-colorability over all components; BFS oracle, untraced.
bool is_bipartite(const DenseGraph& g);

// Hamming distance of the adjacency matrices over n^2.
double rel_distance_dense(const DenseGraph& g1, const DenseGraph& g2);

// Exact distance from g to the nearest bipartite graph, as a fraction of
// n^2: min over all bipartitions of twice the within-part edge count.
// Exhaustive over 2^(n-1) bipartitions; intended for small fixtures.
double distance_to_bipartite_exhaustive(const DenseGraph& g);

// Same quantity for the complete graph K_n, where only the part sizes
// matter; valid at any n.
double complete_graph_bipartite_distance(std::size_t n);

// Incidence-list graph of maximal degree d over a traced store; cell index
// v*d + i holds the i-th neighbor of v, or kNoNeighbor. Probing a vertex
// reads all d of its incidence cells.
class BoundedDegreeGraph {
 public:
  static constexpr std::int64_t kNoNeighbor = -1;

  BoundedDegreeGraph(std::size_t n, std::size_t d);

  static BoundedDegreeGraph cycle(std::size_t n);
  static BoundedDegreeGraph triangles(std::size_t n);  // n % 3 == 0
  static BoundedDegreeGraph from_edges(std::size_t n, std::size_t d,
                                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t degree_bound() const { return d_; }

  // Traced probe of all incidence cells of v, in slot order.
  std::vector<std::int64_t> probe_vertex(std::size_t v);

  std::int64_t at(std::size_t v, std::size_t slot) const;
  void set_slot(std::size_t v, std::size_t slot, std::int64_t neighbor);
  std::vector<std::size_t> neighbors_of(std::size_t v) const;
  std::size_t degree(std::size_t v) const { return neighbors_of(v).size(); }

  BoundedDegreeGraph clone() const;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

  AccessTrace& trace() { return store_.trace(); }
  const AccessTrace& trace() const { return store_.trace(); }

 private:
  std::size_t n_;
  std::size_t d_;
  TracedStore<std::int64_t> store_;
};

// Fraction of differing incidence cells over d*n.
double rel_distance_bounded(const BoundedDegreeGraph& g1, const BoundedDegreeGraph& g2);

bool is_connected(const BoundedDegreeGraph& g);
std::size_t component_count(const BoundedDegreeGraph& g);
bool is_single_cycle(const BoundedDegreeGraph& g);

// Uniformly relabels vertices and independently shuffles each incidence
// list's slot order. Returns the image and the permutation used
// (perm[v] = new label of v).
std::pair<BoundedDegreeGraph, std::vector<std::uint32_t>> random_isomorphism(
    const BoundedDegreeGraph& g, Rng& rng);

struct CycleRewiring {
  BoundedDegreeGraph h2;
  std::size_t i;
  std::size_t j;
};

// Given a permuted n-cycle h1 with known cycle order (cycle_order[p] = the
// label occupying cycle position p), removes edges (u_i,u_{i+1}),(u_j,u_{j+1})
// and adds (u_i,u_j),(u_{i+1},u_{j+1}), with i uniform and j uniform over the
// positions at cyclic offset 4..n-3 from i. The result is again a single
// n-cycle and differs from h1 in the incidence lists of exactly 4 vertices.
CycleRewiring make_h2(const BoundedDegreeGraph& h1, const std::vector<std::uint32_t>& cycle_order,
                      Rng& rng);

// BFS distance capped at `cap` (returns cap+1 when farther); untraced.
std::size_t bounded_distance(const BoundedDegreeGraph& g, std::size_t from, std::size_t to,
                             std::size_t cap);

}  // namespace oblab
