#include "oblab/graphs.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace oblab {

DenseGraph::DenseGraph(std::size_t n) : n_(n), store_(n * n) {
  if (n == 0) throw std::invalid_argument("DenseGraph: n must be >= 1");
}

DenseGraph DenseGraph::complete(std::size_t n) {
  DenseGraph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.set_edge(u, v, true);
  return g;
}

DenseGraph DenseGraph::from_edges(std::size_t n,
                                  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  DenseGraph g(n);
  for (const auto& [u, v] : edges) g.set_edge(u, v, true);
  return g;
}

DenseGraph DenseGraph::random_bipartite(std::size_t n, double edge_prob, Rng& rng) {
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
    throw std::invalid_argument("random_bipartite: edge_prob must be in [0,1]");
  DenseGraph g(n);
  const auto perm = rng.permutation(static_cast<std::uint32_t>(n));
  const std::size_t half = n / 2;
  // perm[0..half) is one side, the rest the other.
  for (std::size_t a = 0; a < half; ++a)
    for (std::size_t b = half; b < n; ++b)
      if (rng.uniform_unit() < edge_prob) g.set_edge(perm[a], perm[b], true);
  return g;
}

bool DenseGraph::probe(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) throw std::out_of_range("DenseGraph::probe: vertex out of range");
  return store_.read(n_ * u + v) != 0;
}

bool DenseGraph::at(std::size_t u, std::size_t v) const {
  if (u >= n_ || v >= n_) throw std::out_of_range("DenseGraph::at: vertex out of range");
  return store_.peek(n_ * u + v) != 0;
}

void DenseGraph::set_edge(std::size_t u, std::size_t v, bool present) {
  if (u >= n_ || v >= n_) throw std::out_of_range("DenseGraph::set_edge: vertex out of range");
  if (u == v) throw std::invalid_argument("DenseGraph::set_edge: no self loops");
  store_.poke(n_ * u + v, present ? 1 : 0);
  store_.poke(n_ * v + u, present ? 1 : 0);
}

DenseGraph DenseGraph::clone() const {
  DenseGraph g(n_);
  for (std::size_t c = 0; c < n_ * n_; ++c) g.store_.poke(c, store_.peek(c));
  return g;
}

DenseGraph DenseGraph::induced_subgraph(const std::vector<std::size_t>& removed) const {
  std::vector<std::uint8_t> gone(n_, 0);
  for (std::size_t v : removed) {
    if (v >= n_) throw std::out_of_range("induced_subgraph: vertex out of range");
    gone[v] = 1;
  }
  std::vector<std::size_t> keep;
  keep.reserve(n_);
  for (std::size_t v = 0; v < n_; ++v)
    if (!gone[v]) keep.push_back(v);
  if (keep.empty()) throw std::invalid_argument("induced_subgraph: all vertices removed");

  DenseGraph out(keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    const std::size_t row = n_ * keep[a];
    for (std::size_t b = 0; b < keep.size(); ++b)
      out.store_.poke(keep.size() * a + b, store_.peek(row + keep[b]));
  }
  return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> DenseGraph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (at(u, v)) out.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  return out;
}

bool is_bipartite(const DenseGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> color(n, -1);
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < n; ++v) {
        if (!g.at(u, v)) continue;
        if (color[v] == -1) {
          color[v] = 1 - color[u];
          queue.push_back(v);
        } else if (color[v] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

double rel_distance_dense(const DenseGraph& g1, const DenseGraph& g2) {
  const std::size_t n = g1.vertex_count();
  if (n != g2.vertex_count()) throw std::invalid_argument("rel_distance_dense: size mismatch");
  std::size_t diff = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (g1.at(u, v) != g2.at(u, v)) ++diff;
  return static_cast<double>(diff) / (static_cast<double>(n) * static_cast<double>(n));
}

double distance_to_bipartite_exhaustive(const DenseGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 24) throw std::invalid_argument("distance_to_bipartite_exhaustive: n too large");
  const auto edges = g.edges();
  std::size_t best = edges.size();
  // Vertex 0's side is fixed; masks enumerate the rest.
  for (std::uint64_t mask = 0; mask < (1ULL << (n - 1)); ++mask) {
    std::size_t within = 0;
    for (const auto& [u, v] : edges) {
      const bool su = u == 0 ? false : ((mask >> (u - 1)) & 1);
      const bool sv = v == 0 ? false : ((mask >> (v - 1)) & 1);
      if (su == sv) ++within;
    }
    best = std::min(best, within);
  }
  return 2.0 * static_cast<double>(best) / (static_cast<double>(n) * static_cast<double>(n));
}

double complete_graph_bipartite_distance(std::size_t n) {
  // Within-part edges of K_n depend only on the part sizes.
  std::size_t best = n * (n - 1) / 2;
  for (std::size_t s = 0; s <= n; ++s) {
    const std::size_t within = s * (s - 1) / 2 + (n - s) * (n - s - 1) / 2;
    best = std::min(best, within);
  }
  return 2.0 * static_cast<double>(best) / (static_cast<double>(n) * static_cast<double>(n));
}

BoundedDegreeGraph::BoundedDegreeGraph(std::size_t n, std::size_t d)
    : n_(n), d_(d), store_(std::vector<std::int64_t>(n * d, kNoNeighbor)) {
  if (n == 0 || d == 0) throw std::invalid_argument("BoundedDegreeGraph: n and d must be >= 1");
}

BoundedDegreeGraph BoundedDegreeGraph::cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
  BoundedDegreeGraph g(n, 2);
  for (std::size_t v = 0; v < n; ++v) {
    g.set_slot(v, 0, static_cast<std::int64_t>((v + n - 1) % n));
    g.set_slot(v, 1, static_cast<std::int64_t>((v + 1) % n));
  }
  return g;
}

BoundedDegreeGraph BoundedDegreeGraph::triangles(std::size_t n) {
  if (n < 3 || n % 3 != 0) throw std::invalid_argument("triangles: n must be a positive multiple of 3");
  BoundedDegreeGraph g(n, 2);
  for (std::size_t b = 0; b < n; b += 3) {
    for (std::size_t k = 0; k < 3; ++k) {
      g.set_slot(b + k, 0, static_cast<std::int64_t>(b + (k + 1) % 3));
      g.set_slot(b + k, 1, static_cast<std::int64_t>(b + (k + 2) % 3));
    }
  }
  return g;
}

BoundedDegreeGraph BoundedDegreeGraph::from_edges(
    std::size_t n, std::size_t d, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  BoundedDegreeGraph g(n, d);
  auto add_half = [&](std::size_t v, std::size_t w) {
    for (std::size_t s = 0; s < d; ++s) {
      if (g.at(v, s) == kNoNeighbor) {
        g.set_slot(v, s, static_cast<std::int64_t>(w));
        return;
      }
    }
    throw std::invalid_argument("from_edges: degree bound exceeded");
  };
  for (const auto& [u, v] : edges) {
    add_half(u, v);
    add_half(v, u);
  }
  return g;
}

std::vector<std::int64_t> BoundedDegreeGraph::probe_vertex(std::size_t v) {
  if (v >= n_) throw std::out_of_range("probe_vertex: vertex out of range");
  std::vector<std::int64_t> out(d_);
  for (std::size_t s = 0; s < d_; ++s) out[s] = store_.read(v * d_ + s);
  return out;
}

std::int64_t BoundedDegreeGraph::at(std::size_t v, std::size_t slot) const {
  if (v >= n_ || slot >= d_) throw std::out_of_range("at: cell out of range");
  return store_.peek(v * d_ + slot);
}

void BoundedDegreeGraph::set_slot(std::size_t v, std::size_t slot, std::int64_t neighbor) {
  if (v >= n_ || slot >= d_) throw std::out_of_range("set_slot: cell out of range");
  if (neighbor != kNoNeighbor && (neighbor < 0 || neighbor >= static_cast<std::int64_t>(n_)))
    throw std::invalid_argument("set_slot: neighbor out of range");
  store_.poke(v * d_ + slot, neighbor);
}

std::vector<std::size_t> BoundedDegreeGraph::neighbors_of(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < d_; ++s) {
    const auto w = at(v, s);
    if (w != kNoNeighbor) out.push_back(static_cast<std::size_t>(w));
  }
  return out;
}

BoundedDegreeGraph BoundedDegreeGraph::clone() const {
  BoundedDegreeGraph g(n_, d_);
  for (std::size_t c = 0; c < n_ * d_; ++c) g.store_.poke(c, store_.peek(c));
  return g;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> BoundedDegreeGraph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t v = 0; v < n_; ++v)
    for (std::size_t w : neighbors_of(v))
      if (v < w) out.emplace_back(static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(w));
  return out;
}

double rel_distance_bounded(const BoundedDegreeGraph& g1, const BoundedDegreeGraph& g2) {
  if (g1.vertex_count() != g2.vertex_count() || g1.degree_bound() != g2.degree_bound())
    throw std::invalid_argument("rel_distance_bounded: shape mismatch");
  std::size_t diff = 0;
  for (std::size_t v = 0; v < g1.vertex_count(); ++v)
    for (std::size_t s = 0; s < g1.degree_bound(); ++s)
      if (g1.at(v, s) != g2.at(v, s)) ++diff;
  return static_cast<double>(diff) /
         (static_cast<double>(g1.degree_bound()) * static_cast<double>(g1.vertex_count()));
}

std::size_t component_count(const BoundedDegreeGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint8_t> seen(n, 0);
  std::size_t components = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    std::deque<std::size_t> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t w : g.neighbors_of(u)) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  return components;
}

bool is_connected(const BoundedDegreeGraph& g) { return component_count(g) == 1; }

bool is_single_cycle(const BoundedDegreeGraph& g) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) != 2) return false;
  return is_connected(g);
}

std::pair<BoundedDegreeGraph, std::vector<std::uint32_t>> random_isomorphism(
    const BoundedDegreeGraph& g, Rng& rng) {
  const std::size_t n = g.vertex_count();
  const std::size_t d = g.degree_bound();
  const auto perm = rng.permutation(static_cast<std::uint32_t>(n));
  BoundedDegreeGraph out(n, d);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t s = 0; s < d; ++s) {
      const auto w = g.at(v, s);
      out.set_slot(perm[v], s, w == BoundedDegreeGraph::kNoNeighbor
                                   ? BoundedDegreeGraph::kNoNeighbor
                                   : static_cast<std::int64_t>(perm[static_cast<std::size_t>(w)]));
    }
  }
  // Independent slot order per vertex, in label order for reproducibility.
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t s = d; s > 1; --s) {
      const auto t = static_cast<std::size_t>(rng.uniform_index(s));
      const auto a = out.at(v, s - 1);
      const auto b = out.at(v, t);
      out.set_slot(v, s - 1, b);
      out.set_slot(v, t, a);
    }
  }
  return {std::move(out), perm};
}

namespace {

void replace_neighbor(BoundedDegreeGraph& g, std::size_t v, std::int64_t from, std::int64_t to) {
  for (std::size_t s = 0; s < g.degree_bound(); ++s) {
    if (g.at(v, s) == from) {
      g.set_slot(v, s, to);
      return;
    }
  }
  throw std::logic_error("replace_neighbor: expected neighbor missing");
}

}  // namespace

CycleRewiring make_h2(const BoundedDegreeGraph& h1, const std::vector<std::uint32_t>& cycle_order,
                      Rng& rng) {
  const std::size_t n = h1.vertex_count();
  if (n < 8) throw std::invalid_argument("make_h2: n must be >= 8");
  if (cycle_order.size() != n) throw std::invalid_argument("make_h2: cycle order size mismatch");

  const std::size_t i = rng.uniform_index(n);
  // Cyclic offset in {4, ..., n-3}: j avoids positions i-2..i+3.
  const std::size_t offset = 4 + rng.uniform_index(n - 6);
  const std::size_t j = (i + offset) % n;

  const auto u = [&](std::size_t p) { return static_cast<std::int64_t>(cycle_order[p % n]); };

  BoundedDegreeGraph h2 = h1.clone();
  replace_neighbor(h2, static_cast<std::size_t>(u(i)), u(i + 1), u(j));
  replace_neighbor(h2, static_cast<std::size_t>(u(i + 1)), u(i), u(j + 1));
  replace_neighbor(h2, static_cast<std::size_t>(u(j)), u(j + 1), u(i));
  replace_neighbor(h2, static_cast<std::size_t>(u(j + 1)), u(j), u(i + 1));
  return {std::move(h2), i, j};
}

std::size_t bounded_distance(const BoundedDegreeGraph& g, std::size_t from, std::size_t to,
                             std::size_t cap) {
  if (from == to) return 0;
  std::vector<std::size_t> frontier{from};
  std::vector<std::uint8_t> seen(g.vertex_count(), 0);
  seen[from] = 1;
  for (std::size_t depth = 1; depth <= cap; ++depth) {
    std::vector<std::size_t> next;
    for (std::size_t v : frontier) {
      for (std::size_t w : g.neighbors_of(v)) {
        if (w == to) return depth;
        if (!seen[w]) {
          seen[w] = 1;
          next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return cap + 1;
}

}  // namespace oblab
