#include "gflc/knn_graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "gflc/csv.hpp"
#include "gflc/errors.hpp"
#include "gflc/parallel.hpp"

namespace gflc {

Graph::Graph(std::size_t node_count,
             const std::vector<std::tuple<NodeId, NodeId, double>>& weighted_edges) {
  std::vector<std::pair<Edge, double>> canonical;
  canonical.reserve(weighted_edges.size());
  for (const auto& [a, b, w] : weighted_edges) {
    if (a == b) throw DomainError("self-loop not allowed");
    if (a >= node_count || b >= node_count) throw DomainError("edge endpoint out of range");
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("edge weight must be positive and finite");
    canonical.push_back({{std::min(a, b), std::max(a, b)}, w});
  }
  std::sort(canonical.begin(), canonical.end(), [](const auto& x, const auto& y) {
    return std::tie(x.first.u, x.first.v) < std::tie(y.first.u, y.first.v);
  });
  for (std::size_t i = 1; i < canonical.size(); ++i) {
    if (canonical[i].first == canonical[i - 1].first) {
      throw DomainError("duplicate edge in graph construction");
    }
  }
  edges_.reserve(canonical.size());
  edge_weights_.reserve(canonical.size());
  for (auto& [e, w] : canonical) {
    edges_.push_back(e);
    edge_weights_.push_back(w);
  }
  vertex_weights_.assign(node_count, 1.0);
  build_adjacency(node_count);
}

void Graph::build_adjacency(std::size_t node_count) {
  adjacency_.assign(node_count, {});
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    adjacency_[edges_[e].u].push_back({edges_[e].v, e});
    adjacency_[edges_[e].v].push_back({edges_[e].u, e});
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

void Graph::set_vertex_weight(NodeId v, double w) {
  if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("vertex weight must be positive and finite");
  vertex_weights_[v] = w;
}

std::optional<EdgeId> Graph::find_edge(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return std::nullopt;
  const auto& list = adjacency_[u];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Neighbor& n, NodeId x) { return n.node < x; });
  if (it == list.end() || it->node != v) return std::nullopt;
  return it->edge;
}

Graph Graph::with_edge_weights(std::vector<double> weights) const {
  if (weights.size() != edges_.size()) throw ShapeError("weight vector does not match edge count");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("edge weight must be positive and finite");
  }
  Graph g = *this;
  g.edge_weights_ = std::move(weights);
  return g;
}

void Graph::dump_edge_list(std::ostream& out) const {
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    out << edges_[e].u << ' ' << edges_[e].v << ' ' << format_double(edge_weights_[e])
        << '\n';
  }
}

double edge_weight(double distance, double epsilon_floor) {
  if (distance < 0.0) throw DomainError("distance must be nonnegative");
  if (!(epsilon_floor > 0.0)) throw ConfigError("epsilon floor must be positive");
  return 1.0 / std::max(distance, epsilon_floor);
}

std::vector<std::vector<NodeId>> knn_candidates(const Matrix& features, std::size_t k,
                                                unsigned threads) {
  const std::size_t n = features.rows();
  std::vector<std::vector<NodeId>> result(n);
  parallel_for(n, threads, [&](std::size_t i) {
    std::vector<std::pair<double, NodeId>> dist;
    dist.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      dist.push_back({squared_distance(features.row(i), features.row(j)), j});
    }
    // (distance, index) ordering makes ties deterministic: lower index wins.
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k),
                      dist.end());
    result[i].reserve(k);
    for (std::size_t m = 0; m < k; ++m) result[i].push_back(dist[m].second);
  });
  return result;
}

Graph build_knn_graph(const Matrix& features, const GraphConfig& config, unsigned threads) {
  const std::size_t n = features.rows();
  if (config.k < 1) throw ConfigError("k must be at least 1");
  if (n <= config.k) throw ConfigError("graph construction requires n > k");
  if (!(config.epsilon_floor > 0.0)) throw ConfigError("epsilon floor must be positive");

  const auto candidates = knn_candidates(features, config.k, threads);

  std::vector<Graph::Edge> edge_set;
  edge_set.reserve(n * config.k);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j : candidates[i]) {
      edge_set.push_back({std::min(i, j), std::max(i, j)});
    }
  }
  std::sort(edge_set.begin(), edge_set.end(), [](const Graph::Edge& a, const Graph::Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });

  std::vector<std::tuple<NodeId, NodeId, double>> weighted;
  weighted.reserve(edge_set.size());
  for (std::size_t e = 0; e < edge_set.size(); ++e) {
    const bool duplicate = e + 1 < edge_set.size() && edge_set[e] == edge_set[e + 1];
    const bool seen_before = e > 0 && edge_set[e] == edge_set[e - 1];
    if (seen_before) continue;
    if (config.symmetrization == Symmetrization::kMutual && !duplicate) continue;
    const NodeId u = edge_set[e].u;
    const NodeId v = edge_set[e].v;
    const double d = euclidean_distance(features.row(u), features.row(v));
    weighted.push_back({u, v, edge_weight(d, config.epsilon_floor)});
  }
  return Graph(n, weighted);
}

}  // namespace gflc
