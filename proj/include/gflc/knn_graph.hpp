#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "gflc/matrix.hpp"

namespace gflc {

using NodeId = std::size_t;
using EdgeId = std::size_t;

// How the directed k-nearest-neighbor relation becomes an undirected edge
// set: union keeps {i,j} when either side picked the other, mutual requires
// both.
enum class Symmetrization { kUnion, kMutual };

struct GraphConfig {
  std::size_t k = 10;
  double epsilon_floor = 1e-8;
  Symmetrization symmetrization = Symmetrization::kUnion;
  // Distance metric is Euclidean.
};

// Undirected weighted graph. Edges are stored once with u < v, sorted by
// (u, v); adjacency lists are sorted by neighbor. Vertex weights default to 1
// and exist to support the weighted curvature form.
class Graph {
 public:
  struct Edge {
    NodeId u;
    NodeId v;
    bool operator==(const Edge&) const = default;
  };
  struct Neighbor {
    NodeId node;
    EdgeId edge;
  };

  Graph() = default;
  Graph(std::size_t node_count,
        const std::vector<std::tuple<NodeId, NodeId, double>>& weighted_edges);

  std::size_t node_count() const { return static_cast<std::size_t>(adjacency_.size()); }
  std::size_t edge_count() const { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  double weight(EdgeId e) const { return edge_weights_[e]; }
  const std::vector<double>& edge_weights() const { return edge_weights_; }

  double vertex_weight(NodeId v) const { return vertex_weights_[v]; }
  void set_vertex_weight(NodeId v, double w);

  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;
  std::span<const Neighbor> neighbors(NodeId v) const {
    return {adjacency_[v].data(), adjacency_[v].size()};
  }
  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }

  // Same topology with replaced edge weights.
  Graph with_edge_weights(std::vector<double> weights) const;

  // One `u v weight` line per edge, u < v, sorted.
  void dump_edge_list(std::ostream& out) const;

 private:
  std::vector<Edge> edges_;
  std::vector<double> edge_weights_;
  std::vector<double> vertex_weights_;
  std::vector<std::vector<Neighbor>> adjacency_;

  void build_adjacency(std::size_t node_count);
};

// Inverse-distance weighting; the floor keeps coincident points finite.
double edge_weight(double distance, double epsilon_floor);

Graph build_knn_graph(const Matrix& features, const GraphConfig& config,
                      unsigned threads = 1);

// Exact k nearest neighbors of every node by Euclidean distance, ties broken
// by lower index. Exposed for oracle comparison.
std::vector<std::vector<NodeId>> knn_candidates(const Matrix& features, std::size_t k,
                                                unsigned threads = 1);

}  // namespace gflc
