#pragma once

#include <iosfwd>
#include <vector>

#include "gflc/knn_graph.hpp"

namespace gflc {

// Forman curvature values per edge, indexed like Graph::edges().
struct CurvatureMap {
  std::vector<double> values;
  int iteration = 0;
};

struct FlowConfig {
  double eta = 0.1;
  int iterations = 2;
  double epsilon_floor = 1e-8;
};

// Weighted Forman curvature with vertex weights:
//   w_uv (w_u/w_uv + w_v/w_uv - sum_{x~u, x!=v} w_u/sqrt(w_uv w_ux)
//                             - sum_{x~v, x!=u} w_v/sqrt(w_uv w_vx))
// The opposite endpoint is excluded from each neighbor sum.
double forman_full(const Graph& graph, NodeId u, NodeId v);

// Edge-weight-only form used by the flow:
//   w_uv (1 - (sum_{x in N(u)\{v}} sqrt(w_uv/w_ux)
//            + sum_{x in N(v)\{u}} sqrt(w_uv/w_vx)) / 2)
// With unit vertex weights this equals w_uv * forman_full / 2.
double forman_simplified(const Graph& graph, NodeId u, NodeId v);

// Curvature of every edge from one weight snapshot.
CurvatureMap curvature_all(const Graph& graph, int iteration = 0);

// w' = max(w + eta * F(e), epsilon_floor), applied simultaneously.
Graph apply_flow_update(const Graph& graph, const CurvatureMap& curvature,
                        const FlowConfig& config);
Graph ricci_flow_step(const Graph& graph, const FlowConfig& config, int iteration = 0);
Graph ricci_flow(const Graph& graph, const FlowConfig& config);

// One `u v F` line per edge, matching the edge-list dump format.
void dump_curvature(const Graph& graph, const CurvatureMap& curvature, std::ostream& out);

}  // namespace gflc
