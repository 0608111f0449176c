#pragma once

#include <span>
#include <string>
#include <vector>

#include "ssl/surface.hpp"

namespace ssl {

struct DirectedEdge {
  int edge = 0;
  bool forward = true;

  DirectedEdge reversed() const { return {edge, !forward}; }
  bool operator==(const DirectedEdge&) const = default;
};

inline int dir_tail(const MetricSurface& s, DirectedEdge d) {
  return d.forward ? s.edge(d.edge).tail : s.edge(d.edge).head;
}
inline int dir_head(const MetricSurface& s, DirectedEdge d) {
  return d.forward ? s.edge(d.edge).head : s.edge(d.edge).tail;
}

/// Closed edge path. An empty loop is the constant loop.
struct EdgeLoop {
  std::vector<DirectedEdge> edges;
  double length = 0.0;

  bool empty() const { return edges.empty(); }
};

/// Sum of edge lengths in ascending order, so equal edge multisets give
/// bit-identical lengths regardless of traversal order.
double path_length(const MetricSurface& s, std::span<const DirectedEdge> edges);

/// Throws LoopNotOnSurface unless the edges exist, are consecutive and close.
void validate_loop(const MetricSurface& s, std::span<const DirectedEdge> edges);

EdgeLoop make_loop(const MetricSurface& s, std::vector<DirectedEdge> edges);
EdgeLoop reverse_loop(const MetricSurface& s, const EdgeLoop& loop);
EdgeLoop concat_loops(const MetricSurface& s, const EdgeLoop& a, const EdgeLoop& b);

/// Vertex sequence v_0 v_1 ... v_{k-1} visited by the loop.
std::vector<int> loop_vertices(const MetricSurface& s, const EdgeLoop& loop);
std::string format_loop(const MetricSurface& s, const EdgeLoop& loop);

}  // namespace ssl
