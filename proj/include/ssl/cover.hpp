#pragma once

#include <array>
#include <vector>

#include "ssl/loop.hpp"
#include "ssl/surface.hpp"

namespace ssl {

/// Orientable double cover. Cover face f + k*F is base face f on sheet k;
/// sheet 1 copies carry the reversed corner order (c0, c2, c1).
struct DoubleCover {
  MetricSurface cover;
  int base_faces = 0;
  std::vector<int> slot_projection;                 // cover slot -> base slot
  std::vector<int> vertex_projection;               // cover vertex -> base vertex
  std::vector<std::array<int, 2>> vertex_lifts;     // base vertex -> (sheet 0, sheet 1)
  std::vector<std::array<int, 2>> edge_lifts;       // base edge -> two cover edges
  std::vector<int> edge_projection;                 // cover edge -> base edge
  std::vector<bool> edge_projection_agrees;         // canonical directions agree
};

DoubleCover double_cover(const MetricSurface& base);

struct LiftedPath {
  std::vector<DirectedEdge> edges;
  int start = -1;
  int end = -1;
  bool closed = false;
  double length = 0.0;
};

/// Lifts a closed base loop starting at the lift of its first vertex on `sheet`.
LiftedPath lift_loop(const DoubleCover& dc, const MetricSurface& base, const EdgeLoop& loop, int sheet = 0);

EdgeLoop project_loop(const DoubleCover& dc, const MetricSurface& base, const EdgeLoop& cover_loop);

}  // namespace ssl
