#pragma once

#include <limits>
#include <vector>

#include "ssl/loop.hpp"
#include "ssl/pi1.hpp"
#include "ssl/surface.hpp"

namespace ssl {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct ShortestPathTree {
  int source = -1;
  std::vector<double> dist;        // kInfinity where unreached
  std::vector<int> parent_edge;    // -1 at the source and unreached vertices
  std::vector<int> parent_vertex;

  /// Directed edges from the source to v.
  std::vector<DirectedEdge> path_to(const MetricSurface& s, int v) const;
  bool is_tree_edge(const MetricSurface& s, int e) const;
};

/// Dijkstra with lexicographic tie-breaking on (distance, vertex id, edge
/// id). Vertices farther than `cutoff` are left unreached.
ShortestPathTree shortest_paths(const MetricSurface& s, int source, double cutoff = kInfinity);

struct SystoleResult {
  EdgeLoop loop;
  double length = 0.0;
  int base_vertex = -1;
  int edge = -1;  // closing edge for the fast search; first edge for brute force
  ContractibilityCertificate certificate;
};

struct SystoleOptions {
  /// Length of a known non-contractible loop; bounds the search.
  double upper_bound = kInfinity;
  int threads = 0;  // 0: thread_count()
};

/// Shortest non-contractible edge loop. Candidates per base vertex v are
/// path(v,u) e path(w,v) for non-tree edges e = (u,w) of v's shortest-path
/// tree, searched under a doubling length bound.
SystoleResult systole(const Pi1Engine& engine, const SystoleOptions& options = {});
SystoleResult systole(const MetricSurface& s, const SystoleOptions& options = {});

inline constexpr int kBruteForceEdgeLimit = 60;

/// Exhaustive search over non-backtracking closed walks of length <= cap.
SystoleResult brute_force_systole(const Pi1Engine& engine, double cap);
SystoleResult brute_force_systole(const MetricSurface& s, double cap);

double systolic_ratio(const MetricSurface& s);
double systolic_ratio(const SystoleResult& sys, double surface_area);

/// Orientable surface with one boundary circle, with its arc-length
/// parameterization.
struct FillingInstance {
  MetricSurface surface;
  BoundaryParam boundary;
  int genus = 0;
};

/// Validates one boundary component and orientability.
FillingInstance make_filling(MetricSurface s);

struct IsometryAudit {
  double max_deficit = 0.0;
  int worst_a = -1;  // boundary indices of the worst pair
  int worst_b = -1;
  double tolerance = 0.0;
  bool passes = false;
  double boundary_length = 0.0;
  double refinement = 0.0;  // longest boundary segment
};

/// Largest circle-minus-surface distance deficit over boundary vertex pairs.
IsometryAudit is_isometric_filling(const FillingInstance& f, double tol, int threads = 0);

}  // namespace ssl
