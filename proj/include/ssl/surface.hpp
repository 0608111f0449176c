#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ssl/error.hpp"

namespace ssl {

/// A side of a triangle. Side k runs from corner k to corner (k+1) % 3.
struct Slot {
  int face = 0;
  int side = 0;

  int id() const { return 3 * face + side; }
  static Slot from_id(int id) { return {id / 3, id % 3}; }
  auto operator<=>(const Slot&) const = default;
};

/// Identification of two slots. A plain pairing glues the start of `a` to
/// the end of `b` (the orientation-compatible gluing of two triangles with
/// the same orientation). A flipped pairing glues start to start.
struct Pairing {
  Slot a;
  Slot b;
  bool flipped = false;
};

struct Face {
  std::array<double, 3> sides{};  // |c0c1|, |c1c2|, |c2c0|
};

struct Edge {
  int rep_slot = -1;   // smaller slot id; fixes the edge's direction
  int twin_slot = -1;  // -1 on boundary edges
  int tail = -1;
  int head = -1;
  double length = 0.0;

  bool on_boundary() const { return twin_slot < 0; }
};

/// Triangles glued along an involution on their sides. Vertices are corner
/// orbits of the gluing and are never stored in the input.
///
/// Instances are immutable; every construction returns a fresh surface.
class MetricSurface {
 public:
  MetricSurface() = default;

  int face_count() const { return static_cast<int>(faces_.size()); }
  int slot_count() const { return 3 * face_count(); }
  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  std::span<const Face> faces() const { return faces_; }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }

  double side_length(int slot) const { return faces_[slot / 3].sides[slot % 3]; }
  /// Partner slot id, or -1 if the slot is on the boundary.
  int partner(int slot) const { return partner_[slot]; }
  bool flipped(int slot) const { return flipped_[slot] != 0; }
  int edge_of_slot(int slot) const { return slot_edge_[slot]; }
  /// True iff walking the slot from its start corner to its end corner
  /// traverses its edge in the edge's canonical direction.
  bool slot_forward(int slot) const;

  int corner_vertex(int face, int corner) const { return corner_vertex_[3 * face + corner]; }
  int slot_tail(int slot) const { return corner_vertex_[slot]; }
  int slot_head(int slot) const { return corner_vertex_[3 * (slot / 3) + (slot % 3 + 1) % 3]; }

  /// Pairings sorted lexicographically with a < b.
  std::vector<Pairing> pairings() const;
  std::vector<int> boundary_slots() const;

  /// Vertex adjacency as (edge, outgoing direction) lists, ordered by edge id.
  struct Incidence {
    int edge;
    bool forward;  // true if the edge leaves this vertex in canonical direction
  };
  std::span<const Incidence> incidences(int v) const;

 private:
  friend MetricSurface build_surface(std::vector<Face>, std::span<const Pairing>);

  std::vector<Face> faces_;
  std::vector<int> partner_;
  std::vector<std::uint8_t> flipped_;
  std::vector<int> corner_vertex_;
  std::vector<int> slot_edge_;
  std::vector<Edge> edges_;
  std::vector<int> incidence_offset_;
  std::vector<Incidence> incidence_;
  int vertex_count_ = 0;
};

/// Validates and builds a surface. Paired lengths must agree to 1e-9
/// relative; the smaller slot's value is stored for both.
MetricSurface build_surface(std::vector<Face> faces, std::span<const Pairing> pairings);

struct TopologySummary {
  int euler_char = 0;
  bool orientable = true;
  int boundary_count = 0;
  int genus = 0;  // orientable genus, or number of crosscaps

  auto operator<=>(const TopologySummary&) const = default;
};

TopologySummary topology(const MetricSurface& s);

/// Sign per face (+1/-1) from orientation propagation. On non-orientable
/// surfaces the signs come from a spanning tree of the dual graph.
std::vector<int> face_orientation(const MetricSurface& s, bool* orientable = nullptr);

double triangle_area(double a, double b, double c);
double area(const MetricSurface& s);

/// Splits the triangle owning boundary slot `slot` by a cevian from the
/// opposite corner to the point at fraction `t` along the slot.
MetricSurface split_boundary_side(const MetricSurface& s, int slot, double t);

/// Minimum fraction kept on either side of a split.
inline constexpr double kSplitTolerance = 1e-8;

struct BoundaryParam {
  std::vector<int> vertices;     // b_0 .. b_{K-1}
  std::vector<double> positions;  // cumulative arc length of b_k, positions[0] == 0
  std::vector<int> slots;        // slot k joins b_k to b_{k+1 mod K}
  std::vector<bool> forward;     // slot k walked from its start corner
  double length = 0.0;

  int size() const { return static_cast<int>(vertices.size()); }
  double segment_length(const MetricSurface& s, int k) const { return s.side_length(slots[k]); }
  /// Shorter-arc distance between two positions on the circle.
  double circle_distance(double x, double y) const;
};

BoundaryParam boundary_param(const MetricSurface& s);

struct RefinedBoundary {
  MetricSurface surface;
  BoundaryParam boundary;  // same origin and direction as the input walk
};

/// Inserts boundary vertices at the given arc-length positions (measured
/// along `bp`) by fanning each affected triangle from its opposite corner.
/// Positions must lie strictly inside segments.
RefinedBoundary refine_boundary(const MetricSurface& s, const BoundaryParam& bp, std::vector<double> positions);

/// All side lengths multiplied by `factor`.
MetricSurface scaled(const MetricSurface& s, double factor);

/// Rebuild with faces reordered: new face i is old face perm[i].
MetricSurface permute_faces(const MetricSurface& s, std::span<const int> perm);

}  // namespace ssl
