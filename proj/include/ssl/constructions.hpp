#pragma once

#include <vector>

#include "ssl/loop.hpp"
#include "ssl/surface.hpp"
#include "ssl/systole.hpp"

namespace ssl {

enum class GluingMode { Orientable, NonOrientable };

/// Marked boundary points, measured from p along the boundary walk:
/// p = 0, q = s, p' = L/2, q' = s + L/2.
struct GluingSpec {
  double s = 0.0;
};

struct GlueResult {
  MetricSurface surface;
  EdgeLoop pq_loop;  // image of the arc pq, a closed loop of length s
  double s = 0.0;
  bool clamped = false;
};

/// s for `--s auto`: the systole, clamped below L/2. At s = L/2 the arcs
/// qp' and q'p vanish and the first identification folds the circle, so the
/// clamp keeps s at (1 - 1e-3) L/2.
GluingSpec auto_gluing_spec(double systole_length, double boundary_length, bool* clamped = nullptr);

/// Glues arc pq to p'q' (p to q', q to p') and qp' to q'p. The second
/// identification reverses the boundary direction in orientable mode and
/// preserves it in non-orientable mode.
GlueResult glue(const FillingInstance& f, GluingSpec spec, GluingMode mode);
GlueResult glue_orientable(const FillingInstance& f, GluingSpec spec);
GlueResult glue_nonorientable(const FillingInstance& f, GluingSpec spec);

/// Inscribed triangulation of the round hemisphere whose equator has
/// circumference L: n equator vertices, ceil(n/4) rings, chord side lengths.
FillingInstance hemisphere_mesh(double boundary_length, int n);

struct CapResult {
  MetricSurface surface;
  double filling_area = 0.0;
  double cap_area = 0.0;
  bool refined = false;  // filling boundary needed extra vertices
};

/// Closes the filling with an inscribed hemisphere whose equator vertices sit
/// at the filling's boundary positions.
CapResult cap_with_hemisphere(const FillingInstance& f, int n);

struct HandleResult {
  FillingInstance filling;
  std::vector<int> faces_used;
  double area_excess = 0.0;    // area(out) - area(in)
  double area_constant = 0.0;  // excess / (g_add * scale^2)
};

/// Replaces 2*g_add interior triangles by annuli around equilateral holes of
/// side `scale` and joins the holes pairwise by triangular prism tubes.
HandleResult attach_handles(const FillingInstance& f, int g_add, double scale);

/// Flat cylinder of the hemisphere's boundary length and the given height,
/// capped on top by hemisphere_mesh(L, n).
FillingInstance cylinder_hemisphere_filling(double boundary_length, double height, int n);

}  // namespace ssl
