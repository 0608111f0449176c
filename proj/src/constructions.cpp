#include "ssl/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <queue>
#include <set>
#include <unordered_map>

namespace ssl {
namespace {

constexpr double kPi = std::numbers::pi;

/// Faces plus pairings under assembly. Faces added with corner labels get
/// their sides paired automatically: u->v with v->u.
class Builder {
 public:
  std::vector<Face> faces;
  std::vector<Pairing> pairs;

  Builder() = default;
  explicit Builder(const MetricSurface& s) : faces(s.faces().begin(), s.faces().end()), pairs(s.pairings()) {}

  int add(const std::array<int, 3>& labels, const std::array<double, 3>& sides) {
    int id = static_cast<int>(faces.size());
    faces.push_back(Face{sides});
    labeled_.push_back({id, labels});
    return id;
  }

  void set_face(int id, const std::array<int, 3>& labels, const std::array<double, 3>& sides) {
    faces[id] = Face{sides};
    labeled_.push_back({id, labels});
  }

  /// Slot id of the labeled side u->v.
  int side(int u, int v) const {
    auto it = sides_.find({u, v});
    if (it == sides_.end()) throw Error(ErrorCode::ConstructionInvariant, "missing labeled side");
    return it->second;
  }

  void match_labels() {
    sides_.clear();
    for (const auto& [face, labels] : labeled_) {
      for (int k = 0; k < 3; ++k) {
        std::pair<int, int> key{labels[k], labels[(k + 1) % 3]};
        if (!sides_.emplace(key, 3 * face + k).second)
          throw Error(ErrorCode::ConstructionInvariant, "directed side repeated; faces are not coherently oriented");
      }
    }
    for (const auto& [key, slot] : sides_) {
      auto [u, v] = key;
      if (u >= v) continue;
      auto it = sides_.find({v, u});
      if (it == sides_.end()) continue;
      pairs.push_back({Slot::from_id(slot), Slot::from_id(it->second), false});
    }
  }

  MetricSurface build() const { return build_surface(faces, pairs); }

 private:
  struct Labeled {
    int face;
    std::array<int, 3> labels;
  };
  std::vector<Labeled> labeled_;
  std::map<std::pair<int, int>, int> sides_;
};

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

double distance(const Vec3& a, const Vec3& b) { return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z); }

Vec3 sphere_point(double radius, double polar, double azimuth) {
  return {radius * std::sin(polar) * std::cos(azimuth), radius * std::sin(polar) * std::sin(azimuth),
          radius * std::cos(polar)};
}

/// Adds an inscribed hemisphere of the given radius. Equator vertex k has
/// label equator[k] and azimuth azimuth[k] (ascending from 0); the side from
/// equator k to k+1 gets length equator_length[k]. Equator sides run from
/// k+1 to k and stay unpaired. Returns the new face ids.
std::vector<int> add_cap(Builder& b, double radius, int n, const std::vector<int>& equator,
                         const std::vector<double>& azimuth, const std::vector<double>& equator_length, int label_base) {
  const int rings = (n + 3) / 4;
  const int k_count = static_cast<int>(equator.size());
  std::unordered_map<int, Vec3> where;
  std::unordered_map<int, int> equator_index;
  for (int k = 0; k < k_count; ++k) {
    where[equator[k]] = sphere_point(radius, kPi / 2, azimuth[k]);
    equator_index[equator[k]] = k;
  }
  const int pole = label_base;
  where[pole] = {0.0, 0.0, radius};
  auto ring_label = [&](int i, int j) { return label_base + 1 + (i - 1) * n + (j % n); };
  for (int i = 1; i < rings; ++i)
    for (int j = 0; j < n; ++j) where[ring_label(i, j)] = sphere_point(radius, kPi / 2 * i / rings, 2 * kPi * j / n);

  auto length = [&](int u, int v) {
    auto iu = equator_index.find(u);
    auto iv = equator_index.find(v);
    if (iu != equator_index.end() && iv != equator_index.end()) {
      int a = iu->second;
      int c = iv->second;
      if ((a + 1) % k_count == c) return equator_length[a];
      if ((c + 1) % k_count == a) return equator_length[c];
    }
    return distance(where.at(u), where.at(v));
  };
  std::vector<int> added;
  auto face = [&](int a, int c, int d) { added.push_back(b.add({a, c, d}, {length(a, c), length(c, d), length(d, a)})); };

  for (int j = 0; j < n; ++j) face(ring_label(1, j + 1), ring_label(1, j), pole);
  for (int i = 1; i + 1 < rings; ++i) {
    for (int j = 0; j < n; ++j) {
      face(ring_label(i + 1, j + 1), ring_label(i + 1, j), ring_label(i, j));
      face(ring_label(i + 1, j + 1), ring_label(i, j), ring_label(i, j + 1));
    }
  }
  // Zip the last ring to the equator by azimuth.
  int k = 0;
  int j = 0;
  while (k < k_count || j < n) {
    double next_eq = k < k_count ? (k + 1 < k_count ? azimuth[k + 1] : 2 * kPi) : kInfinity;
    double next_ring = j < n ? 2 * kPi * (j + 1) / n : kInfinity;
    if (next_eq <= next_ring) {
      face(equator[(k + 1) % k_count], equator[k % k_count], ring_label(rings - 1, j));
      ++k;
    } else {
      face(equator[k % k_count], ring_label(rings - 1, j), ring_label(rings - 1, j + 1));
      ++j;
    }
  }
  return added;
}

void check_resolution(double boundary_length, int n) {
  if (!(boundary_length > 0.0) || !std::isfinite(boundary_length))
    throw Error(ErrorCode::BadResolution, "boundary length must be positive");
  if (n < 8) throw Error(ErrorCode::BadResolution, "need n >= 8, got " + std::to_string(n));
}

struct HemisphereParts {
  Builder builder;
  std::vector<int> equator;
  double chord = 0.0;
};

HemisphereParts hemisphere_parts(double boundary_length, int n) {
  check_resolution(boundary_length, n);
  HemisphereParts h;
  const double radius = boundary_length / (2 * kPi);
  h.chord = 2 * radius * std::sin(kPi / n);
  std::vector<double> azimuth(n);
  for (int k = 0; k < n; ++k) {
    h.equator.push_back(k);
    azimuth[k] = 2 * kPi * k / n;
  }
  add_cap(h.builder, radius, n, h.equator, azimuth, std::vector<double>(n, h.chord), n);
  return h;
}

}  // namespace

FillingInstance hemisphere_mesh(double boundary_length, int n) {
  HemisphereParts h = hemisphere_parts(boundary_length, n);
  h.builder.match_labels();
  return make_filling(h.builder.build());
}

FillingInstance cylinder_hemisphere_filling(double boundary_length, double height, int n) {
  if (!(height >= 0.0) || !std::isfinite(height)) throw Error(ErrorCode::InvalidInput, "height must be >= 0");
  if (height == 0.0) return hemisphere_mesh(boundary_length, n);
  HemisphereParts h = hemisphere_parts(boundary_length, n);
  const int layers = std::max(1, static_cast<int>(std::ceil(height / h.chord)));
  const double rise = height / layers;
  const double diagonal = std::hypot(h.chord, rise);
  std::vector<int> upper = h.equator;
  int next_label = 1 << 20;
  for (int t = 0; t < layers; ++t) {
    std::vector<int> lower(n);
    for (int j = 0; j < n; ++j) lower[j] = next_label++;
    for (int j = 0; j < n; ++j) {
      int l0 = lower[j], l1 = lower[(j + 1) % n], u0 = upper[j], u1 = upper[(j + 1) % n];
      h.builder.add({l1, l0, u0}, {h.chord, rise, diagonal});
      h.builder.add({l1, u0, u1}, {diagonal, h.chord, rise});
    }
    upper = lower;
  }
  h.builder.match_labels();
  return make_filling(h.builder.build());
}

CapResult cap_with_hemisphere(const FillingInstance& f, int n) {
  const double total = f.boundary.length;
  check_resolution(total, n);
  CapResult out;
  out.filling_area = area(f.surface);

  MetricSurface base = f.surface;
  BoundaryParam bp = f.boundary;
  // Equator segments much longer than the cap's rings would break the
  // triangle inequality in the zipper band.
  std::vector<double> extra;
  const double target = total / n;
  for (int k = 0; k < bp.size(); ++k) {
    double l = bp.segment_length(base, k);
    int pieces = std::max(static_cast<int>(std::ceil(l / target - 1e-9)), bp.size() < 3 ? 3 : 1);
    for (int i = 1; i < pieces; ++i) extra.push_back(bp.positions[k] + l * i / pieces);
  }
  if (!extra.empty()) {
    RefinedBoundary r = refine_boundary(base, bp, extra);
    base = std::move(r.surface);
    bp = std::move(r.boundary);
    out.refined = true;
  }

  const int k_count = bp.size();
  Builder b(base);
  std::vector<int> equator(k_count);
  std::vector<double> azimuth(k_count);
  std::vector<double> lengths(k_count);
  for (int k = 0; k < k_count; ++k) {
    equator[k] = k;
    azimuth[k] = 2 * kPi * bp.positions[k] / bp.length;
    lengths[k] = bp.segment_length(base, k);
  }
  // Radius whose inscribed polygon at these azimuths has perimeter L.
  double unit_perimeter = 0.0;
  for (int k = 0; k < k_count; ++k) {
    double next = k + 1 < k_count ? azimuth[k + 1] : 2 * kPi;
    unit_perimeter += 2 * std::sin((next - azimuth[k]) / 2);
  }
  std::vector<int> cap_faces = add_cap(b, bp.length / unit_perimeter, n, equator, azimuth, lengths, k_count);
  b.match_labels();
  for (int k = 0; k < k_count; ++k) {
    int cap_slot = b.side(equator[(k + 1) % k_count], equator[k]);
    b.pairs.push_back({Slot::from_id(cap_slot), Slot::from_id(bp.slots[k]), !bp.forward[k]});
  }
  out.surface = b.build();
  for (int face : cap_faces) {
    const auto& l = out.surface.faces()[face].sides;
    out.cap_area += triangle_area(l[0], l[1], l[2]);
  }

  TopologySummary before = topology(f.surface);
  TopologySummary after = topology(out.surface);
  if (after.boundary_count != 0 || !after.orientable || after.euler_char != before.euler_char + 1)
    throw Error(ErrorCode::ConstructionInvariant, "capped surface has unexpected topology");
  return out;
}

namespace {

struct Point2 {
  double x = 0, y = 0;
};

double cross(Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }
double dist2(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Outer corners A, B, C and an inner equilateral triangle A', B', C' of
/// side `scale` about the centroid, all counterclockwise.
struct Annulus {
  std::array<Point2, 3> outer;
  std::array<Point2, 3> inner;
};

std::optional<Annulus> fit_annulus(const Face& face, double scale) {
  const double ab = face.sides[0], bc = face.sides[1], ca = face.sides[2];
  Annulus an;
  an.outer[0] = {0.0, 0.0};
  an.outer[1] = {ab, 0.0};
  double x = (ca * ca + ab * ab - bc * bc) / (2 * ab);
  double y2 = ca * ca - x * x;
  if (y2 <= 0) return std::nullopt;
  an.outer[2] = {x, std::sqrt(y2)};
  Point2 g{(an.outer[0].x + an.outer[1].x + an.outer[2].x) / 3, (an.outer[0].y + an.outer[1].y + an.outer[2].y) / 3};
  double radius = scale / std::sqrt(3.0);
  double theta = std::atan2(an.outer[0].y - g.y, an.outer[0].x - g.x);
  for (int k = 0; k < 3; ++k) {
    double a = theta + 2 * kPi * k / 3;
    an.inner[k] = {g.x + radius * std::cos(a), g.y + radius * std::sin(a)};
  }
  const double face_area = triangle_area(ab, bc, ca);
  for (int k = 0; k < 3; ++k) {
    const Point2 a = an.outer[k], b = an.outer[(k + 1) % 3];
    const Point2 ia = an.inner[k], ib = an.inner[(k + 1) % 3];
    if (cross(a, b, ib) <= 2e-3 * face_area || cross(a, ib, ia) <= 2e-3 * face_area) return std::nullopt;
  }
  return an;
}

}  // namespace

HandleResult attach_handles(const FillingInstance& f, int g_add, double scale) {
  if (g_add < 0) throw Error(ErrorCode::InvalidInput, "negative handle count");
  if (!(scale > 0.0)) throw Error(ErrorCode::InvalidInput, "handle scale must be positive");
  const MetricSurface& s = f.surface;
  HandleResult out;
  if (g_add == 0) {
    out.filling = f;
    return out;
  }

  std::vector<bool> on_boundary(s.vertex_count(), false);
  for (int v : f.boundary.vertices) on_boundary[v] = true;
  std::vector<bool> usable(s.face_count(), false);
  std::vector<std::pair<double, int>> ranked;
  for (int face = 0; face < s.face_count(); ++face) {
    int a = s.corner_vertex(face, 0), b = s.corner_vertex(face, 1), c = s.corner_vertex(face, 2);
    if (on_boundary[a] || on_boundary[b] || on_boundary[c] || a == b || b == c || a == c) continue;
    if (!fit_annulus(s.faces()[face], scale)) continue;
    usable[face] = true;
    ranked.push_back({-triangle_area(s.faces()[face].sides[0], s.faces()[face].sides[1], s.faces()[face].sides[2]), face});
  }
  std::sort(ranked.begin(), ranked.end());

  std::vector<bool> blocked(s.face_count(), false);  // used or sharing an edge with a used face
  auto take = [&](int face) {
    blocked[face] = true;
    out.faces_used.push_back(face);
    for (int k = 0; k < 3; ++k) {
      int p = s.partner(3 * face + k);
      if (p >= 0) blocked[p / 3] = true;
    }
  };
  for (int h = 0; h < g_add; ++h) {
    auto first = std::find_if(ranked.begin(), ranked.end(), [&](const auto& r) { return !blocked[r.second]; });
    if (first == ranked.end()) throw Error(ErrorCode::NoRoomForHandles, "not enough interior faces");
    int f1 = first->second;
    take(f1);
    // Nearest usable partner in the dual graph keeps the tube from acting
    // as a long-range shortcut.
    std::vector<bool> seen(s.face_count(), false);
    std::queue<int> queue;
    queue.push(f1);
    seen[f1] = true;
    int f2 = -1;
    while (!queue.empty() && f2 < 0) {
      int cur = queue.front();
      queue.pop();
      for (int k = 0; k < 3; ++k) {
        int p = s.partner(3 * cur + k);
        if (p < 0 || seen[p / 3]) continue;
        int g = p / 3;
        seen[g] = true;
        if (usable[g] && !blocked[g]) {
          f2 = g;
          break;
        }
        queue.push(g);
      }
    }
    if (f2 < 0) throw Error(ErrorCode::NoRoomForHandles, "no partner face for handle " + std::to_string(h));
    take(f2);
  }

  Builder b;
  b.faces.assign(s.faces().begin(), s.faces().end());
  std::vector<int> remap(s.slot_count());
  for (int i = 0; i < s.slot_count(); ++i) remap[i] = i;

  const double diag = std::sqrt(2.0) * scale;
  for (int q = 0; q < static_cast<int>(out.faces_used.size()); ++q) {
    const int face = out.faces_used[q];
    const Annulus an = *fit_annulus(s.faces()[face], scale);
    const int o = 10 * q;  // labels o+0..2 outer corners, o+3..5 inner corners
    auto outer = [&](int k) { return o + k % 3; };
    auto inner = [&](int k) { return o + 3 + k % 3; };
    for (int k = 0; k < 3; ++k) {
      Point2 a = an.outer[k], bb = an.outer[(k + 1) % 3], ia = an.inner[k], ib = an.inner[(k + 1) % 3];
      std::array<double, 3> first{s.faces()[face].sides[k], dist2(bb, ib), dist2(ib, a)};
      std::array<int, 3> first_labels{outer(k), outer(k + 1), inner(k + 1)};
      int id;
      if (k == 0) {
        id = face;
        b.set_face(face, first_labels, first);
      } else {
        id = b.add(first_labels, first);
        remap[3 * face + k] = 3 * id;
      }
      (void)id;
      b.add({outer(k), inner(k + 1), inner(k)}, {dist2(a, ib), dist2(ib, ia), dist2(ia, a)});
    }
  }
  for (int h = 0; h < g_add; ++h) {
    const int x0 = 10 * (2 * h) + 3;
    const int y0 = 10 * (2 * h + 1) + 3;
    auto x = [&](int k) { return x0 + k % 3; };
    auto y = [&](int k) { return y0 + (3 - k % 3) % 3; };
    for (int k = 0; k < 3; ++k) {
      b.add({x(k), x(k + 1), y(k + 1)}, {scale, scale, diag});
      b.add({x(k), y(k + 1), y(k)}, {diag, scale, scale});
    }
  }
  for (const Pairing& p : s.pairings())
    b.pairs.push_back({Slot::from_id(remap[p.a.id()]), Slot::from_id(remap[p.b.id()]), p.flipped});
  b.match_labels();

  out.filling = make_filling(b.build());
  if (out.filling.genus != f.genus + g_add)
    throw Error(ErrorCode::ConstructionInvariant, "handle attachment changed genus unexpectedly");
  out.area_excess = area(out.filling.surface) - area(f.surface);
  out.area_constant = out.area_excess / (g_add * scale * scale);
  return out;
}

GluingSpec auto_gluing_spec(double systole_length, double boundary_length, bool* clamped) {
  const double limit = (1.0 - 1e-3) * boundary_length / 2;
  bool clamp = systole_length > limit;
  if (clamped) *clamped = clamp;
  return {clamp ? limit : systole_length};
}

namespace {

struct Arc {
  int first = 0;  // segment indices [first, first + count) modulo K
  int count = 0;
};

int find_mark(const BoundaryParam& bp, double x, double tol) {
  for (int k = 0; k < bp.size(); ++k)
    if (std::abs(bp.positions[k] - x) <= tol) return k;
  if (std::abs(x - bp.length) <= tol) return 0;
  return -1;
}

}  // namespace

GlueResult glue(const FillingInstance& f, GluingSpec spec, GluingMode mode) {
  const BoundaryParam& bp = f.boundary;
  const double total = bp.length;
  const double half = total / 2;
  const double s = spec.s;
  if (!(s > 0.0 && s < half)) throw Error(ErrorCode::SpecOutOfRange, "need 0 < s < L/2, got s = " + std::to_string(s));
  const bool orientable = mode == GluingMode::Orientable;
  const double tol = 1e-9 * total;

  // Image of x under the identification of the arc containing it.
  auto mirror = [&](double x) {
    if (x <= s || (x >= half && x <= half + s)) return half + s - x;
    if (orientable) return total + s - x;
    return x < half ? x + half : x - half;
  };
  std::vector<double> wanted{0.0, s, half, half + s};
  for (double x : bp.positions) wanted.push_back(mirror(x));
  for (double& x : wanted) {
    x = std::fmod(x + total, total);
    if (total - x <= tol) x = 0.0;
  }
  std::sort(wanted.begin(), wanted.end());
  std::vector<double> fresh;
  for (double x : wanted) {
    auto near = std::lower_bound(bp.positions.begin(), bp.positions.end(), x - tol);
    if (near != bp.positions.end() && std::abs(*near - x) <= tol) continue;
    if (x <= tol) continue;
    if (!fresh.empty() && x - fresh.back() <= tol) continue;
    fresh.push_back(x);
  }
  RefinedBoundary refined = refine_boundary(f.surface, bp, fresh);
  const BoundaryParam& rb = refined.boundary;

  const int ip = find_mark(rb, 0.0, 4 * tol), iq = find_mark(rb, s, 4 * tol);
  const int ip2 = find_mark(rb, half, 4 * tol), iq2 = find_mark(rb, half + s, 4 * tol);
  if (ip < 0 || iq < 0 || ip2 < 0 || iq2 < 0) throw Error(ErrorCode::SubdivisionMismatch, "marked point missing");
  const int k_count = rb.size();
  auto span_of = [&](int from, int to) { return Arc{from, ((to - from) % k_count + k_count) % k_count}; };
  const Arc pq = span_of(ip, iq), p2q2 = span_of(ip2, iq2), qp2 = span_of(iq, ip2), q2p = span_of(iq2, ip);

  std::vector<Face> faces(refined.surface.faces().begin(), refined.surface.faces().end());
  std::vector<Pairing> pairs = refined.surface.pairings();
  auto seg = [&](const Arc& a, int i) { return (a.first + i) % k_count; };
  auto identify = [&](const Arc& x, const Arc& y, bool reversed) {
    if (x.count != y.count) throw Error(ErrorCode::SubdivisionMismatch, "identified arcs have different vertex counts");
    for (int i = 0; i < x.count; ++i) {
      int kx = seg(x, i);
      int ky = reversed ? seg(y, y.count - 1 - i) : seg(y, i);
      int sx = rb.slots[kx], sy = rb.slots[ky];
      double lx = faces[sx / 3].sides[sx % 3];
      double& ly = faces[sy / 3].sides[sy % 3];
      if (std::abs(lx - ly) > 1e-6 * std::max(lx, ly))
        throw Error(ErrorCode::SubdivisionMismatch, "identified segments differ in length");
      ly = lx;
      bool same_walk = rb.forward[kx] == rb.forward[ky];
      pairs.push_back({Slot::from_id(sx), Slot::from_id(sy), reversed ? !same_walk : same_walk});
    }
  };
  identify(pq, p2q2, true);
  identify(qp2, q2p, orientable);

  GlueResult out;
  out.s = s;
  out.surface = build_surface(std::move(faces), pairs);
  TopologySummary before = topology(f.surface);
  TopologySummary after = topology(out.surface);
  if (after.boundary_count != 0 || after.orientable != orientable || after.euler_char != before.euler_char - 1)
    throw Error(ErrorCode::ConstructionInvariant, "glued surface has unexpected topology");

  std::vector<DirectedEdge> loop;
  for (int i = 0; i < pq.count; ++i) {
    int slot = rb.slots[seg(pq, i)];
    bool walk = rb.forward[seg(pq, i)];
    loop.push_back({out.surface.edge_of_slot(slot), out.surface.slot_forward(slot) == walk});
  }
  out.pq_loop = make_loop(out.surface, std::move(loop));
  return out;
}

GlueResult glue_orientable(const FillingInstance& f, GluingSpec spec) { return glue(f, spec, GluingMode::Orientable); }

GlueResult glue_nonorientable(const FillingInstance& f, GluingSpec spec) {
  return glue(f, spec, GluingMode::NonOrientable);
}

}  // namespace ssl
