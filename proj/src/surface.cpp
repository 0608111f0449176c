#include "ssl/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

namespace ssl {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

int head_corner(int slot) { return 3 * (slot / 3) + (slot % 3 + 1) % 3; }

bool valid_slot(const Slot& s, int faces) {
  return s.face >= 0 && s.face < faces && s.side >= 0 && s.side < 3;
}

std::string slot_text(const Slot& s) {
  return "(" + std::to_string(s.face) + "," + std::to_string(s.side) + ")";
}

}  // namespace

bool MetricSurface::slot_forward(int slot) const {
  const Edge& e = edges_[slot_edge_[slot]];
  if (e.rep_slot == slot) return true;
  return flipped(slot);
}

std::span<const MetricSurface::Incidence> MetricSurface::incidences(int v) const {
  return std::span<const Incidence>(incidence_.data() + incidence_offset_[v],
                                    incidence_offset_[v + 1] - incidence_offset_[v]);
}

std::vector<Pairing> MetricSurface::pairings() const {
  std::vector<Pairing> out;
  for (int slot = 0; slot < slot_count(); ++slot) {
    int p = partner_[slot];
    if (p > slot) out.push_back({Slot::from_id(slot), Slot::from_id(p), flipped(slot)});
  }
  return out;
}

std::vector<int> MetricSurface::boundary_slots() const {
  std::vector<int> out;
  for (int slot = 0; slot < slot_count(); ++slot)
    if (partner_[slot] < 0) out.push_back(slot);
  return out;
}

MetricSurface build_surface(std::vector<Face> faces, std::span<const Pairing> pairings) {
  const int nf = static_cast<int>(faces.size());
  if (nf == 0) throw Error(ErrorCode::InvalidInput, "surface has no faces");
  for (int f = 0; f < nf; ++f)
    for (double l : faces[f].sides)
      if (!std::isfinite(l) || l <= 0.0)
        throw Error(ErrorCode::InvalidInput, "face " + std::to_string(f) + " has a non-positive side");

  MetricSurface s;
  s.partner_.assign(3 * nf, -1);
  s.flipped_.assign(3 * nf, 0);
  for (const Pairing& p : pairings) {
    if (!valid_slot(p.a, nf) || !valid_slot(p.b, nf))
      throw Error(ErrorCode::InvalidInput, "pairing refers to missing slot " + slot_text(p.a) + "-" + slot_text(p.b));
    int a = p.a.id();
    int b = p.b.id();
    if (a == b) throw Error(ErrorCode::NonManifold, "slot " + slot_text(p.a) + " paired with itself");
    if (s.partner_[a] >= 0 || s.partner_[b] >= 0)
      throw Error(ErrorCode::NonManifold, "slot paired more than once in " + slot_text(p.a) + "-" + slot_text(p.b));
    s.partner_[a] = b;
    s.partner_[b] = a;
    s.flipped_[a] = s.flipped_[b] = p.flipped ? 1 : 0;

    double& la = faces[a / 3].sides[a % 3];
    double& lb = faces[b / 3].sides[b % 3];
    if (std::abs(la - lb) > 1e-9 * std::max(la, lb))
      throw Error(ErrorCode::LengthMismatch, slot_text(p.a) + " has length " + std::to_string(la) + " but " +
                                                 slot_text(p.b) + " has " + std::to_string(lb));
    if (a < b)
      lb = la;
    else
      la = lb;
  }

  for (int f = 0; f < nf; ++f) {
    auto [a, b, c] = faces[f].sides;
    if (!(a < b + c && b < a + c && c < a + b))
      throw Error(ErrorCode::TriangleInequality, "face " + std::to_string(f) + " is degenerate");
  }

  DisjointSets face_sets(nf);
  for (int slot = 0; slot < 3 * nf; ++slot)
    if (s.partner_[slot] >= 0) face_sets.unite(slot / 3, s.partner_[slot] / 3);
  for (int f = 1; f < nf; ++f)
    if (face_sets.find(f) != face_sets.find(0)) throw Error(ErrorCode::Disconnected, "face " + std::to_string(f));

  DisjointSets corners(3 * nf);
  for (int a = 0; a < 3 * nf; ++a) {
    int b = s.partner_[a];
    if (b < a) continue;
    if (s.flipped_[a]) {
      corners.unite(a, b);
      corners.unite(head_corner(a), head_corner(b));
    } else {
      corners.unite(a, head_corner(b));
      corners.unite(head_corner(a), b);
    }
  }
  s.corner_vertex_.assign(3 * nf, -1);
  std::vector<int> root_vertex(3 * nf, -1);
  for (int c = 0; c < 3 * nf; ++c) {
    int r = corners.find(c);
    if (root_vertex[r] < 0) root_vertex[r] = s.vertex_count_++;
    s.corner_vertex_[c] = root_vertex[r];
  }

  s.faces_ = std::move(faces);
  s.slot_edge_.assign(3 * nf, -1);
  for (int slot = 0; slot < 3 * nf; ++slot) {
    int p = s.partner_[slot];
    if (p >= 0 && p < slot) continue;
    Edge e;
    e.rep_slot = slot;
    e.twin_slot = p;
    e.tail = s.slot_tail(slot);
    e.head = s.slot_head(slot);
    e.length = s.side_length(slot);
    int id = static_cast<int>(s.edges_.size());
    s.slot_edge_[slot] = id;
    if (p >= 0) s.slot_edge_[p] = id;
    s.edges_.push_back(e);
  }

  std::vector<int> degree(s.vertex_count_ + 1, 0);
  for (const Edge& e : s.edges_) {
    ++degree[e.tail];
    ++degree[e.head];
  }
  s.incidence_offset_.assign(s.vertex_count_ + 1, 0);
  for (int v = 0; v < s.vertex_count_; ++v) s.incidence_offset_[v + 1] = s.incidence_offset_[v] + degree[v];
  s.incidence_.resize(s.incidence_offset_.back());
  std::vector<int> fill(s.incidence_offset_.begin(), s.incidence_offset_.end() - 1);
  for (int id = 0; id < s.edge_count(); ++id) {
    const Edge& e = s.edges_[id];
    s.incidence_[fill[e.tail]++] = {id, true};
    s.incidence_[fill[e.head]++] = {id, false};
  }
  return s;
}

std::vector<int> face_orientation(const MetricSurface& s, bool* orientable) {
  std::vector<int> sign(s.face_count(), 0);
  bool ok = true;
  std::queue<int> queue;
  sign[0] = 1;
  queue.push(0);
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop();
    for (int k = 0; k < 3; ++k) {
      int slot = 3 * f + k;
      int p = s.partner(slot);
      if (p < 0) continue;
      int g = p / 3;
      int want = s.flipped(slot) ? -sign[f] : sign[f];
      if (sign[g] == 0) {
        sign[g] = want;
        queue.push(g);
      } else if (sign[g] != want) {
        ok = false;
      }
    }
  }
  if (orientable) *orientable = ok;
  return sign;
}

TopologySummary topology(const MetricSurface& s) {
  TopologySummary t;
  t.euler_char = s.vertex_count() - s.edge_count() + s.face_count();
  face_orientation(s, &t.orientable);

  std::vector<int> bslots = s.boundary_slots();
  DisjointSets comps(static_cast<int>(bslots.size()));
  std::vector<int> first_at_vertex(s.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(bslots.size()); ++i) {
    for (int v : {s.slot_tail(bslots[i]), s.slot_head(bslots[i])}) {
      if (first_at_vertex[v] < 0)
        first_at_vertex[v] = i;
      else
        comps.unite(first_at_vertex[v], i);
    }
  }
  for (int i = 0; i < static_cast<int>(bslots.size()); ++i)
    if (comps.find(i) == i) ++t.boundary_count;

  int deficit = 2 - t.euler_char - t.boundary_count;
  t.genus = t.orientable ? deficit / 2 : deficit;
  return t;
}

double triangle_area(double a, double b, double c) {
  // Kahan's ordering of Heron's formula.
  if (a < b) std::swap(a, b);
  if (b < c) std::swap(b, c);
  if (a < b) std::swap(a, b);
  double p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return 0.25 * std::sqrt(std::max(p, 0.0));
}

double area(const MetricSurface& s) {
  double total = 0.0;
  for (const Face& f : s.faces()) total += triangle_area(f.sides[0], f.sides[1], f.sides[2]);
  return total;
}

MetricSurface split_boundary_side(const MetricSurface& s, int slot, double t) {
  if (slot < 0 || slot >= s.slot_count() || s.partner(slot) >= 0)
    throw Error(ErrorCode::NotBoundary, "slot " + std::to_string(slot));
  if (!(t > kSplitTolerance && t < 1.0 - kSplitTolerance))
    throw Error(ErrorCode::DegenerateSplit, "t = " + std::to_string(t));

  const int f = slot / 3;
  const int k = slot % 3;
  const int fresh = s.face_count();
  const Face& old = s.faces()[f];
  const double ab = old.sides[k];
  const double bc = old.sides[(k + 1) % 3];
  const double ca = old.sides[(k + 2) % 3];
  // Stewart's theorem for the cevian from C to the point at fraction t on AB.
  const double cevian = std::sqrt(std::max(t * bc * bc + (1.0 - t) * ca * ca - t * (1.0 - t) * ab * ab, 0.0));

  std::vector<Face> faces(s.faces().begin(), s.faces().end());
  faces[f].sides = {t * ab, cevian, ca};
  faces.push_back(Face{{(1.0 - t) * ab, bc, cevian}});

  auto remap = [&](int id) -> Slot {
    if (id / 3 != f) return Slot::from_id(id);
    int side = id % 3;
    if (side == (k + 1) % 3) return {fresh, 1};
    return {f, 2};  // side (k + 2) % 3; side k is the split boundary slot
  };
  std::vector<Pairing> pairs;
  for (const Pairing& p : s.pairings()) pairs.push_back({remap(p.a.id()), remap(p.b.id()), p.flipped});
  pairs.push_back({{f, 1}, {fresh, 2}, false});
  return build_surface(std::move(faces), pairs);
}

double BoundaryParam::circle_distance(double x, double y) const {
  double d = std::fmod(std::abs(x - y), length);
  return std::min(d, length - d);
}

BoundaryParam boundary_param(const MetricSurface& s) {
  TopologySummary t = topology(s);
  if (t.boundary_count != 1)
    throw Error(ErrorCode::WrongBoundaryCount, "expected one boundary, found " + std::to_string(t.boundary_count));

  struct End {
    int slot;
    bool is_tail;
  };
  std::vector<std::vector<End>> ends(s.vertex_count());
  std::vector<int> bslots = s.boundary_slots();
  for (int slot : bslots) {
    ends[s.slot_tail(slot)].push_back({slot, true});
    ends[s.slot_head(slot)].push_back({slot, false});
  }

  BoundaryParam bp;
  int cur = bslots.front();
  bool fwd = true;
  double pos = 0.0;
  for (std::size_t guard = 0; guard <= bslots.size(); ++guard) {
    int from = fwd ? s.slot_tail(cur) : s.slot_head(cur);
    int to = fwd ? s.slot_head(cur) : s.slot_tail(cur);
    bp.vertices.push_back(from);
    bp.positions.push_back(pos);
    bp.slots.push_back(cur);
    bp.forward.push_back(fwd);
    pos += s.side_length(cur);

    const auto& here = ends[to];
    if (here.size() != 2) throw Error(ErrorCode::NonManifold, "boundary vertex without an arc link");
    bool arrived_tail = !fwd;
    const End& next = (here[0].slot == cur && here[0].is_tail == arrived_tail) ? here[1] : here[0];
    cur = next.slot;
    fwd = next.is_tail;
    if (cur == bp.slots.front() && fwd == bp.forward.front()) {
      bp.length = pos;
      return bp;
    }
  }
  throw Error(ErrorCode::NonManifold, "boundary walk did not close");
}

MetricSurface scaled(const MetricSurface& s, double factor) {
  std::vector<Face> faces(s.faces().begin(), s.faces().end());
  for (Face& f : faces)
    for (double& l : f.sides) l *= factor;
  return build_surface(std::move(faces), s.pairings());
}

MetricSurface permute_faces(const MetricSurface& s, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != s.face_count()) throw Error(ErrorCode::InvalidInput, "bad permutation");
  std::vector<int> where(perm.size());
  std::vector<Face> faces(perm.size());
  for (int i = 0; i < static_cast<int>(perm.size()); ++i) {
    faces[i] = s.faces()[perm[i]];
    where[perm[i]] = i;
  }
  std::vector<Pairing> pairs;
  for (const Pairing& p : s.pairings())
    pairs.push_back({{where[p.a.face], p.a.side}, {where[p.b.face], p.b.side}, p.flipped});
  return build_surface(std::move(faces), pairs);
}

}  // namespace ssl

namespace ssl {

RefinedBoundary refine_boundary(const MetricSurface& s, const BoundaryParam& bp, std::vector<double> positions) {
  std::sort(positions.begin(), positions.end());
  const int k0 = bp.size();
  // Walk fractions still to insert, per current segment.
  std::vector<std::vector<double>> pending(k0);
  for (double x : positions) {
    if (!(x > 0.0 && x < bp.length)) throw Error(ErrorCode::InvalidInput, "position outside the boundary");
    int k = static_cast<int>(std::upper_bound(bp.positions.begin(), bp.positions.end(), x) - bp.positions.begin()) - 1;
    double l = bp.segment_length(s, k);
    pending[k].push_back((x - bp.positions[k]) / l);
  }

  MetricSurface cur = s;
  BoundaryParam cb = bp;
  while (std::any_of(pending.begin(), pending.end(), [](const auto& p) { return !p.empty(); })) {
    std::vector<Face> faces(cur.faces().begin(), cur.faces().end());
    std::vector<int> remap(cur.slot_count());
    std::iota(remap.begin(), remap.end(), 0);
    std::vector<bool> face_busy(cur.face_count(), false);
    std::vector<Pairing> cevians;
    std::vector<std::vector<int>> pieces(cb.size());  // new slots in walk order

    for (int k = 0; k < cb.size(); ++k) {
      if (pending[k].empty()) continue;
      int slot = cb.slots[k];
      int f = slot / 3;
      if (face_busy[f]) continue;
      face_busy[f] = true;

      std::vector<double> ts;
      for (double u : pending[k]) ts.push_back(cb.forward[k] ? u : 1.0 - u);
      std::sort(ts.begin(), ts.end());
      double prev = 0.0;
      for (double t : ts) {
        if (t - prev <= kSplitTolerance) throw Error(ErrorCode::DegenerateSplit, "points too close on a boundary side");
        prev = t;
      }
      if (1.0 - prev <= kSplitTolerance) throw Error(ErrorCode::DegenerateSplit, "point too close to a corner");

      const int side = slot % 3;
      const Face old = cur.faces()[f];
      const double ab = old.sides[side];
      const double bc = old.sides[(side + 1) % 3];
      const double ca = old.sides[(side + 2) % 3];
      auto cevian = [&](double t) {
        return std::sqrt(std::max(t * bc * bc + (1.0 - t) * ca * ca - t * (1.0 - t) * ab * ab, 0.0));
      };
      ts.insert(ts.begin(), 0.0);
      ts.push_back(1.0);
      std::vector<int> piece_faces;
      for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        double left = i == 0 ? ca : cevian(ts[i]);
        double right = i + 2 == ts.size() ? bc : cevian(ts[i + 1]);
        Face piece{{(ts[i + 1] - ts[i]) * ab, right, left}};
        if (i == 0) {
          faces[f] = piece;
          piece_faces.push_back(f);
        } else {
          piece_faces.push_back(static_cast<int>(faces.size()));
          faces.push_back(piece);
        }
      }
      for (std::size_t i = 0; i + 1 < piece_faces.size(); ++i)
        cevians.push_back({{piece_faces[i], 1}, {piece_faces[i + 1], 2}, false});
      remap[3 * f + (side + 1) % 3] = 3 * piece_faces.back() + 1;
      remap[3 * f + (side + 2) % 3] = 3 * f + 2;
      remap[slot] = -1;
      for (int pf : piece_faces) pieces[k].push_back(3 * pf);
      if (!cb.forward[k]) std::reverse(pieces[k].begin(), pieces[k].end());
    }

    std::vector<Pairing> pairs;
    for (const Pairing& p : cur.pairings())
      pairs.push_back({Slot::from_id(remap[p.a.id()]), Slot::from_id(remap[p.b.id()]), p.flipped});
    pairs.insert(pairs.end(), cevians.begin(), cevians.end());
    MetricSurface next = build_surface(std::move(faces), pairs);

    BoundaryParam nb;
    std::vector<std::vector<double>> next_pending;
    for (int k = 0; k < cb.size(); ++k) {
      if (!pieces[k].empty()) {
        for (int ps : pieces[k]) {
          nb.slots.push_back(ps);
          nb.forward.push_back(cb.forward[k]);
          next_pending.emplace_back();
        }
      } else {
        nb.slots.push_back(remap[cb.slots[k]]);
        nb.forward.push_back(cb.forward[k]);
        next_pending.push_back(std::move(pending[k]));
      }
    }
    double pos = 0.0;
    for (std::size_t k = 0; k < nb.slots.size(); ++k) {
      int slot = nb.slots[k];
      nb.vertices.push_back(nb.forward[k] ? next.slot_tail(slot) : next.slot_head(slot));
      nb.positions.push_back(pos);
      pos += next.side_length(slot);
    }
    nb.length = pos;
    cur = std::move(next);
    cb = std::move(nb);
    pending = std::move(next_pending);
  }
  return {std::move(cur), std::move(cb)};
}

}  // namespace ssl
