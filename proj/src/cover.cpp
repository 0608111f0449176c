#include "ssl/cover.hpp"

namespace ssl {
namespace {

// Sheet 1 reverses each triangle: new side i lies over old side 2 - i and
// new corner j over old corner {0, 2, 1}[j].
constexpr std::array<int, 3> kReversedCorner = {0, 2, 1};

}  // namespace

DoubleCover double_cover(const MetricSurface& base) {
  if (topology(base).orientable) throw Error(ErrorCode::AlreadyOrientable, "surface is orientable");

  const int nf = base.face_count();
  std::vector<Face> faces(2 * nf);
  for (int f = 0; f < nf; ++f) {
    const auto& l = base.faces()[f].sides;
    faces[f].sides = l;
    faces[f + nf].sides = {l[2], l[1], l[0]};
  }
  auto sheet_slot = [nf](int base_slot, int sheet) -> Slot {
    int f = base_slot / 3;
    int k = base_slot % 3;
    return sheet == 0 ? Slot{f, k} : Slot{f + nf, 2 - k};
  };
  std::vector<Pairing> pairs;
  for (const Pairing& p : base.pairings()) {
    int a = p.a.id();
    int b = p.b.id();
    if (!p.flipped) {
      pairs.push_back({sheet_slot(a, 0), sheet_slot(b, 0), false});
      pairs.push_back({sheet_slot(a, 1), sheet_slot(b, 1), false});
    } else {
      pairs.push_back({sheet_slot(a, 0), sheet_slot(b, 1), false});
      pairs.push_back({sheet_slot(a, 1), sheet_slot(b, 0), false});
    }
  }

  DoubleCover dc;
  dc.base_faces = nf;
  dc.cover = build_surface(std::move(faces), pairs);
  const MetricSurface& cov = dc.cover;

  dc.slot_projection.resize(cov.slot_count());
  for (int slot = 0; slot < cov.slot_count(); ++slot) {
    int f = slot / 3;
    int k = slot % 3;
    dc.slot_projection[slot] = f < nf ? slot : 3 * (f - nf) + (2 - k);
  }

  dc.vertex_projection.assign(cov.vertex_count(), -1);
  dc.vertex_lifts.assign(base.vertex_count(), {-1, -1});
  for (int sheet = 0; sheet < 2; ++sheet) {
    for (int f = 0; f < nf; ++f) {
      for (int j = 0; j < 3; ++j) {
        int cf = f + sheet * nf;
        int bv = base.corner_vertex(f, sheet == 0 ? j : kReversedCorner[j]);
        int cv = cov.corner_vertex(cf, j);
        dc.vertex_projection[cv] = bv;
        auto& lifts = dc.vertex_lifts[bv];
        if (sheet == 0 && lifts[0] < 0) lifts[0] = cv;
      }
    }
  }
  for (int cv = 0; cv < cov.vertex_count(); ++cv) {
    auto& lifts = dc.vertex_lifts[dc.vertex_projection[cv]];
    if (cv != lifts[0]) lifts[1] = cv;
  }

  dc.edge_projection.resize(cov.edge_count());
  dc.edge_projection_agrees.resize(cov.edge_count());
  for (int ce = 0; ce < cov.edge_count(); ++ce) {
    int rep = cov.edge(ce).rep_slot;
    int bslot = dc.slot_projection[rep];
    bool sheet0 = rep / 3 < nf;
    dc.edge_projection[ce] = base.edge_of_slot(bslot);
    dc.edge_projection_agrees[ce] = base.slot_forward(bslot) == sheet0;
  }
  dc.edge_lifts.resize(base.edge_count());
  for (int e = 0; e < base.edge_count(); ++e) {
    int rep = base.edge(e).rep_slot;
    dc.edge_lifts[e] = {cov.edge_of_slot(sheet_slot(rep, 0).id()), cov.edge_of_slot(sheet_slot(rep, 1).id())};
  }
  return dc;
}

LiftedPath lift_loop(const DoubleCover& dc, const MetricSurface& base, const EdgeLoop& loop, int sheet) {
  validate_loop(base, loop.edges);
  LiftedPath out;
  if (loop.edges.empty()) return out;
  const MetricSurface& cov = dc.cover;
  int cur = dc.vertex_lifts[dir_tail(base, loop.edges.front())][sheet];
  out.start = cur;
  for (DirectedEdge d : loop.edges) {
    bool found = false;
    for (int ce : dc.edge_lifts[d.edge]) {
      DirectedEdge cd{ce, d.forward == dc.edge_projection_agrees[ce]};
      if (dir_tail(cov, cd) == cur) {
        out.edges.push_back(cd);
        cur = dir_head(cov, cd);
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorCode::ConstructionInvariant, "edge lift does not start at the current vertex");
  }
  out.end = cur;
  out.closed = out.end == out.start;
  out.length = path_length(cov, out.edges);
  return out;
}

EdgeLoop project_loop(const DoubleCover& dc, const MetricSurface& base, const EdgeLoop& cover_loop) {
  validate_loop(dc.cover, cover_loop.edges);
  std::vector<DirectedEdge> edges;
  for (DirectedEdge d : cover_loop.edges)
    edges.push_back({dc.edge_projection[d.edge], d.forward == dc.edge_projection_agrees[d.edge]});
  return make_loop(base, std::move(edges));
}

}  // namespace ssl
