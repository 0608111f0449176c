#include "ssl/pi1.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>

namespace ssl {

Word free_reduce(std::span<const int> w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word cyclic_reduce(std::span<const int> w) {
  Word r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + lo, r.begin() + hi);
}

Word inverse_word(std::span<const int> w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

std::vector<long> exponent_sums(std::span<const int> w, int generator_count) {
  std::vector<long> sums(generator_count, 0);
  for (int x : w) sums[std::abs(x) - 1] += x > 0 ? 1 : -1;
  return sums;
}

std::string_view kind_name(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::Free: return "free";
    case SurfaceKind::Torus: return "torus";
    case SurfaceKind::HyperbolicOrientable: return "hyperbolic-orientable";
    case SurfaceKind::NonOrientable: return "non-orientable";
  }
  return "unknown";
}

namespace {

void append_word(Word& out, std::span<const int> w, bool forward) {
  if (forward) {
    for (int x : w) {
      if (!out.empty() && out.back() == -x)
        out.pop_back();
      else
        out.push_back(x);
    }
  } else {
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      int x = -*it;
      if (!out.empty() && out.back() == -x)
        out.pop_back();
      else
        out.push_back(x);
    }
  }
}

}  // namespace

TreeCotree tree_cotree(const MetricSurface& s) {
  const int ne = s.edge_count();
  const int nf = s.face_count();
  TreeCotree tc;
  tc.role.assign(ne, EdgeRole::Generator);

  std::vector<bool> seen(s.vertex_count(), false);
  std::queue<int> queue;
  seen[0] = true;
  queue.push(0);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    for (auto inc : s.incidences(v)) {
      const Edge& e = s.edge(inc.edge);
      int w = inc.forward ? e.head : e.tail;
      if (seen[w]) continue;
      seen[w] = true;
      tc.role[inc.edge] = EdgeRole::Tree;
      queue.push(w);
    }
  }

  const bool bounded = !s.boundary_slots().empty();
  const int outer = nf;
  const int nodes = bounded ? nf + 1 : nf;
  auto node_edges = [&](int node) {
    std::vector<int> out;
    if (node == outer) {
      for (int slot : s.boundary_slots()) out.push_back(s.edge_of_slot(slot));
    } else {
      for (int k = 0; k < 3; ++k) out.push_back(s.edge_of_slot(3 * node + k));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto other_node = [&](int e, int node) {
    const Edge& ed = s.edge(e);
    int a = ed.rep_slot / 3;
    int b = ed.on_boundary() ? outer : ed.twin_slot / 3;
    return node == a ? b : a;
  };

  std::vector<int> parent_edge(nodes, -1);
  std::vector<bool> reached(nodes, false);
  std::vector<int> order;
  const int root = bounded ? outer : 0;
  reached[root] = true;
  queue.push(root);
  while (!queue.empty()) {
    int node = queue.front();
    queue.pop();
    order.push_back(node);
    for (int e : node_edges(node)) {
      if (tc.role[e] != EdgeRole::Generator) continue;
      int other = other_node(e, node);
      if (reached[other]) continue;
      reached[other] = true;
      tc.role[e] = EdgeRole::Cotree;
      parent_edge[other] = e;
      queue.push(other);
    }
  }

  tc.edge_words.assign(ne, {});
  for (int e = 0; e < ne; ++e) {
    switch (tc.role[e]) {
      case EdgeRole::Tree: tc.tree_edges.push_back(e); break;
      case EdgeRole::Cotree: tc.cotree_edges.push_back(e); break;
      case EdgeRole::Generator:
        tc.generator_edges.push_back(e);
        tc.edge_words[e] = {static_cast<int>(tc.generator_edges.size())};
        break;
    }
  }

  auto face_word_except = [&](int face, int skip_side) {
    Word w;
    for (int j = 1; j <= 2; ++j) {
      int slot = 3 * face + (skip_side + j) % 3;
      append_word(w, tc.edge_words[s.edge_of_slot(slot)], s.slot_forward(slot));
    }
    return w;
  };

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int face = *it;
    int e = parent_edge[face];
    if (e < 0) continue;
    int side = 0;
    while (s.edge_of_slot(3 * face + side) != e) ++side;
    // Around the face the side words multiply to 1.
    Word w = inverse_word(face_word_except(face, side));
    tc.edge_words[e] = s.slot_forward(3 * face + side) ? w : inverse_word(w);
  }

  SchemaPresentation& pres = tc.presentation;
  pres.generator_count = static_cast<int>(tc.generator_edges.size());
  TopologySummary topo = topology(s);
  if (bounded) {
    pres.kind = SurfaceKind::Free;
  } else {
    Word r;
    for (int k = 0; k < 3; ++k) append_word(r, tc.edge_words[s.edge_of_slot(k)], s.slot_forward(k));
    pres.relator = cyclic_reduce(r);
    if (pres.generator_count == 0)
      pres.kind = SurfaceKind::Sphere;
    else if (!topo.orientable)
      pres.kind = SurfaceKind::NonOrientable;
    else if (topo.euler_char == 0)
      pres.kind = SurfaceKind::Torus;
    else
      pres.kind = SurfaceKind::HyperbolicOrientable;
  }
  return tc;
}

Word loop_word(const MetricSurface& s, std::span<const DirectedEdge> loop, const TreeCotree& basis) {
  validate_loop(s, loop);
  Word w;
  for (DirectedEdge d : loop) append_word(w, basis.edge_words[d.edge], d.forward);
  return w;
}

Word dehn_reduce(std::span<const int> w, std::span<const int> relator) {
  Word cur = cyclic_reduce(w);
  const int r = static_cast<int>(relator.size());
  if (r == 0) return cur;
  std::vector<Word> rotations;
  const Word forward(relator.begin(), relator.end());
  const Word inv = inverse_word(relator);
  for (const Word* base : {&forward, &inv}) {
    for (int i = 0; i < r; ++i) {
      Word rot(r);
      for (int j = 0; j < r; ++j) rot[j] = (*base)[(i + j) % r];
      rotations.push_back(std::move(rot));
    }
  }

  bool progress = true;
  while (progress && !cur.empty()) {
    progress = false;
    const int n = static_cast<int>(cur.size());
    for (int i = 0; i < n && !progress; ++i) {
      for (const Word& rot : rotations) {
        int limit = std::min(n, r);
        int k = 0;
        while (k < limit && cur[(i + k) % n] == rot[k]) ++k;
        if (2 * k <= r) continue;
        // rot = u v with u matched; u = v^-1 in the group.
        Word next;
        next.reserve(n - k + r - k);
        for (int j = k; j < n; ++j) next.push_back(cur[(i + j) % n]);
        for (int j = r - 1; j >= k; --j) next.push_back(-rot[j]);
        cur = cyclic_reduce(next);
        progress = true;
        break;
      }
    }
  }
  return cur;
}

Pi1Engine::Pi1Engine(MetricSurface s) : surface_(std::move(s)), basis_(tree_cotree(surface_)) {
  if (basis_.presentation.kind == SurfaceKind::NonOrientable) {
    cover_ = std::make_unique<DoubleCover>(double_cover(surface_));
    cover_engine_ = std::make_unique<Pi1Engine>(cover_->cover);
  }
}

Pi1Engine::~Pi1Engine() = default;

bool Pi1Engine::simply_connected() const { return basis_.presentation.generator_count == 0; }

ContractibilityCertificate Pi1Engine::check(std::span<const DirectedEdge> loop) const {
  validate_loop(surface_, loop);
  return check_unchecked(loop);
}

ContractibilityCertificate Pi1Engine::check_unchecked(std::span<const DirectedEdge> loop) const {
  ContractibilityCertificate cert;
  const SchemaPresentation& pres = basis_.presentation;
  if (pres.kind == SurfaceKind::NonOrientable) {
    EdgeLoop base_loop{std::vector<DirectedEdge>(loop.begin(), loop.end()), 0.0};
    LiftedPath lift = lift_loop(*cover_, surface_, base_loop, 0);
    Word w;
    for (DirectedEdge d : loop) append_word(w, basis_.edge_words[d.edge], d.forward);
    cert.homology = exponent_sums(w, pres.generator_count);
    if (!lift.closed) {
      cert.contractible = false;
      cert.method = "orientation-reversing";
      cert.witness = cyclic_reduce(w);
      return cert;
    }
    ContractibilityCertificate up = cover_engine_->check_unchecked(lift.edges);
    cert.contractible = up.contractible;
    cert.method = "cover:" + up.method;
    cert.witness = std::move(up.witness);
    return cert;
  }

  Word w;
  for (DirectedEdge d : loop) append_word(w, basis_.edge_words[d.edge], d.forward);
  cert.homology = exponent_sums(w, pres.generator_count);
  switch (pres.kind) {
    case SurfaceKind::Sphere:
      cert.method = "sphere";
      cert.contractible = true;
      break;
    case SurfaceKind::Free:
      cert.method = "free";
      cert.witness = cyclic_reduce(w);
      cert.contractible = cert.witness.empty();
      break;
    case SurfaceKind::Torus:
      cert.method = "homology";
      cert.witness = cyclic_reduce(w);
      cert.contractible = std::all_of(cert.homology.begin(), cert.homology.end(), [](long x) { return x == 0; });
      break;
    case SurfaceKind::HyperbolicOrientable:
      cert.method = "dehn";
      cert.witness = dehn_reduce(w, pres.relator);
      cert.contractible = cert.witness.empty();
      break;
    case SurfaceKind::NonOrientable: break;
  }
  return cert;
}

ContractibilityCertificate is_contractible(const MetricSurface& s, const EdgeLoop& loop) {
  Pi1Engine engine(s);
  return engine.check(loop);
}

}  // namespace ssl
