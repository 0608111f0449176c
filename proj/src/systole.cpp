#include "ssl/systole.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <queue>
#include <tuple>

#include "ssl/parallel.hpp"

namespace ssl {

std::vector<DirectedEdge> ShortestPathTree::path_to(const MetricSurface& s, int v) const {
  std::vector<DirectedEdge> rev;
  while (v != source) {
    int e = parent_edge[v];
    const Edge& ed = s.edge(e);
    // The edge enters v from parent_vertex[v].
    bool forward = ed.head == v && ed.tail == parent_vertex[v];
    rev.push_back({e, forward});
    v = parent_vertex[v];
  }
  return {rev.rbegin(), rev.rend()};
}

bool ShortestPathTree::is_tree_edge(const MetricSurface& s, int e) const {
  const Edge& ed = s.edge(e);
  return parent_edge[ed.tail] == e || parent_edge[ed.head] == e;
}

ShortestPathTree shortest_paths(const MetricSurface& s, int source, double cutoff) {
  const int nv = s.vertex_count();
  ShortestPathTree t;
  t.source = source;
  t.dist.assign(nv, kInfinity);
  t.parent_edge.assign(nv, -1);
  t.parent_vertex.assign(nv, -1);
  std::vector<bool> done(nv, false);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  t.dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u] || d > t.dist[u]) continue;
    if (d > cutoff) break;
    done[u] = true;
    for (auto inc : s.incidences(u)) {
      const Edge& e = s.edge(inc.edge);
      int w = inc.forward ? e.head : e.tail;
      if (done[w]) continue;
      double nd = d + e.length;
      bool better = nd < t.dist[w] ||
                    (nd == t.dist[w] && std::tie(u, inc.edge) < std::tie(t.parent_vertex[w], t.parent_edge[w]));
      if (!better) continue;
      t.dist[w] = nd;
      t.parent_edge[w] = inc.edge;
      t.parent_vertex[w] = u;
      heap.push({nd, w});
    }
  }
  for (int v = 0; v < nv; ++v) {
    if (!done[v]) {
      t.dist[v] = kInfinity;
      t.parent_edge[v] = -1;
      t.parent_vertex[v] = -1;
    }
  }
  return t;
}

namespace {

constexpr double kSlack = 1e-9;

struct Best {
  double length = kInfinity;
  int vertex = -1;
  int edge = -1;
  std::vector<DirectedEdge> loop;
  ContractibilityCertificate cert;

  bool improves(double len, int v, int e) const {
    return std::tie(len, v, e) < std::tie(length, vertex, edge);
  }
};

class SharedBest {
 public:
  explicit SharedBest(double bound) : bound_(bound) {}

  double bound() const { return bound_.load(std::memory_order_relaxed); }

  void offer(double len, int v, int e, std::vector<DirectedEdge> loop, ContractibilityCertificate cert) {
    std::lock_guard lock(mutex_);
    if (!best_.improves(len, v, e)) return;
    best_ = {len, v, e, std::move(loop), std::move(cert)};
    if (len < bound_.load()) bound_.store(len);
  }

  const Best& result() const { return best_; }

 private:
  std::atomic<double> bound_;
  std::mutex mutex_;
  Best best_;
};

void search_from(const Pi1Engine& engine, int v, SharedBest& shared) {
  const MetricSurface& s = engine.surface();
  double bound = shared.bound();
  ShortestPathTree tree = shortest_paths(s, v, bound * (1 + kSlack));

  struct Candidate {
    double estimate;
    int edge;
  };
  std::vector<Candidate> cands;
  for (int e = 0; e < s.edge_count(); ++e) {
    const Edge& ed = s.edge(e);
    if (tree.dist[ed.tail] == kInfinity || tree.dist[ed.head] == kInfinity) continue;
    if (tree.is_tree_edge(s, e)) continue;
    double est = tree.dist[ed.tail] + ed.length + tree.dist[ed.head];
    if (est <= bound * (1 + kSlack)) cands.push_back({est, e});
  }
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) { return std::tie(a.estimate, a.edge) < std::tie(b.estimate, b.edge); });

  double local_best = kInfinity;
  for (const Candidate& c : cands) {
    double limit = std::min(shared.bound(), local_best);
    if (c.estimate > limit * (1 + kSlack)) break;
    const Edge& ed = s.edge(c.edge);
    std::vector<DirectedEdge> loop = tree.path_to(s, ed.tail);
    loop.push_back({c.edge, true});
    std::vector<DirectedEdge> back = tree.path_to(s, ed.head);
    for (auto it = back.rbegin(); it != back.rend(); ++it) loop.push_back(it->reversed());
    ContractibilityCertificate cert = engine.check_unchecked(loop);
    if (cert.contractible) continue;
    double len = path_length(s, loop);
    local_best = std::min(local_best, len);
    shared.offer(len, v, c.edge, std::move(loop), std::move(cert));
  }
}

SystoleResult finish(const MetricSurface& s, const Best& b) {
  SystoleResult r;
  r.loop = make_loop(s, b.loop);
  r.length = r.loop.length;
  r.base_vertex = b.vertex;
  r.edge = b.edge;
  r.certificate = b.cert;
  return r;
}

}  // namespace

SystoleResult systole(const Pi1Engine& engine, const SystoleOptions& options) {
  const MetricSurface& s = engine.surface();
  if (engine.simply_connected()) throw Error(ErrorCode::SimplyConnected, "pi_1 is trivial");
  const int threads = options.threads > 0 ? options.threads : thread_count();

  double total = 0.0;
  double shortest = kInfinity;
  for (const Edge& e : s.edges()) {
    total += e.length;
    shortest = std::min(shortest, e.length);
  }
  // Every fundamental loop of a BFS tree is shorter than twice the total.
  const double ceiling = std::min(options.upper_bound, 2.0 * total + shortest);
  double bound = std::min(4.0 * shortest, ceiling);
  while (true) {
    SharedBest shared(bound);
    parallel_for(s.vertex_count(), threads, [&](int v) { search_from(engine, v, shared); });
    if (shared.result().vertex >= 0) return finish(s, shared.result());
    if (bound >= ceiling) break;
    bound = std::min(2.0 * bound, ceiling);
  }
  if (options.upper_bound < kInfinity)
    throw Error(ErrorCode::InvalidInput, "no non-contractible loop within the supplied upper bound");
  throw Error(ErrorCode::SimplyConnected, "no non-contractible loop found");
}

SystoleResult systole(const MetricSurface& s, const SystoleOptions& options) {
  Pi1Engine engine(s);
  return systole(engine, options);
}

SystoleResult brute_force_systole(const Pi1Engine& engine, double cap) {
  const MetricSurface& s = engine.surface();
  if (s.edge_count() > kBruteForceEdgeLimit)
    throw Error(ErrorCode::TooLarge, std::to_string(s.edge_count()) + " edges");
  if (engine.simply_connected()) throw Error(ErrorCode::SimplyConnected, "pi_1 is trivial");

  Best best;
  best.length = cap;
  std::vector<DirectedEdge> walk;
  for (int v = 0; v < s.vertex_count(); ++v) {
    std::vector<double> home = shortest_paths(s, v).dist;
    // Depth-first over non-backtracking walks that can still close within the bound.
    auto dfs = [&](auto&& self, int at, double len) -> void {
      for (auto inc : s.incidences(at)) {
        DirectedEdge d{inc.edge, inc.forward};
        if (!walk.empty() && d == walk.back().reversed()) continue;
        int to = dir_head(s, d);
        double next = len + s.edge(d.edge).length;
        if (next + home[to] > best.length * (1 + kSlack)) continue;
        walk.push_back(d);
        if (to == v) {
          ContractibilityCertificate cert = engine.check_unchecked(walk);
          if (!cert.contractible) {
            double exact = path_length(s, walk);
            // Earlier base vertices and earlier walks keep ties.
            bool wins = best.vertex < 0 ? exact <= cap : exact < best.length;
            if (wins) best = {exact, v, walk.front().edge, walk, std::move(cert)};
          }
        } else {
          self(self, to, next);
        }
        walk.pop_back();
      }
    };
    dfs(dfs, v, 0.0);
  }
  if (best.vertex < 0) throw Error(ErrorCode::CapTooSmall, "no non-contractible loop of length <= " + std::to_string(cap));
  return finish(s, best);
}

SystoleResult brute_force_systole(const MetricSurface& s, double cap) {
  Pi1Engine engine(s);
  return brute_force_systole(engine, cap);
}

double systolic_ratio(const SystoleResult& sys, double surface_area) { return sys.length * sys.length / surface_area; }

double systolic_ratio(const MetricSurface& s) { return systolic_ratio(systole(s), area(s)); }

FillingInstance make_filling(MetricSurface s) {
  TopologySummary t = topology(s);
  if (t.boundary_count != 1)
    throw Error(ErrorCode::WrongBoundaryCount, "a filling needs one boundary, found " + std::to_string(t.boundary_count));
  if (!t.orientable) throw Error(ErrorCode::InvalidInput, "a filling must be orientable");
  FillingInstance f;
  f.boundary = boundary_param(s);
  f.genus = t.genus;
  f.surface = std::move(s);
  return f;
}

IsometryAudit is_isometric_filling(const FillingInstance& f, double tol, int threads) {
  const MetricSurface& s = f.surface;
  if (topology(s).boundary_count != 1) throw Error(ErrorCode::WrongBoundaryCount, "audit needs one boundary");
  const BoundaryParam& bp = f.boundary;
  const int k = bp.size();

  struct Row {
    double deficit = -kInfinity;
    int other = -1;
  };
  std::vector<Row> rows(k);
  parallel_for(k, threads > 0 ? threads : thread_count(), [&](int i) {
    ShortestPathTree t = shortest_paths(s, bp.vertices[i]);
    for (int j = i + 1; j < k; ++j) {
      double deficit = bp.circle_distance(bp.positions[i], bp.positions[j]) - t.dist[bp.vertices[j]];
      if (deficit > rows[i].deficit) rows[i] = {deficit, j};
    }
  });

  IsometryAudit audit;
  audit.max_deficit = 0.0;
  audit.tolerance = tol;
  audit.boundary_length = bp.length;
  for (int i = 0; i < k; ++i) {
    audit.refinement = std::max(audit.refinement, bp.segment_length(s, i));
    if (rows[i].other >= 0 && (audit.worst_a < 0 || rows[i].deficit > audit.max_deficit)) {
      audit.max_deficit = rows[i].deficit;
      audit.worst_a = i;
      audit.worst_b = rows[i].other;
    }
  }
  audit.passes = audit.max_deficit <= tol;
  return audit;
}

}  // namespace ssl
