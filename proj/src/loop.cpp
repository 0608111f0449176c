#include "ssl/loop.hpp"

#include <algorithm>

namespace ssl {

double path_length(const MetricSurface& s, std::span<const DirectedEdge> edges) {
  std::vector<double> lengths;
  lengths.reserve(edges.size());
  for (DirectedEdge d : edges) lengths.push_back(s.edge(d.edge).length);
  std::sort(lengths.begin(), lengths.end());
  double total = 0.0;
  for (double l : lengths) total += l;
  return total;
}

void validate_loop(const MetricSurface& s, std::span<const DirectedEdge> edges) {
  for (DirectedEdge d : edges)
    if (d.edge < 0 || d.edge >= s.edge_count())
      throw Error(ErrorCode::LoopNotOnSurface, "edge " + std::to_string(d.edge) + " does not exist");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    DirectedEdge next = edges[(i + 1) % edges.size()];
    if (dir_head(s, edges[i]) != dir_tail(s, next))
      throw Error(ErrorCode::LoopNotOnSurface, "edges " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                                   " are not consecutive");
  }
}

EdgeLoop make_loop(const MetricSurface& s, std::vector<DirectedEdge> edges) {
  validate_loop(s, edges);
  EdgeLoop loop;
  loop.length = path_length(s, edges);
  loop.edges = std::move(edges);
  return loop;
}

EdgeLoop reverse_loop(const MetricSurface& s, const EdgeLoop& loop) {
  std::vector<DirectedEdge> rev;
  for (auto it = loop.edges.rbegin(); it != loop.edges.rend(); ++it) rev.push_back(it->reversed());
  return make_loop(s, std::move(rev));
}

EdgeLoop concat_loops(const MetricSurface& s, const EdgeLoop& a, const EdgeLoop& b) {
  std::vector<DirectedEdge> edges = a.edges;
  edges.insert(edges.end(), b.edges.begin(), b.edges.end());
  return make_loop(s, std::move(edges));
}

std::vector<int> loop_vertices(const MetricSurface& s, const EdgeLoop& loop) {
  std::vector<int> out;
  for (DirectedEdge d : loop.edges) out.push_back(dir_tail(s, d));
  return out;
}

std::string format_loop(const MetricSurface& s, const EdgeLoop& loop) {
  std::string out;
  for (int v : loop_vertices(s, loop)) out += std::to_string(v) + " ";
  if (!loop.edges.empty()) out += std::to_string(dir_tail(s, loop.edges.front()));
  return out;
}

}  // namespace ssl
