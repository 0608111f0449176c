#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "ssl/loop.hpp"
#include "ssl/pi1.hpp"
#include "ssl/surface.hpp"

namespace fixtures {

using ssl::Face;
using ssl::MetricSurface;
using ssl::Pairing;
using ssl::Slot;

inline constexpr double kPi = std::numbers::pi;

/// Orientable surface from labeled triangles; u->v pairs with v->u.
inline MetricSurface from_labels(const std::vector<std::array<int, 3>>& tris,
                                 const std::vector<std::array<double, 3>>& sides) {
  std::vector<Face> faces;
  std::map<std::pair<int, int>, int> slot;
  for (size_t f = 0; f < tris.size(); ++f) {
    faces.push_back(Face{sides[f]});
    for (int k = 0; k < 3; ++k) slot[{tris[f][k], tris[f][(k + 1) % 3]}] = static_cast<int>(3 * f + k);
  }
  std::vector<Pairing> pairs;
  for (auto [key, a] : slot) {
    if (key.first >= key.second) continue;
    auto it = slot.find({key.second, key.first});
    if (it != slot.end()) pairs.push_back({Slot::from_id(a), Slot::from_id(it->second), false});
  }
  return ssl::build_surface(faces, pairs);
}

inline MetricSurface doubled_triangle() {
  std::vector<Face> faces{Face{{1, 1, 1}}, Face{{1, 1, 1}}};
  // Second face is the mirror copy: side k of face 1 runs opposite to side k of face 0.
  std::vector<Pairing> pairs{{{0, 0}, {1, 0}, false}, {{0, 1}, {1, 2}, false}, {{0, 2}, {1, 1}, false}};
  return ssl::build_surface(faces, pairs);
}

/// Unit square with opposite sides identified by translation.
inline MetricSurface torus_schema() {
  const double d = std::sqrt(2.0);
  std::vector<Face> faces{Face{{1, 1, d}}, Face{{d, 1, 1}}};
  std::vector<Pairing> pairs{{{0, 2}, {1, 0}, false}, {{0, 0}, {1, 1}, false}, {{0, 1}, {1, 2}, false}};
  return ssl::build_surface(faces, pairs);
}

/// Unit-area flat torus cut into an n x n grid of squares, n >= 3.
inline MetricSurface flat_torus(int n) {
  const double h = 1.0 / n;
  const double d = std::sqrt(2.0) * h;
  auto id = [n](int i, int j) { return ((i % n + n) % n) * n + (j % n + n) % n; };
  std::vector<std::array<int, 3>> tris;
  std::vector<std::array<double, 3>> sides;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), e = id(i, j + 1);
      tris.push_back({a, b, c});
      sides.push_back({h, h, d});
      tris.push_back({a, c, e});
      sides.push_back({d, h, h});
    }
  }
  return from_labels(tris, sides);
}

/// Flat torus from an n x n grid of equilateral triangles (hexagonal lattice), n >= 3.
inline MetricSurface hex_torus(int n, double side = 1.0) {
  auto id = [n](int i, int j) { return ((i % n + n) % n) * n + (j % n + n) % n; };
  std::vector<std::array<int, 3>> tris;
  std::vector<std::array<double, 3>> sides;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      tris.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
      tris.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
      sides.push_back({side, side, side});
      sides.push_back({side, side, side});
    }
  }
  return from_labels(tris, sides);
}

/// Polygon schema fanned from a central vertex. Letter +k / -k is edge k
/// traversed forward / backward; 0 is a boundary side.
struct Schema {
  MetricSurface surface;
  std::vector<int> word;
};

inline Schema polygon_schema(const std::vector<int>& word, double side = 1.0) {
  const int n = static_cast<int>(word.size());
  double spoke = side / (2 * std::sin(kPi / std::max(n, 3)));
  spoke = std::max(spoke, side);
  std::vector<Face> faces(n, Face{{spoke, side, spoke}});
  std::vector<Pairing> pairs;
  for (int k = 0; k < n; ++k) pairs.push_back({{k, 2}, {(k + 1) % n, 0}, false});
  for (int i = 0; i < n; ++i) {
    if (word[i] == 0) continue;
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(word[j]) != std::abs(word[i])) continue;
      pairs.push_back({{i, 1}, {j, 1}, word[i] == word[j]});
    }
  }
  return {ssl::build_surface(faces, pairs), word};
}

inline Schema rp2() { return polygon_schema({1, 2, 1, 2}); }
inline Schema klein() { return polygon_schema({1, 2, -1, 2}); }
inline Schema crosscap3() { return polygon_schema({1, 1, 2, 2, 3, 3}); }
inline Schema torus_fan() { return polygon_schema({1, 2, -1, -2}); }
inline Schema genus2() { return polygon_schema({1, 2, -1, -2, 3, 4, -3, -4}); }
inline Schema annulus() { return polygon_schema({1, 0, -1, 0}); }
inline Schema mobius() { return polygon_schema({1, 0, 1, 0}); }
inline Schema punctured_torus() { return polygon_schema({1, 2, -1, -2, 0}); }
inline Schema pants() { return polygon_schema({1, 0, -1, 2, 0, -2, 0}); }

/// Same combinatorics with the given per-edge lengths.
inline MetricSurface with_edge_lengths(const MetricSurface& s, const std::vector<double>& lengths) {
  std::vector<Face> faces(s.faces().begin(), s.faces().end());
  for (int slot = 0; slot < s.slot_count(); ++slot) faces[slot / 3].sides[slot % 3] = lengths[s.edge_of_slot(slot)];
  return ssl::build_surface(faces, s.pairings());
}

/// Random edge lengths in [1, 1.5); any such assignment satisfies the triangle inequality.
inline MetricSurface randomized(const MetricSurface& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(1.0, 1.5);
  std::vector<double> lengths(s.edge_count());
  for (double& l : lengths) l = dist(rng);
  return with_edge_lengths(s, lengths);
}

/// Prism cylinder of equilateral triangles: circumference 3, one band.
inline MetricSurface cylinder_prism() {
  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < 3; ++j) {
    int l0 = j, l1 = (j + 1) % 3, u0 = 3 + j, u1 = 3 + (j + 1) % 3;
    tris.push_back({l0, l1, u0});
    tris.push_back({l1, u1, u0});
  }
  return from_labels(tris, std::vector<std::array<double, 3>>(6, {1, 1, 1}));
}

/// Fan disk: centre plus n points on a circle of radius r.
inline MetricSurface fan_disk(int n, double r = 1.0) {
  const double chord = 2 * r * std::sin(kPi / n);
  std::vector<std::array<int, 3>> tris;
  for (int k = 0; k < n; ++k) tris.push_back({n, k, (k + 1) % n});
  return from_labels(tris, std::vector<std::array<double, 3>>(n, {r, chord, r}));
}

// ---- independent contractibility oracle over the schema letters ----

using Word = std::vector<int>;

inline Word reduce(Word w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  while (out.size() >= 2 && out.front() == -out.back()) {
    out.erase(out.begin());
    out.pop_back();
  }
  return out;
}

inline Word invert(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

/// Relator and per-slot words in the schema letters. Boundary sides get
/// their own letters 100 + position.
struct SchemaGroup {
  Word relator;
  std::vector<Word> slot_word;
};

inline SchemaGroup schema_group(const Schema& sc) {
  const int n = static_cast<int>(sc.word.size());
  std::vector<int> letter(n);
  for (int k = 0; k < n; ++k) letter[k] = sc.word[k] != 0 ? sc.word[k] : 100 + k;
  SchemaGroup g;
  g.relator.assign(letter.begin(), letter.end());
  std::vector<Word> prefix(n + 1);
  for (int k = 0; k < n; ++k) {
    prefix[k + 1] = prefix[k];
    prefix[k + 1].push_back(letter[k]);
  }
  g.slot_word.resize(3 * n);
  for (int k = 0; k < n; ++k) {
    g.slot_word[3 * k + 0] = prefix[k];                     // centre -> P_k
    g.slot_word[3 * k + 1] = {letter[k]};                   // P_k -> P_{k+1}
    g.slot_word[3 * k + 2] = invert(prefix[k + 1]);         // P_{k+1} -> centre
  }
  return g;
}

inline Word schema_loop_word(const Schema& sc, const SchemaGroup& g, const ssl::EdgeLoop& loop) {
  Word w;
  for (auto d : loop.edges) {
    const Word& e = g.slot_word[sc.surface.edge(d.edge).rep_slot];
    Word part = d.forward ? e : invert(e);
    w.insert(w.end(), part.begin(), part.end());
  }
  return reduce(w);
}

/// True when the exponent vector of w is an integer multiple of the relator's.
inline bool homologically_trivial(const Word& w, const Word& relator) {
  std::map<int, long> ew, er;
  for (int x : w) ew[std::abs(x)] += x > 0 ? 1 : -1;
  for (int x : relator) er[std::abs(x)] += x > 0 ? 1 : -1;
  std::erase_if(ew, [](auto& p) { return p.second == 0; });
  std::erase_if(er, [](auto& p) { return p.second == 0; });
  if (ew.empty()) return true;
  if (er.empty()) return false;
  auto [key, rv] = *er.begin();
  long wv = ew.count(key) ? ew[key] : 0;
  if (wv % rv != 0) return false;
  long t = wv / rv;
  std::set<int> keys;
  for (auto& p : ew) keys.insert(p.first);
  for (auto& p : er) keys.insert(p.first);
  for (int k : keys) {
    long a = ew.count(k) ? ew[k] : 0;
    long b = er.count(k) ? er[k] : 0;
    if (a != t * b) return false;
  }
  return true;
}

inline Word canonical_rotation(const Word& w) {
  Word best = w;
  for (size_t i = 1; i < w.size(); ++i) {
    Word r(w.begin() + i, w.end());
    r.insert(r.end(), w.begin(), w.begin() + i);
    best = std::min(best, r);
  }
  return best;
}

/// Breadth-first rewriting by relator pieces, with words capped at
/// |w| + |R| letters. A found reduction proves triviality.
inline bool schema_trivial(const Word& word, const Word& relator, size_t visit_limit = 20000) {
  Word w = reduce(word);
  if (w.empty()) return true;
  if (!homologically_trivial(w, relator)) return false;
  const size_t cap = w.size() + relator.size();
  std::vector<Word> rels;
  for (const Word& base : {relator, invert(relator)}) {
    for (size_t i = 0; i < base.size(); ++i) {
      Word r(base.begin() + i, base.end());
      r.insert(r.end(), base.begin(), base.begin() + i);
      rels.push_back(r);
    }
  }
  std::set<Word> seen{canonical_rotation(w)};
  std::deque<Word> queue{w};
  while (!queue.empty() && seen.size() < visit_limit) {
    Word cur = queue.front();
    queue.pop_front();
    const size_t n = cur.size();
    for (size_t i = 0; i < n; ++i) {
      Word rot(cur.begin() + i, cur.end());
      rot.insert(rot.end(), cur.begin(), cur.begin() + i);
      for (const Word& r : rels) {
        for (size_t l = 1; l <= std::min(n, r.size()); ++l) {
          if (rot[l - 1] != r[l - 1]) break;
          Word next = invert(Word(r.begin() + l, r.end()));
          next.insert(next.end(), rot.begin() + l, rot.end());
          next = reduce(next);
          if (next.empty()) return true;
          if (next.size() > cap) continue;
          if (seen.insert(canonical_rotation(next)).second) queue.push_back(next);
        }
      }
    }
  }
  return false;
}

/// Random closed walk: k random steps from v, then a breadth-first path home.
inline ssl::EdgeLoop random_loop(const MetricSurface& s, std::mt19937_64& rng, int steps) {
  std::uniform_int_distribution<int> pick_vertex(0, s.vertex_count() - 1);
  int start = pick_vertex(rng);
  int at = start;
  std::vector<ssl::DirectedEdge> edges;
  for (int i = 0; i < steps; ++i) {
    auto inc = s.incidences(at);
    std::uniform_int_distribution<size_t> pick(0, inc.size() - 1);
    auto c = inc[pick(rng)];
    edges.push_back({c.edge, c.forward});
    at = ssl::dir_head(s, edges.back());
  }
  std::vector<int> parent_edge(s.vertex_count(), -2);
  std::vector<bool> parent_forward(s.vertex_count(), false);
  std::deque<int> queue{start};
  parent_edge[start] = -1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (auto c : s.incidences(u)) {
      int w = ssl::dir_head(s, {c.edge, c.forward});
      if (parent_edge[w] != -2) continue;
      parent_edge[w] = c.edge;
      parent_forward[w] = c.forward;
      queue.push_back(w);
    }
  }
  std::vector<ssl::DirectedEdge> back;
  for (int v = at; v != start;) {
    ssl::DirectedEdge d{parent_edge[v], parent_forward[v]};
    back.push_back(d.reversed());
    v = ssl::dir_tail(s, d);
  }
  edges.insert(edges.end(), back.begin(), back.end());
  if (edges.empty()) {
    auto c = s.incidences(start)[0];
    edges = {{c.edge, c.forward}, {c.edge, !c.forward}};
  }
  return ssl::make_loop(s, edges);
}

/// Boundary of one face as a closed loop, which is always contractible.
inline ssl::EdgeLoop face_loop(const MetricSurface& s, int face) {
  std::vector<ssl::DirectedEdge> edges;
  for (int k = 0; k < 3; ++k) {
    int slot = 3 * face + k;
    edges.push_back({s.edge_of_slot(slot), s.slot_forward(slot)});
  }
  return ssl::make_loop(s, edges);
}

}  // namespace fixtures
