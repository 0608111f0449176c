#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ssl/cover.hpp"
#include "ssl/loop.hpp"
#include "ssl/surface.hpp"

namespace ssl {

/// Word in the generators of a tree-cotree basis. Symbol +k / -k stands for
/// generator k-1 and its inverse.
using Word = std::vector<int>;

Word free_reduce(std::span<const int> w);
Word cyclic_reduce(std::span<const int> w);
Word inverse_word(std::span<const int> w);
/// Exponent sum of each generator.
std::vector<long> exponent_sums(std::span<const int> w, int generator_count);

enum class SurfaceKind { Sphere, Free, Torus, HyperbolicOrientable, NonOrientable };
std::string_view kind_name(SurfaceKind kind);

struct SchemaPresentation {
  int generator_count = 0;
  Word relator;  // empty when the surface has boundary
  SurfaceKind kind = SurfaceKind::Free;
};

enum class EdgeRole : unsigned char { Tree, Cotree, Generator };

struct TreeCotree {
  std::vector<EdgeRole> role;       // per edge
  std::vector<int> tree_edges;
  std::vector<int> cotree_edges;
  std::vector<int> generator_edges;  // generator k is generator_edges[k]
  std::vector<Word> edge_words;     // word of each edge in its canonical direction
  SchemaPresentation presentation;
};

/// Primal BFS tree from vertex 0, dual BFS cotree over the remaining edges
/// (rooted at a virtual boundary node when the surface has boundary), and
/// the leftover generator edges.
TreeCotree tree_cotree(const MetricSurface& s);

Word loop_word(const MetricSurface& s, std::span<const DirectedEdge> loop, const TreeCotree& basis);

/// Dehn's algorithm on cyclic words for a relator whose pieces have length
/// at most |r|/6. Returns the irreducible cyclic word; empty iff trivial.
Word dehn_reduce(std::span<const int> w, std::span<const int> relator);

struct ContractibilityCertificate {
  bool contractible = false;
  std::string method;          // "free", "sphere", "homology", "dehn", "cover:..." or "orientation-reversing"
  Word witness;                // reduced word (in the cover's basis for the cover route)
  std::vector<long> homology;  // exponent sums where meaningful
};

/// Precomputed contractibility decision procedure for one surface.
class Pi1Engine {
 public:
  explicit Pi1Engine(MetricSurface s);
  ~Pi1Engine();
  Pi1Engine(const Pi1Engine&) = delete;
  Pi1Engine& operator=(const Pi1Engine&) = delete;

  const MetricSurface& surface() const { return surface_; }
  const TreeCotree& basis() const { return basis_; }
  const SchemaPresentation& presentation() const { return basis_.presentation; }
  bool simply_connected() const;

  ContractibilityCertificate check(std::span<const DirectedEdge> loop) const;
  ContractibilityCertificate check(const EdgeLoop& loop) const { return check(loop.edges); }
  /// Skips loop validation; for hot loops whose closedness is known.
  ContractibilityCertificate check_unchecked(std::span<const DirectedEdge> loop) const;

 private:
  MetricSurface surface_;
  TreeCotree basis_;
  std::unique_ptr<DoubleCover> cover_;
  std::unique_ptr<Pi1Engine> cover_engine_;
};

ContractibilityCertificate is_contractible(const MetricSurface& s, const EdgeLoop& loop);

}  // namespace ssl
