#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "ssl/cover.hpp"
#include "ssl/pi1.hpp"

using namespace ssl;
using namespace fixtures;

TEST(Words, FreeReduce) {
  EXPECT_EQ(free_reduce(Word{1, 2, -2, -1, 3}), (Word{3}));
  EXPECT_EQ(free_reduce(Word{1, -1}), Word{});
  Word w{2, 1, -1, 3, -3, -2, 4};
  EXPECT_EQ(free_reduce(free_reduce(w)), free_reduce(w));
}

TEST(Words, CyclicReduceAndInverse) {
  EXPECT_EQ(cyclic_reduce(Word{-1, 2, 3, 1}), (Word{2, 3}));
  EXPECT_EQ(inverse_word(Word{1, -2, 3}), (Word{-3, 2, -1}));
  EXPECT_EQ(exponent_sums(Word{1, 2, -1, 2}, 2), (std::vector<long>{0, 2}));
}

TEST(Dehn, Genus2RelatorIsTrivial) {
  Word r{1, 2, -1, -2, 3, 4, -3, -4};
  EXPECT_TRUE(dehn_reduce(r, r).empty());
  EXPECT_TRUE(dehn_reduce(inverse_word(r), r).empty());
  // Conjugates and cyclic rotations of the relator.
  Word rot{3, 4, -3, -4, 1, 2, -1, -2};
  EXPECT_TRUE(dehn_reduce(rot, r).empty());
  Word conj{2, 1, 2, -1, -2, 3, 4, -3, -4, -2};
  EXPECT_TRUE(dehn_reduce(conj, r).empty());
}

TEST(Dehn, LongerThanHalfPieceIsReplaced) {
  Word r{1, 2, -1, -2, 3, 4, -3, -4};
  // Five letters of the relator equal the inverse of the other three.
  Word w{1, 2, -1, -2, 3};
  EXPECT_EQ(dehn_reduce(w, r), cyclic_reduce(inverse_word(Word{4, -3, -4})));
}

TEST(Dehn, NonTrivialWordsSurvive) {
  Word r{1, 2, -1, -2, 3, 4, -3, -4};
  EXPECT_FALSE(dehn_reduce(Word{1}, r).empty());
  EXPECT_FALSE(dehn_reduce(Word{1, 2, -1, -2}, r).empty());  // a separating curve
  EXPECT_FALSE(dehn_reduce(Word{1, 3}, r).empty());
}

TEST(TreeCotree, GeneratorCount) {
  struct Case {
    MetricSurface s;
    int generators;
  };
  std::vector<Case> cases{{doubled_triangle(), 0}, {torus_schema(), 2}, {genus2().surface, 4},
                          {klein().surface, 2},    {rp2().surface, 1},   {crosscap3().surface, 3},
                          {pants().surface, 2},    {annulus().surface, 1}, {fan_disk(6), 0},
                          {flat_torus(4), 2}};
  for (const Case& c : cases) {
    TreeCotree tc = tree_cotree(c.s);
    EXPECT_EQ(tc.presentation.generator_count, c.generators);
    EXPECT_EQ(static_cast<int>(tc.tree_edges.size()), c.s.vertex_count() - 1);
    int total = tc.tree_edges.size() + tc.cotree_edges.size() + tc.generator_edges.size();
    EXPECT_EQ(total, c.s.edge_count());
  }
}

TEST(TreeCotree, KindDispatch) {
  EXPECT_EQ(tree_cotree(doubled_triangle()).presentation.kind, SurfaceKind::Sphere);
  EXPECT_EQ(tree_cotree(flat_torus(3)).presentation.kind, SurfaceKind::Torus);
  EXPECT_EQ(tree_cotree(genus2().surface).presentation.kind, SurfaceKind::HyperbolicOrientable);
  EXPECT_EQ(tree_cotree(klein().surface).presentation.kind, SurfaceKind::NonOrientable);
  EXPECT_EQ(tree_cotree(pants().surface).presentation.kind, SurfaceKind::Free);
}

TEST(TreeCotree, RelatorOfClosedOrientableHasZeroExponents) {
  for (const MetricSurface& s : {genus2().surface, flat_torus(3), torus_schema()}) {
    TreeCotree tc = tree_cotree(s);
    for (long e : exponent_sums(tc.presentation.relator, tc.presentation.generator_count)) EXPECT_EQ(e, 0);
    EXPECT_EQ(tc.presentation.relator.size(), 2u * tc.presentation.generator_count);
  }
}

TEST(Contractible, FaceBoundariesAreTrivial) {
  for (const Schema& sc : {genus2(), klein(), rp2(), crosscap3(), pants(), mobius(), torus_fan()}) {
    Pi1Engine engine(sc.surface);
    for (int f = 0; f < sc.surface.face_count(); ++f)
      EXPECT_TRUE(engine.check(face_loop(sc.surface, f)).contractible) << f;
  }
}

TEST(Contractible, SchemaLettersAreEssential) {
  // Each polygon side is a closed loop at the single polygon vertex.
  for (const Schema& sc : {genus2(), klein(), rp2(), crosscap3(), torus_fan(), pants()}) {
    Pi1Engine engine(sc.surface);
    for (int k = 0; k < static_cast<int>(sc.word.size()); ++k) {
      if (sc.word[k] == 0) continue;
      int slot = 3 * k + 1;
      if (sc.surface.slot_tail(slot) != sc.surface.slot_head(slot)) continue;
      EdgeLoop loop = make_loop(sc.surface, {{sc.surface.edge_of_slot(slot), sc.surface.slot_forward(slot)}});
      EXPECT_FALSE(engine.check(loop).contractible);
    }
  }
}

TEST(Contractible, RP2DoubleLetterIsTrivial) {
  // In the projective plane a generator squared bounds the disk.
  Schema sc = rp2();
  Pi1Engine engine(sc.surface);
  int slot = 1;
  DirectedEdge d{sc.surface.edge_of_slot(slot), sc.surface.slot_forward(slot)};
  // abab = 1, so (ab)^2 = 1 but ab itself is essential.
  int slot_b = 4;
  DirectedEdge b{sc.surface.edge_of_slot(slot_b), sc.surface.slot_forward(slot_b)};
  EXPECT_FALSE(engine.check(make_loop(sc.surface, {d, b})).contractible);
  EXPECT_TRUE(engine.check(make_loop(sc.surface, {d, b, d, b})).contractible);
}

TEST(Contractible, RejectsOpenPath) {
  MetricSurface s = flat_torus(3);
  std::vector<DirectedEdge> open{{0, true}};
  Pi1Engine engine(s);
  if (s.edge(0).tail != s.edge(0).head) {
    EXPECT_THROW(engine.check(open), Error);
  }
}

TEST(Contractible, AgreesWithSchemaOracle) {
  std::mt19937_64 rng(12345);
  std::vector<Schema> corpus{genus2(), klein(), rp2(), crosscap3(), torus_fan(), pants(), mobius(), annulus(),
                             punctured_torus()};
  int checked = 0;
  int contractible = 0;
  for (const Schema& sc : corpus) {
    Pi1Engine engine(sc.surface);
    SchemaGroup g = schema_group(sc);
    for (int i = 0; i < 30; ++i) {
      std::uniform_int_distribution<int> steps(1, 6);
      EdgeLoop loop = random_loop(sc.surface, rng, steps(rng));
      Word w = schema_loop_word(sc, g, loop);
      bool expected = schema_trivial(w, g.relator);
      ContractibilityCertificate cert = engine.check(loop);
      EXPECT_EQ(cert.contractible, expected) << format_loop(sc.surface, loop) << " method " << cert.method;
      // Null-homotopic implies null-homologous.
      if (cert.contractible) EXPECT_TRUE(homologically_trivial(w, g.relator));
      contractible += cert.contractible;
      ++checked;
    }
  }
  EXPECT_GE(checked, 200);
  EXPECT_GT(contractible, 0);
  EXPECT_LT(contractible, checked);
}

TEST(Contractible, BoundedSurfacesUseFreeReduction) {
  std::mt19937_64 rng(99);
  for (const Schema& sc : {pants(), annulus(), punctured_torus(), mobius()}) {
    Pi1Engine engine(sc.surface);
    EXPECT_EQ(engine.presentation().kind, SurfaceKind::Free);
    for (int i = 0; i < 20; ++i) {
      EdgeLoop loop = random_loop(sc.surface, rng, 4);
      ContractibilityCertificate cert = engine.check(loop);
      EXPECT_EQ(cert.method, "free");
      EXPECT_EQ(cert.contractible, cert.witness.empty());
    }
  }
}

TEST(Cover, Laws) {
  for (const Schema& sc : {klein(), rp2(), crosscap3(), mobius()}) {
    DoubleCover dc = double_cover(sc.surface);
    TopologySummary base = topology(sc.surface);
    TopologySummary t = topology(dc.cover);
    EXPECT_TRUE(t.orientable);
    EXPECT_EQ(t.euler_char, 2 * base.euler_char);
    EXPECT_EQ(t.boundary_count, 2 * base.boundary_count);
    EXPECT_NEAR(area(dc.cover), 2 * area(sc.surface), 1e-12);
    EXPECT_EQ(dc.cover.face_count(), 2 * sc.surface.face_count());
  }
  EXPECT_EQ(topology(double_cover(klein().surface).cover).genus, 1);
  EXPECT_EQ(topology(double_cover(rp2().surface).cover).genus, 0);
  EXPECT_EQ(topology(double_cover(crosscap3().surface).cover).genus, 2);
}

TEST(Cover, RejectsOrientable) { EXPECT_THROW(double_cover(genus2().surface), Error); }

TEST(Cover, LiftsAndProjectionsPreserveContractibility) {
  std::mt19937_64 rng(5);
  for (const Schema& sc : {klein(), crosscap3(), rp2()}) {
    DoubleCover dc = double_cover(sc.surface);
    Pi1Engine base(sc.surface);
    Pi1Engine cover(dc.cover);
    for (int i = 0; i < 40; ++i) {
      EdgeLoop loop = random_loop(sc.surface, rng, 5);
      LiftedPath lift = lift_loop(dc, sc.surface, loop);
      EXPECT_NEAR(lift.length, loop.length, 1e-12);
      if (!lift.closed) {
        EXPECT_FALSE(base.check(loop).contractible);
        continue;
      }
      EdgeLoop up = make_loop(dc.cover, lift.edges);
      EXPECT_EQ(cover.check(up).contractible, base.check(loop).contractible);
      EdgeLoop down = project_loop(dc, sc.surface, up);
      EXPECT_EQ(down.edges, loop.edges);
    }
  }
}

TEST(Cover, CoverLoopsProjectFaithfully) {
  std::mt19937_64 rng(17);
  for (const Schema& sc : {klein(), crosscap3()}) {
    DoubleCover dc = double_cover(sc.surface);
    Pi1Engine base(sc.surface);
    Pi1Engine cover(dc.cover);
    for (int i = 0; i < 40; ++i) {
      EdgeLoop up = random_loop(dc.cover, rng, 5);
      EdgeLoop down = project_loop(dc, sc.surface, up);
      EXPECT_EQ(cover.check(up).contractible, base.check(down).contractible);
    }
  }
}

TEST(TreeCotree, TorusSchemaCounts) {
  TreeCotree tc = tree_cotree(torus_schema());
  EXPECT_EQ(tc.tree_edges.size(), 0u);
  EXPECT_EQ(tc.cotree_edges.size(), 1u);
  EXPECT_EQ(tc.generator_edges.size(), 2u);
  EXPECT_EQ(tc.presentation.relator.size(), 4u);
  EXPECT_EQ(tree_cotree(genus2().surface).presentation.relator.size(), 8u);
}

TEST(LoopWord, Examples) {
  MetricSurface s = torus_schema();
  TreeCotree tc = tree_cotree(s);
  // The unit side chosen as a generator is a (1,0) cycle: a single letter.
  int unit = -1;
  for (int e : tc.generator_edges)
    if (s.edge(e).length == 1.0) unit = e;
  ASSERT_GE(unit, 0);
  DirectedEdge bottom{unit, true};
  Word w = loop_word(s, std::vector<DirectedEdge>{bottom}, tc);
  EXPECT_EQ(free_reduce(w).size(), 1u);
  ContractibilityCertificate cert = is_contractible(s, make_loop(s, {bottom}));
  EXPECT_FALSE(cert.contractible);
  EXPECT_EQ(cert.method, "homology");
  long nonzero = 0;
  for (long h : cert.homology) nonzero += std::abs(h);
  EXPECT_EQ(nonzero, 1);

  // gamma followed by its reverse reduces to nothing.
  EdgeLoop g = make_loop(s, {bottom, {s.edge_of_slot(1), s.slot_forward(1)}});
  EdgeLoop gg = concat_loops(s, g, reverse_loop(s, g));
  EXPECT_TRUE(free_reduce(loop_word(s, gg.edges, tc)).empty());
  EXPECT_TRUE(is_contractible(s, gg).contractible);

  // A loop inside the primal tree has the empty word.
  MetricSurface grid = flat_torus(3);
  TreeCotree gt = tree_cotree(grid);
  int e = gt.tree_edges.front();
  std::vector<DirectedEdge> there_and_back{{e, true}, {e, false}};
  EXPECT_TRUE(loop_word(grid, there_and_back, gt).empty());
}

TEST(Contractible, EmptyLoopIsTrivial) {
  EXPECT_TRUE(is_contractible(genus2().surface, EdgeLoop{}).contractible);
}

TEST(Contractible, RejectsLoopOffSurface) {
  MetricSurface s = torus_schema();
  std::vector<DirectedEdge> bogus{{17, true}};
  EXPECT_THROW(loop_word(s, bogus, tree_cotree(s)), Error);
}

TEST(Cover, ProjectivePlaneCoverIsSphere) {
  DoubleCover dc = double_cover(rp2().surface);
  EXPECT_EQ(topology(dc.cover).euler_char, 2);
  EXPECT_TRUE(Pi1Engine(dc.cover).simply_connected());
}

TEST(Cover, OrientationReversingLoopLiftsOpen) {
  Schema sc = rp2();
  DoubleCover dc = double_cover(sc.surface);
  DirectedEdge a{sc.surface.edge_of_slot(1), sc.surface.slot_forward(1)};
  DirectedEdge b{sc.surface.edge_of_slot(4), sc.surface.slot_forward(4)};
  EdgeLoop once = make_loop(sc.surface, {a, b});
  LiftedPath open = lift_loop(dc, sc.surface, once);
  EXPECT_FALSE(open.closed);
  EdgeLoop twice = concat_loops(sc.surface, once, once);
  LiftedPath closed = lift_loop(dc, sc.surface, twice);
  EXPECT_TRUE(closed.closed);
  EXPECT_NEAR(closed.length, 2 * open.length, 1e-12);
}
