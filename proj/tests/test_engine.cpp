#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sbill/engine.hpp"
#include "sbill/error.hpp"
#include "support.hpp"

using namespace sbill;

namespace {

EdgePoint ep(Side s, int i, Rat t) { return {{s, i}, std::move(t)}; }
constexpr Side M = Side::Minus;
constexpr Side P = Side::Plus;

// Independent step: enumerate every boundary hit of the chord line and keep
// the ones whose open segment is interior.
std::vector<Pt> oracle_step(const TablePair& T, const PhasePair& p) {
  const Poly& A = T.poly(p.x.edge.table);
  const Pt x = T.point(p.x);
  const Pt d = T.edge_vec(p.y.edge);
  std::vector<Pt> out;
  for (const auto& h : line_polygon_hits(A, x, d)) {
    if (h.overlap || h.lambda.is_zero()) continue;
    const Pt z = A.at(h.edge, h.t);
    if (open_segment_in_interior(A, x, z)) out.push_back(z);
  }
  return out;
}

const char* kTables[] = {"quad",         "square-rhombus", "necktie",
                         "crooked-kite 3/2 5/4", "unit-square", "right-triangle",
                         "lattice-three-dirs",   "two-table-cf"};

}  // namespace

TEST_CASE("step examples on the unit square") {
  const Billiard B(builtin("unit-square"));
  const PhasePair p{ep(M, 0, Rat(1, 4)), ep(P, 1, Rat(1, 2))};
  const auto o = B.step(p);
  REQUIRE(o.ok());
  CHECK(B.table().point(o.next.y) == Pt{Rat(1, 4), 1});
  CHECK(o.next.y.edge.table == M);
  CHECK(B.step({ep(M, 0, Rat(1, 4)), ep(P, 2, Rat(1, 2))}).kind == Stop::ParallelEdges);
  CHECK(B.step({ep(M, 0, Rat(1, 4)), ep(P, 2, Rat(0))}).kind == Stop::YIsVertex);
  // back from (y, z) returns to x
  const auto b = B.step_back(o.next);
  REQUIRE(b.ok());
  CHECK(b.next == p);
  // from a triangle corner every edge direction leaves no interior chord
  const Billiard Tr(builtin("right-triangle"));
  const PhasePair corner{ep(M, 0, Rat(0)), ep(P, 1, Rat(1, 3))};
  CHECK(Tr.continuations_at_vertex(corner).empty());
  CHECK(Tr.step(corner).kind == Stop::NoUniqueChord);
}

TEST_CASE("square diagonal from a corner hits the opposite corner") {
  // square with one diagonal direction available on the other table
  const auto T = validate_table({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                                std::vector<Pt>{{3, 0}, {4, 1}, {3, 2}, {2, 1}});
  const Billiard B(T);
  const auto c = B.continuations_at_vertex({ep(M, 0, Rat(0)), ep(P, 0, Rat(1, 2))});
  REQUIRE(c.size() == 1);
  CHECK(c[0].kind == Stop::HitsVertex);
  CHECK(T.point(c[0].vertex) == Pt{1, 1});
}

TEST_CASE("vertex start on the quad") {
  // x = (0,0) is vertex 1; the diagonal parallel to e_3 ends at (2,2) on e_2
  const Billiard B(builtin("quad"));
  const PhasePair p{ep(M, 1, Rat(0)), ep(P, 3, Rat(1, 2))};
  const auto conts = B.continuations_at_vertex(p);
  const auto orc = oracle_step(B.table(), p);
  REQUIRE(conts.size() == 1);
  REQUIRE(orc.size() == 1);
  const auto o = B.step(p);
  REQUIRE(o.ok());
  CHECK(B.table().point(o.next.y) == Pt{2, 2});
  // every vertex start against the oracle
  for (int v = 0; v < 4; ++v)
    for (int j = 0; j < 4; ++j) {
      const PhasePair q{ep(M, v, Rat(0)), ep(P, j, Rat(1, 3))};
      if (B.chord_sign(M, v, j) == 0) continue;
      const auto oq = B.step(q);
      const auto oc = oracle_step(B.table(), q);
      if (oc.size() != 1) {
        CHECK(oq.kind == Stop::NoUniqueChord);
        CHECK(oq.candidates.size() == oc.size());
      } else {
        const Pt z = oq.ok() ? B.table().point(oq.next.y) : B.table().point(oq.vertex);
        CHECK(z == oc[0]);
      }
    }
  const auto o2 = B.step({ep(M, 1, Rat(0)), ep(P, 2, Rat(1, 3))});
  const auto orc2 = oracle_step(B.table(), {ep(M, 1, Rat(0)), ep(P, 2, Rat(1, 3))});
  REQUIRE(orc2.size() == 1);
  REQUIRE(o2.ok());
  CHECK(B.table().point(o2.next.y) == orc2[0]);
}

TEST_CASE("reflex vertex of the L hexagon has two continuations") {
  const auto L = validate_table({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}, std::nullopt);
  const Billiard B(L);
  // horizontal chord through the reflex vertex (1,1): west is interior,
  // east runs along the edge to (2,1)
  const auto h = B.continuations_at_vertex({ep(M, 3, Rat(0)), ep(P, 0, Rat(1, 2))});
  CHECK(h.size() == 1);
  // direction (1,-1) from (1,1): both rays are interior
  const auto D = validate_table({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}},
                                std::vector<Pt>{{5, 0}, {6, 0}, {5, 1}});
  const Billiard BD(D);
  const PhasePair p{ep(M, 3, Rat(0)), ep(P, 1, Rat(1, 2))};
  const auto c = BD.continuations_at_vertex(p);
  CHECK(c.size() == 2);
  CHECK(oracle_step(D, p).size() == 2);
  CHECK(BD.step(p).kind == Stop::NoUniqueChord);
}

TEST_CASE("non-reversible configuration at a reflex vertex") {
  // the chord from (2,1/2) parallel to (-2,1) ends in the reflex vertex (1,1);
  // from that vertex the same direction has interior chords on both sides
  const auto D = validate_table({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}},
                                std::vector<Pt>{{5, 0}, {7, 0}, {5, 1}});
  const Billiard B(D);
  const PhasePair p{ep(M, 1, Rat(1, 2)), ep(P, 1, Rat(1, 2))};
  const auto o = B.step(p);
  REQUIRE(o.kind == Stop::HitsVertex);
  CHECK(D.point(o.vertex) == Pt{1, 1});
  const PhasePair w{o.vertex, ep(P, 1, Rat(1, 2))};
  const auto c = B.continuations_at_vertex(w);
  CHECK(c.size() == 2);
  CHECK(oracle_step(D, w).size() == 2);
  CHECK(B.step(w).kind == Stop::NoUniqueChord);
}

TEST_CASE("engine agrees with the enumeration oracle") {
  for (const char* name : kTables) {
    const Billiard B(builtin(name));
    testing::Rng rng(17);
    for (int it = 0; it < 300; ++it) {
      const auto p = testing::random_pair(B, rng, (it & 1) ? M : P, 61);
      const auto o = B.step(p);
      const auto orc = oracle_step(B.table(), p);
      REQUIRE(orc.size() == 1);
      const Pt z = o.ok() ? B.table().point(o.next.y) : B.table().point(o.vertex);
      REQUIRE(z == orc[0]);
    }
  }
}

TEST_CASE("reversibility, sign preservation and even periods") {
  for (const char* name : kTables) {
    const Billiard B(builtin(name));
    const auto& T = B.table();
    testing::Rng rng(23);
    int checked = 0;
    for (int it = 0; checked < 1000 && it < 100000; ++it) {
      const auto p = testing::random_pair(B, rng, (it & 1) ? M : P);
      const auto o = B.step(p);
      if (!o.ok()) continue;
      ++checked;
      const auto back = B.step_back(o.next);
      REQUIRE(back.ok());
      REQUIRE(back.next == p);
      const auto fb = B.step_back(p);
      if (fb.ok()) {
        const auto again = B.step(fb.next);
        REQUIRE(again.ok());
        REQUIRE(again.next == p);
      }
      const int s0 = cross(T.edge_vec(p.x.edge), T.edge_vec(p.y.edge)).sign();
      const int s1 = cross(T.edge_vec(o.next.x.edge), T.edge_vec(o.next.y.edge)).sign();
      REQUIRE(s0 == s1);
      if (fb.ok()) {
        const int sb = cross(T.edge_vec(fb.next.x.edge), T.edge_vec(fb.next.y.edge)).sign();
        REQUIRE(s0 == sb);
      }
    }
    CHECK(checked == 1000);
  }
}

TEST_CASE("exact measure preservation on small rectangles") {
  for (const char* name : kTables) {
    CAPTURE(name);
    const Billiard B(builtin(name));
    testing::Rng rng(41);
    int checked = 0;
    for (int it = 0; checked < 300 && it < 20000; ++it) {
      const auto p = testing::random_pair(B, rng, (it & 1) ? M : P);
      const auto m = testing::rectangle_measures(B, p, Rat(1, 4096));
      if (!m) continue;
      ++checked;
      REQUIRE(m->first == m->second);
    }
    CHECK(checked == 300);
  }
}

TEST_CASE("affine equivariance") {
  const Mat2 mats[] = {{{{Rat(1), Rat(1)}, {Rat(0), Rat(1)}}},
                       {{{Rat(2), Rat(-1, 3)}, {Rat(1, 2), Rat(5)}}},
                       {{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}}};
  for (const char* name : kTables) {
    const auto T = builtin(name);
    const Billiard B(T);
    for (const auto& A : mats) {
      const auto TA = affine_apply(T, A, {Rat(3), Rat(-7, 2)});
      const Billiard BA(TA);
      testing::Rng rng(29);
      for (int it = 0; it < 200; ++it) {
        const auto p = testing::random_pair(B, rng);
        const PhasePair pa{affine_edge_point(T, A, p.x), affine_edge_point(T, A, p.y)};
        const auto o = B.step(p);
        const auto oa = BA.step(pa);
        REQUIRE(o.kind == oa.kind);
        if (o.ok()) {
          REQUIRE(oa.next.y == affine_edge_point(T, A, o.next.y));
        }
      }
    }
  }
}

TEST_CASE("affine step coefficients") {
  const Billiard S(builtin("unit-square"));
  const auto c = S.affine_step_coeffs({M, 0}, {P, 1}, {M, 2});
  CHECK(c.a == Rat(-1));
  CHECK(c.dir_ratio == Rat(-1));
  CHECK_THROWS_AS(S.affine_step_coeffs({M, 0}, {P, 1}, {M, 1}), Error);
  // two-point fit against the engine on every realizable quad branch
  const Billiard Q(builtin("quad"));
  int branches = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto pr = Q.project({M, i}, Rat(0), Rat(1), j);
      for (const auto& pc : pr.pieces) {
        const Rat t1 = pc.lo + (pc.hi - pc.lo) * Rat(1, 3);
        const Rat t2 = pc.lo + (pc.hi - pc.lo) * Rat(2, 3);
        const auto z1 = Q.cast({{M, i}, t1}, {P, j}, Q.chord_sign(M, i, j));
        const auto z2 = Q.cast({{M, i}, t2}, {P, j}, Q.chord_sign(M, i, j));
        REQUIRE(z1);
        REQUIRE(z2);
        REQUIRE(z1->edge.index == pc.target);
        const Rat slope = (z2->t - z1->t) / (t2 - t1);
        const auto co = Q.affine_step_coeffs({M, i}, {P, j}, {M, pc.target});
        REQUIRE(co.a == slope);
        REQUIRE(co.a == co.dir_ratio);
        ++branches;
      }
    }
  CHECK(branches > 0);
}

TEST_CASE("unit square and triangle periods") {
  const Billiard S(builtin("unit-square"));
  testing::Rng rng(31);
  for (int it = 0; it < 200; ++it) {
    const auto p = testing::random_ok_pair(S, rng);
    CHECK(S.period(p, 100) == 4u);
  }
  const Billiard Tr(builtin("right-triangle"));
  for (int it = 0; it < 200; ++it) {
    const auto p = testing::random_ok_pair(Tr, rng);
    const auto per = Tr.period(p, 100);
    REQUIRE(per);
    CHECK(*per % 2 == 0);
    CHECK(*per <= 12u);
  }
}

TEST_CASE("iterate records both directions") {
  const Billiard Q(builtin("quad"));
  testing::Rng rng(37);
  const auto p = testing::random_ok_pair(Q, rng);
  const auto [tr, sym] = Q.iterate(p, 1000);
  REQUIRE(tr.period);
  CHECK(*tr.period % 2 == 0);
  CHECK(tr.points[tr.seed_index] == p.x);
  CHECK(sym.size() == tr.points.size());
  const Billiard N(builtin("necktie"));
  const auto q = testing::random_ok_pair(N, rng);
  const auto [tn, sn] = N.iterate(q, 2000);
  CHECK_FALSE(tn.period);
  CHECK(tn.forward_stop.kind == Stop::Budget);
  CHECK(tn.points.size() == 2u + 2000u + tn.seed_index);
  for (std::size_t k = 0; k + 2 < tn.points.size(); ++k) {
    const auto o = N.step({tn.points[k], tn.points[k + 1]});
    REQUIRE(o.ok());
    REQUIRE(o.next.y == tn.points[k + 2]);
  }
}
