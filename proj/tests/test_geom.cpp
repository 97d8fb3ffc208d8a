#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "sbill/error.hpp"
#include "sbill/geom.hpp"
#include "support.hpp"

using namespace sbill;

namespace {

Poly unit_square() { return Poly::make({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
Poly l_hexagon() { return Poly::make({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}); }

// Interior test by sampling the open segment at many rational points.
bool sampled_interior(const Poly& P, const Pt& a, const Pt& b, int samples = 512) {
  for (int k = 1; k < samples; ++k) {
    const Pt p = a + Rat(k, samples) * (b - a);
    if (point_location(P, p).kind != Loc::Interior) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("orientation") {
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orientation({0, 0}, {1, 1}, {2, 2}) == 0);
  CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == -1);
}

TEST_CASE("orientation is antisymmetric") {
  testing::Rng rng(1);
  for (int it = 0; it < 2000; ++it) {
    Pt p{testing::any_rat(rng), testing::any_rat(rng)};
    Pt q{testing::any_rat(rng), testing::any_rat(rng)};
    Pt r{testing::any_rat(rng), testing::any_rat(rng)};
    REQUIRE(orientation(p, q, r) == -orientation(p, r, q));
  }
}

TEST_CASE("point location") {
  const Poly S = unit_square();
  CHECK(point_location(S, {Rat(1, 2), Rat(1, 2)}).kind == Loc::Interior);
  CHECK(point_location(S, {2, 2}).kind == Loc::Exterior);
  CHECK(point_location(S, {Rat(1, 2), 0}) == Location{Loc::OnEdge, 0});
  CHECK(point_location(S, {1, 1}) == Location{Loc::OnVertex, 2});
  const Poly L = l_hexagon();
  CHECK(point_location(L, {Rat(3, 2), Rat(3, 2)}).kind == Loc::Exterior);
  CHECK(point_location(L, {Rat(1, 2), Rat(3, 2)}).kind == Loc::Interior);
  CHECK(point_location(L, {Rat(3, 2), Rat(1, 2)}).kind == Loc::Interior);
  // ray through a vertex
  CHECK(point_location(L, {Rat(1, 2), 1}).kind == Loc::Interior);
  CHECK(point_location(L, {-1, 1}).kind == Loc::Exterior);
}

TEST_CASE("points constructed on edges are OnEdge") {
  testing::Rng rng(2);
  const Poly L = l_hexagon();
  for (int it = 0; it < 1000; ++it) {
    const std::size_t i = rng() % L.size();
    const Rat t = testing::odd_rat(rng, 10001);
    REQUIRE(point_location(L, L.at(i, t)) == Location{Loc::OnEdge, static_cast<int>(i)});
  }
}

TEST_CASE("open segment in interior") {
  const Poly S = unit_square();
  CHECK(open_segment_in_interior(S, {Rat(1, 4), 0}, {Rat(1, 4), 1}));
  CHECK_FALSE(open_segment_in_interior(S, {0, 0}, {1, 0}));
  const Poly L = l_hexagon();
  // stays in the bottom arm: y = x/2 < 1 on the open segment
  CHECK(open_segment_in_interior(L, {0, 0}, {2, 1}) == sampled_interior(L, {0, 0}, {2, 1}));
  CHECK(open_segment_in_interior(L, {0, 0}, {2, 1}));
  // crosses the notch
  CHECK_FALSE(open_segment_in_interior(L, {2, Rat(1, 2)}, {Rat(1, 2), 2}));
  CHECK_FALSE(sampled_interior(L, {2, Rat(1, 2)}, {Rat(1, 2), 2}));
  // grazes the reflex vertex (1,1)
  CHECK_FALSE(open_segment_in_interior(L, {0, Rat(1, 2)}, {2, Rat(3, 2)}));
  CHECK_FALSE(open_segment_in_interior(L, {2, 0}, {0, 2}));
}

TEST_CASE("open segment symmetry and convex oracle") {
  testing::Rng rng(3);
  const Poly L = l_hexagon();
  const Poly K = Poly::make({{0, 0}, {5, 1}, {4, 4}, {-1, 3}});
  for (int it = 0; it < 1000; ++it) {
    for (const Poly* P : {&L, &K}) {
      const std::size_t i = rng() % P->size(), j = rng() % P->size();
      const Pt a = P->at(i, (rng() % 3 == 0) ? Rat(0) : testing::odd_rat(rng, 31));
      const Pt b = P->at(j, (rng() % 3 == 0) ? Rat(0) : testing::odd_rat(rng, 31));
      if (a == b) continue;
      const bool ab = open_segment_in_interior(*P, a, b);
      REQUIRE(ab == open_segment_in_interior(*P, b, a));
      if (P == &K) {
        const bool on_edge_line = orientation(P->v(i), P->v(i + 1), b) == 0 ||
                                  orientation(P->v(j), P->v(j + 1), a) == 0;
        const bool mid = point_location(K, Rat(1, 2) * (a + b)).kind == Loc::Interior;
        REQUIRE(ab == (!on_edge_line && mid));
      } else {
        REQUIRE(ab == sampled_interior(L, a, b, 64));
      }
    }
  }
}

TEST_CASE("line polygon hits") {
  const Poly S = unit_square();
  auto h = line_polygon_hits(S, {Rat(1, 4), 0}, {0, 1});
  REQUIRE(h.size() == 2);
  CHECK(h[0].lambda == Rat(0));
  CHECK(h[1].lambda == Rat(1));
  CHECK(S.at(h[1].edge, h[1].t) == Pt{Rat(1, 4), 1});
  h = line_polygon_hits(S, {0, 0}, {1, 1});
  REQUIRE(h.size() == 2);
  CHECK(h[0].vertex());
  CHECK(h[1].vertex());
  CHECK(S.v(h[1].edge) == Pt{1, 1});
  // the line y = x/2 meets the L only at (0,0) and the vertex (2,1)
  h = line_polygon_hits(l_hexagon(), {0, 0}, {2, 1});
  REQUIRE(h.size() == 2);
  CHECK(h[1].lambda == Rat(1));
  // collinear with the bottom edge
  h = line_polygon_hits(S, {Rat(1, 2), 0}, {1, 0});
  REQUIRE(h.size() == 1);
  CHECK(h[0].overlap);
  CHECK(h[0].lambda == Rat(-1, 2));
  CHECK(h[0].lambda_end == Rat(1, 2));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(Poly::make({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), Error);
  try {
    Poly::make({{0, 0}, {1, 1}, {1, 0}, {0, 1}});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SelfIntersecting);
  }
  try {
    Poly::make({{0, 0}, {1, 0}, {1, 0}, {1, 1}, {0, 1}});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateEdge);
  }
  try {
    Poly::make({{0, 0}, {1, 0}, {2, 0}, {1, 1}});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CollinearTriple);
  }
  const Poly cw = Poly::make({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  CHECK(cw.reoriented());
  CHECK(cw.v(0) == Pt{0, 0});
  CHECK(cw.v(1) == Pt{1, 0});
  CHECK(cw.area2() == Rat(2));
  CHECK(l_hexagon().convex_at(3) == false);
  CHECK(unit_square().convex());
}

TEST_CASE("inward directions at vertices") {
  const Poly S = unit_square();
  CHECK(inward_at_vertex(S, 0, {1, 1}));
  CHECK_FALSE(inward_at_vertex(S, 0, {1, 0}));
  CHECK_FALSE(inward_at_vertex(S, 0, {-1, 1}));
  const Poly L = l_hexagon();
  // reflex vertex (1,1): everything except the notch quadrant
  CHECK(inward_at_vertex(L, 3, {-1, 0}));
  CHECK(inward_at_vertex(L, 3, {0, -1}));
  CHECK(inward_at_vertex(L, 3, {-1, 1}));
  CHECK_FALSE(inward_at_vertex(L, 3, {1, 1}));
}
