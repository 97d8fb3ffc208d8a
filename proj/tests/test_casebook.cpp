#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <set>

#include "sbill/casebook.hpp"
#include "sbill/error.hpp"
#include "sbill/tiles.hpp"
#include "support.hpp"

using namespace sbill;

namespace {

template <class F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidArgument;
}

// Where the ray from o with direction d leaves through the line p + s q.
Pt ray_hit(const Pt& o, const Pt& d, const Pt& p, const Pt& q) {
  const Rat lam = cross(p - o, q) / cross(d, q);
  return o + lam * d;
}

// Bisection on the sign of a(s)_x - b(s)_x: 60 halvings bracket s0.
std::pair<Rat, Rat> bracket_s0(const Rat& X, const Rat& Y) {
  auto f = [&](const Rat& s) {
    const Pt o{s, Rat(0)};
    const Pt a = ray_hit(o, {X, Y - Rat(1)}, {Rat(1), Rat(0)}, {X - Rat(1), Y});
    const Pt b = ray_hit(o, {X - Rat(1), Y}, {Rat(0), Rat(1)}, {X, Y - Rat(1)});
    return (a.x - b.x).sign();
  };
  Rat lo(0), hi(1);
  const int s_lo = f(lo);
  REQUIRE(s_lo != f(hi));
  for (int k = 0; k < 60; ++k) {
    const Rat mid = (lo + hi) / Rat(2);
    (f(mid) == s_lo ? lo : hi) = mid;
  }
  return {lo, hi};
}

std::vector<std::pair<Rat, Rat>> kite_grid() {
  // sheared grid: X - 1 = s + r, Y - 1 = s - r with |r| < 1/4 < s
  std::vector<std::pair<Rat, Rat>> out;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const Rat s(i + 1, 4), r(2 * j - 9, 40);
      out.emplace_back(Rat(1) + s + r, Rat(1) + s - r);
    }
  return out;
}

std::uint64_t prefix_int(const std::vector<std::uint8_t>& d) {
  std::uint64_t n = 0;
  for (std::size_t k = 0; k < d.size(); ++k) n |= std::uint64_t{d[k]} << k;
  return n;
}

}  // namespace

TEST_CASE("kite construction anchors") {
  const Rat X(3, 2), Y(5, 4);
  // a(0)_x = YX/(X+Y-1) lies right of b(0)_x = (X-1)X/(X+Y-1)
  const Pt o{Rat(0), Rat(0)};
  const Pt a0 = ray_hit(o, {X, Y - Rat(1)}, {Rat(1), Rat(0)}, {X - Rat(1), Y});
  const Pt b0 = ray_hit(o, {X - Rat(1), Y}, {Rat(0), Rat(1)}, {X, Y - Rat(1)});
  CHECK(a0.x == Rat(15, 14));
  CHECK(b0.x == Rat(3, 7));
  CHECK(a0.x > b0.x);

  const KiteOrbit K = kite_orbit6(X, Y);
  const auto [lo, hi] = bracket_s0(X, Y);
  CHECK(lo <= K.s0);
  CHECK(K.s0 <= hi);
  CHECK(K.a.x == K.b.x);
  CHECK(K.c.y == K.d.y);
  CHECK(K.s0 == Rat(9, 16));
  CHECK(K.t0 == Rat(25, 32));
  // the inscribed triangle has a vertical side and sides parallel to the slanted edges
  const Pt s0{K.s0, Rat(0)};
  CHECK(cross(K.a - s0, {X, Y - Rat(1)}).is_zero());
  CHECK(cross(K.b - s0, {X - Rat(1), Y}).is_zero());
  REQUIRE(K.orbit.size() == 6);
  CHECK(K.contraction_factor == Rat(1, 15));
  CHECK(K.contraction_factor * K.expansion_factor == Rat(1));
}

TEST_CASE("kite orbit across the parameter region") {
  for (const auto& [X, Y] : kite_grid()) {
    CAPTURE(X.str());
    CAPTURE(Y.str());
    const KiteOrbit K = kite_orbit6(X, Y);
    const Billiard B(builtin("crooked-kite " + X.str() + " " + Y.str()));
    CHECK(B.period(K.orbit.front(), 100) == std::optional<std::size_t>(6));
    CHECK(K.contraction_factor < Rat(1));
    const auto [lo, hi] = bracket_s0(X, Y);
    CHECK(lo <= K.s0);
    CHECK(K.s0 <= hi);
  }
}

TEST_CASE("kite parameter errors") {
  CHECK(error_of([] { kite_orbit6(Rat(3), Rat(4)); }) == Errc::DegenerateAtBoundary);
  CHECK(error_of([] { kite_orbit6(Rat(1), Rat(1)); }) == Errc::DegenerateAtBoundary);
  CHECK(error_of([] { kite_orbit6(Rat(1, 2), Rat(2)); }) == Errc::BadKiteParams);
  CHECK(error_of([] { kite_orbit6(Rat(2), Rat(7, 2)); }) == Errc::BadKiteParams);
}

TEST_CASE("kite orbit is isolated") {
  for (const auto& XY : {std::pair{Rat(3, 2), Rat(5, 4)}, std::pair{Rat(5, 2), Rat(2)}}) {
    const KiteOrbit K = kite_orbit6(XY.first, XY.second);
    const auto R = kite_isolation_check(K, 8);
    CHECK(R.contracts);
    CHECK(R.periodic == 0);
    CHECK(R.geometric);
    CHECK(R.return_distances.size() > 8);
    CHECK(R.tile_degenerate);
    CHECK(R.tile_area == Rat(0));
  }
}

TEST_CASE("von Neumann-Kakutani map") {
  CHECK(vnk(Rat(1, 3)) == Rat(5, 6));
  CHECK(vnk(Rat(2, 3)) == Rat(5, 12));
  CHECK(vnk_level(Rat(6, 7)) == 3);
  CHECK(error_of([] { vnk(Rat(1, 2)); }) == Errc::DyadicInput);
  CHECK(error_of([] { vnk(Rat(3, 4)); }) == Errc::DyadicInput);
}

TEST_CASE("odometer") {
  const BitSeq a{{1, 1, 0}, {1, 0, 0}};
  CHECK(odometer_step(a) == BitSeq{{0, 0, 1}, {1, 0, 0}});
  const BitSeq b{{0}, {1, 1, 0}};
  CHECK(odometer_step(b) == BitSeq{{1}, {1, 1, 0}});
  CHECK(error_of([] { odometer_step(BitSeq{{1, 1}, {1}}); }) == Errc::AllOnes);
  CHECK(error_of([] { odometer_step(BitSeq{{1, 1, 1}, {}}); }) == Errc::AllOnes);
  // 20-bit prefixes
  const auto p = digits(odometer_step(binary(Rat(2, 3))), 20);
  CHECK(p == digits(binary(Rat(5, 12)), 20));
  CHECK(binary(Rat(1, 3)) == BitSeq{{}, {0, 1}});
  CHECK(value(binary(Rat(7, 12))) == Rat(7, 12));
}

TEST_CASE("odometer is conjugate to vnk and to +1 on 2-adic prefixes") {
  testing::Rng rng(5);
  for (int n = 0; n < 2000; ++n) {
    const Rat t = testing::odd_rat(rng, 4001);
    CAPTURE(t.str());
    const BitSeq b = binary(t);
    const BitSeq o = odometer_step(b);
    CHECK(value(o) == vnk(t));
    CHECK(canonical(o) == canonical(binary(vnk(t))));
    for (std::size_t len : {1u, 7u, 20u, 63u}) {
      const std::uint64_t mask = len == 64 ? ~0ULL : (std::uint64_t{1} << len) - 1;
      CHECK(prefix_int(digits(o, len)) == ((prefix_int(digits(b, len)) + 1) & mask));
    }
  }
}

TEST_CASE("vnk has no short cycles") {
  for (const Rat& t0 : {Rat(1, 3), Rat(5, 7), Rat(100, 1001)}) {
    std::set<Rat> seen;
    Rat t = t0;
    for (int k = 0; k < (1 << 14); ++k) {
      REQUIRE(seen.insert(t).second);
      t = vnk(t);
    }
  }
}

TEST_CASE("necktie return map equals vnk") {
  const EdgePoint on_w0w1{{Side::Plus, 0}, Rat(1, 3)};
  const EdgePoint on_w3w0{{Side::Plus, 3}, Rat(2, 5)};
  {
    const auto r = necktie_return_map(on_w0w1, Rat(1, 3));
    CHECK(r.t_out == Rat(5, 6));
    CHECK(r.steps == 4);
    const auto s = necktie_return_map(on_w0w1, Rat(2, 3));
    CHECK(s.t_out == Rat(5, 12));
    CHECK(s.steps == 8);
  }
  CHECK(error_of([&] { necktie_return_map(on_w0w1, Rat(3, 4)); }) == Errc::DyadicSeed);
  CHECK(error_of([&] { necktie_return_map(on_w0w1, SquareSide::V1V2, Rat(1, 3)); }) ==
        Errc::InvalidArgument);

  testing::Rng rng(9);
  const std::pair<EdgePoint, SquareSide> sections[] = {{on_w0w1, SquareSide::V0V1},
                                                       {on_w0w1, SquareSide::V2V3},
                                                       {on_w3w0, SquareSide::V1V2},
                                                       {on_w3w0, SquareSide::V3V0}};
  for (int n = 0; n < 200; ++n) {
    const Rat t = testing::odd_rat(rng, 2001);
    for (const auto& [x, side] : sections) {
      CAPTURE(t.str());
      CAPTURE(square_side_name(side));
      const auto r = necktie_return_map(x, side, t);
      CHECK(r.t_out == vnk(t));
      CHECK(r.steps == 4 * static_cast<std::size_t>(vnk_level(t)));
      CHECK(r.slope == Rat(1));
      CHECK(r.reversals == 2 * static_cast<std::size_t>(r.level));
    }
  }
}

TEST_CASE("necktie section orbit follows vnk") {
  const EdgePoint x{{Side::Plus, 0}, Rat(1, 3)};
  const Billiard B(builtin("necktie"));
  PhasePair cur = necktie_section_pair(x, SquareSide::V0V1, Rat(1, 3));
  Rat expect = Rat(1, 3);
  int returns = 0;
  for (std::size_t n = 1; returns < 50; ++n) {
    const auto o = B.step(cur);
    REQUIRE(o.ok());
    cur = o.next;
    if (cur.x != x) continue;
    const auto sec = necktie_section_of(x, cur.y);
    if (!sec || sec->first != SquareSide::V0V1) continue;
    expect = vnk(expect);
    CHECK(sec->second == expect);
    ++returns;
  }
}

TEST_CASE("necktie scan finds no periodic orbit") {
  const auto R = necktie_no_period_scan(40, 20000, 3);
  CHECK(R.periodic == 0);
  CHECK(R.vertex_hits == 0);
  CHECK(R.reached_section == R.samples);
  CHECK(R.returns > 0);
  CHECK(R.vnk_mismatches == 0);
  CHECK(R.step_mismatches == 0);
  CHECK(R.staircase_violations == 0);
  CHECK(R.horizontal_moves > 0);
  CHECK(R.vertical_moves > 0);
  CHECK(to_json(R)["periodic"] == 0);
}
