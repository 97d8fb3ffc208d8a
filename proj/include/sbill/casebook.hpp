#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "sbill/engine.hpp"

namespace sbill {

// ------------------------------------------------------------ crooked kite

/// The isolated 6-periodic orbit of the crooked kite (0,1),(0,0),(1,0),(X,Y).
struct KiteOrbit {
  Rat X, Y;
  Rat s0, t0;
  Pt a, b;  // a(s0), b(s0)
  Pt c, d;  // c(t0), d(t0)
  std::vector<PhasePair> orbit;  // orbit[k] = (x_k, x_{k+1}), k = 0..5
  Rat contraction_factor;        // |slope| of the odd chain over one period
  Rat expansion_factor;          // same for the even chain
};

/// Throws BadKiteParams outside the closed parameter region and
/// DegenerateAtBoundary when the construction runs into a vertex.
KiteOrbit kite_orbit6(const Rat& X, const Rat& Y);

struct KiteIsolation {
  Rat contraction_factor;
  bool contracts = false;
  std::size_t samples = 0;
  std::size_t periodic = 0;
  std::size_t vertex_hits = 0;
  std::size_t max_steps = 0;
  Rat delta;
  // |x_{6k+1} - b(s0)| in edge parameter, x0 held at (0,t0)
  std::vector<Rat> return_distances;
  bool geometric = false;  // consecutive ratios equal contraction_factor
  bool tile_degenerate = false;
  Rat tile_area;
};

/// Seeds on the boundary of the delta-box around the orbit seed, plus the
/// interval return map on {(0,t0)} x (b(s0) - delta, b(s0) + delta).
KiteIsolation kite_isolation_check(const KiteOrbit& K, std::size_t delta_samples,
                                   const Rat& delta = Rat(1, 1000),
                                   std::size_t max_steps = 10000);

// ------------------------------------------------------------ odometer

/// Binary digits 0.b1 b2 ... of a number in [0,1]: a finite prefix followed
/// by a repeating cycle. An empty cycle means the tail is unknown (a bare
/// prefix).
struct BitSeq {
  std::vector<std::uint8_t> prefix;
  std::vector<std::uint8_t> cycle;
  friend bool operator==(const BitSeq&, const BitSeq&) = default;
};

/// Exact expansion of a rational in [0,1). Dyadic values end in the cycle 0.
BitSeq binary(const Rat& t);
/// Value of a sequence with a cycle.
Rat value(const BitSeq& b);
/// First n digits.
std::vector<std::uint8_t> digits(const BitSeq& b, std::size_t n);
/// Canonical form: shortest prefix and cycle.
BitSeq canonical(BitSeq b);

/// (1,...,1,0,a_k,...) -> (0,...,0,1,a_k,...). Throws AllOnes.
BitSeq odometer_step(const BitSeq& b);

/// The von Neumann-Kakutani map: on ((2^(l-1)-1)/2^(l-1), (2^l-1)/2^l)
/// shift by 1 - (2^(l-1)-1)/2^(l-1) - (2^l-1)/2^l. Throws DyadicInput.
Rat vnk(const Rat& t);
/// The level l of t.
int vnk_level(const Rat& t);

// ------------------------------------------------------------ necktie

/// The square side carrying the section, named by its endpoints in the
/// square v0 = (2,2), v1 = (2,0), v2 = (0,0), v3 = (0,2).
enum class SquareSide { V0V1, V1V2, V2V3, V3V0 };
const char* square_side_name(SquareSide s);

struct ReturnResult {
  Rat t_out;
  std::size_t steps = 0;
  int level = 0;
  Rat slope;                // composite slope of the odd chain, in t
  std::size_t reversals = 0;  // orientation reversing factors along the return
};

/// x must lie inside the kite side w0w1 (sections V0V1, V2V3) or w3w0
/// (sections V1V2, V3V0). Throws DyadicSeed, InvalidArgument, Budget.
ReturnResult necktie_return_map(const EdgePoint& x, SquareSide side, const Rat& t,
                                std::size_t max_steps = 1000000);
/// Uses V0V1 for x on w0w1 and V1V2 for x on w3w0.
ReturnResult necktie_return_map(const EdgePoint& x, const Rat& t);

/// Phase pair (x, point of the section with parameter t).
PhasePair necktie_section_pair(const EdgePoint& x, SquareSide side, const Rat& t);
/// Inverse: the section and parameter of y relative to x, if y lies on a
/// section side belonging to x.
std::optional<std::pair<SquareSide, Rat>> necktie_section_of(const EdgePoint& x,
                                                            const EdgePoint& y);

struct NecktieScan {
  std::size_t samples = 0;
  std::size_t max_steps = 0;
  std::size_t periodic = 0;        // orbits returning to their seed
  std::size_t vertex_hits = 0;
  std::size_t reached_section = 0;
  std::size_t max_steps_to_section = 0;
  std::size_t returns = 0;         // section returns compared with vnk
  std::size_t vnk_mismatches = 0;
  std::size_t step_mismatches = 0;  // return after a number of steps other than 4l
  std::size_t kite_moves = 0;
  std::size_t horizontal_moves = 0, vertical_moves = 0;
  std::size_t staircase_violations = 0;  // kite moves not parallel to a square side
};

/// Random seeds with odd denominators on both coordinates.
NecktieScan necktie_no_period_scan(std::size_t samples, std::size_t max_steps,
                                   std::uint64_t rng_seed = 1);

nlohmann::json to_json(const KiteOrbit& K);
nlohmann::json to_json(const KiteIsolation& R);
nlohmann::json to_json(const BitSeq& b);
nlohmann::json to_json(const ReturnResult& r);
nlohmann::json to_json(const NecktieScan& r);

}  // namespace sbill
