#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sbill/strata.hpp"

namespace sbill {

/// Closed parameter interval [lo, hi] on one edge; lo == hi is a point.
struct EdgeInterval {
  EdgeRef edge;
  Rat lo, hi;
  bool degenerate() const { return lo == hi; }
  Rat length() const { return hi - lo; }
  bool contains_open(const Rat& t) const { return lo < t && t < hi; }
  friend bool operator==(const EdgeInterval&, const EdgeInterval&) = default;
};

/// Affine map t -> a t + b between edge parameters.
struct Affine1 {
  Rat a{1}, b{0};
  Rat operator()(const Rat& t) const { return a * t + b; }
};

/// Maximal phase rectangle around a periodic seed on which the symbolic
/// trajectory is constant.
struct Tile {
  PhasePair seed;
  EdgeInterval x, y;
  std::size_t period = 0;           // tagged period of the seed
  std::size_t symbolic_period = 0;  // period of the edge sequence
  std::optional<std::size_t> return_steps;  // first return of the rectangle onto itself
  std::optional<int> return_order;          // order of that return map
  Rat chain_factor[2];  // |slope| of the even / odd chain over one period
  Rat area;             // Lebesgue area in the (x, y) plane

  bool degenerate() const { return x.degenerate() || y.degenerate(); }
  bool contains(const PhasePair& p) const;
};

struct TileOptions {
  std::size_t budget = 200000;  // steps spent finding the period
  std::size_t max_periods = 32;
};

/// Throws Error(SeedHitsVertex) or Error(Budget).
Tile tile_of(const Billiard& B, const PhasePair& seed, const TileOptions& opt = {});

/// Image of the rectangle under one step, as a rectangle.
std::pair<EdgeInterval, EdgeInterval> image_rectangle(const Billiard& B, const Tile& t);

struct Decomposition {
  std::vector<Tile> tiles;
  std::size_t cells = 0;
  std::size_t families = 0;  // cycles of tiles under the map
  bool maps_onto = true;     // every tile maps exactly onto a tile
  Rat tile_area, band_area, total_area;
  std::vector<std::pair<EdgeRef, EdgeRef>> parallel_pairs;
  bool covers() const { return tile_area + band_area == total_area; }
};

/// Throws Error(InfiniteC) unless C is Finite.
Decomposition decompose(const Billiard& B, const CriticalSet& C, const TileOptions& opt = {});

/// Deterministic low-discrepancy seeds with odd denominators, spread over
/// the non-parallel edge pairs of the (minus, plus) component.
std::vector<PhasePair> sample_seeds(const TablePair& T, std::size_t count);

/// Exact candidate for a periodic orbit shadowed by a long orbit segment:
/// finds a stretch whose edge sequence repeats and solves both affine
/// chains for their fixed points. Returns only verified periodic pairs.
std::vector<PhasePair> shadowed_periodic_orbits(const Billiard& B,
                                                const std::vector<EdgePoint>& orbit,
                                                std::size_t max_period = 64,
                                                std::size_t max_candidates = 4);

enum class Label { BP, FPEvidence, IsolatedOrbitFound, NoPeriodicFoundUpTo, Inconclusive };
const char* label_name(Label l);

struct SampleAudit {
  std::size_t samples = 0;
  std::size_t periodic = 0;
  std::size_t vertex_hits = 0;
  std::size_t max_period = 0;
  std::size_t steps = 0;  // per-seed step budget
};

struct Classification {
  Label label = Label::Inconclusive;
  std::optional<std::size_t> bound;
  std::size_t horizon = 0;  // for NoPeriodicFoundUpTo
  std::string rule;         // which criterion fired
  FStatus f_status = FStatus::BudgetExceeded;
  std::size_t f_minus = 0, f_plus = 0;
  bool c_computed = false;
  CStatus c_status = CStatus::Inconclusive;
  std::size_t c_minus = 0, c_plus = 0;
  std::vector<Certificate> witnesses;
  SampleAudit audit;
  std::optional<Tile> isolated;
};

struct ClassifyOptions {
  std::size_t f_points = 20000;
  std::size_t f_rounds = 60;
  CriticalOptions critical{100000, 20000, 8};
  std::size_t samples = 1000;
  std::size_t sample_steps = 20000;
};

Classification classify(const Billiard& B, const ClassifyOptions& opt = {});

struct BoundReport {
  std::size_t f_minus = 0, f_plus = 0;
  std::size_t bound = 0;
  SampleAudit audit;
  bool ratio_invariant = true;   // relative position in the F-segment, up to reflection
  std::size_t max_segment_visits = 0;  // per period, over even and odd points
};

/// Throws Error(FNotClosed).
BoundReport period_bound_report(const Billiard& B, std::size_t samples = 200,
                                std::size_t steps = 100000);

nlohmann::json to_json(const Tile& t);
nlohmann::json to_json(const Decomposition& d);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const BoundReport& r);

}  // namespace sbill
