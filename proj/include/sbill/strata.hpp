#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "sbill/engine.hpp"

namespace sbill {

enum class FStatus { Closed, BudgetExceeded };
const char* fstatus_name(FStatus s);

/// Closure of the vertex set under interior chords parallel to edges of the
/// other table. For a single table both sides hold the same points.
struct FilledSet {
  std::vector<EdgePoint> points[2];  // sorted
  std::vector<std::size_t> round_of[2];
  std::size_t rounds = 0;
  FStatus status = FStatus::BudgetExceeded;
  bool single = false;

  const std::vector<EdgePoint>& on(Side s) const { return points[static_cast<int>(s)]; }
  std::size_t count(Side s) const { return on(s).size(); }
  bool contains(const EdgePoint& p) const;
};

FilledSet filled_set(const Billiard& B, std::size_t max_points, std::size_t max_rounds);

enum class CStatus { Finite, LimitPointsAtVertices, Inconclusive };
const char* cstatus_name(CStatus s);

enum class Origin { Vertex, EvenPoint, Backtrace, SplitPoint };
const char* origin_name(Origin o);

/// A critical point with a replayable witness: iterating forward from
/// `replay` gives `steps - 1` regular steps and then hits `vertex`.
struct CPoint {
  EdgePoint p;
  Origin origin = Origin::Vertex;
  EdgePoint root;  // vertex the branch started from
  PhasePair replay;
  std::size_t steps = 0;
  EdgePoint vertex;
  std::size_t found_at = 0;  // processed-step counter when first seen
};

/// Geometric cascade of critical points toward a vertex along one edge:
/// distances terms[k] = terms[0] * ratio^k, measured in edge parameter.
struct Certificate {
  EdgePoint vertex;
  EdgeRef edge;
  Rat ratio;
  std::vector<Rat> terms;
};

/// Even point and odd coordinate of a branch whose return map contracts
/// onto a fixed point: an isolated periodic orbit.
struct IsolatedCandidate {
  PhasePair pair;
  std::size_t period = 0;
  Rat factor;
};

struct CriticalSet {
  std::vector<CPoint> points;  // discovery order
  CStatus status = CStatus::Inconclusive;
  bool single = false;
  std::vector<Certificate> witnesses;
  std::vector<IsolatedCandidate> candidates;
  std::size_t processed = 0;
  std::size_t branches = 0;
  std::size_t runaway = 0;
  bool queue_empty = false;

  /// Sorted points on one side (for a single table, both sides agree).
  std::vector<EdgePoint> on(Side s) const;
  std::size_t count(Side s) const { return on(s).size(); }
  bool contains(const EdgePoint& p) const;
};

struct CriticalOptions {
  std::size_t budget = 200000;        // processed branch steps
  std::size_t branch_cap = 20000;     // steps before a single branch counts as runaway
  std::size_t certificate_terms = 8;  // K
};

CriticalSet critical_set(const Billiard& B, const CriticalOptions& opt = {});

/// One line of the C-grid inside a phase component: {p} x (edges of the
/// other side) when vertical, or the mirror when horizontal.
struct GridLine {
  EdgePoint at;
  bool vertical = true;  // at is the first coordinate
};

struct GridReport {
  std::vector<GridLine> lines[2];  // component indexed by the side of the first coordinate
  std::vector<Certificate> accumulation;
  bool truncated = false;
};

/// Throws Error(InconclusiveInput) when C is Inconclusive.
GridReport c_grid(const Billiard& B, const CriticalSet& C);

/// A segment of the discontinuity set: fixed first coordinate and an
/// interval of the second, or the reverse.
struct PhaseSegment {
  bool fixed_first = true;
  EdgePoint fixed;
  EdgeRef edge;  // edge carrying the interval
  Rat lo, hi;
  std::size_t depth = 0;
  bool mirrored = false;
};

struct Discontinuity {
  std::vector<PhaseSegment> segments;
  std::size_t depth = 0;
  bool truncated = false;
  bool closed = false;  // a level added nothing new
};

/// N_0 through N_d and their swap mirrors, without repeats. max_segments
/// caps the output.
Discontinuity discontinuity_depth(const Billiard& B, std::size_t d,
                                  std::size_t max_segments = 200000);

nlohmann::json to_json(const FilledSet& F);
nlohmann::json to_json(const CriticalSet& C);
nlohmann::json to_json(const GridReport& G);
nlohmann::json to_json(const Discontinuity& N);

}  // namespace sbill
