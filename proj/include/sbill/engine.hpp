#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sbill/table.hpp"

namespace sbill {

struct PhasePair {
  EdgePoint x, y;
  friend bool operator==(const PhasePair&, const PhasePair&) = default;
};

struct PhasePairHash {
  std::size_t operator()(const PhasePair& p) const noexcept {
    std::size_t h = EdgePointHash{}(p.x);
    hash_combine(h, EdgePointHash{}(p.y));
    return h;
  }
};

inline PhasePair swap(const PhasePair& p) { return {p.y, p.x}; }

enum class Stop { Ok, ParallelEdges, YIsVertex, HitsVertex, NoUniqueChord, Budget };
const char* stop_name(Stop s);

struct StepOutcome {
  Stop kind = Stop::Ok;
  PhasePair next;                     // Ok
  EdgePoint vertex;                   // HitsVertex
  std::vector<EdgePoint> candidates;  // NoUniqueChord
  bool ok() const { return kind == Stop::Ok; }
};

/// Affine piece of the map t -> u from edge parameter of x to edge parameter
/// of z, valid on the open t-interval (lo, hi).
struct Piece {
  Rat lo, hi;
  int target = 0;
  Rat a, b;  // u = a t + b
};

struct Projection {
  std::vector<Piece> pieces;
  std::vector<Rat> splits;              // parameters where the chord ends in a vertex
  std::vector<EdgePoint> split_vertex;  // that vertex
};

struct AffineCoeffs {
  Rat a, b;  // u = a t + b
  Rat dir_ratio;  // det(e_i, e_j) / det(e_k, e_j)
};

struct Trajectory {
  std::vector<EdgePoint> points;
  std::size_t seed_index = 0;
  StepOutcome forward_stop;
  StepOutcome backward_stop;
  std::optional<std::size_t> period;
};

using SymbolicTrajectory = std::vector<EdgeRef>;

/// The symplectic billiard map on a table pair. For a single table the two
/// sides share one polygon and the tags alternate along an orbit.
class Billiard {
 public:
  explicit Billiard(TablePair T);

  const TablePair& table() const noexcept { return T_; }

  StepOutcome step(const PhasePair& p) const;
  StepOutcome step_back(const PhasePair& p) const;
  /// x must be a vertex; throws Error(InvalidArgument) if y is a vertex.
  std::vector<StepOutcome> continuations_at_vertex(const PhasePair& p) const;

  /// Nearest boundary point hit from x along sign * e(dir); nullopt if none.
  std::optional<EdgePoint> cast(const EdgePoint& x, const EdgeRef& dir, int sign) const;
  /// Same for an arbitrary point on edge i given by t (need not be normalized).
  std::optional<std::pair<int, Rat>> cast_raw(Side s, int i, const Rat& t, int j,
                                              int sign) const;

  /// Endpoints of all interior chords from x parallel to edge dir of the
  /// other table (0 or 1 for a non-vertex x, up to 2 at a reflex vertex).
  std::vector<EdgePoint> chord_ends(const EdgePoint& x, int dir) const;

  /// Splits the open interval (lo, hi) on edge i by where the inward chord
  /// parallel to edge j of the other table ends.
  Projection project(const EdgeRef& i, const Rat& lo, const Rat& hi, int j) const;

  /// Throws Error(UnrealizableBranch).
  AffineCoeffs affine_step_coeffs(const EdgeRef& i, const EdgeRef& j, const EdgeRef& k) const;

  /// Inward chord sign for a non-vertex point of edge i along e_j of the other
  /// side; 0 when parallel.
  int chord_sign(Side s, int i, int j) const { return sign_[idx2(s, i, j)]; }

  std::pair<Trajectory, SymbolicTrajectory> iterate(const PhasePair& seed,
                                                    std::size_t max_steps) const;
  /// Forward period only, nothing recorded. Returns the stop reason too.
  std::optional<std::size_t> period(const PhasePair& seed, std::size_t max_steps,
                                    Stop* stop = nullptr) const;

 private:
  struct Coef {
    Rat alpha, beta, gamma, delta;
    bool parallel = true;
  };
  std::size_t idx2(Side s, int i, int j) const {
    return s == Side::Minus ? static_cast<std::size_t>(i * nb_[1] + j)
                            : off2_ + static_cast<std::size_t>(i * nb_[0] + j);
  }
  std::size_t coef_index(Side s, int i, int j, int k) const {
    const int n = nb_[static_cast<int>(s)];
    const int m = nb_[1 - static_cast<int>(s)];
    const std::size_t base = s == Side::Minus ? 0 : off3_;
    return base + static_cast<std::size_t>((i * m + j) * n + k);
  }
  const Coef& coef(Side s, int i, int j, int k) const { return coef_[coef_index(s, i, j, k)]; }

  TablePair T_;
  int nb_[2];
  std::size_t off2_ = 0, off3_ = 0;
  std::vector<Coef> coef_;
  std::vector<int> sign_;
};

}  // namespace sbill
