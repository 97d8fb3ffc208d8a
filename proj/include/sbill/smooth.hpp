#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

namespace sbill::smooth {

using Vec = std::array<double, 2>;

/// Strictly convex smooth loop, counter-clockwise in its angle parameter.
class ConvexCurve {
 public:
  enum class Kind { Ellipse, RadialFourier };

  /// center + R(rotation) (a cos t, b sin t)
  static ConvexCurve ellipse(Vec center, double a, double b, double rotation = 0);
  /// center + r(t) (cos t, sin t), r(t) = cos_coef[0] + sum_k cos_coef[k] cos kt + sin_coef[k] sin kt
  static ConvexCurve radial_fourier(Vec center, std::vector<double> cos_coef,
                                    std::vector<double> sin_coef);

  Vec point(double t) const;
  Vec d1(double t) const;
  Vec d2(double t) const;

  /// min of cross(d1, d2) / |d1|^3 over a grid of n parameters.
  double min_curvature(std::size_t n = 4096) const;

  Kind kind() const { return kind_; }
  nlohmann::json to_json() const;
  /// Throws Error(ParseError) or Error(InvalidArgument) if not strictly convex.
  static ConvexCurve from_json(const nlohmann::json& j);

 private:
  Kind kind_ = Kind::Ellipse;
  Vec c_{0, 0};
  double a_ = 1, b_ = 1, rot_ = 0;
  std::vector<double> cos_, sin_;
  double radius(double t, int deriv) const;
};

/// gamma_- and gamma_+; z_1 lies on gamma_-.
struct CurvePair {
  ConvexCurve minus, plus;
  const ConvexCurve& curve(int side) const { return side == 0 ? minus : plus; }
  /// Throws InvalidArgument unless both curves are strictly convex.
  void validate() const;
  static CurvePair from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

inline double omega(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

/// x0 on curve side0 (0 = minus), x1 on the other curve: the other end of
/// the chord from x0 parallel to the tangent at x1. Throws ParallelTangents,
/// RootFindFailure.
double smooth_step(const CurvePair& P, int side0, double x0, double x1);

/// f_k = sum_i omega(z_i, z_{i+1}), indices cyclic, length 2k.
double action_fk(const CurvePair& P, const std::vector<double>& z);
std::vector<double> grad_fk(const CurvePair& P, const std::vector<double>& z);

struct CriticalReport {
  std::vector<double> residuals;
  double max_residual = 0;
  double backtrack_margin = 0;  // min_j |z_{j+1} - z_{j-1}|
  bool backtracking = false;
  std::optional<std::size_t> cover_of;  // k' < k when the tuple repeats every 2k'
};

CriticalReport verify_critical(const CurvePair& P, const std::vector<double>& z,
                               double backtrack_tol = 1e-6);

struct SmoothOrbit {
  std::size_t k = 0;
  std::vector<double> z;  // 2k parameters, alternating minus / plus
  double f = 0;
  CriticalReport critical;
  double closure_error = 0;
  double resimulation_drift = 0;
  std::size_t restarts = 0;
  std::size_t accepted = 0;  // restarts meeting the tolerances
};

struct FindOptions {
  std::size_t restarts = 32;
  std::uint64_t seed = 1;
  double residual_tol = 1e-8;
  double backtrack_tol = 1e-6;
  double closure_tol = 1e-8;
  std::size_t max_iterations = 20000;
  bool parallel = true;
};

/// Maximizes f_k over random restarts. Throws NotConverged.
SmoothOrbit find_periodic(const CurvePair& P, std::size_t k, const FindOptions& opt = {});

/// Largest distance between z_{j+1} and smooth_step(z_{j-1}, z_j) over the
/// 2k steps of the cycle.
double closure_error(const CurvePair& P, const std::vector<double>& z);
/// Distance between (z_1, z_2) and its image after 2k steps of the map.
/// Grows with the orbit's hyperbolicity; reported, not used for acceptance.
double resimulation_drift(const CurvePair& P, const std::vector<double>& z);

/// The fixed ellipse pair used by the tests and the acceptance run.
CurvePair reference_pair();

nlohmann::json to_json(const CriticalReport& r);
nlohmann::json to_json(const SmoothOrbit& o);

}  // namespace sbill::smooth
