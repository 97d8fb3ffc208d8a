#include "sbill/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include "sbill/error.hpp"

namespace sbill::smooth {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

Vec operator+(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1]}; }
Vec operator-(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1]}; }
Vec operator*(double s, const Vec& a) { return {s * a[0], s * a[1]}; }
double norm(const Vec& a) { return std::hypot(a[0], a[1]); }

Vec rotate(double r, const Vec& v) {
  const double c = std::cos(r), s = std::sin(r);
  return {c * v[0] - s * v[1], s * v[0] + c * v[1]};
}

double wrap(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0 ? t + kTwoPi : t;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Vec vec_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::ParseError, "expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

// ------------------------------------------------------------ curves

ConvexCurve ConvexCurve::ellipse(Vec center, double a, double b, double rotation) {
  if (!(a > 0 && b > 0)) throw Error(Errc::InvalidArgument, "ellipse semi-axes must be positive");
  ConvexCurve c;
  c.kind_ = Kind::Ellipse;
  c.c_ = center;
  c.a_ = a;
  c.b_ = b;
  c.rot_ = rotation;
  return c;
}

ConvexCurve ConvexCurve::radial_fourier(Vec center, std::vector<double> cos_coef,
                                        std::vector<double> sin_coef) {
  if (cos_coef.empty()) throw Error(Errc::InvalidArgument, "need a constant term");
  ConvexCurve c;
  c.kind_ = Kind::RadialFourier;
  c.c_ = center;
  sin_coef.resize(std::max(sin_coef.size(), cos_coef.size()), 0.0);
  cos_coef.resize(sin_coef.size(), 0.0);
  c.cos_ = std::move(cos_coef);
  c.sin_ = std::move(sin_coef);
  if (c.min_curvature() <= 0) throw Error(Errc::InvalidArgument, "curve is not strictly convex");
  return c;
}

double ConvexCurve::radius(double t, int deriv) const {
  double r = deriv == 0 ? cos_[0] : 0.0;
  for (std::size_t k = 1; k < cos_.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double c = std::cos(kk * t), s = std::sin(kk * t);
    switch (deriv) {
      case 0: r += cos_[k] * c + sin_[k] * s; break;
      case 1: r += kk * (-cos_[k] * s + sin_[k] * c); break;
      default: r += -kk * kk * (cos_[k] * c + sin_[k] * s); break;
    }
  }
  return r;
}

Vec ConvexCurve::point(double t) const {
  if (kind_ == Kind::Ellipse) return c_ + rotate(rot_, {a_ * std::cos(t), b_ * std::sin(t)});
  return c_ + radius(t, 0) * Vec{std::cos(t), std::sin(t)};
}

Vec ConvexCurve::d1(double t) const {
  if (kind_ == Kind::Ellipse) return rotate(rot_, {-a_ * std::sin(t), b_ * std::cos(t)});
  const Vec u{std::cos(t), std::sin(t)}, n{-std::sin(t), std::cos(t)};
  return radius(t, 1) * u + radius(t, 0) * n;
}

Vec ConvexCurve::d2(double t) const {
  if (kind_ == Kind::Ellipse) return rotate(rot_, {-a_ * std::cos(t), -b_ * std::sin(t)});
  const Vec u{std::cos(t), std::sin(t)}, n{-std::sin(t), std::cos(t)};
  return (radius(t, 2) - radius(t, 0)) * u + (2 * radius(t, 1)) * n;
}

double ConvexCurve::min_curvature(std::size_t n) const {
  double m = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    const Vec v = d1(t);
    const double s = norm(v);
    m = std::min(m, omega(v, d2(t)) / (s * s * s));
  }
  return m;
}

nlohmann::json ConvexCurve::to_json() const {
  if (kind_ == Kind::Ellipse)
    return {{"ellipse", {{"center", {c_[0], c_[1]}}, {"axes", {a_, b_}}, {"rotation", rot_}}}};
  return {{"fourier", {{"center", {c_[0], c_[1]}}, {"cos", cos_}, {"sin", sin_}}}};
}

ConvexCurve ConvexCurve::from_json(const nlohmann::json& j) {
  try {
    if (j.contains("ellipse")) {
      const auto& e = j.at("ellipse");
      const Vec ax = vec_from(e.at("axes"));
      return ellipse(vec_from(e.at("center")), ax[0], ax[1], e.value("rotation", 0.0));
    }
    if (j.contains("fourier")) {
      const auto& f = j.at("fourier");
      return radial_fourier(vec_from(f.at("center")), f.at("cos").get<std::vector<double>>(),
                            f.value("sin", std::vector<double>{}));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  throw Error(Errc::ParseError, "curve needs an 'ellipse' or 'fourier' entry");
}

void CurvePair::validate() const {
  if (minus.min_curvature() <= 0 || plus.min_curvature() <= 0)
    throw Error(Errc::InvalidArgument, "curves must be strictly convex");
}

CurvePair CurvePair::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("minus") || !j.contains("plus"))
    throw Error(Errc::ParseError, "curve pair needs 'minus' and 'plus'");
  CurvePair P{ConvexCurve::from_json(j.at("minus")), ConvexCurve::from_json(j.at("plus"))};
  P.validate();
  return P;
}

nlohmann::json CurvePair::to_json() const {
  return {{"minus", minus.to_json()}, {"plus", plus.to_json()}};
}

CurvePair reference_pair() {
  return {ConvexCurve::ellipse({0, 0}, 2, 1, 0.3), ConvexCurve::ellipse({5, 1}, 1.5, 0.8, -0.7)};
}

// ------------------------------------------------------------ map

double smooth_step(const CurvePair& P, int side0, double x0, double x1) {
  const ConvexCurve& A = P.curve(side0);
  const Vec T = P.curve(1 - side0).d1(x1);
  const Vec p0 = A.point(x0);
  const Vec v0 = A.d1(x0);
  const double s = omega(v0, T) / (norm(v0) * norm(T));
  if (std::abs(s) < 1e-12) throw Error(Errc::ParallelTangents, "tangents at x0 and x1 are parallel");
  auto g = [&](double t) { return omega(A.point(t) - p0, T); };
  // g vanishes at x0 and at exactly one other parameter
  constexpr int N = 512;
  const double eps = 1e-9;
  double lo = x0 + eps, glo = g(lo);
  for (int i = 1; i <= N; ++i) {
    const double hi = i == N ? x0 + kTwoPi - eps : x0 + kTwoPi * i / N;
    const double ghi = g(hi);
    if ((glo < 0) != (ghi < 0)) {
      if (ghi == 0) return wrap(hi);
      std::uintmax_t iters = 200;
      const auto r = boost::math::tools::toms748_solve(
          g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(50), iters);
      if (iters >= 200) throw Error(Errc::RootFindFailure, "no convergence to 1e-12");
      return wrap((r.first + r.second) / 2);
    }
    lo = hi;
    glo = ghi;
  }
  throw Error(Errc::RootFindFailure, "chord has no second end");
}

// ------------------------------------------------------------ action

double action_fk(const CurvePair& P, const std::vector<double>& z) {
  const std::size_t n = z.size();
  double f = 0;
  for (std::size_t i = 0; i < n; ++i)
    f += omega(P.curve(static_cast<int>(i % 2)).point(z[i]),
               P.curve(static_cast<int>((i + 1) % 2)).point(z[(i + 1) % n]));
  return f;
}

namespace {

struct Frame {
  std::vector<Vec> p, d1, d2;
};

Frame frame(const CurvePair& P, const std::vector<double>& z, bool second) {
  Frame F;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const ConvexCurve& c = P.curve(static_cast<int>(i % 2));
    F.p.push_back(c.point(z[i]));
    F.d1.push_back(c.d1(z[i]));
    if (second) F.d2.push_back(c.d2(z[i]));
  }
  return F;
}

std::vector<double> gradient(const Frame& F) {
  const std::size_t n = F.p.size();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = omega(F.d1[i], F.p[(i + 1) % n] - F.p[(i + n - 1) % n]);
  return g;
}

Eigen::MatrixXd hessian(const Frame& F) {
  const std::size_t n = F.p.size();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t nx = (i + 1) % n, pv = (i + n - 1) % n;
    const auto I = static_cast<Eigen::Index>(i);
    H(I, I) = omega(F.d2[i], F.p[nx] - F.p[pv]);
    const double c = omega(F.d1[i], F.d1[nx]);
    H(I, static_cast<Eigen::Index>(nx)) += c;
    H(static_cast<Eigen::Index>(nx), I) += c;
  }
  return H;
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<double> grad_fk(const CurvePair& P, const std::vector<double>& z) {
  return gradient(frame(P, z, false));
}

CriticalReport verify_critical(const CurvePair& P, const std::vector<double>& z,
                               double backtrack_tol) {
  const Frame F = frame(P, z, false);
  const std::size_t n = z.size();
  CriticalReport R;
  R.backtrack_margin = INFINITY;
  for (std::size_t j = 0; j < n; ++j) {
    const Vec u = F.p[(j + 1) % n] - F.p[(j + n - 1) % n];
    const double len = norm(u);
    R.backtrack_margin = std::min(R.backtrack_margin, len);
    const double r = len > 0 ? std::abs(omega(u, F.d1[j])) / (len * norm(F.d1[j])) : 0.0;
    R.residuals.push_back(r);
    R.max_residual = std::max(R.max_residual, r);
  }
  R.backtracking = R.backtrack_margin <= backtrack_tol;
  const std::size_t k = n / 2;
  for (std::size_t p = 1; p < k; ++p) {
    if (k % p) continue;
    double d = 0;
    for (std::size_t i = 0; i < n; ++i) d = std::max(d, norm(F.p[i] - F.p[(i + 2 * p) % n]));
    if (d < 1e-9) {
      R.cover_of = p;
      break;
    }
  }
  return R;
}

double closure_error(const CurvePair& P, const std::vector<double>& z) {
  const std::size_t n = z.size();
  double err = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const int side = static_cast<int>(j % 2);
    const double next = smooth_step(P, side, z[j], z[(j + 1) % n]);
    err = std::max(err, norm(P.curve(side).point(next) - P.curve(side).point(z[(j + 2) % n])));
  }
  return err;
}

double resimulation_drift(const CurvePair& P, const std::vector<double>& z) {
  const std::size_t n = z.size();
  double a = z[0], b = z[1];
  for (std::size_t j = 0; j < n; ++j) {
    const double c = smooth_step(P, static_cast<int>(j % 2), a, b);
    a = b;
    b = c;
  }
  return std::max(norm(P.minus.point(a) - P.minus.point(z[0])),
                  norm(P.plus.point(b) - P.plus.point(z[1])));
}

// ------------------------------------------------------------ search

namespace {

struct Ascent {
  std::vector<double> z;
  double f = -INFINITY;
  bool ok = false;
};

Ascent ascend(const CurvePair& P, std::vector<double> z, const FindOptions& opt) {
  const std::size_t n = z.size();
  double f = action_fk(P, z);
  std::vector<double> g = grad_fk(P, z);
  double alpha = 0.1;
  for (std::size_t it = 0; it < opt.max_iterations && max_abs(g) > 1e-7; ++it) {
    double g2 = 0;
    for (double x : g) g2 += x * x;
    std::vector<double> trial(n);
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = z[i] + alpha * g[i];
      const double ft = action_fk(P, trial);
      if (ft >= f + 1e-4 * alpha * g2) {
        z = trial;
        f = ft;
        moved = true;
        alpha *= 2;
        break;
      }
      alpha /= 2;
    }
    if (!moved) break;
    g = grad_fk(P, z);
  }
  // Newton polish on the tridiagonal-plus-corners Hessian
  for (int it = 0; it < 50 && max_abs(g) > 1e-14; ++it) {
    const Frame F = frame(P, z, true);
    const Eigen::MatrixXd H = hessian(F);
    Eigen::VectorXd G(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) G(static_cast<Eigen::Index>(i)) = g[i];
    const Eigen::VectorXd d = H.completeOrthogonalDecomposition().solve(-G);
    std::vector<double> trial(n);
    for (std::size_t i = 0; i < n; ++i) trial[i] = z[i] + d(static_cast<Eigen::Index>(i));
    const std::vector<double> gt = grad_fk(P, trial);
    if (!(max_abs(gt) < max_abs(g))) break;
    z = trial;
    g = gt;
  }
  for (double& t : z) t = wrap(t);
  Ascent A;
  A.f = action_fk(P, z);
  A.z = std::move(z);
  return A;
}

std::vector<double> start(std::size_t k, std::size_t r, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 1000003 + r);
  std::uniform_real_distribution<double> U(0, kTwoPi);
  std::vector<double> z(2 * k);
  if (r % 2 == 0) {
    for (double& t : z) t = U(rng);
  } else {
    // both chains winding once, with random phases and jitter
    const double ph[2] = {U(rng), U(rng)};
    std::normal_distribution<double> J(0, 0.1);
    for (std::size_t i = 0; i < 2 * k; ++i)
      z[i] = ph[i % 2] + kTwoPi * static_cast<double>(i / 2) / static_cast<double>(k) + J(rng);
  }
  return z;
}

}  // namespace

SmoothOrbit find_periodic(const CurvePair& P, std::size_t k, const FindOptions& opt) {
  if (k < 2) throw Error(Errc::InvalidArgument, "need k >= 2");
  auto run = [&](std::size_t r) {
    Ascent A = ascend(P, start(k, r, opt.seed), opt);
    const CriticalReport c = verify_critical(P, A.z, opt.backtrack_tol);
    A.ok = c.max_residual < opt.residual_tol && !c.backtracking;
    if (A.ok) {
      try {
        A.ok = closure_error(P, A.z) < opt.closure_tol;
      } catch (const Error&) {
        A.ok = false;
      }
    }
    return A;
  };
  std::vector<Ascent> results(opt.restarts);
  if (opt.parallel) {
    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t b = 0; b < opt.restarts; b += width) {
      std::vector<std::future<Ascent>> jobs;
      for (std::size_t r = b; r < std::min(opt.restarts, b + width); ++r)
        jobs.push_back(std::async(std::launch::async, run, r));
      for (std::size_t r = b; r < std::min(opt.restarts, b + width); ++r)
        results[r] = jobs[r - b].get();
    }
  } else {
    for (std::size_t r = 0; r < opt.restarts; ++r) results[r] = run(r);
  }
  SmoothOrbit best;
  best.k = k;
  best.restarts = opt.restarts;
  const Ascent* pick = nullptr;
  for (const auto& A : results) {
    if (!A.ok) continue;
    ++best.accepted;
    if (!pick || A.f > pick->f) pick = &A;
  }
  if (!pick)
    throw Error(Errc::NotConverged,
                "no restart reached the tolerances for k=" + std::to_string(k));
  best.z = pick->z;
  best.f = pick->f;
  best.critical = verify_critical(P, best.z, opt.backtrack_tol);
  best.closure_error = closure_error(P, best.z);
  best.resimulation_drift = resimulation_drift(P, best.z);
  return best;
}

// ------------------------------------------------------------ json

nlohmann::json to_json(const CriticalReport& r) {
  auto res = nlohmann::json::array();
  for (double x : r.residuals) res.push_back(num(x));
  return {{"residuals", res},
          {"max_residual", num(r.max_residual)},
          {"backtrack_margin", num(r.backtrack_margin)},
          {"backtracking", r.backtracking},
          {"cover_of", r.cover_of ? nlohmann::json(*r.cover_of) : nlohmann::json()}};
}

nlohmann::json to_json(const SmoothOrbit& o) {
  auto z = nlohmann::json::array();
  for (double t : o.z) z.push_back(num(t));
  return {{"k", o.k},
          {"period", 2 * o.k},
          {"z", z},
          {"f", num(o.f)},
          {"critical", to_json(o.critical)},
          {"closure_error", num(o.closure_error)},
          {"resimulation_drift", num(o.resimulation_drift)},
          {"restarts", o.restarts},
          {"accepted", o.accepted}};
}

}  // namespace sbill::smooth
