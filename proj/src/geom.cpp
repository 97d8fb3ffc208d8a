#include "sbill/geom.hpp"

#include <algorithm>
#include <string>

#include "sbill/error.hpp"

namespace sbill {
namespace {

// p on the closed segment ab (a != b).
bool on_segment(const Pt& a, const Pt& b, const Pt& p) {
  if (orientation(a, b, p) != 0) return false;
  const Rat d = dot(p - a, b - a);
  return d.sign() >= 0 && d <= dot(b - a, b - a);
}

bool segments_touch(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) ||
         on_segment(c, d, b);
}

}  // namespace

int orientation(const Pt& p, const Pt& q, const Pt& r) { return cross(q - p, r - p).sign(); }

Poly Poly::make(std::vector<Pt> vs) {
  const std::size_t n = vs.size();
  if (n < 3) throw Error(Errc::TooFewVertices, std::to_string(n) + " vertices");
  for (std::size_t i = 0; i < n; ++i)
    if (vs[i] == vs[(i + 1) % n])
      throw Error(Errc::DegenerateEdge,
                  "edge " + std::to_string(i) + " has repeated vertex " + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    if (orientation(vs[(i + n - 1) % n], vs[i], vs[(i + 1) % n]) == 0)
      throw Error(Errc::CollinearTriple, "vertices " + std::to_string((i + n - 1) % n) + "," +
                                             std::to_string(i) + "," +
                                             std::to_string((i + 1) % n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      const Pt &a = vs[i], &b = vs[(i + 1) % n], &c = vs[j], &d = vs[(j + 1) % n];
      if (adjacent) {
        // shared endpoint only; collinear triples are already excluded
        continue;
      }
      if (segments_touch(a, b, c, d))
        throw Error(Errc::SelfIntersecting,
                    "edges " + std::to_string(i) + " and " + std::to_string(j));
    }
  }
  Poly P;
  Rat a2;
  for (std::size_t i = 0; i < n; ++i) a2 += cross(vs[i], vs[(i + 1) % n]);
  if (a2.sign() < 0) {
    std::reverse(vs.begin() + 1, vs.end());
    P.reoriented_ = true;
  }
  P.v_ = std::move(vs);
  P.e_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) P.e_.push_back(P.v_[(i + 1) % n] - P.v_[i]);
  P.convex_.resize(n);
  for (std::size_t i = 0; i < n; ++i) P.convex_[i] = cross(P.e(i + n - 1), P.e(i)).sign() > 0;
  return P;
}

bool Poly::convex() const noexcept {
  return std::all_of(convex_.begin(), convex_.end(), [](bool b) { return b; });
}

Rat Poly::area2() const {
  Rat a;
  for (std::size_t i = 0; i < size(); ++i) a += cross(v(i), v(i + 1));
  return a;
}

Location point_location(const Poly& P, const Pt& p) {
  const std::size_t n = P.size();
  for (std::size_t i = 0; i < n; ++i)
    if (P.v(i) == p) return {Loc::OnVertex, static_cast<int>(i)};
  for (std::size_t i = 0; i < n; ++i)
    if (on_segment(P.v(i), P.v(i + 1), p)) return {Loc::OnEdge, static_cast<int>(i)};
  // crossing number with a horizontal ray to +x, half-open in y
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Pt& a = P.v(i);
    const Pt& b = P.v(i + 1);
    if ((a.y > p.y) != (b.y > p.y)) {
      // x-coordinate of the crossing compared with p.x, sign-corrected
      const int o = orientation(a, b, p);
      const bool up = b.y > a.y;
      if ((up && o > 0) || (!up && o < 0)) inside = !inside;
    }
  }
  return {inside ? Loc::Interior : Loc::Exterior, -1};
}

bool open_segment_in_interior(const Poly& P, const Pt& a, const Pt& b) {
  const Pt ab = b - a;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const Pt& p = P.v(i);
    const Pt pq = P.e(i);
    const Rat den = cross(ab, pq);
    const Pt pa = p - a;
    if (!den.is_zero()) {
      const Rat lam = cross(pa, pq) / den;
      const Rat mu = cross(pa, ab) / den;
      if (lam.sign() > 0 && lam < Rat(1) && mu.sign() >= 0 && mu <= Rat(1)) return false;
    } else if (cross(pa, ab).is_zero()) {
      const Rat ab2 = dot(ab, ab);
      const Rat l0 = dot(pa, ab) / ab2;
      const Rat l1 = dot(pa + pq, ab) / ab2;
      const Rat lo = min(l0, l1), hi = max(l0, l1);
      if (lo < Rat(1) && hi.sign() > 0) return false;
    }
  }
  const Pt mid = Rat(1, 2) * (a + b);
  return point_location(P, mid).kind == Loc::Interior;
}

std::vector<LineHit> line_polygon_hits(const Poly& P, const Pt& origin, const Pt& dir) {
  std::vector<LineHit> hits;
  const std::size_t n = P.size();
  const Rat d2 = dot(dir, dir);
  for (std::size_t k = 0; k < n; ++k) {
    const Pt& vk = P.v(k);
    const Pt& ek = P.e(k);
    const Rat den = cross(ek, dir);
    const Pt w = origin - vk;
    if (den.is_zero()) {
      if (!cross(w, dir).is_zero()) continue;
      Rat l0 = dot(vk - origin, dir) / d2;
      Rat l1 = dot(vk + ek - origin, dir) / d2;
      const bool fwd = l0 < l1;
      LineHit h{fwd ? l0 : l1, fwd ? l1 : l0, fwd ? k : (k + 1) % n, Rat(0), true};
      hits.push_back(std::move(h));
      continue;
    }
    // origin + lam dir = vk + u ek
    const Rat u = cross(w, dir) / den;
    if (u.sign() < 0 || u > Rat(1)) continue;
    const Rat lam = cross(w, ek) / den;
    if (u == Rat(1)) {
      hits.push_back({lam, lam, (k + 1) % n, Rat(0), false});
    } else {
      hits.push_back({lam, lam, k, u, false});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const LineHit& a, const LineHit& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.overlap < b.overlap;
  });
  // a vertex is reported by both of its edges
  std::vector<LineHit> out;
  for (auto& h : hits) {
    if (!h.overlap && !out.empty() && !out.back().overlap && out.back().lambda == h.lambda)
      continue;
    if (!h.overlap) {
      bool covered = false;
      for (const auto& o : out)
        if (o.overlap && o.lambda <= h.lambda && h.lambda <= o.lambda_end) covered = true;
      if (covered) continue;
    }
    out.push_back(std::move(h));
  }
  // vertex hits reported before an overlap starting at the same place
  std::vector<LineHit> res;
  for (auto& h : out) {
    if (h.overlap) {
      std::erase_if(res, [&](const LineHit& r) {
        return !r.overlap && h.lambda <= r.lambda && r.lambda <= h.lambda_end;
      });
    }
    res.push_back(std::move(h));
  }
  return res;
}

bool inward_at_vertex(const Poly& P, std::size_t i, const Pt& d) {
  const std::size_t n = P.size();
  const int a = cross(P.e(i), d).sign();
  const int b = cross(P.e(i + n - 1), d).sign();
  if (P.convex_at(i)) return a > 0 && b > 0;
  return a > 0 || b > 0;
}

}  // namespace sbill
