#pragma once

#include <cstddef>
#include <vector>

#include "sbill/rational.hpp"

namespace sbill {

struct Pt {
  Rat x, y;

  friend Pt operator+(const Pt& a, const Pt& b) { return {a.x + b.x, a.y + b.y}; }
  friend Pt operator-(const Pt& a, const Pt& b) { return {a.x - b.x, a.y - b.y}; }
  friend Pt operator*(const Rat& s, const Pt& p) { return {s * p.x, s * p.y}; }
  friend bool operator==(const Pt& a, const Pt& b) = default;
  Pt operator-() const { return {-x, -y}; }
};

struct PtHash {
  std::size_t operator()(const Pt& p) const noexcept {
    std::size_t h = p.x.hash();
    hash_combine(h, p.y.hash());
    return h;
  }
};

inline Rat cross(const Pt& a, const Pt& b) { return a.x * b.y - a.y * b.x; }
inline Rat dot(const Pt& a, const Pt& b) { return a.x * b.x + a.y * b.y; }

/// Sign of (q-p) x (r-p).
int orientation(const Pt& p, const Pt& q, const Pt& r);

/// Simple polygon, stored counter-clockwise.
class Poly {
 public:
  /// Validates and re-orients to CCW (reversal keeps v0 first).
  /// Throws Error with TooFewVertices, DegenerateEdge, CollinearTriple or
  /// SelfIntersecting.
  static Poly make(std::vector<Pt> vertices);

  std::size_t size() const noexcept { return v_.size(); }
  const Pt& v(std::size_t i) const { return v_[i % v_.size()]; }
  /// e_i = v_{i+1} - v_i
  const Pt& e(std::size_t i) const { return e_[i % e_.size()]; }
  const std::vector<Pt>& vertices() const noexcept { return v_; }
  bool convex_at(std::size_t i) const { return convex_[i % v_.size()]; }
  bool convex() const noexcept;
  bool reoriented() const noexcept { return reoriented_; }
  /// Twice the signed area (positive after construction).
  Rat area2() const;
  /// Point at parameter t on edge i.
  Pt at(std::size_t i, const Rat& t) const { return v(i) + t * e(i); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.v_ == b.v_; }

 private:
  std::vector<Pt> v_;
  std::vector<Pt> e_;
  std::vector<bool> convex_;
  bool reoriented_ = false;
};

enum class Loc { Interior, Exterior, OnEdge, OnVertex };

struct Location {
  Loc kind;
  int index = -1;  // edge or vertex index for boundary results
  friend bool operator==(const Location&, const Location&) = default;
};

Location point_location(const Poly& P, const Pt& p);

/// Every point of the open segment ab lies in int(P).
bool open_segment_in_interior(const Poly& P, const Pt& a, const Pt& b);

struct LineHit {
  Rat lambda;        // line parameter, point = origin + lambda * dir
  Rat lambda_end;    // equals lambda unless the hit is a collinear overlap
  std::size_t edge;  // hit point is v(edge) + t e(edge); vertices use t = 0
  Rat t;
  bool overlap = false;
  bool vertex() const { return t.is_zero() && !overlap; }
};

/// All intersections of origin + R*dir with the boundary, sorted by lambda.
std::vector<LineHit> line_polygon_hits(const Poly& P, const Pt& origin, const Pt& dir);

/// Direction d points strictly into int(P) from vertex i.
bool inward_at_vertex(const Poly& P, std::size_t i, const Pt& d);

}  // namespace sbill
