#include "sbill/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sbill/error.hpp"

namespace sbill {

namespace {

constexpr double kMargin = 20;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

struct Box {
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
  void add(double x, double y) {
    x0 = std::min(x0, x);
    y0 = std::min(y0, y);
    x1 = std::max(x1, x);
    y1 = std::max(y1, y);
  }
};

/// World to pixels, y pointing up.
class Canvas {
 public:
  Canvas(const Box& b, int size) : b_(b) {
    const double w = std::max(b.x1 - b.x0, 1e-12), h = std::max(b.y1 - b.y0, 1e-12);
    scale_ = (size - 2 * kMargin) / std::max(w, h);
    width_ = w * scale_ + 2 * kMargin;
    height_ = h * scale_ + 2 * kMargin;
  }
  double X(double x) const { return kMargin + (x - b_.x0) * scale_; }
  double Y(double y) const { return height_ - kMargin - (y - b_.y0) * scale_; }

  void polyline(const std::vector<std::array<double, 2>>& p, const std::string& color,
                double width, bool closed, const std::string& fill = "none") {
    if (p.empty()) return;
    out_ << "<" << (closed ? "polygon" : "polyline") << " points=\"";
    for (std::size_t i = 0; i < p.size(); ++i)
      out_ << (i ? " " : "") << num(X(p[i][0])) << "," << num(Y(p[i][1]));
    out_ << "\" fill=\"" << fill << "\" stroke=\"" << color << "\" stroke-width=\"" << num(width)
         << "\"/>\n";
  }
  void line(double x0, double y0, double x1, double y1, const std::string& color, double width) {
    out_ << "<line x1=\"" << num(X(x0)) << "\" y1=\"" << num(Y(y0)) << "\" x2=\"" << num(X(x1))
         << "\" y2=\"" << num(Y(y1)) << "\" stroke=\"" << color << "\" stroke-width=\""
         << num(width) << "\"/>\n";
  }
  void circle(double x, double y, double r, const std::string& color) {
    out_ << "<circle cx=\"" << num(X(x)) << "\" cy=\"" << num(Y(y)) << "\" r=\"" << num(r)
         << "\" fill=\"" << color << "\"/>\n";
  }
  void rect(double x0, double y0, double x1, double y1, const std::string& fill,
            const std::string& stroke) {
    out_ << "<rect x=\"" << num(X(x0)) << "\" y=\"" << num(Y(y1)) << "\" width=\""
         << num((x1 - x0) * scale_) << "\" height=\"" << num((y1 - y0) * scale_) << "\" fill=\""
         << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"0.3\"/>\n";
  }
  std::string str() const {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_) << "\" height=\""
      << num(height_) << "\" viewBox=\"0 0 " << num(width_) << " " << num(height_) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << out_.str() << "</svg>\n";
    return s.str();
  }

 private:
  Box b_;
  double scale_ = 1, width_ = 0, height_ = 0;
  std::ostringstream out_;
};

std::array<double, 2> xy(const Pt& p) { return {p.x.to_double(), p.y.to_double()}; }

std::vector<std::array<double, 2>> outline(const Poly& P) {
  std::vector<std::array<double, 2>> v;
  for (const auto& p : P.vertices()) v.push_back(xy(p));
  return v;
}

/// Twelve fixed fill colors, cycled by period.
const char* palette(std::size_t i) {
  static const char* c[] = {"#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6", "#ffff99",
                            "#8dd3c7", "#bebada", "#80b1d3", "#fccde5", "#d9d9d9", "#ccebc5"};
  return c[i % 12];
}

double perim(const EdgeRef& e, const Rat& t) { return e.index + t.to_double(); }

Box phase_box(const TablePair& T) {
  Box b;
  b.add(0, 0);
  b.add(static_cast<double>(T.size(Side::Minus)), static_cast<double>(T.size(Side::Plus)));
  return b;
}

void phase_frame(Canvas& c, const TablePair& T, const std::string& color) {
  const double n = static_cast<double>(T.size(Side::Minus));
  const double m = static_cast<double>(T.size(Side::Plus));
  for (std::size_t i = 0; i <= T.size(Side::Minus); ++i)
    c.line(static_cast<double>(i), 0, static_cast<double>(i), m, color, 0.4);
  for (std::size_t j = 0; j <= T.size(Side::Plus); ++j)
    c.line(0, static_cast<double>(j), n, static_cast<double>(j), color, 0.4);
}

}  // namespace

std::string render_table(const TablePair& T, const std::vector<EdgePoint>& orbit,
                         const std::vector<EdgePoint>& marks, const RenderSpec& spec) {
  Box b;
  for (const Poly* P : {&T.minus, &T.plus})
    for (const auto& v : P->vertices()) b.add(v.x.to_double(), v.y.to_double());
  Canvas c(b, spec.size);
  c.polyline(outline(T.minus), spec.table_color, spec.table_stroke, true);
  if (!T.single) c.polyline(outline(T.plus), spec.table_color, spec.table_stroke, true);
  // consecutive points of one parity are the even (resp. odd) trajectory
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<std::array<double, 2>> path;
    for (std::size_t i = static_cast<std::size_t>(parity); i < orbit.size(); i += 2)
      path.push_back(xy(T.point(orbit[i])));
    c.polyline(path, parity ? spec.odd_color : spec.even_color, spec.orbit_stroke, false);
  }
  for (const auto& m : marks) {
    const auto p = xy(T.point(m));
    c.circle(p[0], p[1], spec.mark_radius,
             m.edge.table == Side::Minus ? spec.even_color : spec.odd_color);
  }
  return c.str();
}

std::string render_decomposition(const TablePair& T, const Decomposition& D,
                                 const RenderSpec& spec) {
  Canvas c(phase_box(T), spec.size);
  phase_frame(c, T, "#999999");
  for (const auto& t : D.tiles) {
    // mirror tiles of the (plus, minus) component
    const bool swap = t.x.edge.table == Side::Plus;
    const EdgeInterval& a = swap ? t.y : t.x;
    const EdgeInterval& b = swap ? t.x : t.y;
    const double x0 = perim(a.edge, a.lo), x1 = perim(a.edge, a.hi);
    const double y0 = perim(b.edge, b.lo), y1 = perim(b.edge, b.hi);
    if (t.degenerate())
      c.line(x0, y0, x1, y1, spec.odd_color, spec.orbit_stroke);
    else
      c.rect(x0, y0, x1, y1, palette(t.period), spec.table_color);
  }
  return c.str();
}

std::string render_cgrid(const TablePair& T, const GridReport& G, const RenderSpec& spec) {
  Canvas c(phase_box(T), spec.size);
  phase_frame(c, T, "#cccccc");
  const double n = static_cast<double>(T.size(Side::Minus));
  const double m = static_cast<double>(T.size(Side::Plus));
  for (int comp = 0; comp < 2; ++comp)
    for (const auto& l : G.lines[comp]) {
      // a line through a minus point is vertical in (minus, plus) coordinates
      const double at = perim(l.at.edge, l.at.t);
      if (l.at.edge.table == Side::Minus)
        c.line(at, 0, at, m, spec.even_color, spec.orbit_stroke);
      else
        c.line(0, at, n, at, spec.odd_color, spec.orbit_stroke);
    }
  for (const auto& w : G.accumulation) {
    const double at = perim(w.vertex.edge, w.vertex.t);
    if (w.vertex.edge.table == Side::Minus)
      c.circle(at, 0, spec.mark_radius * 1.6, spec.table_color);
    else
      c.circle(0, at, spec.mark_radius * 1.6, spec.table_color);
  }
  return c.str();
}

std::string render_smooth(const smooth::CurvePair& P, const smooth::SmoothOrbit& o,
                          const RenderSpec& spec) {
  constexpr int kSamples = 256;
  Box b;
  std::vector<std::array<double, 2>> curves[2];
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < kSamples; ++i) {
      const auto p = P.curve(s).point(2 * std::numbers::pi * i / kSamples);
      curves[s].push_back({p[0], p[1]});
      b.add(p[0], p[1]);
    }
  Canvas c(b, spec.size);
  for (const auto& cv : curves) c.polyline(cv, spec.table_color, spec.table_stroke, true);
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<std::array<double, 2>> path;
    for (std::size_t i = static_cast<std::size_t>(parity); i < o.z.size(); i += 2) {
      const auto p = P.curve(parity).point(o.z[i]);
      path.push_back({p[0], p[1]});
    }
    c.polyline(path, parity ? spec.odd_color : spec.even_color, spec.orbit_stroke, true);
    for (const auto& p : path)
      c.circle(p[0], p[1], spec.mark_radius, parity ? spec.odd_color : spec.even_color);
  }
  return c.str();
}

void write_svg(const std::string& svg, const RenderSpec& spec) {
  if (spec.output.empty()) return;
  std::ofstream out(spec.output, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + spec.output);
  out << svg;
}

}  // namespace sbill
