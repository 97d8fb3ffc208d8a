#pragma once

#include <string>
#include <vector>

#include "sbill/smooth.hpp"
#include "sbill/tiles.hpp"

namespace sbill {

struct RenderSpec {
  enum class What { TableWithOrbit, PhaseSpaceDecomposition, CGrid, SmoothOrbit };
  What what = What::TableWithOrbit;
  int size = 600;  // pixels, longer side of the drawing area
  double table_stroke = 1.5;
  double orbit_stroke = 0.6;
  double mark_radius = 2.5;
  std::string even_color = "#1f5fa8";
  std::string odd_color = "#c0392b";
  std::string table_color = "#222222";
  std::string output;  // path; empty means return only
};

/// Tables with an optional orbit (even points on minus joined in blue, odd in
/// red) and optional marked boundary points.
std::string render_table(const TablePair& T, const std::vector<EdgePoint>& orbit,
                         const std::vector<EdgePoint>& marks, const RenderSpec& spec = {});

/// The (minus, plus) phase component in perimeter coordinates: edge index + t.
std::string render_decomposition(const TablePair& T, const Decomposition& D,
                                 const RenderSpec& spec = {});
std::string render_cgrid(const TablePair& T, const GridReport& G, const RenderSpec& spec = {});
std::string render_smooth(const smooth::CurvePair& P, const smooth::SmoothOrbit& o,
                          const RenderSpec& spec = {});

/// Writes svg to spec.output when it is set. Throws Error(InvalidArgument).
void write_svg(const std::string& svg, const RenderSpec& spec);

}  // namespace sbill
