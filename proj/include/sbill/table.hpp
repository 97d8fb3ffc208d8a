#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sbill/geom.hpp"

namespace sbill {

enum class Side : std::uint8_t { Minus = 0, Plus = 1 };

inline Side other(Side s) { return s == Side::Minus ? Side::Plus : Side::Minus; }
const char* side_name(Side s);
Side parse_side(const std::string& s);

struct EdgeRef {
  Side table = Side::Minus;
  int index = 0;
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

/// A boundary point; t in [0,1), t = 0 is the vertex at the start of the edge.
struct EdgePoint {
  EdgeRef edge;
  Rat t;
  bool is_vertex() const { return t.is_zero(); }
  friend bool operator==(const EdgePoint&, const EdgePoint&) = default;
};

struct EdgePointHash {
  std::size_t operator()(const EdgePoint& p) const noexcept {
    std::size_t h = p.t.hash();
    hash_combine(h, static_cast<std::size_t>(p.edge.index) * 2 +
                        static_cast<std::size_t>(p.edge.table));
    return h;
  }
};

bool operator<(const EdgePoint& a, const EdgePoint& b);

using Mat2 = std::array<std::array<Rat, 2>, 2>;

struct TablePair {
  Poly minus;
  Poly plus;
  bool single = false;
  bool approximate = false;
  std::string name;

  const Poly& poly(Side s) const { return s == Side::Minus ? minus : plus; }
  Pt point(const EdgePoint& p) const { return poly(p.edge.table).at(p.edge.index, p.t); }
  Pt edge_vec(const EdgeRef& e) const { return poly(e.table).e(e.index); }
  std::size_t size(Side s) const { return poly(s).size(); }
  /// Normalizes t = 1 to the next edge's start and reduces the index mod n.
  EdgePoint normalize(EdgeRef e, Rat t) const;
};

/// A single table passes plus = nullopt.
TablePair validate_table(std::vector<Pt> minus, std::optional<std::vector<Pt>> plus);

/// Applies p -> A p + b to both polygons.
TablePair affine_apply(const TablePair& T, const Mat2& A, const Pt& b);
/// Image of an edge point under the same affine map, re-indexed for the
/// re-oriented image polygon when det A < 0.
EdgePoint affine_edge_point(const TablePair& T, const Mat2& A, const EdgePoint& p);

TablePair translate_one(const TablePair& T, Side which, const Pt& v);

/// Named tables: quad, square-rhombus, necktie, crooked-kite X Y, unit-square,
/// right-triangle, regular-pentagram, lattice-three-dirs, two-table-cf.
TablePair builtin(const std::string& name);
std::vector<std::string> builtin_names();

nlohmann::json table_to_json(const TablePair& T);
TablePair table_from_json(const nlohmann::json& j);
/// "builtin:NAME" or a path to a JSON file.
TablePair load_table(const std::string& spec);

std::string format_edge_point(const EdgePoint& p);
EdgePoint parse_edge_point(const std::string& s);

}  // namespace sbill
