#include "sbill/table.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sbill/error.hpp"

namespace sbill {
namespace {

std::vector<Pt> pts(std::initializer_list<std::pair<Rat, Rat>> xs) {
  std::vector<Pt> out;
  for (const auto& [x, y] : xs) out.push_back({x, y});
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

Pt apply(const Mat2& A, const Pt& b, const Pt& p) {
  return {A[0][0] * p.x + A[0][1] * p.y + b.x, A[1][0] * p.x + A[1][1] * p.y + b.y};
}

Rat det(const Mat2& A) { return A[0][0] * A[1][1] - A[0][1] * A[1][0]; }

nlohmann::json poly_json(const Poly& P) {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : P.vertices()) vs.push_back({v.x.str(), v.y.str()});
  return {{"vertices", vs}};
}

std::vector<Pt> poly_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw Error(Errc::ParseError, "polygon needs a \"vertices\" array");
  std::vector<Pt> out;
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 2) throw Error(Errc::ParseError, "vertex must be [x, y]");
    auto coord = [](const nlohmann::json& c) {
      try {
        if (c.is_string()) return Rat::parse(c.get<std::string>());
        if (c.is_number_integer()) return Rat(c.get<std::int64_t>());
      } catch (const std::exception& e) {
        throw Error(Errc::ParseError, e.what());
      }
      throw Error(Errc::ParseError, "coordinates must be rational strings or integers");
    };
    out.push_back({coord(v[0]), coord(v[1])});
  }
  return out;
}

}  // namespace

const char* side_name(Side s) { return s == Side::Minus ? "minus" : "plus"; }

Side parse_side(const std::string& s) {
  if (s == "minus" || s == "-" || s == "m") return Side::Minus;
  if (s == "plus" || s == "+" || s == "p") return Side::Plus;
  throw Error(Errc::ParseError, "unknown table tag '" + s + "'");
}

bool operator<(const EdgePoint& a, const EdgePoint& b) {
  if (a.edge != b.edge) return a.edge < b.edge;
  return a.t < b.t;
}

EdgePoint TablePair::normalize(EdgeRef e, Rat t) const {
  const int n = static_cast<int>(size(e.table));
  e.index = ((e.index % n) + n) % n;
  if (t == Rat(1)) {
    e.index = (e.index + 1) % n;
    t = Rat(0);
  }
  return {e, std::move(t)};
}

TablePair validate_table(std::vector<Pt> minus, std::optional<std::vector<Pt>> plus) {
  TablePair T;
  T.minus = Poly::make(std::move(minus));
  if (plus) {
    T.plus = Poly::make(std::move(*plus));
  } else {
    T.plus = T.minus;
    T.single = true;
  }
  return T;
}

TablePair affine_apply(const TablePair& T, const Mat2& A, const Pt& b) {
  if (det(A).is_zero()) throw Error(Errc::SingularMatrix, "det A = 0");
  auto map = [&](const Poly& P) {
    std::vector<Pt> out;
    for (const auto& v : P.vertices()) out.push_back(apply(A, b, v));
    return out;
  };
  TablePair R = validate_table(map(T.minus),
                               T.single ? std::nullopt : std::optional(map(T.plus)));
  R.approximate = T.approximate;
  R.name = T.name;
  return R;
}

EdgePoint affine_edge_point(const TablePair& T, const Mat2& A, const EdgePoint& p) {
  if (det(A).sign() > 0) return p;
  const int n = static_cast<int>(T.size(p.edge.table));
  if (p.t.is_zero()) return {{p.edge.table, (n - p.edge.index) % n}, Rat(0)};
  return {{p.edge.table, n - p.edge.index - 1}, Rat(1) - p.t};
}

TablePair translate_one(const TablePair& T, Side which, const Pt& v) {
  if (T.single) throw Error(Errc::SingleTable, "cannot translate one copy of a single table");
  TablePair R = T;
  std::vector<Pt> moved;
  for (const auto& p : T.poly(which).vertices()) moved.push_back(p + v);
  (which == Side::Minus ? R.minus : R.plus) = Poly::make(std::move(moved));
  return R;
}

std::vector<std::string> builtin_names() {
  return {"quad",        "square-rhombus",  "necktie",           "crooked-kite X Y",
          "unit-square", "right-triangle",  "regular-pentagram", "lattice-three-dirs",
          "two-table-cf"};
}

TablePair builtin(const std::string& name_in) {
  const auto words = split_ws(name_in);
  if (words.empty()) throw Error(Errc::UnknownName, "empty table name");
  const std::string& name = words[0];
  TablePair T;
  if (name == "quad") {
    T = validate_table(pts({{0, 1}, {0, 0}, {1, 0}, {3, 4}}), std::nullopt);
  } else if (name == "square-rhombus") {
    T = validate_table(pts({{0, 0}, {4, 0}, {4, 4}, {0, 4}}),
                       pts({{6, 5}, {8, 1}, {12, -1}, {10, 3}}));
  } else if (name == "necktie") {
    T = validate_table(pts({{2, 2}, {2, 0}, {0, 0}, {0, 2}}),
                       pts({{5, 2}, {4, 2}, {3, 0}, {5, 1}}));
  } else if (name == "crooked-kite") {
    if (words.size() != 3) throw Error(Errc::BadKiteParams, "expected 'crooked-kite X Y'");
    Rat X, Y;
    try {
      X = Rat::parse(words[1]);
      Y = Rat::parse(words[2]);
    } catch (const std::exception& e) {
      throw Error(Errc::BadKiteParams, e.what());
    }
    if (!(X > Rat(1) && Y > Rat(1) && abs(X - Y) < Rat(1)))
      throw Error(Errc::BadKiteParams,
                  "need X > 1, Y > 1, |X-Y| < 1; got X=" + X.str() + " Y=" + Y.str());
    T = validate_table({{0, 1}, {0, 0}, {1, 0}, {X, Y}}, std::nullopt);
  } else if (name == "unit-square") {
    T = validate_table(pts({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), std::nullopt);
  } else if (name == "right-triangle") {
    T = validate_table(pts({{0, 0}, {1, 0}, {0, 1}}), std::nullopt);
  } else if (name == "regular-pentagram") {
    // outer points rounded to a 1e-3 grid; inner points are exact crossings
    // of the star's five lines, so only five edge directions occur
    std::vector<Pt> outer;
    for (int k = 0; k < 5; ++k) {
      const double a = std::numbers::pi / 2 + k * 2 * std::numbers::pi / 5;
      const auto q = [](double v) { return Rat(std::llround(v * 1000), 1000); };
      outer.push_back({q(std::cos(a)), q(std::sin(a))});
    }
    auto meet = [](const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
      const Pt r = b - a, s = d - c;
      return a + (cross(c - a, s) / cross(r, s)) * r;
    };
    std::vector<Pt> vs;
    for (int k = 0; k < 5; ++k) {
      vs.push_back(outer[k]);
      vs.push_back(meet(outer[k], outer[(k + 2) % 5], outer[(k + 1) % 5], outer[(k + 4) % 5]));
    }
    T = validate_table(std::move(vs), std::nullopt);
    T.approximate = true;
  } else if (name == "lattice-three-dirs") {
    T = validate_table(pts({{0, 0}, {3, 0}, {3, 2}, {2, 2}, {1, 1}, {0, 1}}), std::nullopt);
  } else if (name == "two-table-cf") {
    T = validate_table(pts({{0, 0}, {4, 4}, {1, 4}, {0, 3}}),
                       pts({{6, 0}, {9, 0}, {10, 1}, {6, 1}}));
  } else {
    throw Error(Errc::UnknownName, "unknown builtin '" + name_in + "'");
  }
  T.name = name_in;
  return T;
}

nlohmann::json table_to_json(const TablePair& T) {
  nlohmann::json j;
  j["minus"] = poly_json(T.minus);
  j["plus"] = T.single ? nlohmann::json(nullptr) : poly_json(T.plus);
  return j;
}

TablePair table_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("minus")) throw Error(Errc::ParseError, "missing \"minus\"");
  std::optional<std::vector<Pt>> plus;
  if (j.contains("plus") && !j["plus"].is_null()) plus = poly_from_json(j["plus"]);
  return validate_table(poly_from_json(j["minus"]), std::move(plus));
}

TablePair load_table(const std::string& spec) {
  constexpr std::string_view prefix = "builtin:";
  if (spec.starts_with(prefix)) return builtin(spec.substr(prefix.size()));
  std::ifstream in(spec);
  if (!in) throw Error(Errc::ParseError, "cannot open " + spec);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  TablePair T = table_from_json(j);
  T.name = spec;
  return T;
}

std::string format_edge_point(const EdgePoint& p) {
  return std::string(side_name(p.edge.table)) + ":" + std::to_string(p.edge.index) + ":" +
         p.t.str();
}

EdgePoint parse_edge_point(const std::string& s) {
  const auto a = s.find(':');
  const auto b = a == std::string::npos ? a : s.find(':', a + 1);
  if (b == std::string::npos) throw Error(Errc::ParseError, "edge point '" + s + "'");
  EdgePoint p;
  p.edge.table = parse_side(s.substr(0, a));
  try {
    p.edge.index = std::stoi(s.substr(a + 1, b - a - 1));
    p.t = Rat::parse(s.substr(b + 1));
  } catch (const std::exception& e) {
    throw Error(Errc::ParseError, "edge point '" + s + "': " + e.what());
  }
  if (p.t.sign() < 0 || p.t >= Rat(1) || p.edge.index < 0)
    throw Error(Errc::ParseError, "edge point '" + s + "' needs index >= 0 and t in [0,1)");
  return p;
}

}  // namespace sbill
