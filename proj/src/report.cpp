#include "sbill/report.hpp"

#include <cstdio>

namespace sbill {

nlohmann::json envelope(const std::string& kind, nlohmann::json body) {
  nlohmann::json j = {{"schema", kSchemaVersion}, {"kind", kind}};
  if (body.is_object()) {
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = std::move(it.value());
  } else {
    j["value"] = std::move(body);
  }
  return j;
}

std::string decimal17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

nlohmann::json edge_name(const EdgeRef& e) {
  return std::string(side_name(e.table)) + ":" + std::to_string(e.index);
}

nlohmann::json xy_report(const Pt& p) {
  return {{"xy", {p.x.str(), p.y.str()}}, {"decimal", {p.x.to_double(), p.y.to_double()}}};
}

}  // namespace

nlohmann::json point_report(const TablePair& T, const EdgePoint& p) {
  nlohmann::json j = xy_report(T.point(p));
  j["at"] = format_edge_point(p);
  return j;
}

nlohmann::json pair_report(const PhasePair& p) {
  return {format_edge_point(p.x), format_edge_point(p.y)};
}

nlohmann::json table_report(const TablePair& T) {
  auto poly = [](const Poly& P) {
    auto a = nlohmann::json::array();
    for (const auto& v : P.vertices()) a.push_back(xy_report(v));
    return a;
  };
  return {{"name", T.name},
          {"single", T.single},
          {"approximate", T.approximate},
          {"table", table_to_json(T)},
          {"minus", poly(T.minus)},
          {"plus", T.single ? nlohmann::json(nullptr) : poly(T.plus)}};
}

nlohmann::json step_report(const TablePair& T, const StepOutcome& o) {
  nlohmann::json j = {{"stop", stop_name(o.kind)}};
  switch (o.kind) {
    case Stop::Ok:
      j["next"] = pair_report(o.next);
      j["point"] = point_report(T, o.next.y);
      break;
    case Stop::HitsVertex:
      j["vertex"] = point_report(T, o.vertex);
      break;
    case Stop::NoUniqueChord: {
      auto a = nlohmann::json::array();
      for (const auto& c : o.candidates) a.push_back(format_edge_point(c));
      j["candidates"] = a;
      break;
    }
    default:
      break;
  }
  return j;
}

nlohmann::json trajectory_report(const TablePair& T, const Trajectory& tr,
                                 const SymbolicTrajectory& sym) {
  auto pts = nlohmann::json::array();
  for (const auto& p : tr.points) pts.push_back(point_report(T, p));
  auto s = nlohmann::json::array();
  for (const auto& e : sym) s.push_back(edge_name(e));
  return {{"points", pts},
          {"symbolic", s},
          {"seed_index", tr.seed_index},
          {"period", tr.period ? nlohmann::json(*tr.period) : nlohmann::json(nullptr)},
          {"forward_stop", step_report(T, tr.forward_stop)},
          {"backward_stop", step_report(T, tr.backward_stop)}};
}

nlohmann::json error_report(const Error& e) {
  return {{"code", errc_name(e.code())}, {"message", e.what()}};
}

PhasePair parse_seed(const std::string& s, const TablePair* T) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw Error(Errc::ParseError, "seed must be \"<x>,<y>\", got '" + s + "'");
  PhasePair p{parse_edge_point(s.substr(0, comma)), parse_edge_point(s.substr(comma + 1))};
  if (p.x.edge.table == p.y.edge.table)
    throw Error(Errc::InvalidArgument, "seed points must lie on opposite tables");
  if (T)
    for (const EdgePoint* q : {&p.x, &p.y})
      if (static_cast<std::size_t>(q->edge.index) >= T->size(q->edge.table))
        throw Error(Errc::InvalidArgument, "no edge " + format_edge_point(*q));
  return p;
}

}  // namespace sbill
