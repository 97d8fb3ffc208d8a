#include "sbill/protocol.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "httplib.h"

#include "sbill/casebook.hpp"
#include "sbill/report.hpp"
#include "sbill/tiles.hpp"

namespace sbill {

namespace {

using json = nlohmann::json;

std::size_t get_size(const json& p, const char* key, std::size_t dflt, std::size_t cap) {
  if (!p.contains(key)) return dflt;
  const json& v = p[key];
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw Error(Errc::ParseError, std::string("\"") + key + "\" must be a non-negative integer");
  const auto n = v.get<std::size_t>();
  if (n > cap)
    throw Error(Errc::InvalidArgument, std::string("\"") + key + "\" exceeds " + std::to_string(cap));
  return n;
}

std::string get_string(const json& p, const char* key) {
  if (!p.contains(key) || !p[key].is_string())
    throw Error(Errc::ParseError, std::string("missing string \"") + key + "\"");
  return p[key].get<std::string>();
}

PhasePair get_seed(const json& p, const TablePair& T) {
  if (p.contains("seed")) return parse_seed(get_string(p, "seed"), &T);
  return parse_seed(get_string(p, "x") + "," + get_string(p, "y"), &T);
}

double perim(const EdgeRef& e, const Rat& t) { return e.index + t.to_double(); }

json tile_report(const Tile& t) {
  json j = to_json(t);
  j["decimal"] = {{"x", {perim(t.x.edge, t.x.lo), perim(t.x.edge, t.x.hi)}},
                  {"y", {perim(t.y.edge, t.y.lo), perim(t.y.edge, t.y.hi)}}};
  return j;
}

TablePair table_of(const json& p) {
  if (p.contains("builtin")) return builtin(get_string(p, "builtin"));
  if (p.contains("table")) {
    TablePair T = table_from_json(p["table"]);
    if (p.contains("name") && p["name"].is_string()) T.name = p["name"].get<std::string>();
    return T;
  }
  throw Error(Errc::ParseError, "set_table needs \"builtin\" or \"table\"");
}

}  // namespace

std::pair<std::shared_ptr<const Billiard>, std::uint64_t> Session::snapshot() {
  std::lock_guard lock(m_);
  return {billiard_, revision_};
}

json Session::handle(const json& request) {
  json id = request.is_object() && request.contains("id") ? request["id"] : json(nullptr);
  json response = {{"id", id}};
  try {
    if (!request.is_object() || !request.contains("op") || !request["op"].is_string())
      throw Error(Errc::ParseError, "request needs a string \"op\"");
    const std::string op = request["op"].get<std::string>();
    // parameters may sit in "params" or at the top level
    json params = request.contains("params") ? request["params"] : request;
    if (!params.is_object()) throw Error(Errc::ParseError, "\"params\" must be an object");
    response["op"] = op;

    if (op == "set_table") {
      auto B = std::make_shared<const Billiard>(table_of(params));
      std::lock_guard lock(m_);
      billiard_ = B;
      response["revision"] = ++revision_;
      response["result"] = table_report(B->table());
      response["ok"] = true;
      return response;
    }
    if (op == "kite") {
      const KiteOrbit K =
          kite_orbit6(Rat::parse(get_string(params, "X")), Rat::parse(get_string(params, "Y")));
      response["result"] = to_json(K);
      response["ok"] = true;
      return response;
    }

    auto [B, rev] = snapshot();
    if (!B) throw Error(Errc::InvalidArgument, "no table set; send set_table first");
    const TablePair& T = B->table();
    response["revision"] = rev;
    json result;
    if (op == "table") {
      result = table_report(T);
    } else if (op == "step") {
      result = step_report(T, B->step(get_seed(params, T)));
    } else if (op == "orbit") {
      const std::size_t steps = get_size(params, "steps", 1000, 1000000);
      auto [tr, sym] = B->iterate(get_seed(params, T), steps);
      result = trajectory_report(T, tr, sym);
    } else if (op == "tiles") {
      TileOptions to;
      to.budget = get_size(params, "budget", to.budget, 10000000);
      if (params.contains("seed") || params.contains("x")) {
        result = {{"tile", tile_report(tile_of(*B, get_seed(params, T), to))}};
      } else {
        CriticalOptions co;
        co.budget = get_size(params, "budget_c", co.budget, 10000000);
        const CriticalSet C = critical_set(*B, co);
        const Decomposition D = decompose(*B, C, to);
        json tiles = json::array();
        for (const auto& t : D.tiles) tiles.push_back(tile_report(t));
        result = to_json(D);
        result["tiles"] = tiles;
      }
    } else if (op == "cgrid") {
      CriticalOptions co;
      co.budget = get_size(params, "budget", co.budget, 10000000);
      const CriticalSet C = critical_set(*B, co);
      const GridReport G = c_grid(*B, C);
      result = to_json(G);
      for (auto& comp : result["components"])
        for (auto& l : comp) {
          const EdgePoint p = parse_edge_point(l["at"].get<std::string>());
          l["decimal"] = perim(p.edge, p.t);
        }
      result["critical_status"] = cstatus_name(C.status);
      result["critical_points"] = {C.count(Side::Minus), C.count(Side::Plus)};
    } else if (op == "classify") {
      ClassifyOptions co;
      co.f_points = get_size(params, "budget_f", co.f_points, 10000000);
      co.critical.budget = get_size(params, "budget_c", co.critical.budget, 10000000);
      co.samples = get_size(params, "samples", co.samples, 100000);
      co.sample_steps = get_size(params, "sample_steps", co.sample_steps, 10000000);
      result = to_json(classify(*B, co));
    } else {
      throw Error(Errc::InvalidArgument, "unknown op '" + op + "'");
    }
    response["result"] = std::move(result);
    response["ok"] = true;
  } catch (const Error& e) {
    response["ok"] = false;
    response["error"] = error_report(e);
  } catch (const std::exception& e) {
    response["ok"] = false;
    response["error"] = {{"code", "ParseError"}, {"message", e.what()}};
  }
  return response;
}

std::string Session::handle_line(const std::string& line) {
  json request;
  try {
    request = json::parse(line);
  } catch (const json::exception& e) {
    return json{{"id", nullptr},
                {"ok", false},
                {"error", {{"code", "ParseError"}, {"message", e.what()}}}}
        .dump();
  }
  return handle(request).dump();
}

void serve_stream(Session& s, std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out << s.handle_line(line) << '\n' << std::flush;
  }
}

struct RpcServer::Impl {
  Session& session;
  httplib::Server server;
  explicit Impl(Session& s) : session(s) {}
};

RpcServer::RpcServer(Session& s) : impl_(std::make_unique<Impl>(s)) {
  impl_->server.Post("/rpc", [this](const httplib::Request& req, httplib::Response& res) {
    std::istringstream in(req.body);
    std::ostringstream out;
    serve_stream(impl_->session, in, out);
    res.set_content(out.str(), "application/x-ndjson");
  });
  impl_->server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });
}

RpcServer::~RpcServer() { stop(); }

int RpcServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound <= 0) throw Error(Errc::InvalidArgument, "cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void RpcServer::listen() { impl_->server.listen_after_bind(); }

void RpcServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace sbill
