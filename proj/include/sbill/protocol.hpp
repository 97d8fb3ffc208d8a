#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>

#include "json.hpp"

#include "sbill/engine.hpp"

namespace sbill {

/// Explorer message handling. Requests are {"id"?, "op", "params"?};
/// responses are {"id", "ok", "op", "revision", "result"} or
/// {"id", "ok": false, "error": {"code", "message"}}.
///
/// Ops: set_table ({"builtin": NAME} or {"table": {...}}), table, step
/// ({"seed"}), orbit ({"seed", "steps"}), tiles ({"seed"} for one tile,
/// otherwise the decomposition), cgrid ({"budget"}), classify
/// ({"budget_f", "budget_c", "samples", "sample_steps"}), kite ({"X", "Y"}).
///
/// Safe to call from several threads; each request works on the table
/// current when it arrived.
class Session {
 public:
  nlohmann::json handle(const nlohmann::json& request);
  /// One JSON request in, one compact JSON line out (no newline).
  std::string handle_line(const std::string& line);

 private:
  std::mutex m_;
  std::shared_ptr<const Billiard> billiard_;
  std::uint64_t revision_ = 0;

  std::pair<std::shared_ptr<const Billiard>, std::uint64_t> snapshot();
};

/// Reads requests line by line until EOF, writes one response per line.
void serve_stream(Session& s, std::istream& in, std::ostream& out);

/// POST /rpc: the body holds one request per line, the reply one response
/// per line in the same order. GET /health answers "ok".
class RpcServer {
 public:
  explicit RpcServer(Session& s);
  ~RpcServer();
  RpcServer(const RpcServer&) = delete;
  RpcServer& operator=(const RpcServer&) = delete;

  /// port 0 picks a free port. Returns the bound port; throws
  /// Error(InvalidArgument) on failure.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sbill
