#pragma once

#include <atomic>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "atomgame/env.hpp"
#include "json.hpp"

namespace atomgame {

inline constexpr int kProtocolVersion = 1;

/// Observation as sent on the wire.
nlohmann::json encode_observation(const AtomGameEnv& env);

/// One client session of the JSON-lines environment protocol. Requests are
/// handled strictly in arrival order; a session owns at most one episode.
///
///   {"id":1,"op":"hello","version":1}
///   {"id":2,"op":"reset","circuit":{...},"grid":{"rows":R,"cols":C},
///    "params":{...},"window":W,"seed":S,"layout_mode":"random"}
///   {"id":3,"op":"step","targets":[{"atom":q,"cell":j},...]}
///   {"id":4,"op":"close"}
///
/// Successful responses carry "ok":true; failures carry "ok":false plus an
/// "error" code and a human-readable "detail". A failed step never changes
/// the episode.
class ProtocolSession {
 public:
  /// Handles one request line and returns the response line (no newline).
  std::string handle(std::string_view line);

  bool closed() const { return closed_; }
  const std::optional<AtomGameEnv>& env() const { return env_; }

 private:
  nlohmann::json dispatch(const nlohmann::json& request);
  nlohmann::json on_reset(const nlohmann::json& request);
  nlohmann::json on_step(const nlohmann::json& request);

  std::optional<AtomGameEnv> env_;
  bool closed_ = false;
};

/// Runs one session over a pair of streams until EOF or "close".
void serve_stream(std::istream& in, std::ostream& out);

/// Listening TCP endpoint. Each accepted connection gets its own session and
/// thread.
class TcpServer {
 public:
  /// Binds 127.0.0.1:`port` (0 picks an ephemeral port). Throws
  /// std::runtime_error when the port is unavailable.
  explicit TcpServer(std::uint16_t port, std::string_view host = "127.0.0.1");
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const { return port_; }

  /// Accept loop; returns once `stop` is set and all sessions have ended.
  void run(const std::atomic<bool>& stop);

 private:
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
};

/// Policy backed by an external process speaking JSON lines on its
/// stdin/stdout: it receives {"id":t,"op":"act","obs":{...}} and must answer
/// {"id":t,"targets":[{"atom":q,"cell":j},...]}.
Policy remote_policy(const std::string& command);

}  // namespace atomgame
