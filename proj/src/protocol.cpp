#include "atomgame/protocol.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <csignal>
#include <cstdio>
#include <cstring>
#include <list>
#include <memory>
#include <stdexcept>
#include <thread>

#include "atomgame/errors.hpp"

namespace atomgame {

using nlohmann::json;

nlohmann::json encode_observation(const AtomGameEnv& env) {
  return to_json(env.observation());
}

namespace {

json failure(const json& id, std::string_view code, const std::string& detail) {
  return {{"id", id}, {"ok", false}, {"error", code}, {"detail", detail}};
}

}  // namespace

std::string ProtocolSession::handle(std::string_view line) {
  json request;
  try {
    request = json::parse(line);
  } catch (const json::parse_error& e) {
    return failure(nullptr, "parse_error", e.what()).dump();
  }
  const json id = request.is_object() && request.contains("id") ? request["id"]
                                                                 : json(nullptr);
  try {
    json response = dispatch(request);
    response["id"] = id;
    return response.dump();
  } catch (const AtomGameError& e) {
    return failure(id, to_string(e.code()), e.what()).dump();
  } catch (const ParseError& e) {
    return failure(id, "invalid_circuit", e.what()).dump();
  } catch (const json::exception& e) {
    return failure(id, "invalid_request", e.what()).dump();
  } catch (const std::invalid_argument& e) {
    return failure(id, "invalid_argument", e.what()).dump();
  }
}

json ProtocolSession::dispatch(const json& request) {
  if (!request.is_object() || !request.contains("op") ||
      !request["op"].is_string()) {
    return failure(nullptr, "invalid_op", "request needs a string 'op'");
  }
  const std::string op = request["op"].get<std::string>();
  if (op == "hello") {
    const int version = request.value("version", -1);
    if (version != kProtocolVersion) {
      return failure(nullptr, "version_mismatch",
                     "server speaks version " + std::to_string(kProtocolVersion));
    }
    return {{"ok", true}, {"version", kProtocolVersion}};
  }
  if (op == "reset") return on_reset(request);
  if (op == "step") return on_step(request);
  if (op == "close") {
    closed_ = true;
    return {{"ok", true}};
  }
  return failure(nullptr, "invalid_op", "unknown op '" + op + "'");
}

json ProtocolSession::on_reset(const json& request) {
  ChunkedCircuit circuit = circuit_from_json(request.at("circuit"));
  const json& g = request.at("grid");
  const Grid grid{g.at("rows").get<int>(), g.at("cols").get<int>(),
                  g.value("spacing", 1.0)};
  grid.validate();
  const CostParams params =
      params_from_json(request.value("params", json::object()));
  EnvConfig config;
  config.window = request.value("window", config.window);
  config.horizon_cap = request.value("horizon_cap", config.horizon_cap);
  config.seed = request.value("seed", config.seed);
  config.layout_mode =
      parse_layout_mode(request.value("layout_mode", std::string("random")));

  env_.emplace(std::move(circuit), grid, params, config);
  return {{"ok", true},
          {"obs", encode_observation(*env_)},
          {"reward", 0.0},
          {"done", env_->done()}};
}

json ProtocolSession::on_step(const json& request) {
  if (!env_) {
    return failure(nullptr, "no_episode", "step before reset");
  }
  const ChunkAction action =
      action_from_json(request.value("targets", json::array()), env_->grid());
  const Transition tr = env_->step(action);
  return {{"ok", true},
          {"obs", encode_observation(*env_)},
          {"reward", tr.reward},
          {"total_reward", env_->total_reward()},
          {"done", tr.done}};
}

void serve_stream(std::istream& in, std::ostream& out) {
  ProtocolSession session;
  std::string line;
  while (!session.closed() && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out << session.handle(line) << '\n' << std::flush;
  }
}

namespace {

bool send_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

void serve_connection(int fd, const std::atomic<bool>& stop) {
  ProtocolSession session;
  std::string buffer;
  char chunk[4096];
  while (!session.closed() && !stop.load()) {
    pollfd pfd{fd, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 200);
    if (ready < 0 && errno != EINTR) break;
    if (ready <= 0) continue;
    const ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
    if (n <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::size_t nl;
    while (!session.closed() && (nl = buffer.find('\n')) != std::string::npos) {
      std::string line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (!send_all(fd, session.handle(line) + "\n")) {
        ::close(fd);
        return;
      }
    }
  }
  ::close(fd);
}

}  // namespace

TcpServer::TcpServer(std::uint16_t port, std::string_view host) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw std::runtime_error("socket() failed");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, std::string(host).c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw std::runtime_error("bad listen address '" + std::string(host) + "'");
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    const std::string reason = std::strerror(errno);
    ::close(listen_fd_);
    throw std::runtime_error("cannot bind port " + std::to_string(port) + ": " +
                             reason);
  }
  if (::listen(listen_fd_, 16) != 0) {
    ::close(listen_fd_);
    throw std::runtime_error("listen() failed");
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpServer::~TcpServer() {
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void TcpServer::run(const std::atomic<bool>& stop) {
  std::list<std::jthread> sessions;
  while (!stop.load()) {
    pollfd pfd{listen_fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 200);
    if (ready <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    sessions.emplace_back([fd, &stop] { serve_connection(fd, stop); });
  }
  sessions.clear();  // joins
}

namespace {

// Child process wired to us through two pipes.
class Subprocess {
 public:
  explicit Subprocess(const std::string& command) {
    // A dead child must surface as a write error, not kill us.
    std::signal(SIGPIPE, SIG_IGN);
    int to_child[2];
    int from_child[2];
    if (::pipe(to_child) != 0 || ::pipe(from_child) != 0) {
      throw std::runtime_error("pipe() failed");
    }
    pid_ = ::fork();
    if (pid_ < 0) throw std::runtime_error("fork() failed");
    if (pid_ == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    in_ = ::fdopen(from_child[0], "r");
    out_ = ::fdopen(to_child[1], "w");
  }

  ~Subprocess() {
    if (out_) std::fclose(out_);
    if (in_) std::fclose(in_);
    if (pid_ > 0) ::waitpid(pid_, nullptr, 0);
  }

  Subprocess(const Subprocess&) = delete;
  Subprocess& operator=(const Subprocess&) = delete;

  std::string exchange(const std::string& line) {
    if (std::fputs((line + "\n").c_str(), out_) < 0 || std::fflush(out_) != 0) {
      throw std::runtime_error("remote policy closed its input");
    }
    std::string reply;
    int c;
    while ((c = std::fgetc(in_)) != EOF && c != '\n') {
      reply.push_back(static_cast<char>(c));
    }
    if (c == EOF && reply.empty()) {
      throw std::runtime_error("remote policy exited without answering");
    }
    return reply;
  }

 private:
  pid_t pid_ = -1;
  std::FILE* in_ = nullptr;
  std::FILE* out_ = nullptr;
};

}  // namespace

Policy remote_policy(const std::string& command) {
  auto child = std::make_shared<Subprocess>(command);
  return [child](const AtomGameEnv& env) {
    const json request = {{"id", env.t()}, {"op", "act"},
                          {"obs", encode_observation(env)}};
    const json reply = json::parse(child->exchange(request.dump()));
    if (reply.value("id", json(nullptr)) != json(env.t())) {
      throw std::runtime_error("remote policy answered out of order");
    }
    return action_from_json(reply.at("targets"), env.grid());
  };
}

}  // namespace atomgame
