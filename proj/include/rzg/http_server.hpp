#pragma once

#include <memory>
#include <optional>
#include <string>

#include "rzg/play_service.hpp"

namespace httplib {
class Server;
}

namespace rzg::service {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::string> static_dir;     // served at "/" when set
  std::optional<std::string> snapshot_path;  // loaded on start, written on stop
  ServiceConfig config;
};

// REST routes:
//   POST   /games                -> 201 session
//   GET    /games/{id}           -> 200 session
//   POST   /games/{id}/moves     -> 200 session after the engine's reply
//   GET    /games/{id}/analysis  -> 200 {winner_under_optimal, optimal_moves, ...}
//   DELETE /games/{id}           -> 204
// Errors carry {code, message, legal_moves?}.
class HttpServer {
 public:
  explicit HttpServer(ServerOptions options);
  ~HttpServer();

  // Binds; returns the bound port (useful with port 0).
  int bind();
  // Blocks until stop() is called. Writes the snapshot, if configured.
  void listen();
  void stop();

  SessionStore& store() { return store_; }

 private:
  void install_routes();
  void save_snapshot() const;

  ServerOptions options_;
  SessionStore store_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace rzg::service
