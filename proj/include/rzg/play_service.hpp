#pragma once

// Human-versus-engine game sessions behind a JSON contract. The HTTP layer
// (http_server.hpp) is a thin mapping of these calls onto REST routes.
//
// Create request:
//   {"mode": "reversed_zeck", "n": 7, ...}
//   {"mode": "custom_start", "heights": "0,2", ...}
//   {"mode": "buildup", "n": 6, ...}
//   {"mode": "chomp", "rows": 3, "cols": 1, ...}
// with common fields "engine_side" (1 or 2, default 2), "engine_policy"
// ("optimal" | "strategy" | "random", default "optimal") and "seed".
//
// Moves: {"type": "split" | "combine", "index": j}, {"type": "place",
// "value": v} while building up, {"type": "fill", "heights": [...]} in Chomp.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rzg/fibcore.hpp"

namespace rzg::service {

using json = nlohmann::ordered_json;

// Carries the HTTP status the REST layer reports.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& message, json legal_moves = nullptr)
      : std::runtime_error(message), status_(status), code_(std::move(code)), legal_moves_(std::move(legal_moves)) {}

  int status() const { return status_; }
  const std::string& code() const { return code_; }
  const json& legal_moves() const { return legal_moves_; }
  json body() const;

 private:
  int status_;
  std::string code_;
  json legal_moves_;
};

struct ServiceConfig {
  Value solve_limit = 80;          // largest n solved for optimal play or analysis
  Value buildup_solve_limit = 60;
  int chomp_max_side = 7;
};

class Session;

class SessionStore {
 public:
  explicit SessionStore(ServiceConfig config = {});
  ~SessionStore();

  json create(const json& request);
  json get(const std::string& id) const;
  json post_move(const std::string& id, const json& move);
  json analysis(const std::string& id) const;
  void remove(const std::string& id);

  std::size_t size() const;

  // Creation requests plus move histories; restore() rebuilds every session
  // by replaying its history and checks that recorded engine moves are the
  // ones the engine chooses again.
  json snapshot() const;
  void restore(const json& snapshot);

  const ServiceConfig& config() const { return config_; }

 private:
  std::shared_ptr<Session> find(const std::string& id) const;
  std::string next_id();

  ServiceConfig config_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
  std::uint64_t id_salt_;
};

}  // namespace rzg::service
