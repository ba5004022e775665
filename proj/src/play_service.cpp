#include "rzg/play_service.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <random>
#include <vector>

#include "rzg/buildup.hpp"
#include "rzg/chomp.hpp"
#include "rzg/errors.hpp"
#include "rzg/game_graph.hpp"
#include "rzg/randomplay.hpp"
#include "rzg/strategies.hpp"

namespace rzg::service {

json ServiceError::body() const {
  json j{{"code", code_}, {"message", what()}};
  if (!legal_moves_.is_null()) j["legal_moves"] = legal_moves_;
  return j;
}

namespace {

enum class EnginePolicy { kOptimal, kStrategy, kRandom };

const char* policy_name(EnginePolicy p) {
  switch (p) {
    case EnginePolicy::kOptimal: return "optimal";
    case EnginePolicy::kStrategy: return "strategy";
    case EnginePolicy::kRandom: return "random";
  }
  return "?";
}

[[noreturn]] void invalid(const std::string& message) { throw ServiceError(422, "invalid_params", message); }
[[noreturn]] void bad_request(const std::string& message) { throw ServiceError(400, "bad_request", message); }

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) invalid(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    invalid(std::string("field '") + key + "' has the wrong type");
  }
}

Value positive(const json& j, const char* key) {
  const auto v = field<std::int64_t>(j, key);
  if (v < 1) invalid(std::string(key) + " must be positive");
  return static_cast<Value>(v);
}

Player parse_side(const json& j) {
  if (j.is_number_integer() && (j.get<int>() == 1 || j.get<int>() == 2)) return static_cast<Player>(j.get<int>());
  if (j == "P1" || j == "p1") return Player::kP1;
  if (j == "P2" || j == "p2") return Player::kP2;
  invalid("engine_side must be 1 or 2");
}

EnginePolicy parse_policy(const json& j) {
  if (j == "optimal") return EnginePolicy::kOptimal;
  if (j == "strategy") return EnginePolicy::kStrategy;
  if (j == "random") return EnginePolicy::kRandom;
  invalid("engine_policy must be optimal, strategy or random");
}

json zeck_move_json(const Move& m) {
  return {{"type", m.kind == MoveKind::kSplit ? "split" : "combine"}, {"index", m.index}};
}

std::optional<Move> parse_zeck_move(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.contains("index") || !j["index"].is_number_integer()) {
    return std::nullopt;
  }
  const int index = j["index"].get<int>();
  if (j["type"] == "split") return Move::split(index);
  if (j["type"] == "combine") return Move::combine(index);
  return std::nullopt;
}

struct ZeckTraits {
  using Game = ReversedZeckendorf;

  static json state_json(const GameState& s) { return s.to_string(); }
  static json move_json(const Move& m) { return zeck_move_json(m); }
  static Move parse_move(const json& j, const GameState&) {
    if (auto m = parse_zeck_move(j)) return *m;
    bad_request("move must be {\"type\": \"split\"|\"combine\", \"index\": j}");
  }
  static std::unique_ptr<Policy<Game>> strategy(const GameState& start, Player engine) {
    const int top = start.max_bin();
    if (engine == Player::kP1 && top - 1 >= 3 && start == thm12_start(top - 1)) return thm12_policy(top - 1);
    if (engine == Player::kP2 && all_heights_even(start)) return copycat_policy();
    if (top <= 3) return strategy123_policy();
    return nullptr;
  }
};

struct BuildUpTraits {
  using Game = BuildUpGame;

  static json state_json(const BuildUpState& s) {
    json j{{"phase", s.placing() ? "placing" : "playing"},
           {"counts", {s.counts.a, s.counts.b, s.counts.c}},
           {"remaining", s.remaining}};
    if (!s.placing()) j["heights"] = s.counts.to_game_state().to_string();
    return j;
  }
  static json move_json(const BuildUpMove& m) {
    if (m.is_place()) return {{"type", "place"}, {"value", m.placed()}};
    return zeck_move_json(m.game_move());
  }
  static BuildUpMove parse_move(const json& j, const BuildUpState&) {
    if (j.is_object() && j.value("type", "") == "place" && j.contains("value") && j["value"].is_number_integer()) {
      return BuildUpMove::place(j["value"].get<int>());
    }
    if (auto m = parse_zeck_move(j)) return BuildUpMove::play(*m);
    bad_request("move must be {\"type\": \"place\", \"value\": v} or a split/combine");
  }
};

struct ChompTraits {
  using Game = ChompGame;

  static json state_json(const ChompBoard& b) {
    return {{"rows", b.rows()}, {"cols", b.cols()}, {"heights", b.heights()}};
  }
  static json move_json(const ChompMove& m) { return {{"type", "fill"}, {"heights", m.heights()}}; }
  static ChompMove parse_move(const json& j, const ChompBoard& current) {
    if (!j.is_object() || j.value("type", "") != "fill" || !j.contains("heights") || !j["heights"].is_array()) {
      bad_request("move must be {\"type\": \"fill\", \"heights\": [...]}");
    }
    try {
      return ChompBoard(current.rows(), current.cols(), j["heights"].get<std::vector<int>>());
    } catch (const std::exception& e) {
      bad_request(std::string("bad heights: ") + e.what());
    }
  }
};

}  // namespace

class Session {
 public:
  virtual ~Session() = default;

  virtual json view() const = 0;
  virtual void human_move(const json& move) = 0;
  virtual json analysis() = 0;
  virtual json record() const = 0;
  virtual void replay(const json& history) = 0;
  virtual void engine_opening() = 0;

  mutable std::mutex mu;
};

namespace {

template <class Traits>
class TypedSession final : public Session {
 public:
  using Game = typename Traits::Game;
  using State = typename Game::State;
  using Move = typename Game::Move;

  struct Setup {
    std::string id;
    json request;
    Game game;
    State initial;
    Player engine_side;
    EnginePolicy policy;
    std::uint64_t seed;
    bool solvable;
    std::unique_ptr<Policy<Game>> strategy;
  };

  explicit TypedSession(Setup s)
      : id_(std::move(s.id)),
        request_(std::move(s.request)),
        game_(std::move(s.game)),
        current_(s.initial),
        engine_side_(s.engine_side),
        policy_(s.policy),
        seed_(s.seed),
        rng_(s.seed),
        solvable_(s.solvable),
        strategy_(std::move(s.strategy)) {}

  void engine_opening() override {
    if (!finished() && to_move_ == engine_side_) play(engine_choose());
  }

  json view() const override {
    json history = json::array();
    for (const auto& [who, m] : history_) {
      history.push_back({{"player", static_cast<int>(who)}, {"move", Traits::move_json(m)}});
    }
    json v{{"id", id_},
           {"mode", request_["mode"]},
           {"params", request_},
           {"state", Traits::state_json(current_)},
           {"to_move", static_cast<int>(to_move_)},
           {"engine_side", static_cast<int>(engine_side_)},
           {"human_side", static_cast<int>(other(engine_side_))},
           {"engine_policy", policy_name(policy_)},
           {"seed", seed_},
           {"status", status_name()},
           {"history", history},
           {"legal_moves", legal_json()}};
    if (finished()) v["winner"] = static_cast<int>(other(to_move_));
    return v;
  }

  void human_move(const json& move) override {
    if (finished()) throw ServiceError(409, "game_over", "the game is over", legal_json());
    if (to_move_ == engine_side_) throw ServiceError(409, "not_your_turn", "it is the engine's turn", legal_json());
    const Move m = Traits::parse_move(move, current_);
    const auto legal = game_.moves(current_);
    if (std::find(legal.begin(), legal.end(), m) == legal.end()) {
      throw ServiceError(409, "illegal_move", m.to_string() + " is not legal here", legal_json());
    }
    play(m);
    engine_opening();
  }

  json analysis() override {
    ensure_solved();
    const auto node = graph_->find(current_);
    json moves = json::array();
    for (std::size_t k = 0; k < graph_->successors(*node).size(); ++k) {
      if (labels_[graph_->successors(*node)[k]] == Label::kLoss) {
        moves.push_back(Traits::move_json(graph_->moves(*node)[k]));
      }
    }
    const Player winner = labels_[*node] == Label::kWin ? to_move_ : other(to_move_);
    return {{"id", id_},
            {"to_move", static_cast<int>(to_move_)},
            {"winner_under_optimal", static_cast<int>(winner)},
            {"winner_name", player_name(winner)},
            {"optimal_moves", moves}};
  }

  json record() const override {
    json history = json::array();
    for (const auto& [who, m] : history_) {
      history.push_back({{"player", static_cast<int>(who)}, {"move", Traits::move_json(m)}});
    }
    return {{"id", id_}, {"request", request_}, {"history", history}};
  }

  void replay(const json& history) override {
    for (const auto& entry : history) {
      const Player who = static_cast<Player>(entry.at("player").get<int>());
      if (who != to_move_) throw ServiceError(422, "bad_snapshot", "history is out of turn order");
      const Move m = Traits::parse_move(entry.at("move"), current_);
      const auto legal = game_.moves(current_);
      if (std::find(legal.begin(), legal.end(), m) == legal.end()) {
        throw ServiceError(422, "bad_snapshot", "history contains illegal " + m.to_string());
      }
      if (who == engine_side_ && !(engine_choose() == m)) {
        throw ServiceError(422, "bad_snapshot", "engine would not replay " + m.to_string());
      }
      play(m);
    }
  }

 private:
  bool finished() const { return game_.moves(current_).empty(); }

  const char* status_name() const {
    if (!finished()) return "in_progress";
    return other(to_move_) == Player::kP1 ? "p1_won" : "p2_won";
  }

  json legal_json() const {
    json out = json::array();
    for (const auto& m : game_.moves(current_)) out.push_back(Traits::move_json(m));
    return out;
  }

  void ensure_solved() {
    if (graph_) return;
    if (!solvable_) {
      throw ServiceError(422, "over_solve_limit",
                         "position is beyond the configured solve limit; use the strategy or random engine");
    }
    graph_ = std::make_shared<const GameGraph<Game>>(GameGraph<Game>::build(game_, first_));
    labels_ = label_positions(*graph_);
  }

  Move engine_choose() {
    const auto legal = game_.moves(current_);
    switch (policy_) {
      case EnginePolicy::kOptimal: {
        ensure_solved();
        const auto node = graph_->find(current_);
        for (std::size_t k = 0; k < graph_->successors(*node).size(); ++k) {
          if (labels_[graph_->successors(*node)[k]] == Label::kLoss) return graph_->moves(*node)[k];
        }
        return legal.front();
      }
      case EnginePolicy::kStrategy: {
        if (strategy_) {
          std::optional<Move> last;
          if (!history_.empty() && history_.back().first != engine_side_) last = history_.back().second;
          try {
            const Move m = strategy_->choose(current_, last);
            if (std::find(legal.begin(), legal.end(), m) != legal.end()) return m;
          } catch (const std::exception&) {
          }
          strategy_.reset();
        }
        return legal.front();
      }
      case EnginePolicy::kRandom:
        return legal[uniform_below(rng_, legal.size())];
    }
    return legal.front();
  }

  void play(const Move& m) {
    current_ = game_.apply(current_, m);
    history_.emplace_back(to_move_, m);
    to_move_ = other(to_move_);
  }

  std::string id_;
  json request_;
  Game game_;
  State current_;
  State first_ = current_;
  Player to_move_ = Player::kP1;
  Player engine_side_;
  EnginePolicy policy_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  bool solvable_;
  std::unique_ptr<Policy<Game>> strategy_;
  std::shared_ptr<const GameGraph<Game>> graph_;
  std::vector<Label> labels_;
  std::vector<std::pair<Player, Move>> history_;
};

std::shared_ptr<Session> make_session(const std::string& id, json request, const ServiceConfig& config) {
  if (!request.is_object()) bad_request("request body must be a JSON object");
  const std::string mode = field<std::string>(request, "mode");
  const Player engine = request.contains("engine_side") ? parse_side(request["engine_side"]) : Player::kP2;
  const EnginePolicy policy =
      request.contains("engine_policy") ? parse_policy(request["engine_policy"]) : EnginePolicy::kOptimal;
  request["engine_side"] = static_cast<int>(engine);
  request["engine_policy"] = policy_name(policy);
  const std::uint64_t seed = request["seed"].get<std::uint64_t>();
  const bool strategy = policy == EnginePolicy::kStrategy;

  const auto over_limit = [&](bool solvable) {
    if (!solvable && policy == EnginePolicy::kOptimal) {
      throw ServiceError(422, "over_solve_limit",
                         "too large for the optimal engine; choose engine_policy strategy or random");
    }
  };

  if (mode == "reversed_zeck" || mode == "custom_start") {
    GameState start{1};
    try {
      start = mode == "reversed_zeck" ? GameState::from_zeckendorf(positive(request, "n"))
                                      : GameState::parse(field<std::string>(request, "heights"));
    } catch (const ServiceError&) {
      throw;
    } catch (const std::exception& e) {
      invalid(e.what());
    }
    const bool solvable = start.value() <= config.solve_limit;
    over_limit(solvable);
    return std::make_shared<TypedSession<ZeckTraits>>(TypedSession<ZeckTraits>::Setup{
        id, request, {}, start, engine, policy, seed, solvable,
        strategy ? ZeckTraits::strategy(start, engine) : nullptr});
  }
  if (mode == "buildup") {
    const Value n = positive(request, "n");
    const bool solvable = n <= config.buildup_solve_limit;
    over_limit(solvable);
    std::unique_ptr<Policy<BuildUpGame>> plan;
    if (strategy && engine == buildup_winner(n)) plan = buildup_policy(n, engine);
    return std::make_shared<TypedSession<BuildUpTraits>>(TypedSession<BuildUpTraits>::Setup{
        id, request, {}, BuildUpState::initial(n), engine, policy, seed, solvable, std::move(plan)});
  }
  if (mode == "chomp") {
    const auto rows = static_cast<int>(positive(request, "rows"));
    const auto cols = static_cast<int>(positive(request, "cols"));
    if (std::max(rows, cols) > config.chomp_max_side) {
      invalid("chomp sides are limited to " + std::to_string(config.chomp_max_side));
    }
    if (rows == 1 && cols == 1) invalid("the 1x1 board is a trivial game");
    const ChompBoard start = ChompBoard::initial(rows, cols);
    const Player winner = start.cols() == 1 ? Player::kP1 : Player::kP2;
    std::unique_ptr<Policy<ChompGame>> plan;
    if (strategy && engine == winner) plan = chomp_policy(rows, cols);
    return std::make_shared<TypedSession<ChompTraits>>(TypedSession<ChompTraits>::Setup{
        id, request, {}, start, engine, policy, seed, true, std::move(plan)});
  }
  invalid("unknown mode '" + mode + "'");
}

}  // namespace

SessionStore::SessionStore(ServiceConfig config) : config_(config), id_salt_(std::random_device{}()) {}

SessionStore::~SessionStore() = default;

std::string SessionStore::next_id() {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(trial_seed(id_salt_, ++counter_)));
  return buf;
}

json SessionStore::create(const json& request) {
  json req = request;
  std::string id;
  {
    std::unique_lock lock(mu_);
    id = next_id();
    if (req.is_object() && !req.contains("seed")) req["seed"] = counter_;
  }
  if (req.is_object() && !req["seed"].is_number_unsigned()) {
    if (!(req["seed"].is_number_integer() && req["seed"].get<std::int64_t>() >= 0)) invalid("seed must be a nonnegative integer");
  }
  auto session = make_session(id, req, config_);
  std::lock_guard session_lock(session->mu);
  session->engine_opening();
  {
    std::unique_lock lock(mu_);
    sessions_[id] = session;
  }
  return session->view();
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "not_found", "no session '" + id + "'");
  return it->second;
}

json SessionStore::get(const std::string& id) const {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  return s->view();
}

json SessionStore::post_move(const std::string& id, const json& move) {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  s->human_move(move);
  return s->view();
}

json SessionStore::analysis(const std::string& id) const {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  return s->analysis();
}

void SessionStore::remove(const std::string& id) {
  std::unique_lock lock(mu_);
  if (sessions_.erase(id) == 0) throw ServiceError(404, "not_found", "no session '" + id + "'");
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

json SessionStore::snapshot() const {
  std::shared_lock lock(mu_);
  json out = {{"counter", counter_}, {"sessions", json::array()}};
  for (const auto& [id, s] : sessions_) {
    std::lock_guard session_lock(s->mu);
    out["sessions"].push_back(s->record());
  }
  return out;
}

void SessionStore::restore(const json& snapshot) {
  std::map<std::string, std::shared_ptr<Session>> rebuilt;
  for (const auto& rec : snapshot.at("sessions")) {
    const std::string id = rec.at("id").get<std::string>();
    auto s = make_session(id, rec.at("request"), config_);
    s->replay(rec.at("history"));
    rebuilt[id] = std::move(s);
  }
  std::unique_lock lock(mu_);
  counter_ = std::max(counter_, snapshot.value("counter", std::uint64_t{0}));
  for (auto& [id, s] : rebuilt) sessions_[id] = std::move(s);
}

}  // namespace rzg::service
