#include <doctest.h>

#include <random>
#include <thread>
#include <vector>

#include "rzg/play_service.hpp"
#include "rzg/solver.hpp"

using namespace rzg;
using namespace rzg::service;

namespace {

json split(int j) { return {{"type", "split"}, {"index", j}}; }
json combine(int i) { return {{"type", "combine"}, {"index", i}}; }

int status_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ServiceError& e) {
    return e.status();
  }
  return 0;
}

// Human plays uniformly random legal moves until the game ends.
json play_out(SessionStore& store, json view, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  while (view["status"] == "in_progress") {
    const auto& legal = view["legal_moves"];
    const auto pick = std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng);
    view = store.post_move(view["id"], legal[pick]);
  }
  return view;
}

}  // namespace

TEST_CASE("creating sessions") {
  SessionStore store;
  const auto v = store.create({{"mode", "reversed_zeck"}, {"n", 7}, {"engine_side", 2}, {"engine_policy", "optimal"}});
  CHECK(v["state"] == "0,1,0,1");
  CHECK(v["to_move"] == 1);
  CHECK(v["status"] == "in_progress");
  CHECK(v["history"].empty());
  CHECK(v["legal_moves"].size() == 2);

  const auto c = store.create({{"mode", "chomp"}, {"rows", 3}, {"cols", 1}, {"engine_side", 2}});
  CHECK(c["to_move"] == 1);
  CHECK(store.analysis(c["id"])["winner_under_optimal"] == 1);

  const auto b = store.create({{"mode", "buildup"}, {"n", 4}, {"engine_side", 2}, {"engine_policy", "strategy"}});
  CHECK(b["state"]["phase"] == "placing");
  CHECK(b["to_move"] == 1);
  CHECK(b["legal_moves"].size() == 3);

  const auto s = store.create({{"mode", "custom_start"}, {"heights", "0,2"}});
  CHECK(s["state"] == "0,2");
  CHECK(store.size() == 4);
  CHECK(v["id"] != c["id"]);
}

TEST_CASE("engine replies and opens") {
  SessionStore store;
  const auto v = store.create({{"mode", "reversed_zeck"}, {"n", 4}});
  CHECK(v["state"] == "1,0,1");
  const auto after = store.post_move(v["id"], split(3));
  CHECK(after["history"][1]["player"] == 2);
  CHECK(after["history"][1]["move"] == split(2));
  CHECK(after["status"] == "p2_won");
  CHECK(after["winner"] == 2);
  CHECK(status_of([&] { store.post_move(v["id"], split(2)); }) == 409);

  const auto six = store.create({{"mode", "reversed_zeck"}, {"n", 6}, {"engine_side", 1}});
  CHECK(six["history"][0]["player"] == 1);
  CHECK(six["history"][0]["move"] == combine(3));
  CHECK(six["to_move"] == 2);
}

TEST_CASE("analysis and deletion") {
  SessionStore store;
  const auto three = store.create({{"mode", "reversed_zeck"}, {"n", 3}});
  CHECK(store.analysis(three["id"])["winner_under_optimal"] == 2);
  CHECK(store.analysis(three["id"])["optimal_moves"].empty());
  const auto two = store.create({{"mode", "reversed_zeck"}, {"n", 2}});
  const auto a = store.analysis(two["id"]);
  CHECK(a["winner_under_optimal"] == 1);
  CHECK(a["optimal_moves"] == json::array({split(2)}));
  CHECK(store.get(two["id"]) == two);

  store.remove(two["id"]);
  CHECK(status_of([&] { store.get(two["id"]); }) == 404);
  CHECK(status_of([&] { store.remove(two["id"]); }) == 404);
  CHECK(status_of([&] { store.analysis("nope"); }) == 404);
}

TEST_CASE("rejected requests") {
  SessionStore store;
  CHECK(status_of([&] { store.create({{"n", 5}}); }) == 422);
  CHECK(status_of([&] { store.create({{"mode", "go"}}); }) == 422);
  CHECK(status_of([&] { store.create({{"mode", "reversed_zeck"}, {"n", 0}}); }) == 422);
  CHECK(status_of([&] { store.create({{"mode", "reversed_zeck"}, {"n", "7"}}); }) == 422);
  CHECK(status_of([&] { store.create({{"mode", "custom_start"}, {"heights", "0,x"}}); }) == 422);
  CHECK(status_of([&] { store.create({{"mode", "chomp"}, {"rows", 8}, {"cols", 2}}); }) == 422);
  CHECK(status_of([&] { store.create({{"mode", "chomp"}, {"rows", 1}, {"cols", 1}}); }) == 422);
  CHECK(status_of([&] { store.create({{"mode", "reversed_zeck"}, {"n", 5}, {"engine_side", 3}}); }) == 422);
  CHECK(status_of([&] { store.create({{"mode", "reversed_zeck"}, {"n", 5}, {"engine_policy", "smart"}}); }) == 422);
  CHECK(status_of([&] { store.create(json::array()); }) == 400);

  try {
    store.create({{"mode", "reversed_zeck"}, {"n", 81}});
    FAIL("expected a solve-limit error");
  } catch (const ServiceError& e) {
    CHECK(e.status() == 422);
    CHECK(e.code() == "over_solve_limit");
    CHECK(std::string(e.what()).find("strategy") != std::string::npos);
  }
  const auto big = store.create({{"mode", "reversed_zeck"}, {"n", 200}, {"engine_policy", "random"}});
  CHECK(status_of([&] { store.analysis(big["id"]); }) == 422);
  CHECK(store.size() == 1);
}

TEST_CASE("move errors") {
  SessionStore store;
  const auto v = store.create({{"mode", "reversed_zeck"}, {"n", 7}});
  try {
    store.post_move(v["id"], combine(5));
    FAIL("expected an illegal-move error");
  } catch (const ServiceError& e) {
    CHECK(e.status() == 409);
    CHECK(e.body()["code"] == "illegal_move");
    CHECK(e.body()["legal_moves"] == v["legal_moves"]);
  }
  CHECK(status_of([&] { store.post_move(v["id"], {{"type", "jump"}}); }) == 400);
  CHECK(status_of([&] { store.post_move("missing", split(2)); }) == 404);
  CHECK(store.get(v["id"]) == v);
}

TEST_CASE("optimal engine keeps winning positions winning") {
  SessionStore store;
  for (Value n = 2; n <= 30; ++n) {
    const auto r = solve(n);
    for (int side : {1, 2}) {
      auto v = store.create({{"mode", "reversed_zeck"}, {"n", n}, {"engine_side", side}});
      v = play_out(store, v, n * 7 + side);
      GameState s = GameState::from_zeckendorf(n);
      for (const auto& h : v["history"]) {
        const Move m = h["move"]["type"] == "split" ? Move::split(h["move"]["index"]) : Move::combine(h["move"]["index"]);
        const GameState next = apply(s, m);
        if (h["player"] == side && r.label(s) == Label::kWin) CHECK(r.label(next) == Label::kLoss);
        s = next;
      }
      CHECK(s.to_string() == v["state"]);
      if (r.winner == static_cast<Player>(side)) CHECK(v["winner"] == side);
    }
  }
}

TEST_CASE("strategy engines win their families") {
  SessionStore store;
  const std::vector<json> requests{
      {{"mode", "reversed_zeck"}, {"n", 16}, {"engine_side", 1}},
      {{"mode", "custom_start"}, {"heights", "0,2,0,2"}, {"engine_side", 2}},
      {{"mode", "custom_start"}, {"heights", "1,1,1"}, {"engine_side", 1}},
      {{"mode", "custom_start"}, {"heights", "3,0,2"}, {"engine_side", 2}},
      {{"mode", "buildup"}, {"n", 12}, {"engine_side", 2}},
      {{"mode", "buildup"}, {"n", 9}, {"engine_side", 1}},
      {{"mode", "chomp"}, {"rows", 4}, {"cols", 3}, {"engine_side", 2}},
      {{"mode", "chomp"}, {"rows", 5}, {"cols", 1}, {"engine_side", 1}},
      {{"mode", "reversed_zeck"}, {"n", 100}, {"engine_side", 2}},
  };
  for (std::size_t k = 0; k < requests.size(); ++k) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      json req = requests[k];
      req["engine_policy"] = "strategy";
      const auto v = play_out(store, store.create(req), seed);
      if (k + 1 < requests.size()) CHECK_MESSAGE(v["winner"] == req["engine_side"], req.dump());
      else CHECK(v["status"] != "in_progress");
    }
  }
}

TEST_CASE("random engine is reproducible from its seed") {
  SessionStore store;
  const json req{{"mode", "reversed_zeck"}, {"n", 40}, {"engine_policy", "random"}, {"seed", 77}};
  const auto a = play_out(store, store.create(req), 1);
  const auto b = play_out(store, store.create(req), 1);
  CHECK(a["history"] == b["history"]);
}

TEST_CASE("snapshots replay to identical sessions") {
  SessionStore store;
  std::vector<json> views;
  views.push_back(store.create({{"mode", "reversed_zeck"}, {"n", 20}, {"engine_policy", "random"}, {"seed", 3}}));
  views.push_back(store.create({{"mode", "buildup"}, {"n", 10}, {"engine_policy", "strategy"}}));
  views.push_back(store.create({{"mode", "chomp"}, {"rows", 4}, {"cols", 2}, {"engine_side", 1}}));
  views.push_back(store.create({{"mode", "custom_start"}, {"heights", "2,2,2"}}));
  std::mt19937_64 rng(4);
  for (auto& v : views) {
    for (int step = 0; step < 2 && v["status"] == "in_progress"; ++step) {
      v = store.post_move(v["id"], v["legal_moves"][rng() % v["legal_moves"].size()]);
    }
  }
  const auto snap = store.snapshot();
  SessionStore copy;
  copy.restore(snap);
  CHECK(copy.size() == views.size());
  for (const auto& v : views) CHECK(copy.get(v["id"]) == v);

  json tampered = snap;
  for (auto& rec : tampered["sessions"]) {
    if (rec["request"]["mode"] == "chomp") rec["history"][0]["move"]["heights"] = json::array({2, 0});
  }
  SessionStore broken;
  CHECK_THROWS_AS(broken.restore(tampered), ServiceError);
}

TEST_CASE("distinct sessions can be played concurrently") {
  SessionStore store;
  std::vector<std::string> ids;
  for (int k = 0; k < 8; ++k) {
    ids.push_back(store.create({{"mode", "reversed_zeck"}, {"n", 30 + k}, {"engine_policy", "random"}})["id"]);
  }
  std::vector<std::thread> workers;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    workers.emplace_back([&, k] { play_out(store, store.get(ids[k]), k); });
  }
  for (auto& w : workers) w.join();
  for (const auto& id : ids) CHECK(store.get(id)["status"] != "in_progress");
}
