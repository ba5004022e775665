#include "rzg/cli.hpp"

#include <atomic>
#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rzg/buildup.hpp"
#include "rzg/chomp.hpp"
#include "rzg/errors.hpp"
#include "rzg/http_server.hpp"
#include "rzg/randomplay.hpp"
#include "rzg/solver.hpp"
#include "rzg/strategies.hpp"
#include "rzg/verify.hpp"

namespace rzg::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { kText, kJson, kCsv };

struct Common {
  std::string format = "text";
  bool json_flag = false;
  bool csv_flag = false;
  std::string output;
  unsigned threads = 1;

  Format resolved() const {
    if (json_flag) return Format::kJson;
    if (csv_flag) return Format::kCsv;
    if (format == "json") return Format::kJson;
    if (format == "csv") return Format::kCsv;
    return Format::kText;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_flag("--json", c.json_flag, "Shorthand for --format json");
  cmd->add_flag("--csv", c.csv_flag, "Shorthand for --format csv");
  cmd->add_option("-o,--output", c.output, "Write the report to a file");
  cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 256u));
}

int winner_code(Player p) { return static_cast<int>(p); }

std::string fixed(double x, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

void print_json(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

// Tracks progress so resource failures can report what was already emitted.
struct Progress {
  std::string note;
};

GameState start_from(const std::optional<Value>& n, const std::string& state) {
  if (n) return GameState::from_zeckendorf(*n);
  return GameState::parse(state);
}

void solve_report(std::ostream& out, Format f, const SolveResult& r, bool with_state) {
  switch (f) {
    case Format::kJson: {
      json j;
      if (with_state) j["state"] = r.start.to_string();
      j["n"] = r.n;
      j["winner"] = winner_code(r.winner);
      j["edges"] = r.edge_count;
      j["vertices"] = r.vertex_count;
      print_json(out, j);
      break;
    }
    case Format::kCsv:
      out << (with_state ? "state,n,winner,edges,vertices\n" : "n,winner,edges,vertices\n");
      if (with_state) out << '"' << r.start.to_string() << "\",";
      out << r.n << ',' << winner_code(r.winner) << ',' << r.edge_count << ',' << r.vertex_count << '\n';
      break;
    case Format::kText:
      out << "start " << r.start.to_string() << " (n = " << r.n << "): " << player_name(r.winner)
          << " wins; " << r.edge_count << " edges, " << r.vertex_count << " vertices\n";
      break;
  }
}

void table_header(std::ostream& out, Format f) {
  if (f == Format::kCsv) out << "n,winner,edges,vertices\n";
  if (f == Format::kText) out << std::setw(6) << "n" << std::setw(8) << "winner" << std::setw(12) << "edges"
                              << std::setw(12) << "vertices" << '\n';
}

void table_row(std::ostream& out, Format f, const TableRow& r) {
  switch (f) {
    case Format::kJson:
      print_json(out, json{{"n", r.n}, {"winner", winner_code(r.winner)}, {"edges", r.edges}, {"vertices", r.vertices}});
      break;
    case Format::kCsv:
      out << r.n << ',' << winner_code(r.winner) << ',' << r.edges << ',' << r.vertices << '\n';
      break;
    case Format::kText:
      out << std::setw(6) << r.n << std::setw(8) << player_name(r.winner) << std::setw(12) << r.edges
          << std::setw(12) << r.vertices << '\n';
      break;
  }
  out.flush();
}

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted = true; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reversed Zeckendorf game solver and strategy checker", "rzg"};
  app.require_subcommand(1);

  Common common;
  std::optional<Value> n;
  std::string state;
  std::size_t max_nodes = 0;
  Value from = 2, to = 2;
  bool exact = false;
  std::uint64_t trials = 100000, seed = 1;
  int modulus = 2;
  Value a = 0, b = 0, c = 0;
  std::string family;
  int thm_i = 3;
  bool exhaustive = false;
  int rows = 0, cols = 0;
  int port = 8080;
  std::string host = "127.0.0.1", static_dir, snapshot;
  Value solve_limit = service::ServiceConfig{}.solve_limit;

  auto* solve_cmd = app.add_subcommand("solve", "Solve one start exhaustively");
  add_common(solve_cmd, common);
  auto* solve_n = solve_cmd->add_option("--n", n, "Start from the Zeckendorf decomposition of n");
  auto* solve_state = solve_cmd->add_option("--state", state, "Start heights, low bin first, e.g. 0,1,0,1");
  solve_n->excludes(solve_state);
  solve_cmd->add_option("--max-nodes", max_nodes, "Abort beyond this many positions (0: no cap)");

  auto* table_cmd = app.add_subcommand("table", "Winner table for a range of n");
  add_common(table_cmd, common);
  table_cmd->add_option("--from", from)->required()->check(CLI::Range(Value{2}, Value{1} << 40));
  table_cmd->add_option("--to", to)->required()->check(CLI::Range(Value{2}, Value{1} << 40));

  auto* lengths_cmd = app.add_subcommand("lengths", "Shortest and longest game lengths");
  add_common(lengths_cmd, common);
  auto* lengths_n = lengths_cmd->add_option("--n", n);
  lengths_n->excludes(lengths_cmd->add_option("--state", state));

  auto* bound_cmd = app.add_subcommand("bound", "Upper bound on the game length from n");
  add_common(bound_cmd, common);
  bound_cmd->add_option("--n", n)->required();

  auto* parity_cmd = app.add_subcommand("parity", "Probability that a random game has odd length");
  add_common(parity_cmd, common);
  parity_cmd->add_option("--n", n)->required();
  parity_cmd->add_flag("--exact", exact, "Exact rational instead of Monte Carlo");
  parity_cmd->add_option("--trials", trials);
  parity_cmd->add_option("--seed", seed);

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo game lengths modulo m");
  add_common(simulate_cmd, common);
  simulate_cmd->add_option("--n", n)->required();
  simulate_cmd->add_option("--trials", trials)->required()->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", seed)->required();
  simulate_cmd->add_option("--mod", modulus)->check(CLI::Range(1, 1000));

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Count complete games by length residue");
  add_common(enumerate_cmd, common);
  enumerate_cmd->add_option("--n", n)->required();
  enumerate_cmd->add_option("--mod", modulus)->check(CLI::Range(1, 1000));

  auto* classify_cmd = app.add_subcommand("classify", "Winner of the (a, b, c) ones-twos-threes game");
  add_common(classify_cmd, common);
  classify_cmd->add_option("--a", a)->required();
  classify_cmd->add_option("--b", b)->required();
  classify_cmd->add_option("--c", c)->required();

  auto* verify_cmd = app.add_subcommand("verify", "Certify a constructive strategy against every reply");
  add_common(verify_cmd, common);
  verify_cmd->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"thm12", "copycat", "ternary", "buildup", "chomp"}));
  verify_cmd->add_option("--i", thm_i, "thm12: opening index");
  verify_cmd->add_option("--state", state, "copycat: all-even start");
  verify_cmd->add_option("--a", a);
  verify_cmd->add_option("--b", b);
  verify_cmd->add_option("--c", c);
  verify_cmd->add_option("--n", n, "buildup: target sum");
  verify_cmd->add_option("--rows", rows);
  verify_cmd->add_option("--cols", cols);

  auto* buildup_cmd = app.add_subcommand("buildup", "Winner of the build-up game to n");
  add_common(buildup_cmd, common);
  buildup_cmd->add_option("--n", n)->required();
  buildup_cmd->add_flag("--exhaustive", exhaustive, "Search the game tree instead of the closed form");

  auto* chomp_cmd = app.add_subcommand("chomp", "Solve reversed Chomp on a rows x cols board");
  add_common(chomp_cmd, common);
  chomp_cmd->add_option("--rows", rows)->required();
  chomp_cmd->add_option("--cols", cols)->required();

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP play service");
  add_common(serve_cmd, common);
  serve_cmd->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--static", static_dir, "Directory served at /");
  serve_cmd->add_option("--snapshot", snapshot, "Session snapshot file, loaded at start and written at exit");
  serve_cmd->add_option("--solve-limit", solve_limit);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  std::ofstream file;
  if (!common.output.empty()) {
    file.open(common.output);
    if (!file) {
      err << "error: cannot open " << common.output << " for writing\n";
      return kExitUsage;
    }
  }
  std::ostream& os = common.output.empty() ? out : file;
  const Format fmt = common.resolved();
  Progress progress;

  try {
    if (app.got_subcommand(solve_cmd)) {
      if (!n && state.empty()) throw CLI::RequiredError("--n or --state");
      const auto r = solve(start_from(n, state), SolveOptions{max_nodes});
      solve_report(os, fmt, r, !n);
    } else if (app.got_subcommand(table_cmd)) {
      if (from > to) throw DomainError("--from must not exceed --to");
      table_header(os, fmt);
      winner_table(from, to, common.threads, [&](const TableRow& r) {
        table_row(os, fmt, r);
        progress.note = "rows through n = " + std::to_string(r.n) + " were written";
      });
    } else if (app.got_subcommand(lengths_cmd)) {
      if (!n && state.empty()) throw CLI::RequiredError("--n or --state");
      const GameState start = start_from(n, state);
      const int lo = shortest_game(start);
      const int hi = longest_game(start);
      std::optional<std::int64_t> bound;
      if (n) bound = length_upper_bound(*n);
      if (fmt == Format::kJson) {
        json j{{"state", start.to_string()}, {"n", start.value()}, {"shortest", lo}, {"longest", hi}};
        if (bound) j["bound"] = *bound;
        print_json(os, j);
      } else if (fmt == Format::kCsv) {
        os << "state,n,shortest,longest,bound\n\"" << start.to_string() << "\"," << start.value() << ',' << lo
           << ',' << hi << ',' << (bound ? std::to_string(*bound) : "") << '\n';
      } else {
        os << "start " << start.to_string() << ": shortest " << lo << ", longest " << hi;
        if (bound) os << ", bound " << *bound;
        os << '\n';
      }
    } else if (app.got_subcommand(bound_cmd)) {
      const auto bnd = length_upper_bound(*n);
      if (fmt == Format::kJson) print_json(os, json{{"n", *n}, {"bound", bnd}});
      else if (fmt == Format::kCsv) os << "n,bound\n" << *n << ',' << bnd << '\n';
      else os << "n = " << *n << ": every game lasts at most " << bnd << " moves\n";
    } else if (app.got_subcommand(parity_cmd)) {
      const GameState start = GameState::from_zeckendorf(*n);
      if (exact) {
        const Rational p = exact_parity_prob(start);
        const double v = static_cast<double>(p);
        if (fmt == Format::kJson) print_json(os, json{{"n", *n}, {"p_odd", p.str()}, {"value", v}});
        else if (fmt == Format::kCsv) os << "n,p_odd,value\n" << *n << ',' << p.str() << ',' << fixed(v, 12) << '\n';
        else os << "n = " << *n << ": P(odd length) = " << p.str() << '\n';
      } else {
        const auto h = simulate(start, trials, seed, 2, common.threads);
        const auto ci = h.confidence_intervals();
        const double p = h.probabilities()[1];
        if (fmt == Format::kJson) {
          print_json(os, json{{"n", *n}, {"trials", trials}, {"seed", seed}, {"generator", kGeneratorName},
                              {"p_odd", p}, {"ci95", {ci[1].lower, ci[1].upper}}});
        } else if (fmt == Format::kCsv) {
          os << "n,trials,seed,p_odd,ci_low,ci_high\n"
             << *n << ',' << trials << ',' << seed << ',' << fixed(p) << ',' << fixed(ci[1].lower) << ','
             << fixed(ci[1].upper) << '\n';
        } else {
          os << "n = " << *n << ": P(odd length) ~ " << fixed(p) << " (95% CI " << fixed(ci[1].lower) << " to "
             << fixed(ci[1].upper) << ", " << trials << " trials, seed " << seed << ")\n";
        }
      }
    } else if (app.got_subcommand(simulate_cmd)) {
      const auto h = simulate(GameState::from_zeckendorf(*n), trials, seed, modulus, common.threads);
      const auto p = h.probabilities();
      const auto ci = h.confidence_intervals();
      if (fmt == Format::kJson) {
        json intervals = json::array();
        for (const auto& iv : ci) intervals.push_back({iv.lower, iv.upper});
        print_json(os, json{{"n", *n}, {"trials", trials}, {"seed", seed}, {"modulus", modulus},
                            {"generator", kGeneratorName}, {"counts", h.counts}, {"probabilities", p},
                            {"ci95", intervals}});
      } else {
        if (fmt == Format::kCsv) os << "residue,count,probability,ci_low,ci_high\n";
        else os << "n = " << *n << ", " << trials << " trials, seed " << seed << " (" << kGeneratorName << ")\n";
        for (int z = 0; z < modulus; ++z) {
          const auto zi = static_cast<std::size_t>(z);
          if (fmt == Format::kCsv) {
            os << z << ',' << h.counts[zi] << ',' << fixed(p[zi]) << ',' << fixed(ci[zi].lower) << ','
               << fixed(ci[zi].upper) << '\n';
          } else {
            os << "  length = " << z << " mod " << modulus << ": " << fixed(p[zi]) << "  [" << fixed(ci[zi].lower)
               << ", " << fixed(ci[zi].upper) << "]\n";
          }
        }
      }
    } else if (app.got_subcommand(enumerate_cmd)) {
      const auto counts = enumerate_games(GameState::from_zeckendorf(*n), modulus);
      const auto p = counts.probabilities();
      if (fmt == Format::kJson) {
        json by = json::array(), probs = json::array();
        for (std::size_t z = 0; z < counts.by_residue.size(); ++z) {
          by.push_back(to_string(counts.by_residue[z]));
          probs.push_back(p[z].str());
        }
        print_json(os, json{{"n", *n}, {"modulus", modulus}, {"total", to_string(counts.total)},
                            {"by_residue", by}, {"probabilities", probs}});
      } else {
        if (fmt == Format::kCsv) os << "residue,games,probability\n";
        else os << "n = " << *n << ": " << to_string(counts.total) << " complete games\n";
        for (std::size_t z = 0; z < counts.by_residue.size(); ++z) {
          if (fmt == Format::kCsv) os << z << ',' << to_string(counts.by_residue[z]) << ',' << p[z].str() << '\n';
          else os << "  length = " << z << " mod " << modulus << ": " << to_string(counts.by_residue[z]) << " ("
                  << fixed(static_cast<double>(p[z])) << ")\n";
        }
      }
    } else if (app.got_subcommand(classify_cmd)) {
      const Player w = classify123(a, b, c);
      const auto cls = parity_class(a, b, c);
      if (fmt == Format::kJson) {
        print_json(os, json{{"a", a}, {"b", b}, {"c", c}, {"class", cls.name()}, {"winner", winner_code(w)}});
      } else if (fmt == Format::kCsv) {
        os << "a,b,c,class,winner\n" << a << ',' << b << ',' << c << ',' << cls.name() << ',' << winner_code(w) << '\n';
      } else {
        os << player_name(w) << '\n';
      }
    } else if (app.got_subcommand(verify_cmd)) {
      VerifyResult result;
      std::string subject;
      Player side = Player::kP1;
      if (family == "thm12") {
        const GameState start = thm12_start(thm_i);
        subject = start.to_string();
        result = verify_policy(ReversedZeckendorf{}, start, *thm12_policy(thm_i), true);
      } else if (family == "copycat") {
        if (state.empty()) throw CLI::RequiredError("--state");
        const GameState start = GameState::parse(state);
        if (!all_heights_even(start)) throw DomainError("copycat needs every height even");
        subject = start.to_string();
        side = Player::kP2;
        result = verify_policy(ReversedZeckendorf{}, start, *copycat_policy(), false);
      } else if (family == "ternary") {
        const TernaryState t{a, b, c};
        const GameState start = t.to_game_state();
        subject = start.to_string();
        side = classify123(t);
        result = verify_policy(ReversedZeckendorf{}, start, *strategy123_policy(), side == Player::kP1);
      } else if (family == "buildup") {
        if (!n) throw CLI::RequiredError("--n");
        subject = "n = " + std::to_string(*n);
        side = buildup_winner(*n);
        result = verify_policy(BuildUpGame{}, BuildUpState::initial(*n), *buildup_policy(*n, side),
                               side == Player::kP1);
      } else {
        if (rows < 1 || cols < 1) throw CLI::RequiredError("--rows and --cols");
        const ChompBoard start = ChompBoard::initial(rows, cols);
        subject = std::to_string(rows) + "x" + std::to_string(cols);
        side = start.cols() == 1 ? Player::kP1 : Player::kP2;
        result = verify_policy(ChompGame{}, start, *chomp_policy(rows, cols), side == Player::kP1);
      }
      if (fmt == Format::kJson) {
        json j{{"family", family}, {"start", subject}, {"side", winner_code(side)}, {"ok", result.ok},
               {"policy_turns", result.policy_turns}};
        if (!result.ok) j["failure"] = result.failure;
        print_json(os, j);
      } else if (fmt == Format::kCsv) {
        os << "family,start,side,ok,policy_turns\n"
           << family << ",\"" << subject << "\"," << winner_code(side) << ',' << (result.ok ? 1 : 0) << ','
           << result.policy_turns << '\n';
      } else {
        os << family << " from " << subject << " as " << player_name(side) << ": "
           << (result.ok ? "certified" : "FAILED: " + result.failure) << " (" << result.policy_turns
           << " policy decisions checked)\n";
      }
      return result.ok ? kExitOk : kExitFailed;
    } else if (app.got_subcommand(buildup_cmd)) {
      const Player w = exhaustive ? buildup_exhaustive(*n) : buildup_winner(*n);
      const char* method = exhaustive ? "exhaustive" : "rule";
      if (fmt == Format::kJson) print_json(os, json{{"n", *n}, {"winner", winner_code(w)}, {"method", method}});
      else if (fmt == Format::kCsv) os << "n,winner,method\n" << *n << ',' << winner_code(w) << ',' << method << '\n';
      else os << "build-up to " << *n << ": " << player_name(w) << " wins\n";
    } else if (app.got_subcommand(chomp_cmd)) {
      const Player w = chomp_solve(rows, cols);
      if (fmt == Format::kJson) print_json(os, json{{"rows", rows}, {"cols", cols}, {"winner", winner_code(w)}});
      else if (fmt == Format::kCsv) os << "rows,cols,winner\n" << rows << ',' << cols << ',' << winner_code(w) << '\n';
      else os << rows << "x" << cols << " reversed Chomp: " << player_name(w) << " wins\n";
    } else if (app.got_subcommand(serve_cmd)) {
      service::ServerOptions options;
      options.host = host;
      options.port = port;
      if (!static_dir.empty()) options.static_dir = static_dir;
      if (!snapshot.empty()) options.snapshot_path = snapshot;
      options.config.solve_limit = solve_limit;
      service::HttpServer server(options);
      const int bound = server.bind();
      if (bound < 0) {
        err << "error: cannot bind " << host << ':' << port << '\n';
        return kExitUsage;
      }
      os << "listening on http://" << host << ':' << bound << '\n';
      os.flush();
      g_interrupted = false;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::jthread watcher([&](std::stop_token st) {
        while (!st.stop_requested() && !g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
        server.stop();
      });
      server.listen();
      watcher.request_stop();
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    err << "error: resource limit: " << e.what() << '\n';
    if (!progress.note.empty()) err << "partial progress: " << progress.note << '\n';
    return kExitResources;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    if (!progress.note.empty()) err << "partial progress: " << progress.note << '\n';
    return kExitResources;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    if (!progress.note.empty()) err << "partial progress: " << progress.note << '\n';
    return kExitResources;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace rzg::cli
