#pragma once

// Live rounds against a configured host over HTTP. A session is a small
// state machine: awaiting-pick -> awaiting-final -> done -> awaiting-pick.
// The prize door is drawn when a round starts and stays server-side until
// the contestant's final choice resolves the round.

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "monty/io.hpp"
#include "monty/simulation.hpp"
#include "monty/solvers.hpp"

namespace httplib {
class Server;
}

namespace monty {

enum class Phase { kAwaitingPick, kAwaitingFinal, kDone };

std::string_view phase_name(Phase p);

struct RoundRecord {
  std::uint64_t round = 0;
  PlayRecord play;
};

struct PickResult {
  std::uint64_t round;
  Door pick;
  Door offered;
  Door revealed;
};

struct Advice {
  Door pick;
  Door offered;
  Rational posterior_switch_win;
  std::string recommended;  // "switch", "hold" or "indifferent"
  Rational bayes_value;
  std::vector<Door> best_picks;
};

struct FinalResult {
  RoundRecord record;
  SimulationStats stats;
};

/// Client-visible view of a session. Holds no prize information for an
/// unresolved round.
struct SessionView {
  std::string id;
  Phase phase;
  std::uint64_t round;
  std::optional<Door> pick;
  std::optional<Door> offered;
  std::optional<Door> revealed;
  BehavioralHost host;
  SimulationStats stats;
};

struct SessionConfig {
  BehavioralHost host = BehavioralHost::uniform();
  std::optional<std::uint64_t> seed;
  std::optional<HostPayoffMatrix> host_payoff;
};

class SessionManager {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  explicit SessionManager(std::chrono::seconds idle_timeout = std::chrono::hours(1), Clock clock = {});

  std::string create(const SessionConfig& config);
  PickResult pick(const std::string& id, Door pick);
  /// Side-effect free; does not count as activity.
  Advice advice(const std::string& id);
  FinalResult finish(const std::string& id, Action action);
  /// Starts the next round after a resolved one.
  SessionView next_round(const std::string& id);
  SessionView view(const std::string& id);
  SimulationStats stats(const std::string& id);
  /// Resolved rounds only.
  std::vector<RoundRecord> transcript(const std::string& id);
  std::optional<HostPayoffMatrix> host_payoff(const std::string& id);

  /// Drops sessions idle for longer than the timeout; returns how many.
  std::size_t expire_idle();
  std::size_t size() const;

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id, bool touch = true);

  std::chrono::seconds idle_timeout_;
  Clock clock_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 0;
  std::uint64_t id_salt_;
};

io::Json to_json(const PickResult& r);
io::Json to_json(const Advice& a);
io::Json to_json(const RoundRecord& r);
io::Json to_json(const FinalResult& r);
io::Json to_json(const SessionView& v);

struct ServerOptions {
  std::string static_dir;
  std::chrono::seconds idle_timeout = std::chrono::hours(1);
  unsigned nash_workers = 1;
};

/// HTTP front end. Routes:
///   POST /sessions, GET /sessions/{id}, POST /sessions/{id}/pick,
///   GET /sessions/{id}/advice, POST /sessions/{id}/final,
///   POST /sessions/{id}/next, GET /sessions/{id}/stats,
///   GET /sessions/{id}/transcript, POST /solve/zerosum, POST /solve/bayes,
///   POST /solve/nash, GET /matrix, GET /matrix/reduced, GET /health.
class ApiServer {
 public:
  explicit ApiServer(ServerOptions options = {});
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds; port 0 picks a free port. Throws on failure.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();

  SessionManager& sessions() { return sessions_; }

 private:
  void install_routes();

  ServerOptions options_;
  SessionManager sessions_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace monty
