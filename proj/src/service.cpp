#include "monty/service.hpp"

#include <cstdio>
#include <random>

#include <httplib.h>

namespace monty {

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::kAwaitingPick:
      return "awaiting-pick";
    case Phase::kAwaitingFinal:
      return "awaiting-final";
    case Phase::kDone:
      return "done";
  }
  return "?";
}

struct SessionManager::Session {
  Session(std::string id_in, const SessionConfig& config, std::uint64_t seed)
      : id(std::move(id_in)),
        host(config.host),
        host_payoff(config.host_payoff),
        rng(seed),
        theta_sampler(std::vector<Rational>(host.pi.begin(), host.pi.end())),
        smaller_sampler{RationalSampler({host.lambda[0], Rational(1) - host.lambda[0]}),
                        RationalSampler({host.lambda[1], Rational(1) - host.lambda[1]}),
                        RationalSampler({host.lambda[2], Rational(1) - host.lambda[2]})} {
    stats.seed = seed;
  }

  void start_round() {
    ++round;
    theta = Door(static_cast<int>(theta_sampler(rng)) + 1);
    pick.reset();
    offered.reset();
    phase = Phase::kAwaitingPick;
  }

  void require(Phase p) const {
    if (phase != p) {
      throw Error(ErrorCode::kWrongPhase, "session is " + std::string(phase_name(phase)) + ", expected " +
                                              std::string(phase_name(p)));
    }
  }

  SessionView view() const {
    std::optional<Door> revealed;
    if (pick && offered) revealed = third_door(*pick, *offered);
    return {id, phase, round, pick, offered, revealed, host, stats};
  }

  std::mutex mutex;
  std::string id;
  BehavioralHost host;
  std::optional<HostPayoffMatrix> host_payoff;
  Rng rng;
  RationalSampler theta_sampler;
  std::array<RationalSampler, 3> smaller_sampler;  // per θ: [smaller offer, larger offer]
  Phase phase = Phase::kAwaitingPick;
  std::uint64_t round = 0;
  Door theta;  // committed at round start, never serialized before resolution
  std::optional<Door> pick;
  std::optional<Door> offered;
  SimulationStats stats;
  std::vector<RoundRecord> transcript;
  std::chrono::steady_clock::time_point last_used;
};

SessionManager::SessionManager(std::chrono::seconds idle_timeout, Clock clock)
    : idle_timeout_(idle_timeout), clock_(clock ? std::move(clock) : Clock(std::chrono::steady_clock::now)) {
  std::random_device rd;
  id_salt_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string SessionManager::create(const SessionConfig& config) {
  expire_idle();
  std::uint64_t seed = 0;
  if (config.seed) {
    seed = *config.seed;
  } else {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  std::unique_lock lock(mutex_);
  char buf[17];
  // splitmix64 is a bijection, so distinct counters give distinct ids.
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(splitmix64(id_salt_ + next_id_++)));
  auto session = std::make_shared<Session>(buf, config, seed);
  session->start_round();
  session->last_used = clock_();
  sessions_[session->id] = session;
  return session->id;
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id, bool touch) {
  std::shared_ptr<Session> s;
  {
    std::shared_lock lock(mutex_);
    const auto it = sessions_.find(id);
    if (it != sessions_.end()) s = it->second;
  }
  if (!s) throw Error(ErrorCode::kNotFound, "no session " + id);
  const auto now = clock_();
  bool expired = false;
  {
    std::lock_guard guard(s->mutex);
    expired = now - s->last_used > idle_timeout_;
    if (!expired && touch) s->last_used = now;
  }
  if (expired) {
    std::unique_lock lock(mutex_);
    sessions_.erase(id);
    throw Error(ErrorCode::kNotFound, "session " + id + " expired");
  }
  return s;
}

PickResult SessionManager::pick(const std::string& id, Door pick) {
  auto s = find(id);
  std::lock_guard guard(s->mutex);
  s->require(Phase::kAwaitingPick);
  Door offer = s->theta;
  if (pick == s->theta) {
    const auto others = other_doors(pick);
    offer = s->smaller_sampler[s->theta.index()](s->rng) == 0 ? others[0] : others[1];
  }
  s->pick = pick;
  s->offered = offer;
  s->phase = Phase::kAwaitingFinal;
  return {s->round, pick, offer, third_door(pick, offer)};
}

Advice SessionManager::advice(const std::string& id) {
  auto s = find(id, false);
  std::lock_guard guard(s->mutex);
  s->require(Phase::kAwaitingFinal);
  const Rational posterior = posterior_switch_win(s->host, *s->pick, *s->offered);
  const Rational half(1, 2);
  const char* recommended = posterior > half ? "switch" : (posterior < half ? "hold" : "indifferent");
  return {*s->pick, *s->offered, posterior, recommended, bayes_value_formula(s->host.pi),
          least_likely_doors(s->host.pi)};
}

FinalResult SessionManager::finish(const std::string& id, Action action) {
  auto s = find(id);
  std::lock_guard guard(s->mutex);
  s->require(Phase::kAwaitingFinal);
  const RoundRecord record{s->round, make_record(s->theta, *s->pick, *s->offered, action)};
  record.play.validate();
  s->stats.record(record.play);
  s->transcript.push_back(record);
  s->phase = Phase::kDone;
  return {record, s->stats};
}

SessionView SessionManager::next_round(const std::string& id) {
  auto s = find(id);
  std::lock_guard guard(s->mutex);
  s->require(Phase::kDone);
  s->start_round();
  return s->view();
}

SessionView SessionManager::view(const std::string& id) {
  auto s = find(id);
  std::lock_guard guard(s->mutex);
  return s->view();
}

SimulationStats SessionManager::stats(const std::string& id) {
  auto s = find(id);
  std::lock_guard guard(s->mutex);
  return s->stats;
}

std::vector<RoundRecord> SessionManager::transcript(const std::string& id) {
  auto s = find(id);
  std::lock_guard guard(s->mutex);
  return s->transcript;
}

std::optional<HostPayoffMatrix> SessionManager::host_payoff(const std::string& id) {
  auto s = find(id);
  std::lock_guard guard(s->mutex);
  return s->host_payoff;
}

std::size_t SessionManager::expire_idle() {
  const auto now = clock_();
  std::unique_lock lock(mutex_);
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::lock_guard guard(it->second->mutex);
    if (now - it->second->last_used > idle_timeout_) {
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::size_t SessionManager::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

namespace {

io::Json exact(const Rational& r) { return {{"exact", r.str()}, {"decimal", r.to_double()}}; }

io::Json doors(const std::vector<Door>& list) {
  io::Json out = io::Json::array();
  for (Door d : list) out.push_back(d.value());
  return out;
}

io::Json optional_door(const std::optional<Door>& d) { return d ? io::Json(d->value()) : io::Json(nullptr); }

// Session statistics for clients. The seed is left out: with the generator
// public it would reveal the committed prize doors.
io::Json session_stats(const SimulationStats& s, const BehavioralHost& h) {
  io::Json out = io::to_json(s);
  out.erase("seed");
  out["bayesValue"] = bayes_value_formula(h.pi).str();
  out["minimaxValue"] = zero_sum_value().str();
  return out;
}

}  // namespace

io::Json to_json(const PickResult& r) {
  return {{"round", r.round},
          {"phase", std::string(phase_name(Phase::kAwaitingFinal))},
          {"pick", r.pick.value()},
          {"offered", r.offered.value()},
          {"revealed", r.revealed.value()}};
}

io::Json to_json(const Advice& a) {
  return {{"pick", a.pick.value()},
          {"offered", a.offered.value()},
          {"posteriorSwitchWin", exact(a.posterior_switch_win)},
          {"recommendedAction", a.recommended},
          {"bayesValueForPriors", exact(a.bayes_value)},
          {"bestPickForPriors", doors(a.best_picks)}};
}

io::Json to_json(const RoundRecord& r) {
  const PlayRecord& p = r.play;
  return {{"round", r.round},
          {"theta", p.theta.value()},
          {"pick", p.pick.value()},
          {"offered", p.offer.value()},
          {"revealed", p.revealed.value()},
          {"action", std::string(action_name(p.action()))},
          {"final", p.final.value()},
          {"win", p.win}};
}

io::Json to_json(const FinalResult& r) {
  io::Json out = to_json(r.record);
  out["phase"] = std::string(phase_name(Phase::kDone));
  io::Json stats = io::to_json(r.stats);
  stats.erase("seed");
  out["stats"] = stats;
  return out;
}

io::Json to_json(const SessionView& v) {
  io::Json stats = io::to_json(v.stats);
  stats.erase("seed");
  return {{"id", v.id},
          {"phase", std::string(phase_name(v.phase))},
          {"round", v.round},
          {"pick", optional_door(v.pick)},
          {"offered", optional_door(v.offered)},
          {"revealed", optional_door(v.revealed)},
          {"host", io::to_json(v.host)},
          {"stats", stats}};
}

namespace {

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kWrongPhase:
      return 409;
    case ErrorCode::kNotFound:
      return 404;
    default:
      return 400;
  }
}

void reply(httplib::Response& res, int status, const io::Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

io::Json body_json(const httplib::Request& req) {
  if (req.body.find_first_not_of(" \t\r\n") == std::string::npos) return io::Json::object();
  io::Json j = io::parse_json(req.body);
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "request body must be a JSON object");
  return j;
}

template <class F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      reply(res, status_for(e.code()), io::error_json(e));
    } catch (const nlohmann::json::exception& e) {
      reply(res, 400, io::error_json(Error(ErrorCode::kParseError, e.what())));
    } catch (const std::exception& e) {
      reply(res, 500, {{"error", {{"code", "internal"}, {"message", e.what()}}}});
    }
  };
}

Door door_from(const io::Json& body) {
  if (!body.contains("door") || !body.at("door").is_number_integer()) {
    throw Error(ErrorCode::kInvalidDoor, "body must carry \"door\": 1, 2 or 3");
  }
  return Door(body.at("door").get<int>());
}

Action action_from(const io::Json& body) {
  if (!body.contains("action") || !body.at("action").is_string()) {
    throw Error(ErrorCode::kParseError, "body must carry \"action\": \"hold\" or \"switch\"");
  }
  return parse_action_name(body.at("action").get<std::string>());
}

}  // namespace

ApiServer::ApiServer(ServerOptions options)
    : options_(std::move(options)), sessions_(options_.idle_timeout), server_(std::make_unique<httplib::Server>()) {
  // The library default also sets SO_REUSEPORT, which would let a second
  // server share a busy port instead of failing to bind.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
  });
  install_routes();
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void ApiServer::listen() { server_->listen_after_bind(); }

void ApiServer::stop() {
  if (server_) server_->stop();
}

void ApiServer::install_routes() {
  httplib::Server& s = *server_;
  const std::string id = "/sessions/([0-9a-f]+)";

  s.Get("/health", guarded([](const auto&, auto& res) { reply(res, 200, {{"status", "ok"}}); }));

  s.Post("/sessions", guarded([this](const auto& req, auto& res) {
           const io::Json body = body_json(req);
           SessionConfig config;
           if (body.contains("host")) config.host = io::host_from_json(body.at("host"));
           if (body.contains("seed")) config.seed = body.at("seed").template get<std::uint64_t>();
           if (body.contains("hostPayoff")) config.host_payoff = io::host_payoff_from_json(body.at("hostPayoff"));
           const std::string sid = sessions_.create(config);
           reply(res, 201, to_json(sessions_.view(sid)));
         }));

  s.Get(id, guarded([this](const auto& req, auto& res) { reply(res, 200, to_json(sessions_.view(req.matches[1]))); }));

  s.Post(id + "/pick", guarded([this](const auto& req, auto& res) {
           reply(res, 200, to_json(sessions_.pick(req.matches[1], door_from(body_json(req)))));
         }));

  s.Get(id + "/advice",
        guarded([this](const auto& req, auto& res) { reply(res, 200, to_json(sessions_.advice(req.matches[1]))); }));

  s.Post(id + "/final", guarded([this](const auto& req, auto& res) {
           reply(res, 200, to_json(sessions_.finish(req.matches[1], action_from(body_json(req)))));
         }));

  s.Post(id + "/next", guarded([this](const auto& req, auto& res) {
           reply(res, 200, to_json(sessions_.next_round(req.matches[1])));
         }));

  s.Get(id + "/stats", guarded([this](const auto& req, auto& res) {
          const std::string sid = req.matches[1];
          const SessionView v = sessions_.view(sid);
          reply(res, 200, session_stats(v.stats, v.host));
        }));

  s.Get(id + "/transcript", guarded([this](const auto& req, auto& res) {
          const std::string sid = req.matches[1];
          io::Json rounds = io::Json::array();
          for (const auto& r : sessions_.transcript(sid)) rounds.push_back(to_json(r));
          io::Json out{{"id", sid}, {"host", io::to_json(sessions_.view(sid).host)}, {"rounds", rounds}};
          if (const auto h = sessions_.host_payoff(sid)) out["hostPayoff"] = io::to_json(*h);
          reply(res, 200, out);
        }));

  s.Post("/solve/zerosum", guarded([](const auto&, auto& res) { reply(res, 200, io::to_json(solve_zero_sum())); }));

  s.Post("/solve/bayes", guarded([](const auto& req, auto& res) {
           const io::Json body = body_json(req);
           const BehavioralHost h = io::host_from_json(body.contains("host") ? body.at("host") : body);
           reply(res, 200, io::to_json(io::make_bayes_report(h)));
         }));

  s.Post("/solve/nash", guarded([this](const auto& req, auto& res) {
           const io::Json body = body_json(req);
           if (!body.contains("h")) throw Error(ErrorCode::kParseError, "body must carry \"h\"");
           const HostPayoffMatrix h = io::host_payoff_from_json(body.at("h"));
           io::NashReport report{fully_supported_equilibria(h), std::nullopt};
           if (!body.value("fullySupportedOnly", false)) {
             report.equilibria = enumerate_nash_supports(h, conie_payoff_matrix(), {options_.nash_workers});
           }
           reply(res, 200, io::to_json(report));
         }));

  s.Get("/matrix", guarded([](const auto&, auto& res) { reply(res, 200, io::to_json(conie_payoff_matrix())); }));
  s.Get("/matrix/reduced",
        guarded([](const auto&, auto& res) { reply(res, 200, io::to_json(eliminate_dominated())); }));

  if (!options_.static_dir.empty() && !s.set_mount_point("/", options_.static_dir)) {
    throw Error(ErrorCode::kInvalidArgument, "static directory " + options_.static_dir + " does not exist");
  }
}

}  // namespace monty
