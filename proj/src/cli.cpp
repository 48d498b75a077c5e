#include "monty/cli.hpp"

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "monty/io.hpp"
#include "monty/service.hpp"

namespace monty {
namespace {

struct Output {
  std::string format = "table";
  std::string path;

  void add_to(CLI::App* app) {
    app->add_option("--format", format, "table or structured (JSON)")
        ->check(CLI::IsMember({"table", "structured"}))
        ->capture_default_str();
    app->add_option("--output", path, "Write to this file instead of standard output");
  }

  bool structured() const { return format == "structured"; }

  void write(std::ostream& out, const std::string& text) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream file(path);
    if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
    file << text;
  }

  template <class T>
  void emit(std::ostream& out, const T& value) const {
    write(out, structured() ? io::to_json(value).dump(2) + "\n" : io::render_table(value));
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MONTY_SEED")) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used == std::string_view(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::kInvalidArgument, std::string("MONTY_SEED is not an unsigned integer: ") + env);
  }
  return 1;
}

int serve(const std::string& host, int port, const std::string& static_dir, unsigned workers, std::ostream& out,
          std::ostream& err) {
  // Block the stop signals before any server thread starts; a watcher thread
  // receives them synchronously and stops the server.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &stop_signals, &previous);

  ServerOptions options;
  options.static_dir = static_dir;
  options.nash_workers = workers;
  int exit_code = kExitOk;
  try {
    ApiServer server(options);
    const int bound = server.bind(host, port);
    out << "listening on http://" << host << ":" << bound << std::endl;
    std::atomic<bool> done{false};
    std::thread watcher([&] {
      const timespec tick{0, 200'000'000};
      while (!done) {
        if (sigtimedwait(&stop_signals, nullptr, &tick) > 0) {
          server.stop();
          return;
        }
      }
    });
    server.listen();
    done = true;
    watcher.join();
    out << "stopped" << std::endl;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    exit_code = kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    exit_code = kExitInternal;
  }
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  return exit_code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monty Hall game workbench: payoff matrix, solvers, simulation and play service", "monty"};
  app.require_subcommand(1);

  Output output;
  bool reduce = false;
  std::string input;
  auto* matrix = app.add_subcommand("matrix", "Contestant payoff matrix over all pure strategy pairs");
  matrix->add_flag("--reduce", reduce, "Print the dominance elimination trace and the reduced matrix");
  matrix->add_option("--input", input, "Read the matrix from a table or structured file instead of deriving it")
      ->check(CLI::ExistingFile);
  output.add_to(matrix);

  auto* dominance = app.add_subcommand("dominance", "Same as matrix --reduce");
  dominance->add_option("--input", input, "Read the matrix from a file")->check(CLI::ExistingFile);
  output.add_to(dominance);

  auto* solve = app.add_subcommand("solve", "Exact solvers");
  solve->require_subcommand(1);
  auto* zerosum = solve->add_subcommand("zerosum", "Value and minimax strategies of the zero-sum game");
  output.add_to(zerosum);

  std::string pi, lambda = "1/2,1/2,1/2";
  auto* bayes = solve->add_subcommand("bayes", "Best responses against a known behavioral host");
  bayes->add_option("--pi", pi, "Prize prior a/b,c/d,e/f")->required();
  bayes->add_option("--lambda", lambda, "Probability of offering the smaller free door, per prize door")
      ->capture_default_str();
  output.add_to(bayes);

  std::string h_file, h_preset;
  bool fully_supported_only = false;
  unsigned workers = 1;
  auto* nash = solve->add_subcommand("nash", "Nash equilibria when the host has a payoff matrix of its own");
  auto* h_file_opt = nash->add_option("--h-file", h_file, "Host payoff matrix, 12 rows of 6 rationals")
                         ->check(CLI::ExistingFile);
  auto* h_preset_opt = nash->add_option("--h-preset", h_preset, "antagonistic, sympathetic or indifferent")
                           ->check(CLI::IsMember({"antagonistic", "sympathetic", "indifferent"}));
  h_file_opt->excludes(h_preset_opt);
  nash->add_flag("--fully-supported-only", fully_supported_only, "Skip the exhaustive support enumeration");
  nash->add_option("--workers", workers, "Threads for support enumeration")->check(CLI::Range(1u, 256u));
  output.add_to(nash);

  std::string host_spec = "uniform", conie_spec = "switcher";
  std::uint64_t rounds = 0, seed = 0;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo rounds of a behavioral profile");
  simulate_cmd->add_option("--host", host_spec, "crawl, uniform, code like 12, mixed:w1,...,w6 or pi;lambda")
      ->capture_default_str();
  simulate_cmd->add_option("--conie", conie_spec, "Code like 1ss, switcher, or behavioral:pick;switch")
      ->capture_default_str();
  simulate_cmd->add_option("--rounds", rounds, "Number of rounds")->required()->check(CLI::Validator(
      [](std::string& v) { return v == "0" ? std::string("must be at least 1") : std::string(); }, "N>=1"));
  auto* seed_opt = simulate_cmd->add_option("--seed", seed, "Seed (default: MONTY_SEED or 1)");
  simulate_cmd->add_option("--workers", workers, "Threads")->check(CLI::Range(1u, 256u));
  output.add_to(simulate_cmd);

  int port = 8080;
  std::string bind_host = "127.0.0.1", static_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535))->capture_default_str();
  serve_cmd->add_option("--host", bind_host, "Address to bind")->capture_default_str();
  serve_cmd->add_option("--static-dir", static_dir, "Directory of static files served at /")
      ->check(CLI::ExistingDirectory);
  serve_cmd->add_option("--workers", workers, "Threads for Nash requests")->check(CLI::Range(1u, 256u));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (matrix->parsed() || dominance->parsed()) {
      const PayoffMatrix m = input.empty() ? conie_payoff_matrix() : io::parse_matrix(read_file(input));
      if (reduce || dominance->parsed()) {
        output.emit(out, eliminate_dominated(m));
      } else {
        output.emit(out, m);
      }
    } else if (zerosum->parsed()) {
      output.emit(out, solve_zero_sum());
    } else if (bayes->parsed()) {
      const BehavioralHost h = io::parse_host_spec(pi + ";" + lambda);
      output.emit(out, io::make_bayes_report(h));
    } else if (nash->parsed()) {
      if (h_file.empty() && h_preset.empty()) throw Error(ErrorCode::kInvalidArgument, "give --h-file or --h-preset");
      const HostPayoffMatrix h = h_file.empty() ? io::host_payoff_preset(h_preset) : io::parse_host_payoff(read_file(h_file));
      io::NashReport report{fully_supported_equilibria(h), std::nullopt};
      if (!fully_supported_only) report.equilibria = enumerate_nash_supports(h, conie_payoff_matrix(), {workers});
      output.emit(out, report);
    } else if (simulate_cmd->parsed()) {
      if (seed_opt->count() == 0) seed = default_seed();
      const BehavioralHost h = io::parse_host_spec(host_spec);
      const BehavioralConie b = io::parse_conie_spec(conie_spec);
      output.emit(out, io::make_simulation_report(h, b, rounds, seed, workers));
    } else if (serve_cmd->parsed()) {
      return serve(bind_host, port, static_dir, workers, out, err);
    }
  } catch (const Error& e) {
    err << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace monty
