#include "commands.hpp"

#include <omp.h>

#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "atomgame/conflict_graph.hpp"
#include "atomgame/errors.hpp"
#include "atomgame/protocol.hpp"

namespace atomgame::cli {

namespace {

std::atomic<bool> g_stop{false};

std::string describe(const std::exception& e) {
  if (const auto* ag = dynamic_cast<const AtomGameError*>(&e)) {
    return std::string(to_string(ag->code())) + ": " + e.what();
  }
  return e.what();
}

extern "C" void on_signal(int) { g_stop.store(true); }

// Writes to a file, or to `fallback` when the path is "-".
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  write(file);
}

nlohmann::json move_json(const Move& m) {
  return {{"atom", m.atom},
          {"from", {m.from.col, m.from.row}},
          {"to", {m.to.col, m.to.row}}};
}

}  // namespace

Policy make_policy(const PlannerOptions& options, std::uint64_t seed,
                   std::size_t window) {
  if (options.name == "identity") return identity_policy();
  if (options.name == "random") return random_policy(options.p_move, seed);
  if (options.name == "greedy") return greedy_policy(options.greedy_cap);
  if (options.name == "anneal") {
    AnnealConfig config = options.anneal;
    config.seed = seed;
    if (config.lookahead == 0) config.lookahead = window;
    return anneal_policy(config);
  }
  if (options.name == "remote") {
    if (options.remote_command.empty()) {
      throw AtomGameError(ErrorCode::kInvalidArgument,
                          "--planner remote needs --policy-cmd");
    }
    return remote_policy(options.remote_command);
  }
  throw AtomGameError(ErrorCode::kInvalidArgument,
                      "unknown planner '" + options.name + "'");
}

Grid resolve_grid(const std::string& flag, std::size_t n_qubits) {
  if (!flag.empty()) return parse_grid(flag);
  if (auto g = default_grid_for(n_qubits)) return *g;
  throw AtomGameError(ErrorCode::kInvalidArgument,
                      "no default grid for " + std::to_string(n_qubits) +
                          " qubits; pass --grid RxC");
}

CostParams resolve_params(const RunOptions& options) {
  CostParams params = options.params;
  if (!options.params_path.empty()) {
    std::ifstream in(options.params_path);
    if (!in) {
      throw std::runtime_error("cannot open params file '" +
                               options.params_path + "'");
    }
    params = params_from_json(nlohmann::json::parse(in), params);
  }
  params.validate();
  return params;
}

PlannedRun plan_circuit(const RunOptions& options, const ChunkedCircuit& circuit,
                        const std::string& circuit_name) {
  const Grid grid = resolve_grid(options.grid, circuit.n_qubits);
  EnvConfig config;
  config.window = options.window;
  config.seed = options.seed;
  config.layout_mode = parse_layout_mode(options.layout_mode);
  AtomGameEnv env(circuit, grid, resolve_params(options), config);
  const Policy policy = make_policy(options.planner, options.seed, options.window);

  const auto start = std::chrono::steady_clock::now();
  PlannedRun run;
  run.episode = run_episode(env, policy);
  const auto stop = std::chrono::steady_clock::now();

  RunReport& r = run.report;
  r.circuit = circuit_name;
  r.n_qubits = circuit.n_qubits;
  r.chunks = circuit.depth();
  r.planner = options.planner.name;
  r.seed = options.seed;
  r.total_reward = run.episode.total_reward;
  r.baseline_cost = run.episode.baseline_cost;
  r.reduction_pct = run.episode.reduction_pct;
  r.layout_changes = count_layout_changes(run.episode.transitions);
  r.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return run;
}

nlohmann::json schedule_document(const PlannedRun& run, const Grid& grid,
                                 bool with_timing) {
  nlohmann::json layouts = nlohmann::json::array();
  nlohmann::json steps = nlohmann::json::array();
  const auto& transitions = run.episode.transitions;
  auto positions = [](const Layout& l) {
    nlohmann::json p = nlohmann::json::array();
    for (const Cell c : l.positions()) p.push_back({c.col, c.row});
    return p;
  };
  if (!transitions.empty()) layouts.push_back(positions(transitions.front().before));
  for (const Transition& tr : transitions) {
    layouts.push_back(positions(tr.after));
    nlohmann::json groups = nlohmann::json::array();
    for (const MoveSet& group : schedule_moves(tr.before, tr.after)) {
      nlohmann::json g = nlohmann::json::array();
      for (const Move& m : group) g.push_back(move_json(m));
      groups.push_back(std::move(g));
    }
    steps.push_back({{"t", tr.t}, {"reward", tr.reward}, {"groups", std::move(groups)}});
  }
  return {{"grid", {{"rows", grid.rows}, {"cols", grid.cols}, {"spacing", grid.spacing}}},
          {"layouts", std::move(layouts)},
          {"steps", std::move(steps)},
          {"report", to_json(run.report, with_timing)}};
}

int cmd_compile(const CompileOptions& options, std::ostream& out,
                std::ostream& err) {
  try {
    const ChunkedCircuit circuit = load_circuit(options.run.circuit_path);
    const std::string name =
        std::filesystem::path(options.run.circuit_path).stem().string();
    const PlannedRun run = plan_circuit(options.run, circuit, name);
    const Grid grid = resolve_grid(options.run.grid, circuit.n_qubits);

    emit(options.out, out, [&](std::ostream& os) {
      os << schedule_document(run, grid, options.timing).dump(2) << '\n';
    });
    if (!options.trace.empty()) {
      emit(options.trace, out,
           [&](std::ostream& os) { write_trace(os, run.episode.transitions); });
    }
    if (!options.report_out.empty()) {
      emit(options.report_out, out, [&](std::ostream& os) {
        if (options.format == "csv") {
          os << kReportCsvHeader << '\n' << to_csv_row(run.report) << '\n';
        } else {
          os << to_json(run.report, options.timing).dump() << '\n';
        }
      });
    }
    return 0;
  } catch (const std::exception& e) {
    err << "compile: " << describe(e) << '\n';
    return 1;
  }
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
  struct MatrixEntry {
    std::size_t circuit;
    std::string planner;
    std::uint64_t seed;
  };
  std::vector<ChunkedCircuit> circuits;
  std::vector<std::string> names;
  try {
    for (const std::string& path : options.circuits) {
      circuits.push_back(load_circuit(path));
      names.push_back(std::filesystem::path(path).stem().string());
    }
    for (const std::string& p : options.planners) {
      if (p == "remote") {
        throw AtomGameError(ErrorCode::kInvalidArgument,
                            "the remote planner cannot run inside bench");
      }
    }
  } catch (const std::exception& e) {
    err << "bench: " << describe(e) << '\n';
    return 1;
  }

  std::vector<MatrixEntry> matrix;
  for (std::size_t c = 0; c < circuits.size(); ++c) {
    for (const std::string& p : options.planners) {
      for (const std::uint64_t s : options.seeds) matrix.push_back({c, p, s});
    }
  }

  std::vector<RunReport> reports(matrix.size());
  std::vector<std::string> errors(matrix.size());
  const auto count = static_cast<std::ptrdiff_t>(matrix.size());
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const MatrixEntry& cell = matrix[static_cast<std::size_t>(i)];
    RunOptions run = options.base;
    run.planner.name = cell.planner;
    run.seed = cell.seed;
    try {
      reports[static_cast<std::size_t>(i)] =
          plan_circuit(run, circuits[cell.circuit], names[cell.circuit]).report;
    } catch (const std::exception& e) {
      RunReport failed;
      failed.circuit = names[cell.circuit];
      failed.n_qubits = circuits[cell.circuit].n_qubits;
      failed.chunks = circuits[cell.circuit].depth();
      failed.planner = cell.planner;
      failed.seed = cell.seed;
      reports[static_cast<std::size_t>(i)] = failed;
      errors[static_cast<std::size_t>(i)] = describe(e);
    }
  }

  int status = 0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) {
      err << "bench: row " << i << " failed: " << errors[i] << '\n';
      status = 1;
    }
  }
  try {
    emit(options.out, out, [&](std::ostream& os) {
      if (options.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const RunReport& r : reports) arr.push_back(to_json(r, true));
        os << arr.dump(2) << '\n';
        return;
      }
      os << kReportCsvHeader << '\n';
      for (const RunReport& r : reports) os << to_csv_row(r) << '\n';
    });
  } catch (const std::exception& e) {
    err << "bench: " << describe(e) << '\n';
    return 1;
  }
  return status;
}

RandomPauliSpec resolve_gen_spec(const GenOptions& options) {
  std::size_t lo = 40;
  std::size_t hi = 50;
  std::size_t terms = 40;
  if (options.preset == "large") {
    lo = 80;
    hi = 100;
    terms = 60;
  } else if (options.preset != "small") {
    throw AtomGameError(ErrorCode::kInvalidArgument,
                        "unknown preset '" + options.preset + "'");
  }
  RandomPauliSpec spec;
  spec.seed = options.seed;
  spec.trotter_steps = options.steps;
  spec.n_terms = options.terms > 0 ? options.terms : terms;
  if (options.qubits > 0) {
    spec.n_qubits = options.qubits;
  } else {
    // Separate stream from the term draw so an explicit --qubits gives the
    // same terms as the drawn size would.
    std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    spec.n_qubits = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }
  return spec;
}

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const RandomPauliSpec spec = resolve_gen_spec(options);
    GateList gates{spec.n_qubits, gen_random_pauli_trotter(spec)};
    nlohmann::json doc;
    if (options.format == "gates") {
      doc = to_json(gates);
    } else if (options.format == "chunked") {
      doc = to_json(chunk_asap(gates.gates, gates.n_qubits));
    } else {
      throw AtomGameError(ErrorCode::kInvalidArgument,
                          "unknown format '" + options.format + "'");
    }
    emit(options.out, out, [&](std::ostream& os) { os << doc.dump() << '\n'; });
    return 0;
  } catch (const std::exception& e) {
    err << "gen: " << describe(e) << '\n';
    return 1;
  }
}

int cmd_serve(const ServeOptions& options, std::istream& in, std::ostream& out,
              std::ostream& err) {
  if (options.use_stdio == (options.port >= 0)) {
    err << "serve: pass exactly one of --stdio or --port\n";
    return 2;
  }
  if (options.use_stdio) {
    serve_stream(in, out);
    return 0;
  }
  try {
    TcpServer server(static_cast<std::uint16_t>(options.port), options.host);
    err << "serving on " << options.host << ":" << server.port() << std::endl;
    g_stop.store(false);
    std::signal(SIGTERM, on_signal);
    std::signal(SIGINT, on_signal);
    server.run(g_stop);
    return 0;
  } catch (const std::exception& e) {
    err << "serve: " << describe(e) << '\n';
    return 1;
  }
}

}  // namespace atomgame::cli
