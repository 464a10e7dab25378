#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "atomgame/cost_model.hpp"
#include "atomgame/env.hpp"
#include "atomgame/planners.hpp"
#include "atomgame/report.hpp"

namespace atomgame::cli {

struct PlannerOptions {
  std::string name = "identity";  // identity | random | greedy | anneal | remote
  double p_move = 0.1;
  std::size_t greedy_cap = 8;
  AnnealConfig anneal;
  std::string remote_command;
};

/// Builds the named policy. `seed` seeds the planner's own randomness;
/// an unset anneal lookahead follows the window size.
Policy make_policy(const PlannerOptions& options, std::uint64_t seed,
                   std::size_t window);

struct RunOptions {
  std::string circuit_path;
  std::string grid;  // "RxC"; empty selects the default for the register size
  CostParams params;
  std::string params_path;
  std::size_t window = 2;
  std::uint64_t seed = 0;
  std::string layout_mode = "random";
  PlannerOptions planner;
};

/// Resolves the grid flag and the optional params file against the circuit.
Grid resolve_grid(const std::string& flag, std::size_t n_qubits);
CostParams resolve_params(const RunOptions& options);

struct PlannedRun {
  RunReport report;
  EpisodeResult episode;
};

/// One full episode, shared by compile and bench.
PlannedRun plan_circuit(const RunOptions& options, const ChunkedCircuit& circuit,
                        const std::string& circuit_name);

struct CompileOptions {
  RunOptions run;
  std::string out;         // schedule JSON; "-" is stdout
  std::string trace;       // optional JSON-lines trace
  std::string report_out;  // optional report file; "-" is stdout
  std::string format = "json";
  bool timing = false;
};

/// Schedule document: grid, layouts s_0..s_T, per-step parallel move groups,
/// and the run report.
nlohmann::json schedule_document(const PlannedRun& run, const Grid& grid,
                                 bool with_timing);

int cmd_compile(const CompileOptions& options, std::ostream& out,
                std::ostream& err);

struct BenchOptions {
  std::vector<std::string> circuits;
  std::vector<std::string> planners{"identity"};
  std::vector<std::uint64_t> seeds{0};
  RunOptions base;
  std::string out = "-";
  std::string format = "csv";
  int threads = 0;  // 0: OpenMP default
};

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

struct GenOptions {
  std::string preset = "small";  // small: 40 terms on 40-50 qubits;
                                 // large: 60 terms on 80-100 qubits
  std::size_t qubits = 0;        // 0 draws from the preset range
  std::size_t terms = 0;         // 0 uses the preset
  std::size_t steps = 4;
  std::uint64_t seed = 0;
  std::string format = "chunked";  // chunked | gates
  std::string out = "-";
};

/// Resolved generator spec for the given options (preset ranges applied).
RandomPauliSpec resolve_gen_spec(const GenOptions& options);

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err);

struct ServeOptions {
  bool use_stdio = false;
  int port = -1;
  std::string host = "127.0.0.1";
};

int cmd_serve(const ServeOptions& options, std::istream& in, std::ostream& out,
              std::ostream& err);

}  // namespace atomgame::cli
