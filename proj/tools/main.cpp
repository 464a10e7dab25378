// atomgame: compile, benchmark, generate circuits, or serve the Atom Game
// environment.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace atomgame::cli;

void add_run_flags(CLI::App* app, RunOptions& run) {
  app->add_option("--grid", run.grid, "Storage grid RxC (default by qubit count)");
  app->add_option("--seed", run.seed, "Seed for s_0 and planner randomness");
  app->add_option("--layout-mode", run.layout_mode, "Initial layout")
      ->check(CLI::IsMember({"random", "rowmajor"}));
  app->add_option("--window", run.window, "Playable-atom window W")
      ->check(CLI::PositiveNumber);
  app->add_option("--params", run.params_path, "CostParams JSON file");
  app->add_option("--alpha", run.params.alpha, "Inverse coherence time");
  app->add_option("--beta", run.params.beta, "Per-touch loss");
  app->add_option("--epsilon", run.params.epsilon, "Touched fraction per move");
  app->add_option("--tg", run.params.t_gate, "Inter-zone transfer time T_G");
  app->add_option("--gamma-accel", run.params.gamma_accel, "Acceleration constant");

  PlannerOptions& p = run.planner;
  app->add_option("--p-move", p.p_move, "Random planner move probability");
  app->add_option("--greedy-cap", p.greedy_cap, "Greedy candidate cells per atom");
  app->add_option("--anneal-iters", p.anneal.iterations, "Annealing temperature levels");
  app->add_option("--anneal-proposals", p.anneal.proposals, "Proposals per level");
  app->add_option("--anneal-t0", p.anneal.initial_temperature, "Initial temperature");
  app->add_option("--anneal-cooling", p.anneal.cooling, "Cooling factor in (0,1)");
  app->add_option("--lookahead", p.anneal.lookahead,
                  "Annealing lookahead in chunks (0: window size)");
  app->add_option("--policy-cmd", p.remote_command,
                  "Command for --planner remote (JSON lines on stdin/stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Move synthesis for zoned neutral-atom arrays"};
  app.require_subcommand(1);

  CompileOptions compile;
  compile.run.planner.anneal.lookahead = 0;
  auto* c = app.add_subcommand("compile", "Plan one circuit and write its schedule");
  c->add_option("--circuit", compile.run.circuit_path, "Circuit (.qasm or .json)")
      ->required();
  c->add_option("--planner", compile.run.planner.name, "Planner")
      ->check(CLI::IsMember({"identity", "random", "greedy", "anneal", "remote"}));
  c->add_option("--out", compile.out, "Schedule JSON output ('-' for stdout)");
  c->add_option("--trace", compile.trace, "Episode trace (JSON lines)");
  c->add_option("--report", compile.report_out, "Run report output ('-' for stdout)");
  c->add_option("--format", compile.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  c->add_flag("--timing", compile.timing, "Include wall time in JSON outputs");
  add_run_flags(c, compile.run);

  BenchOptions bench;
  bench.base.planner.anneal.lookahead = 0;
  std::size_t n_seeds = 0;
  auto* b = app.add_subcommand("bench", "Run a planner x circuit x seed matrix");
  b->add_option("--circuit", bench.circuits, "Circuits (repeatable)")->required();
  b->add_option("--planner", bench.planners, "Planners (repeatable)")
      ->delimiter(',')
      ->check(CLI::IsMember({"identity", "random", "greedy", "anneal"}));
  b->add_option("--seeds", bench.seeds, "Seeds (comma separated)")->delimiter(',');
  b->add_option("--n-seeds", n_seeds, "Use seeds 0..n-1");
  b->add_option("--out", bench.out, "CSV output ('-' for stdout)");
  b->add_option("--format", bench.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  b->add_option("--threads", bench.threads, "Worker threads (0: all)");
  add_run_flags(b, bench.base);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a random-Pauli Trotter circuit");
  g->add_option("--preset", gen.preset, "small (40 terms, 40-50 qubits) or large")
      ->check(CLI::IsMember({"small", "large"}));
  g->add_option("--qubits", gen.qubits, "Register size (0: draw from preset)");
  g->add_option("--terms", gen.terms, "Pauli terms (0: preset)");
  g->add_option("--steps", gen.steps, "Trotter steps")->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "Seed");
  g->add_option("--format", gen.format, "Output form")
      ->check(CLI::IsMember({"chunked", "gates"}));
  g->add_option("--out", gen.out, "Output file ('-' for stdout)");

  ServeOptions serve;
  auto* s = app.add_subcommand("serve", "Serve the environment protocol");
  s->add_flag("--stdio", serve.use_stdio, "Serve one session on stdin/stdout");
  s->add_option("--port", serve.port, "TCP port (0: ephemeral)");
  s->add_option("--host", serve.host, "Listen address");

  CLI11_PARSE(app, argc, argv);

  if (*c) return cmd_compile(compile, std::cout, std::cerr);
  if (*b) {
    if (n_seeds > 0) {
      bench.seeds.clear();
      for (std::size_t i = 0; i < n_seeds; ++i) bench.seeds.push_back(i);
    }
    return cmd_bench(bench, std::cout, std::cerr);
  }
  if (*g) return cmd_gen(gen, std::cout, std::cerr);
  if (*s) return cmd_serve(serve, std::cin, std::cout, std::cerr);
  return 2;
}
