#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "atomgame/report.hpp"
#include "commands.hpp"
#include "support.hpp"

using namespace atomgame;
using namespace atomgame::cli;
using testing_support::source_path;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("atomgame_test_" + std::to_string(::getpid()) + "_" + name))
      .string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<int, std::string> run_binary(const std::string& args) {
  const std::string cmd = std::string(ATOMGAME_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int status = ::pclose(pipe);
  return {WEXITSTATUS(status), out};
}

CompileOptions compile_options(const std::string& circuit, const std::string& planner) {
  CompileOptions o;
  o.run.circuit_path = source_path(circuit);
  o.run.planner.name = planner;
  o.run.planner.anneal.lookahead = 0;
  o.out = "-";
  return o;
}

}  // namespace

TEST(Compile, IdentityKeepsLayoutConstant) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_compile(compile_options("circuits/ladder_ansatz_14.qasm", "identity"), out, err), 0)
      << err.str();
  const auto doc = nlohmann::json::parse(out.str());
  const auto& layouts = doc["layouts"];
  ASSERT_EQ(layouts.size(), doc["report"]["chunks"].get<std::size_t>() + 1);
  for (const auto& l : layouts) EXPECT_EQ(l, layouts[0]);
  for (const auto& s : doc["steps"]) EXPECT_TRUE(s["groups"].empty());
  EXPECT_EQ(doc["report"]["reduction_pct"].get<double>(), 0.0);
  EXPECT_EQ(doc["grid"]["rows"], 4);
  EXPECT_EQ(doc["grid"]["cols"], 10);
}

TEST(Compile, ScheduleGroupsReplayLayouts) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_compile(compile_options("circuits/ladder_ansatz_14.qasm", "greedy"), out, err), 0);
  const auto doc = nlohmann::json::parse(out.str());
  const auto& layouts = doc["layouts"];
  for (std::size_t t = 0; t < doc["steps"].size(); ++t) {
    auto pos = layouts[t];
    for (const auto& group : doc["steps"][t]["groups"]) {
      for (const auto& m : group) {
        EXPECT_EQ(pos[m["atom"].get<std::size_t>()], m["from"]);
        pos[m["atom"].get<std::size_t>()] = m["to"];
      }
    }
    EXPECT_EQ(pos, layouts[t + 1]);
  }
}

TEST(Compile, SameFlagsSameBytes) {
  CompileOptions o = compile_options("circuits/qaoa_ring_14.qasm", "anneal");
  o.run.seed = 4;
  o.run.planner.anneal.iterations = 30;
  o.trace = temp_path("trace_a.jsonl");
  std::ostringstream a, b, err;
  ASSERT_EQ(cmd_compile(o, a, err), 0) << err.str();
  const std::string trace_a = slurp(o.trace);
  o.trace = temp_path("trace_b.jsonl");
  ASSERT_EQ(cmd_compile(o, b, err), 0);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(trace_a, slurp(o.trace));
  EXPECT_FALSE(trace_a.empty());
  std::filesystem::remove(temp_path("trace_a.jsonl"));
  std::filesystem::remove(o.trace);
}

TEST(Compile, AnnealFixtureHasPositiveReduction) {
  CompileOptions o = compile_options("circuits/random_trotter_30.json", "anneal");
  o.run.grid = "7x10";
  o.out = temp_path("schedule.json");
  o.report_out = "-";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_compile(o, out, err), 0) << err.str();
  const RunReport r = report_from_json(nlohmann::json::parse(out.str()));
  EXPECT_GT(r.reduction_pct, 0.0);
  EXPECT_EQ(r.n_qubits, 30u);
  std::filesystem::remove(o.out);
}

TEST(Compile, ErrorsGoToStderr) {
  CompileOptions o = compile_options("circuits/does_not_exist.qasm", "identity");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_compile(o, out, err), 1);
  EXPECT_FALSE(err.str().empty());

  o = compile_options("circuits/random_trotter_30.json", "identity");
  o.run.grid = "2x2";
  err.str("");
  EXPECT_EQ(cmd_compile(o, out, err), 1);
  EXPECT_NE(err.str().find("capacity"), std::string::npos);
}

TEST(Bench, HeaderRowsAndOrder) {
  BenchOptions o;
  o.circuits = {source_path("circuits/ladder_ansatz_14.qasm"),
                source_path("circuits/qaoa_ring_14.qasm")};
  o.planners = {"identity", "greedy", "random"};
  o.seeds = {0, 1, 2};
  o.threads = 4;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_bench(o, out, err), 0) << err.str();
  const auto rows = lines_of(out.str());
  ASSERT_EQ(rows.size(), 1 + 2 * 3 * 3);
  EXPECT_EQ(rows[0], kReportCsvHeader);
  EXPECT_EQ(rows[0], "circuit,n_qubits,chunks,planner,seed,total_reward,baseline_cost,"
                     "reduction_pct,layout_changes,wall_ms");

  std::size_t i = 1;
  for (const char* circuit : {"ladder_ansatz_14", "qaoa_ring_14"}) {
    for (const char* planner : {"identity", "greedy", "random"}) {
      for (std::uint64_t seed = 0; seed < 3; ++seed, ++i) {
        const RunReport r = report_from_csv_row(rows[i]);
        EXPECT_EQ(r.circuit, circuit);
        EXPECT_EQ(r.planner, planner);
        EXPECT_EQ(r.seed, seed);
        if (r.planner == "identity") {
          EXPECT_EQ(r.reduction_pct, 0.0);
        }
        EXPECT_EQ(to_csv_row(r), rows[i]);  // lossless
      }
    }
  }

  // Thread count changes nothing but timings.
  o.threads = 1;
  std::ostringstream serial;
  ASSERT_EQ(cmd_bench(o, serial, err), 0);
  const auto serial_rows = lines_of(serial.str());
  for (std::size_t k = 1; k < rows.size(); ++k) {
    RunReport a = report_from_csv_row(rows[k]);
    RunReport b = report_from_csv_row(serial_rows[k]);
    a.wall_ms = b.wall_ms = 0.0;
    EXPECT_EQ(a, b);
  }
}

TEST(Bench, JsonFormatParsesBack) {
  BenchOptions o;
  o.circuits = {source_path("circuits/ladder_ansatz_14.qasm")};
  o.planners = {"identity", "anneal"};
  o.base.planner.anneal.iterations = 10;
  o.base.planner.anneal.lookahead = 0;
  o.format = "json";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_bench(o, out, err), 0);
  const auto arr = nlohmann::json::parse(out.str());
  ASSERT_EQ(arr.size(), 2u);
  for (const auto& j : arr) {
    EXPECT_TRUE(j.contains("wall_ms"));
    EXPECT_EQ(to_json(report_from_json(j), true), j);
  }
}

TEST(Bench, FailedRunSetsExitCode) {
  BenchOptions o;
  o.circuits = {source_path("circuits/random_trotter_30.json")};
  o.base.grid = "3x3";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_bench(o, out, err), 1);
  EXPECT_EQ(lines_of(out.str()).size(), 2u);
  EXPECT_FALSE(err.str().empty());
}

TEST(Gen, PresetsAndDeterminism) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GenOptions small;
    small.seed = seed;
    const RandomPauliSpec s = resolve_gen_spec(small);
    EXPECT_GE(s.n_qubits, 40u);
    EXPECT_LE(s.n_qubits, 50u);
    EXPECT_EQ(s.n_terms, 40u);
    EXPECT_EQ(s.trotter_steps, 4u);

    GenOptions large = small;
    large.preset = "large";
    const RandomPauliSpec l = resolve_gen_spec(large);
    EXPECT_GE(l.n_qubits, 80u);
    EXPECT_LE(l.n_qubits, 100u);
    EXPECT_EQ(l.n_terms, 60u);
  }
  GenOptions g;
  g.seed = 3;
  g.format = "gates";
  std::ostringstream a, b, err;
  ASSERT_EQ(cmd_gen(g, a, err), 0);
  ASSERT_EQ(cmd_gen(g, b, err), 0);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(nlohmann::json::parse(a.str())["gates"].size(), 160u);
}

TEST(Gen, FixtureIsReproducible) {
  GenOptions g;
  g.qubits = 30;
  g.terms = 40;
  g.seed = 1;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_gen(g, out, err), 0);
  EXPECT_EQ(out.str(), slurp(source_path("circuits/random_trotter_30.json")));
}

TEST(Serve, NeedsExactlyOneTransport) {
  std::istringstream in;
  std::ostringstream out, err;
  ServeOptions both;
  both.use_stdio = true;
  both.port = 0;
  EXPECT_EQ(cmd_serve(both, in, out, err), 2);
  EXPECT_EQ(cmd_serve(ServeOptions{}, in, out, err), 2);
}

TEST(Binary, CompileAndGenSubcommands) {
  const auto [code, out] = run_binary(
      "compile --circuit " + source_path("circuits/ladder_ansatz_14.qasm") +
      " --planner identity --out /dev/null --report - --format csv");
  EXPECT_EQ(code, 0);
  const auto rows = lines_of(out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], kReportCsvHeader);
  EXPECT_EQ(report_from_csv_row(rows[1]).reduction_pct, 0.0);

  EXPECT_NE(run_binary("compile --planner nonsense --circuit x").first, 0);
  EXPECT_EQ(run_binary("gen --preset large --seed 2 --out /dev/null").first, 0);
}

TEST(Binary, ServeStdioGolden) {
  const auto [code, out] =
      run_binary("serve --stdio < " + source_path("tests/data/golden_requests.jsonl"));
  EXPECT_EQ(code, 0);
  EXPECT_EQ(out, slurp(source_path("tests/data/golden_session.jsonl")));
}
