#include "atomgame/report.hpp"

#include <cstdlib>
#include <cstdio>
#include <stdexcept>

namespace atomgame {

namespace {

// Shortest form that round-trips through strtod.
std::string exact(double v) {
  char buf[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> split_csv(std::string_view row) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const char c = row[i];
    if (quoted) {
      if (c == '"' && i + 1 < row.size() && row[i + 1] == '"') {
        fields.back().push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  return fields;
}

}  // namespace

std::string to_csv_row(const RunReport& r) {
  return csv_field(r.circuit) + "," + std::to_string(r.n_qubits) + "," +
         std::to_string(r.chunks) + "," + csv_field(r.planner) + "," +
         std::to_string(r.seed) + "," + exact(r.total_reward) + "," +
         exact(r.baseline_cost) + "," + exact(r.reduction_pct) + "," +
         std::to_string(r.layout_changes) + "," + exact(r.wall_ms);
}

RunReport report_from_csv_row(std::string_view row) {
  const std::vector<std::string> f = split_csv(row);
  if (f.size() != 10) {
    throw std::invalid_argument("report row needs 10 fields, got " +
                                std::to_string(f.size()));
  }
  RunReport r;
  r.circuit = f[0];
  r.n_qubits = std::stoull(f[1]);
  r.chunks = std::stoull(f[2]);
  r.planner = f[3];
  r.seed = std::stoull(f[4]);
  r.total_reward = std::stod(f[5]);
  r.baseline_cost = std::stod(f[6]);
  r.reduction_pct = std::stod(f[7]);
  r.layout_changes = std::stoull(f[8]);
  r.wall_ms = std::stod(f[9]);
  return r;
}

nlohmann::json to_json(const RunReport& r, bool with_timing) {
  nlohmann::json j = {{"circuit", r.circuit},
                      {"n_qubits", r.n_qubits},
                      {"chunks", r.chunks},
                      {"planner", r.planner},
                      {"seed", r.seed},
                      {"total_reward", r.total_reward},
                      {"baseline_cost", r.baseline_cost},
                      {"reduction_pct", r.reduction_pct},
                      {"layout_changes", r.layout_changes}};
  if (with_timing) j["wall_ms"] = r.wall_ms;
  return j;
}

RunReport report_from_json(const nlohmann::json& j) {
  RunReport r;
  r.circuit = j.at("circuit").get<std::string>();
  r.n_qubits = j.at("n_qubits").get<std::size_t>();
  r.chunks = j.at("chunks").get<std::size_t>();
  r.planner = j.at("planner").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.total_reward = j.at("total_reward").get<double>();
  r.baseline_cost = j.at("baseline_cost").get<double>();
  r.reduction_pct = j.at("reduction_pct").get<double>();
  r.layout_changes = j.at("layout_changes").get<std::size_t>();
  r.wall_ms = j.value("wall_ms", 0.0);
  return r;
}

}  // namespace atomgame
