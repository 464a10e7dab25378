#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace atomgame {

/// Summary of one planned episode.
struct RunReport {
  std::string circuit;
  std::size_t n_qubits = 0;
  std::size_t chunks = 0;
  std::string planner;
  std::uint64_t seed = 0;
  double total_reward = 0.0;
  double baseline_cost = 0.0;
  double reduction_pct = 0.0;
  std::size_t layout_changes = 0;
  double wall_ms = 0.0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline constexpr std::string_view kReportCsvHeader =
    "circuit,n_qubits,chunks,planner,seed,total_reward,baseline_cost,"
    "reduction_pct,layout_changes,wall_ms";

std::string to_csv_row(const RunReport& report);
RunReport report_from_csv_row(std::string_view row);

/// JSON form; `wall_ms` only when `with_timing` (keeps seeded reports
/// byte-stable).
nlohmann::json to_json(const RunReport& report, bool with_timing);
RunReport report_from_json(const nlohmann::json& j);

}  // namespace atomgame
