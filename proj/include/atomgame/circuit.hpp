#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "atomgame/geometry.hpp"
#include "json.hpp"

namespace atomgame {

/// Two-qubit gate. Always stored normalized with q1 < q2.
struct GatePair {
  Qubit q1 = 0;
  Qubit q2 = 0;

  GatePair() = default;
  GatePair(Qubit a, Qubit b);

  bool touches(Qubit q) const { return q1 == q || q2 == q; }
  Qubit partner(Qubit q) const { return q == q1 ? q2 : q1; }

  friend bool operator==(const GatePair&, const GatePair&) = default;
  friend auto operator<=>(const GatePair&, const GatePair&) = default;
};

using Chunk = std::vector<GatePair>;

/// A two-qubit gate sequence together with its register size.
struct GateList {
  std::size_t n_qubits = 0;
  std::vector<GatePair> gates;
};

/// Circuit decomposed into parallel chunks: gates inside one chunk act on
/// pairwise disjoint qubits.
struct ChunkedCircuit {
  std::size_t n_qubits = 0;
  std::vector<Chunk> chunks;

  std::size_t depth() const { return chunks.size(); }
  std::size_t gate_count() const;

  /// Throws std::invalid_argument when a chunk reuses a qubit or an index is
  /// out of range.
  void validate() const;

  friend bool operator==(const ChunkedCircuit&, const ChunkedCircuit&) = default;
};

/// Parses the supported OpenQASM 2.0 subset. One-qubit gates, measurements and
/// barriers are dropped. Throws ParseError.
GateList parse_qasm(std::string_view text);

/// Greedy ASAP layering: each gate lands one chunk after the latest earlier
/// gate that shares a qubit with it.
ChunkedCircuit chunk_asap(const std::vector<GatePair>& gates,
                          std::size_t n_qubits);

struct RandomPauliSpec {
  std::size_t n_qubits = 0;
  std::size_t n_terms = 1;
  std::size_t trotter_steps = 1;
  std::uint64_t seed = 0;
};

/// Random 2-local Hamiltonian, Trotterized. Every term is a distinct qubit
/// pair; the whole term list is emitted once per step.
std::vector<GatePair> gen_random_pauli_trotter(const RandomPauliSpec& spec);

/// Qubits touched by chunks t .. min(t + window, T) - 1, ascending.
std::vector<Qubit> playable_atoms(const ChunkedCircuit& circuit, std::size_t t,
                                  std::size_t window);

nlohmann::json to_json(const GateList& gates);
nlohmann::json to_json(const ChunkedCircuit& circuit);

/// Accepts both the gate-list form {"n_qubits","gates"} (chunked ASAP on
/// load) and the chunked form {"n_qubits","chunks"}.
ChunkedCircuit circuit_from_json(const nlohmann::json& j);

/// Loads a `.qasm` or native `.json` circuit from disk.
ChunkedCircuit load_circuit(const std::string& path);

}  // namespace atomgame
