#include "atomgame/circuit.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "atomgame/errors.hpp"

namespace atomgame {

GatePair::GatePair(Qubit a, Qubit b) : q1(std::min(a, b)), q2(std::max(a, b)) {
  if (a == b) {
    throw std::invalid_argument("gate pair acts twice on qubit " +
                                std::to_string(a));
  }
}

std::size_t ChunkedCircuit::gate_count() const {
  std::size_t n = 0;
  for (const Chunk& c : chunks) n += c.size();
  return n;
}

void ChunkedCircuit::validate() const {
  for (std::size_t t = 0; t < chunks.size(); ++t) {
    std::vector<char> used(n_qubits, 0);
    for (const GatePair& g : chunks[t]) {
      if (g.q1 == g.q2 || g.q2 >= n_qubits) {
        throw std::invalid_argument("chunk " + std::to_string(t) +
                                    " has an invalid gate");
      }
      for (const Qubit q : {g.q1, g.q2}) {
        if (used[q]) {
          throw std::invalid_argument("chunk " + std::to_string(t) +
                                      " uses qubit " + std::to_string(q) +
                                      " twice");
        }
        used[q] = 1;
      }
    }
  }
}

ChunkedCircuit chunk_asap(const std::vector<GatePair>& gates,
                          std::size_t n_qubits) {
  ChunkedCircuit out;
  out.n_qubits = n_qubits;
  // next_free[q]: first chunk index after the last gate on q
  std::vector<std::size_t> next_free(n_qubits, 0);
  for (const GatePair& g : gates) {
    if (g.q1 == g.q2 || g.q2 >= n_qubits) {
      throw std::invalid_argument("gate (" + std::to_string(g.q1) + "," +
                                  std::to_string(g.q2) +
                                  ") invalid for register of " +
                                  std::to_string(n_qubits));
    }
    const std::size_t layer = std::max(next_free[g.q1], next_free[g.q2]);
    if (layer == out.chunks.size()) out.chunks.emplace_back();
    out.chunks[layer].push_back(g);
    next_free[g.q1] = next_free[g.q2] = layer + 1;
  }
  return out;
}

std::vector<GatePair> gen_random_pauli_trotter(const RandomPauliSpec& spec) {
  if (spec.n_terms < 1 || spec.trotter_steps < 1) {
    throw AtomGameError(ErrorCode::kInvalidArgument, "n_terms and trotter_steps must be >= 1");
  }
  const std::size_t n = spec.n_qubits;
  const std::size_t available = n < 2 ? 0 : n * (n - 1) / 2;
  if (spec.n_terms > available) {
    throw AtomGameError(
        ErrorCode::kInvalidArgument,
        std::to_string(spec.n_terms) + " terms requested but only " +
        std::to_string(available) + " distinct qubit pairs exist on " +
        std::to_string(n) + " qubits");
  }
  std::vector<GatePair> pairs;
  pairs.reserve(available);
  for (Qubit a = 0; a < n; ++a) {
    for (Qubit b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  // Partial Fisher-Yates: the first n_terms slots are a uniform draw without
  // replacement, in draw order.
  std::mt19937_64 rng(spec.seed);
  for (std::size_t i = 0; i < spec.n_terms; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pairs.size() - 1);
    std::swap(pairs[i], pairs[pick(rng)]);
  }
  pairs.resize(spec.n_terms);

  std::vector<GatePair> gates;
  gates.reserve(spec.n_terms * spec.trotter_steps);
  for (std::size_t s = 0; s < spec.trotter_steps; ++s) {
    gates.insert(gates.end(), pairs.begin(), pairs.end());
  }
  return gates;
}

std::vector<Qubit> playable_atoms(const ChunkedCircuit& circuit, std::size_t t,
                                  std::size_t window) {
  const std::size_t end = std::min(t + window, circuit.chunks.size());
  std::vector<char> hit(circuit.n_qubits, 0);
  for (std::size_t k = t; k < end; ++k) {
    for (const GatePair& g : circuit.chunks[k]) hit[g.q1] = hit[g.q2] = 1;
  }
  std::vector<Qubit> out;
  for (Qubit q = 0; q < circuit.n_qubits; ++q) {
    if (hit[q]) out.push_back(q);
  }
  return out;
}

namespace {

nlohmann::json pair_json(const GatePair& g) { return {g.q1, g.q2}; }

GatePair pair_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError("gate must be a [q1,q2] array", 0, 0);
  }
  return GatePair(j[0].get<Qubit>(), j[1].get<Qubit>());
}

}  // namespace

nlohmann::json to_json(const GateList& gates) {
  nlohmann::json arr = nlohmann::json::array();
  for (const GatePair& g : gates.gates) arr.push_back(pair_json(g));
  return {{"n_qubits", gates.n_qubits}, {"gates", std::move(arr)}};
}

nlohmann::json to_json(const ChunkedCircuit& circuit) {
  nlohmann::json chunks = nlohmann::json::array();
  for (const Chunk& c : circuit.chunks) {
    nlohmann::json chunk = nlohmann::json::array();
    for (const GatePair& g : c) chunk.push_back(pair_json(g));
    chunks.push_back(std::move(chunk));
  }
  return {{"n_qubits", circuit.n_qubits}, {"chunks", std::move(chunks)}};
}

ChunkedCircuit circuit_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n_qubits").get<std::size_t>();
    if (j.contains("chunks")) {
      ChunkedCircuit c;
      c.n_qubits = n;
      for (const auto& chunk : j.at("chunks")) {
        Chunk parsed;
        for (const auto& g : chunk) parsed.push_back(pair_from_json(g));
        c.chunks.push_back(std::move(parsed));
      }
      c.validate();
      return c;
    }
    std::vector<GatePair> gates;
    for (const auto& g : j.at("gates")) gates.push_back(pair_from_json(g));
    return chunk_asap(gates, n);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad circuit JSON: ") + e.what(), 0, 0);
  }
}

ChunkedCircuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".qasm") {
    const GateList gates = parse_qasm(text);
    return chunk_asap(gates.gates, gates.n_qubits);
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad circuit JSON: ") + e.what(), 0, 0);
  }
  return circuit_from_json(j);
}

}  // namespace atomgame
