#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "qtangle/monogamy.hpp"

// JSON forms of states and reports.  State files use
//   { "n_qubits": int, "amplitudes": [[re, im], ...] }
// in the global index convention; the reader normalizes and records the
// applied norm factor.

namespace qtangle {

using nlohmann::json;

inline json to_json(const PureState& state) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < state.dim(); ++i)
    amps.push_back({state.amplitudes[i].real(), state.amplitudes[i].imag()});
  return json{{"n_qubits", state.n_qubits}, {"amplitudes", amps}};
}

struct LoadedState {
  PureState state;
  double norm_factor = 1.0;  // factor the raw amplitudes were divided by
};

inline LoadedState state_from_json(const json& j) {
  if (!j.contains("n_qubits") || !j.contains("amplitudes"))
    throw BadParam("state file needs n_qubits and amplitudes");
  const int n = j.at("n_qubits").get<int>();
  const auto& amps = j.at("amplitudes");
  if (!amps.is_array() || static_cast<Eigen::Index>(amps.size()) != (Eigen::Index{1} << n))
    throw BadDimension("amplitude count must be 2^n_qubits");
  Vector raw(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto& pair = amps[i];
    if (!pair.is_array() || pair.size() != 2)
      throw BadParam("each amplitude must be [re, im]");
    raw[static_cast<Eigen::Index>(i)] =
        Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  LoadedState loaded;
  loaded.norm_factor = raw.norm();
  loaded.state = normalize(raw);
  return loaded;
}

inline LoadedState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadParam("cannot open state file: " + path);
  json j;
  in >> j;
  return state_from_json(j);
}

namespace detail {

inline std::string subset_key(std::initializer_list<int> indices) {
  std::string key;
  for (int i : indices) key += std::to_string(i);
  return key;
}

}  // namespace detail

// Keys are ascending-index strings: "1", "12", "123", ...
inline json to_json(const TangleReport& report) {
  json one, two, three, residues;
  for (const auto& [j, v] : report.one_tangles) one[std::to_string(j)] = v;
  for (const auto& [jk, v] : report.two_tangles)
    two[detail::subset_key({jk.first, jk.second})] = v;
  for (const auto& [t, v] : report.three_tangles)
    three[detail::subset_key({t[0], t[1], t[2]})] = v;
  for (const auto& [j, v] : report.residues) residues[std::to_string(j)] = v;
  return json{{"one_tangles", one},
              {"two_tangles", two},
              {"three_tangles", three},
              {"three_tangles_are_roof", report.three_tangles_are_roof},
              {"residues", residues}};
}

inline json to_json(const RoofResult& roof) {
  json decomposition = json::array();
  for (const auto& [weight, state] : roof.decomposition)
    decomposition.push_back({{"weight", weight}, {"state", to_json(state)}});
  return json{{"value", roof.value},
              {"rank", roof.rank},
              {"restarts_used", roof.restarts_used},
              {"best_objective_history", roof.best_objective_history},
              {"decomposition", decomposition}};
}

inline json to_json(const MonogamyReport& report) {
  json per_qubit;
  for (const auto& [j, row] : report.per_qubit) {
    json entry{{"residue", row.residue},
               {"roof_sum", row.roof_sum},
               {"tau4_candidate", row.tau4_candidate}};
    if (row.scaling_s)
      entry["scaling_s"] = *row.scaling_s;
    else
      entry["scaling_s"] = "undefined";
    per_qubit[std::to_string(j)] = entry;
  }
  json roofs;
  for (const auto& [t, roof] : report.roofs)
    roofs[detail::subset_key({t[0], t[1], t[2]})] = to_json(roof);
  return json{{"per_qubit", per_qubit},
              {"consistent", report.consistent},
              {"consistency_tolerance", report.consistency_tolerance},
              {"tau4_from_invariants", report.tau4_from_invariants},
              {"roofs", roofs}};
}

inline json to_json(const TelescopeCheck& check) {
  json ids = json::array();
  for (const auto& id : check.identities)
    ids.push_back({{"name", id.name},
                   {"lhs", id.lhs},
                   {"rhs", id.rhs},
                   {"tolerance", id.tolerance},
                   {"pass", id.pass}});
  return json{{"reference", to_json(check.reference)},
              {"telescoped", to_json(check.telescoped)},
              {"identities", ids},
              {"all_pass", check.all_pass}};
}

}  // namespace qtangle
