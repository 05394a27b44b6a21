#pragma once

#include <optional>
#include <string>

#include "qtangle/convex_roof.hpp"
#include "qtangle/families.hpp"
#include "qtangle/pauli_comb.hpp"
#include "qtangle/tangles.hpp"

// Generalized-monogamy diagnostics for four-qubit pure states: per-qubit
// candidate four-tangles from residues minus roof sums, mismatch detection,
// and verification of the telescope-state identities.

namespace qtangle {

// Roof tolerance dominates the achievable consistency resolution.
constexpr double kConsistencyTol = 1e-3;

struct MonogamyQubitRow {
  double residue = 0.0;       // R^(j), signed
  double roof_sum = 0.0;      // sum over triples containing j of roof tau3
  double tau4_candidate = 0.0;  // residue - roof_sum (lower-bound estimate)
  std::optional<double> scaling_s;  // residue remainder / F1-normalized value
};

struct MonogamyReport {
  std::map<int, MonogamyQubitRow> per_qubit;
  bool consistent = false;  // all tau4 candidates equal within tolerance
  double consistency_tolerance = kConsistencyTol;
  std::map<std::array<int, 3>, RoofResult> roofs;
  // Degree-4-normalized moduli of the registered four-qubit invariants.
  std::map<std::string, double> tau4_from_invariants;
};

inline MonogamyReport analyze(const PureState& state, std::uint64_t roof_seed,
                              int roof_restarts, double transform_exponent = 1.0,
                              double tolerance = kConsistencyTol) {
  if (state.n_qubits != 4) throw BadArity("analyze needs a four-qubit state");
  MonogamyReport report;
  report.consistency_tolerance = tolerance;

  const std::array<std::array<int, 3>, 4> triples{
      {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}};
  for (const auto& t : triples) {
    RoofProblem problem;
    problem.rho = partial_trace(state, QubitSubset{{t[0], t[1], t[2]}});
    problem.transform_exponent = transform_exponent;
    report.roofs[t] = roof_tau3(problem, roof_seed, roof_restarts);
  }

  const InvariantValue f1 = invariant_F1(state);
  const double f1_normalized = f1.degree4_normalized();

  for (int j = 1; j <= 4; ++j) {
    MonogamyQubitRow row;
    row.residue = ckw_residue(state, j);
    for (const auto& t : triples)
      if (t[0] == j || t[1] == j || t[2] == j)
        row.roof_sum += report.roofs.at(t).value;
    row.tau4_candidate = row.residue - row.roof_sum;
    if (f1_normalized > 1e-12)
      row.scaling_s = row.tau4_candidate / f1_normalized;
    report.per_qubit[j] = row;
  }

  double max_gap = 0.0;
  for (int j = 1; j <= 4; ++j)
    for (int k = j + 1; k <= 4; ++k)
      max_gap = std::max(max_gap, std::abs(report.per_qubit[j].tau4_candidate -
                                           report.per_qubit[k].tau4_candidate));
  report.consistent = max_gap < tolerance;

  for (const auto& inv : invariant_registry()) {
    if (inv.arity != 4) continue;
    report.tau4_from_invariants[inv.name] = inv.eval(state).degree4_normalized();
  }
  return report;
}

// Equally weighted mean of the per-qubit four-tangle candidates.
inline double average_residue(const PureState& state, std::uint64_t roof_seed,
                              int roof_restarts, double transform_exponent = 1.0) {
  const MonogamyReport report =
      analyze(state, roof_seed, roof_restarts, transform_exponent);
  double sum = 0.0;
  for (const auto& [j, row] : report.per_qubit) sum += row.tau4_candidate;
  return sum / 4.0;
}

struct TelescopeIdentity {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  bool pass = false;
};

struct TelescopeCheck {
  PureState reference;   // three qubits
  PureState telescoped;  // qubit 3 doubled
  std::vector<TelescopeIdentity> identities;
  bool all_pass = true;
};

namespace detail {

inline void push_identity(TelescopeCheck& check, std::string name, double lhs,
                          double rhs, double tol, bool relative = false) {
  TelescopeIdentity id;
  id.name = std::move(name);
  id.lhs = lhs;
  id.rhs = rhs;
  id.tolerance = tol;
  id.relative = relative;
  const double scale = relative ? std::max({std::abs(lhs), std::abs(rhs), 1e-30}) : 1.0;
  id.pass = std::abs(lhs - rhs) <= tol * scale;
  check.all_pass = check.all_pass && id.pass;
  check.identities.push_back(std::move(id));
}

}  // namespace detail

// Verifies the telescope-state identities for a three-qubit reference
// doubled at qubit 3:
//   (a) lifting: tau2^(23)(M) = roof tau3^(234)(T_M), same for (13)/(134);
//   (b) tau4;j(T_M) = tau3(M) for all four qubits;
//   (c) |C4_(1,4)|, |C4_(2,4)| and |6H^2 - C4_(3,4)/2| coincide;
//   (d) F2 and F3 as polynomials in the raw C4_(1,3), C4_(1,2) values.
inline TelescopeCheck telescope_check(const PureState& reference,
                                      std::uint64_t roof_seed = 0,
                                      int roof_restarts = 64,
                                      double tau4_tolerance = 1e-3) {
  if (reference.n_qubits != 3) throw BadArity("reference must have three qubits");
  TelescopeCheck check;
  check.reference = reference;
  check.telescoped = make_telescope(reference, 3);
  const PureState& tm = check.telescoped;

  const auto roofs = roof_three_tangles_all(tm, roof_seed, roof_restarts);
  const double tau3_ref = invariant_tau3_pure(reference);

  detail::push_identity(check, "tau2_23(M) = roof tau3_234(TM)",
                        two_tangle(reference, 2, 3),
                        roofs.at({2, 3, 4}).value, 1e-4);
  detail::push_identity(check, "tau2_13(M) = roof tau3_134(TM)",
                        two_tangle(reference, 1, 3),
                        roofs.at({1, 3, 4}).value, 1e-4);

  const std::array<std::array<int, 3>, 4> triples{
      {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}};
  for (int j = 1; j <= 4; ++j) {
    double tau4 = ckw_residue(tm, j);
    for (const auto& t : triples)
      if (t[0] == j || t[1] == j || t[2] == j) tau4 -= roofs.at(t).value;
    detail::push_identity(check, "tau4;" + std::to_string(j) + "(TM) = tau3(M)",
                          tau4, tau3_ref, tau4_tolerance);
  }

  const double c14 = invariant_C4(tm, 1, 4).modulus;
  const double c24 = invariant_C4(tm, 2, 4).modulus;
  const Complex h = invariant_H(tm);
  const Complex c34_raw = invariant_C4(tm, 3, 4).raw;
  const double h_combo = std::abs(6.0 * h * h - 0.5 * c34_raw);
  detail::push_identity(check, "|C4_14| = |C4_24|", c14, c24, 1e-9);
  detail::push_identity(check, "|C4_14| = |6H^2 - C4_34/2|", c14, h_combo, 1e-9);

  const Complex c13 = invariant_C4(tm, 1, 3).raw;
  const Complex c12 = invariant_C4(tm, 1, 2).raw;
  const Complex f2_poly = c13 * (7.0 / 9.0 * c13 + 2.0 / 9.0 * c12);
  const Complex f3_poly = 0.5 * c13 * c13 * c12;
  detail::push_identity(check, "F2 = C13 (7/9 C13 + 2/9 C12)",
                        std::abs(invariant_F2(tm).raw - f2_poly), 0.0, 1e-8 *
                        std::max(std::abs(f2_poly), 1.0));
  detail::push_identity(check, "F3 = 1/2 C13^2 C12",
                        std::abs(invariant_F3(tm).raw - f3_poly), 0.0, 1e-8 *
                        std::max(std::abs(f3_poly), 1.0));
  return check;
}

// Full tangle report; three-tangles are pure values for n = 3 and
// convex-roof estimates for n = 4.
inline TangleReport make_tangle_report(const PureState& state,
                                       std::uint64_t roof_seed = 0,
                                       int roof_restarts = 64) {
  TangleReport report;
  const int n = state.n_qubits;
  for (int j = 1; j <= n; ++j) {
    report.one_tangles[j] = one_tangle(state, j);
    if (n >= 2) report.residues[j] = ckw_residue(state, j);
  }
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k)
      report.two_tangles[{j, k}] = two_tangle(state, j, k);
  if (n == 3) {
    report.three_tangles[{1, 2, 3}] = three_tangle_pure(state);
    report.three_tangles_are_roof = false;
  } else if (n == 4) {
    for (auto& [triple, roof] : roof_three_tangles_all(state, roof_seed, roof_restarts))
      report.three_tangles[triple] = roof.value;
    report.three_tangles_are_roof = true;
  }
  return report;
}

}  // namespace qtangle
