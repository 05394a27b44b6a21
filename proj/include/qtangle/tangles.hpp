#pragma once

#include <array>
#include <map>
#include <utility>

#include "qtangle/pauli_comb.hpp"
#include "qtangle/qstate.hpp"

// One-tangle, two-tangle (squared Wootters concurrence), pure-state
// three-tangle and the CKW residue.

namespace qtangle {

namespace detail {

inline double clamp_unit_interval(double x, double tol) {
  if (x < 0.0) {
    if (x < -tol) throw SpectralFailure("value below zero beyond tolerance");
    return 0.0;
  }
  if (x > 1.0) {
    if (x > 1.0 + tol) throw SpectralFailure("value above one beyond tolerance");
    return 1.0;
  }
  return x;
}

}  // namespace detail

// tau1 = 4 det of the single-qubit reduced density matrix.
inline double one_tangle(const PureState& state, int j) {
  if (j < 1 || j > state.n_qubits) throw BadIndex("qubit out of range");
  const DensityMatrix rho = partial_trace(state, QubitSubset{{j}});
  const double t = 4.0 * rho.entries.determinant().real();
  return detail::clamp_unit_interval(t, kSpectralTol);
}

// Wootters concurrence of a two-qubit density matrix, computed from the
// spectrum of rho * (s2 x s2) rho^* (s2 x s2).  This product is similar to
// the positive operator R of the square-root form, so the spectra coincide.
inline double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw BadDimension("concurrence needs a two-qubit state");
  CMatrix yy = CMatrix::Zero(4, 4);
  const Eigen::Matrix2cd s2 = PauliAlgebra::sigma(2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      yy(i, j) = s2(i >> 1, j >> 1) * s2(i & 1, j & 1);
  const CMatrix prod = rho.entries * yy * rho.entries.conjugate() * yy;
  Eigen::ComplexEigenSolver<CMatrix> es(prod, false);
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) {
    Complex ev = es.eigenvalues()[i];
    if (std::abs(ev.imag()) > 1e-9)
      throw SpectralFailure("materially complex eigenvalue in concurrence");
    double re = ev.real();
    if (re < 0.0) {
      if (re < -kSpectralTol)
        throw SpectralFailure("materially negative eigenvalue in concurrence");
      re = 0.0;
    }
    lam[i] = std::sqrt(re);
  }
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

// tau2^(jk) = C^2 of the (j,k) reduction.
inline double two_tangle(const PureState& state, int j, int k) {
  if (j == k) throw BadIndex("two_tangle needs distinct qubits");
  if (j > k) std::swap(j, k);
  const double c = concurrence(partial_trace(state, QubitSubset{{j, k}}));
  return c * c;
}

inline double three_tangle_pure(const PureState& state) {
  return invariant_tau3_pure(state);
}

// R^(j) = tau1^(j) - sum_{k != j} tau2^(jk).  Reported unclamped (signed).
inline double ckw_residue(const PureState& state, int j) {
  if (state.n_qubits < 2) throw BadArity("residue needs at least two qubits");
  double r = one_tangle(state, j);
  for (int k = 1; k <= state.n_qubits; ++k)
    if (k != j) r -= two_tangle(state, j, k);
  return r;
}

// All one-, two-, and (pure or roof) three-tangles plus residues of a state.
struct TangleReport {
  std::map<int, double> one_tangles;
  std::map<std::pair<int, int>, double> two_tangles;
  std::map<std::array<int, 3>, double> three_tangles;
  bool three_tangles_are_roof = false;
  std::map<int, double> residues;  // signed
};

}  // namespace qtangle
