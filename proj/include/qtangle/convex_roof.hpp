#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "qtangle/tangles.hpp"

// Numerical convex-roof extension of the three-tangle (and monotone power
// transforms of it) for three-qubit mixed states of rank <= 4.
//
// Schroedinger-HJW parametrization: every size-m decomposition of a rank-r
// density matrix is obtained from the weighted eigenvectors through an
// m x r matrix with orthonormal columns.  The roof is the minimum of
// sum_i p_i f(tau3(phi_i)) over that manifold, estimated by derivative-free
// local descent from random starting points.

namespace qtangle {

namespace detail {

// Dense matrix of a Pauli word (kron product in the global convention).
inline CMatrix word_matrix(const std::vector<int>& word) {
  CMatrix m = CMatrix::Identity(1, 1);
  for (int w : word) {
    const Eigen::Matrix2cd& s = PauliAlgebra::sigma(w);
    CMatrix next(m.rows() * 2, m.cols() * 2);
    next << s(0, 0) * m, s(0, 1) * m, s(1, 0) * m, s(1, 1) * m;
    m = next;
  }
  return m;
}

// Raw tau3 comb value of an (unnormalized) three-qubit amplitude vector:
// -b0^2 + b1^2 + b3^2 with b_mu = psi^T (s_mu x s2 x s2) psi.
// Homogeneous of degree 4; tau3 of the normalized state is |raw| / |psi|^4.
inline double tau3_raw_fast(const Vector& psi) {
  static const CMatrix m0 = word_matrix({0, 2, 2});
  static const CMatrix m1 = word_matrix({1, 2, 2});
  static const CMatrix m3 = word_matrix({3, 2, 2});
  const Complex b0 = psi.transpose() * m0 * psi;
  const Complex b1 = psi.transpose() * m1 * psi;
  const Complex b3 = psi.transpose() * m3 * psi;
  return std::abs(-b0 * b0 + b1 * b1 + b3 * b3);
}

// Thin QR orthonormalization of the columns.
inline CMatrix orthonormalize(const CMatrix& x) {
  Eigen::HouseholderQR<CMatrix> qr(x);
  return qr.householderQ() * CMatrix::Identity(x.rows(), x.cols());
}

inline std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

inline CMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols,
                               std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace detail

struct RoofProblem {
  DensityMatrix rho;               // three-qubit mixed state
  double transform_exponent = 1.0; // beta of the monotone f(x) = x^beta
  int decomposition_size = 4;      // m; raised to the rank if smaller
};

struct RoofOptions {
  int max_iters = 10000;
  double initial_step = 0.3;
  double step_growth = 1.2;
  double step_decay = 0.8;
  double max_step = 0.5;
  int fails_per_decay = 8;
  double stall_step = 1e-12;
  double stall_rel_improvement = 1e-10;
  int stall_window = 50;
};

struct RoofResult {
  double value = 0.0;  // f^{-1} of the best objective (plain roof for beta=1)
  std::vector<std::pair<double, PureState>> decomposition;
  int restarts_used = 0;
  std::vector<double> best_objective_history;  // best objective per restart
  int rank = 0;
};

// Minimizes sum_i p_i tau3(phi_i)^beta over decompositions of problem.rho
// and returns the best value found (an upper-bound estimate of the roof).
inline RoofResult roof_tau3(const RoofProblem& problem, std::uint64_t seed,
                            int restarts, const RoofOptions& opts = {}) {
  if (problem.rho.dim() != 8)
    throw BadDimension("roof_tau3 needs a three-qubit density matrix");
  if (restarts < 1) throw BadParam("restarts must be >= 1");
  const double beta = problem.transform_exponent;
  if (beta <= 0.0 || beta > 4.0) throw BadParam("transform exponent outside (0, 4]");

  Eigen::SelfAdjointEigenSolver<CMatrix> es(problem.rho.entries);
  int rank = 0;
  for (Eigen::Index i = 0; i < 8; ++i) {
    const double ev = es.eigenvalues()[i];
    if (ev < -kSpectralTol)
      throw SpectralFailure("density matrix has a negative eigenvalue");
    if (ev > 1e-10) ++rank;
  }
  if (rank > 4) throw RankOverflow("numerical rank above 4 is outside the validated regime");

  // Weighted eigenvectors sqrt(lambda_j) |e_j>, largest eigenvalues first.
  CMatrix cols(8, rank);
  for (int j = 0; j < rank; ++j) {
    const Eigen::Index src = 7 - j;
    cols.col(j) = std::sqrt(es.eigenvalues()[src]) * es.eigenvectors().col(src);
  }

  RoofResult result;
  result.rank = rank;
  result.restarts_used = restarts;

  if (rank == 1) {
    const PureState phi = normalize(cols.col(0));
    result.value = invariant_tau3_pure(phi);
    result.decomposition.emplace_back(1.0, phi);
    result.best_objective_history.assign(restarts, std::pow(result.value, beta));
    return result;
  }

  const int m = std::min(8, std::max(problem.decomposition_size, rank));

  // Objective on the isometry manifold: phi_i = sum_j U_ij c_j,
  // sum_i p_i tau3(phi_i / |phi_i|)^beta = sum_i p_i^(1-2beta) |raw_i|^beta.
  auto objective = [&](const CMatrix& u) {
    const CMatrix phi = cols * u.transpose();  // 8 x m
    double obj = 0.0;
    for (int i = 0; i < m; ++i) {
      const double p = phi.col(i).squaredNorm();
      if (p < 1e-14) continue;
      const double raw = detail::tau3_raw_fast(phi.col(i));
      obj += std::pow(p, 1.0 - 2.0 * beta) * std::pow(raw, beta);
    }
    return obj;
  };

  double global_best = std::numeric_limits<double>::infinity();
  CMatrix global_best_u;
  bool any_stalled = false;

  for (int r = 0; r < restarts; ++r) {
    auto rng = detail::restart_rng(seed, r);
    CMatrix u = detail::orthonormalize(detail::random_gaussian(m, rank, rng));
    double best = objective(u);
    double step = opts.initial_step;
    int fails = 0;
    double window_ref = best;
    int window_iter = 0;
    for (int iter = 0; iter < opts.max_iters; ++iter) {
      CMatrix g = detail::random_gaussian(m, m, rng);
      CMatrix a = (g - g.adjoint()) / 2.0;
      a /= std::max(a.norm(), 1e-300);
      const CMatrix candidate = detail::orthonormalize(u + step * (a * u));
      const double o = objective(candidate);
      if (o < best) {
        u = candidate;
        best = o;
        fails = 0;
        step = std::min(step * opts.step_growth, opts.max_step);
      } else if (++fails >= opts.fails_per_decay) {
        step *= opts.step_decay;
        fails = 0;
      }
      if (step < opts.stall_step) {
        any_stalled = true;
        break;
      }
      if (++window_iter >= opts.stall_window) {
        if (window_ref - best <=
            opts.stall_rel_improvement * std::max(std::abs(window_ref), 1e-30)) {
          any_stalled = true;
          break;
        }
        window_ref = best;
        window_iter = 0;
      }
    }
    result.best_objective_history.push_back(best);
    if (best < global_best) {
      global_best = best;
      global_best_u = u;
    }
  }
  if (!any_stalled)
    throw NoConvergence("no restart reached the stall criterion; raise max_iters");

  result.value = std::pow(global_best, 1.0 / beta);
  const CMatrix phi = cols * global_best_u.transpose();
  for (int i = 0; i < m; ++i) {
    const double p = phi.col(i).squaredNorm();
    if (p < 1e-14) continue;
    result.decomposition.emplace_back(p, normalize(phi.col(i)));
  }
  return result;
}

// Convenience: plain (beta = 1) roofs of all four three-qubit reductions
// of a four-qubit pure state, keyed by the kept triple.
inline std::map<std::array<int, 3>, RoofResult> roof_three_tangles_all(
    const PureState& state, std::uint64_t seed, int restarts,
    const RoofOptions& opts = {}) {
  if (state.n_qubits != 4) throw BadArity("need a four-qubit state");
  std::map<std::array<int, 3>, RoofResult> out;
  const std::array<std::array<int, 3>, 4> triples{
      {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}};
  for (const auto& t : triples) {
    RoofProblem problem;
    problem.rho = partial_trace(state, QubitSubset{{t[0], t[1], t[2]}});
    out[t] = roof_tau3(problem, seed, restarts, opts);
  }
  return out;
}

// Phase-minimized tau3 along sqrt(p)|psi1> + e^{i phi} sqrt(1-p)|psi2>,
// evaluated on a uniform p grid.  Dense phase sampling plus golden-section
// refinement around the best sample.
inline std::vector<std::pair<double, double>> characteristic_curve(
    const PureState& psi1, const PureState& psi2, int grid) {
  if (psi1.n_qubits != 3 || psi2.n_qubits != 3)
    throw BadArity("characteristic_curve needs three-qubit states");
  if (grid < 2) throw BadParam("grid must be >= 2");
  if (std::abs(psi1.amplitudes.norm() - 1.0) > 1e-9 ||
      std::abs(psi2.amplitudes.norm() - 1.0) > 1e-9 ||
      std::abs((psi1.amplitudes.adjoint() * psi2.amplitudes)(0)) > 1e-9)
    throw NotOrthonormal("states must be orthonormal");

  const double two_pi = 2.0 * M_PI;
  auto tau3_at = [&](double p, double phi) {
    const Vector v = std::sqrt(p) * psi1.amplitudes +
                     std::exp(Complex(0.0, phi)) * std::sqrt(1.0 - p) * psi2.amplitudes;
    return detail::tau3_raw_fast(v);  // |v| = 1 by orthonormality
  };

  std::vector<std::pair<double, double>> curve;
  curve.reserve(grid);
  for (int k = 0; k < grid; ++k) {
    const double p = static_cast<double>(k) / (grid - 1);
    const int coarse = 256;
    double best_phi = 0.0;
    double best = tau3_at(p, 0.0);
    for (int c = 1; c < coarse; ++c) {
      const double phi = two_pi * c / coarse;
      const double v = tau3_at(p, phi);
      if (v < best) {
        best = v;
        best_phi = phi;
      }
    }
    // golden-section refinement on the bracketing interval
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_phi - two_pi / coarse;
    double hi = best_phi + two_pi / coarse;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = tau3_at(p, x1);
    double f2 = tau3_at(p, x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = tau3_at(p, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = tau3_at(p, x2);
      }
    }
    curve.emplace_back(p, std::min({best, f1, f2}));
  }
  return curve;
}

}  // namespace qtangle
