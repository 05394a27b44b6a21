#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "qtangle/errors.hpp"

// Pure states and density matrices of small qubit registers.
//
// Index convention: qubit 1 is the most significant bit, so the basis ket
// |q1 q2 ... qN> sits at index sum_k q_k * 2^(N-k).  Paper-style kets can
// be read off the amplitude vector directly.

namespace qtangle {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Structural checks (norms, traces, Hermiticity).
constexpr double kStructuralTol = 1e-12;
// Spectral checks (eigenvalue comparisons).
constexpr double kSpectralTol = 1e-10;

inline bool is_power_of_two(Eigen::Index x) { return x > 0 && (x & (x - 1)) == 0; }

inline int log2_exact(Eigen::Index x) {
  int n = 0;
  while ((Eigen::Index{1} << n) < x) ++n;
  return n;
}

// Ordered list of distinct 1-based qubit positions.
struct QubitSubset {
  std::vector<int> indices;

  QubitSubset() = default;
  QubitSubset(std::initializer_list<int> list) : indices(list) {}
  explicit QubitSubset(std::vector<int> list) : indices(std::move(list)) {}

  void validate(int n_qubits) const {
    if (indices.empty()) throw BadSubset("empty qubit subset");
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (indices[k] < 1 || indices[k] > n_qubits)
        throw BadSubset("qubit index out of range");
      if (k > 0 && indices[k] <= indices[k - 1])
        throw BadSubset("indices must be strictly increasing");
    }
  }

  std::size_t size() const { return indices.size(); }
};

struct PureState {
  int n_qubits = 0;
  Vector amplitudes;

  Eigen::Index dim() const { return amplitudes.size(); }
};

// Unit-normalizes a raw amplitude vector, preserving relative phases.
inline PureState normalize(const Vector& raw) {
  if (!is_power_of_two(raw.size()))
    throw BadDimension("amplitude vector length must be a power of two");
  const double norm = raw.norm();
  if (norm < 1e-14) throw ZeroVector("cannot normalize a (near-)zero vector");
  PureState s;
  s.n_qubits = log2_exact(raw.size());
  if (s.n_qubits < 1) throw BadDimension("need at least one qubit");
  s.amplitudes = raw / norm;
  return s;
}

inline PureState tensor(const PureState& a, const PureState& b) {
  PureState s;
  s.n_qubits = a.n_qubits + b.n_qubits;
  s.amplitudes.resize(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    for (Eigen::Index j = 0; j < b.dim(); ++j)
      s.amplitudes[i * b.dim() + j] = a.amplitudes[i] * b.amplitudes[j];
  return s;
}

// Haar-distributed pure state: i.i.d. complex Gaussian amplitudes, normalized.
inline PureState random_pure_state(int n, std::uint64_t seed) {
  if (n < 1 || n > 6) throw BadDimension("random_pure_state supports 1..6 qubits");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector raw(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    raw[i] = Complex(re, im);
  }
  return normalize(raw);
}

// Applies a 2x2 operator to one qubit.  The result is not re-normalized,
// so non-unitary (e.g. SL(2,C)) operators are allowed.
inline PureState apply_single_qubit(const PureState& state, int qubit,
                                    const Eigen::Matrix2cd& op) {
  if (qubit < 1 || qubit > state.n_qubits) throw BadIndex("qubit out of range");
  const int shift = state.n_qubits - qubit;
  PureState out;
  out.n_qubits = state.n_qubits;
  out.amplitudes = Vector::Zero(state.dim());
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    const int bit = static_cast<int>((i >> shift) & 1);
    for (int newbit = 0; newbit < 2; ++newbit) {
      const Eigen::Index j = (i & ~(Eigen::Index{1} << shift)) |
                             (Eigen::Index{newbit} << shift);
      out.amplitudes[j] += op(newbit, bit) * state.amplitudes[i];
    }
  }
  return out;
}

// Relabels qubits: input qubit j becomes output qubit perm[j-1].
inline PureState permute_qubits(const PureState& state, const std::vector<int>& perm) {
  const int n = state.n_qubits;
  if (static_cast<int>(perm.size()) != n) throw BadIndex("permutation size mismatch");
  std::vector<bool> seen(n + 1, false);
  for (int p : perm) {
    if (p < 1 || p > n || seen[p]) throw BadIndex("not a permutation");
    seen[p] = true;
  }
  PureState out;
  out.n_qubits = n;
  out.amplitudes.resize(state.dim());
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    Eigen::Index j = 0;
    for (int q = 1; q <= n; ++q) {
      const Eigen::Index bit = (i >> (n - q)) & 1;
      j |= bit << (n - perm[q - 1]);
    }
    out.amplitudes[j] = state.amplitudes[i];
  }
  return out;
}

struct DensityMatrix {
  int n_qubits = 0;
  CMatrix entries;

  Eigen::Index dim() const { return entries.rows(); }
};

// Validating constructor: Hermitian, unit trace, spectrum >= -1e-10.
inline DensityMatrix make_density_matrix(const CMatrix& entries) {
  if (entries.rows() != entries.cols() || !is_power_of_two(entries.rows()))
    throw BadDimension("density matrix must be square with power-of-two size");
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol)
    throw SpectralFailure("density matrix not Hermitian");
  if (std::abs(entries.trace() - Complex(1.0)) > 1e-9)
    throw SpectralFailure("density matrix trace differs from one");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(entries, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kSpectralTol)
    throw SpectralFailure("density matrix has a negative eigenvalue beyond tolerance");
  DensityMatrix rho;
  rho.n_qubits = log2_exact(entries.rows());
  rho.entries = entries;
  return rho;
}

inline DensityMatrix density(const PureState& state) {
  DensityMatrix rho;
  rho.n_qubits = state.n_qubits;
  rho.entries = state.amplitudes * state.amplitudes.adjoint();
  return rho;
}

// Eigenvalues sorted descending, with the [-1e-10, 0) window clamped to zero.
inline Eigen::VectorXd clamped_spectrum(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.entries, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < 0.0) {
      if (ev[i] < -kSpectralTol)
        throw SpectralFailure("eigenvalue below clamping window");
      ev[i] = 0.0;
    }
  }
  return ev.reverse();
}

namespace detail {

// Splices row index a (on `keep`) and environment index e (on the rest)
// back into a full register index.
inline Eigen::Index splice_index(Eigen::Index a, Eigen::Index e, int n,
                                 const std::vector<int>& keep) {
  Eigen::Index full = 0;
  std::size_t ka = 0;
  int ke = static_cast<int>(keep.size());
  const int n_env = n - ke;
  int env_pos = 0;
  for (int q = 1; q <= n; ++q) {
    Eigen::Index bit;
    if (ka < keep.size() && keep[ka] == q) {
      bit = (a >> (ke - 1 - static_cast<int>(ka))) & 1;
      ++ka;
    } else {
      bit = (e >> (n_env - 1 - env_pos)) & 1;
      ++env_pos;
    }
    full |= bit << (n - q);
  }
  return full;
}

}  // namespace detail

inline DensityMatrix partial_trace(const PureState& state, const QubitSubset& keep) {
  keep.validate(state.n_qubits);
  const int n = state.n_qubits;
  const int k = static_cast<int>(keep.size());
  const Eigen::Index dim_keep = Eigen::Index{1} << k;
  const Eigen::Index dim_env = Eigen::Index{1} << (n - k);
  CMatrix out = CMatrix::Zero(dim_keep, dim_keep);
  for (Eigen::Index a = 0; a < dim_keep; ++a)
    for (Eigen::Index b = 0; b < dim_keep; ++b)
      for (Eigen::Index e = 0; e < dim_env; ++e)
        out(a, b) += state.amplitudes[detail::splice_index(a, e, n, keep.indices)] *
                     std::conj(state.amplitudes[detail::splice_index(b, e, n, keep.indices)]);
  DensityMatrix rho;
  rho.n_qubits = k;
  rho.entries = out;
  return rho;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& keep) {
  keep.validate(rho.n_qubits);
  const int n = rho.n_qubits;
  const int k = static_cast<int>(keep.size());
  const Eigen::Index dim_keep = Eigen::Index{1} << k;
  const Eigen::Index dim_env = Eigen::Index{1} << (n - k);
  CMatrix out = CMatrix::Zero(dim_keep, dim_keep);
  for (Eigen::Index a = 0; a < dim_keep; ++a)
    for (Eigen::Index b = 0; b < dim_keep; ++b)
      for (Eigen::Index e = 0; e < dim_env; ++e)
        out(a, b) += rho.entries(detail::splice_index(a, e, n, keep.indices),
                                 detail::splice_index(b, e, n, keep.indices));
  DensityMatrix reduced;
  reduced.n_qubits = k;
  reduced.entries = out;
  return reduced;
}

}  // namespace qtangle
