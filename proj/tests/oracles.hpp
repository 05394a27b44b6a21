#pragma once

#include <random>
#include <vector>

#include "qtangle/pauli_comb.hpp"

// Independent reference implementations used to pin expected values.
// Deliberately naive: straight loops and dense matrices, no sharing of
// code paths with the library under test.

namespace oracles {

using qtangle::CMatrix;
using qtangle::Complex;
using qtangle::PureState;
using qtangle::Vector;

// tau3 as 4 |Cayley hyperdeterminant| of the 2x2x2 amplitude tensor.
inline double hyperdet_tau3(const PureState& s) {
  const Vector& x = s.amplitudes;
  auto X = [&](int a, int b, int c) { return x[4 * a + 2 * b + c]; };
  const Complex d1 = X(0, 0, 0) * X(0, 0, 0) * X(1, 1, 1) * X(1, 1, 1) +
                     X(0, 0, 1) * X(0, 0, 1) * X(1, 1, 0) * X(1, 1, 0) +
                     X(0, 1, 0) * X(0, 1, 0) * X(1, 0, 1) * X(1, 0, 1) +
                     X(1, 0, 0) * X(1, 0, 0) * X(0, 1, 1) * X(0, 1, 1);
  const Complex d2 = X(0, 0, 0) * X(1, 1, 1) * X(0, 1, 1) * X(1, 0, 0) +
                     X(0, 0, 0) * X(1, 1, 1) * X(1, 0, 1) * X(0, 1, 0) +
                     X(0, 0, 0) * X(1, 1, 1) * X(1, 1, 0) * X(0, 0, 1) +
                     X(0, 1, 1) * X(1, 0, 0) * X(1, 0, 1) * X(0, 1, 0) +
                     X(0, 1, 1) * X(1, 0, 0) * X(1, 1, 0) * X(0, 0, 1) +
                     X(1, 0, 1) * X(0, 1, 0) * X(1, 1, 0) * X(0, 0, 1);
  const Complex d3 = X(0, 0, 0) * X(1, 1, 0) * X(1, 0, 1) * X(0, 1, 1) +
                     X(1, 1, 1) * X(0, 0, 1) * X(0, 1, 0) * X(1, 0, 0);
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

// Dense 2^n x 2^n matrix of a Pauli word via explicit Kronecker products.
inline CMatrix dense_word(const std::vector<int>& word) {
  CMatrix m = CMatrix::Identity(1, 1);
  for (int w : word) {
    const Eigen::Matrix2cd& s = qtangle::PauliAlgebra::sigma(w);
    CMatrix next(m.rows() * 2, m.cols() * 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        next.block(a * m.rows(), b * m.cols(), m.rows(), m.cols()) = s(a, b) * m;
    m = next;
  }
  return m;
}

inline Complex brute_bilinear(const PureState& s, const std::vector<int>& word) {
  const CMatrix m = dense_word(word);
  return (s.amplitudes.transpose() * m * s.amplitudes)(0);
}

// Comb evaluation by explicit nested summation over all 4^v variable
// assignments, dense word matrices, no memoization.
inline Complex brute_comb(const PureState& s, const qtangle::CombSpec& spec) {
  const int n_vars = spec.n_vars();
  std::vector<std::vector<int>> perms;
  if (spec.symmetrize) {
    std::vector<int> idx(spec.n_qubits);
    for (int q = 0; q < spec.n_qubits; ++q) idx[q] = q;
    do {
      perms.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
  } else {
    std::vector<int> idx(spec.n_qubits);
    for (int q = 0; q < spec.n_qubits; ++q) idx[q] = q;
    perms.push_back(idx);
  }

  Complex total(0.0, 0.0);
  std::vector<int> assignment(n_vars, 0);
  for (const auto& perm : perms) {
    long n_assign = 1;
    for (int v = 0; v < n_vars; ++v) n_assign *= 4;
    for (long code = 0; code < n_assign; ++code) {
      long rest = code;
      double weight = 1.0;
      for (int v = 0; v < n_vars; ++v) {
        assignment[v] = static_cast<int>(rest % 4);
        rest /= 4;
        weight *= qtangle::PauliAlgebra::metric[assignment[v]];
      }
      Complex term(weight, 0.0);
      for (const auto& copy : spec.copies) {
        std::vector<int> word(spec.n_qubits, 0);
        for (int q = 0; q < spec.n_qubits; ++q)
          word[perm[q]] = copy[q].is_var() ? assignment[copy[q].var] : copy[q].pauli;
        term *= brute_bilinear(s, word);
      }
      total += term;
    }
  }
  if (spec.symmetrize) total /= static_cast<double>(perms.size());
  return total * spec.prefactor;
}

// Partial trace over explicit bit vectors, independent index arithmetic.
inline CMatrix naive_partial_trace(const PureState& s, const std::vector<int>& keep) {
  const int n = s.n_qubits;
  const int k = static_cast<int>(keep.size());
  const long dim = 1L << n;
  const long dk = 1L << k;
  CMatrix out = CMatrix::Zero(dk, dk);
  auto bits_of = [&](long idx) {
    std::vector<int> bits(n);
    for (int q = 1; q <= n; ++q) bits[q - 1] = static_cast<int>((idx >> (n - q)) & 1);
    return bits;
  };
  for (long i = 0; i < dim; ++i) {
    const auto bi = bits_of(i);
    for (long j = 0; j < dim; ++j) {
      const auto bj = bits_of(j);
      bool env_match = true;
      for (int q = 1; q <= n && env_match; ++q) {
        bool kept = false;
        for (int kq : keep) kept = kept || (kq == q);
        if (!kept && bi[q - 1] != bj[q - 1]) env_match = false;
      }
      if (!env_match) continue;
      long a = 0, b = 0;
      for (int pos = 0; pos < k; ++pos) {
        a = a * 2 + bi[keep[pos] - 1];
        b = b * 2 + bj[keep[pos] - 1];
      }
      out(a, b) += s.amplitudes[i] * std::conj(s.amplitudes[j]);
    }
  }
  return out;
}

// Random determinant-1 operator: Gaussian matrix scaled by det^(-1/2).
inline Eigen::Matrix2cd random_sl2c(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  while (true) {
    Eigen::Matrix2cd m;
    m << Complex(g(rng), g(rng)), Complex(g(rng), g(rng)),
        Complex(g(rng), g(rng)), Complex(g(rng), g(rng));
    const Complex det = m.determinant();
    if (std::abs(det) > 0.1) return m / std::sqrt(det);
  }
}

inline Eigen::Matrix2cd random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Matrix2cd m;
  m << Complex(g(rng), g(rng)), Complex(g(rng), g(rng)),
      Complex(g(rng), g(rng)), Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
  Eigen::Matrix2cd q = qr.householderQ();
  // fix phases so columns are deterministic up to the RNG stream
  for (int c = 0; c < 2; ++c) {
    const Complex d = qr.matrixQR()(c, c);
    if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

// Applies a single-qubit operator to every qubit of the state in turn.
inline PureState apply_local(const PureState& s,
                             const std::vector<Eigen::Matrix2cd>& ops) {
  PureState out = s;
  for (int q = 1; q <= s.n_qubits; ++q)
    out = qtangle::apply_single_qubit(out, q, ops[q - 1]);
  return out;
}

}  // namespace oracles
