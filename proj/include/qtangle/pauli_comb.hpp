#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "qtangle/qstate.hpp"

// Antilinear multi-copy Pauli contraction expressions ("combs").
//
// A comb is a product of bilinear forms <psi*| s_{w1} x ... x s_{wN} |psi>,
// one per copy of the state, where some word slots are contraction variables
// summed over mu in {0..3} with metric weight G_mu, G = (-1, 1, 0, 1).
// The moduli of such expressions are SL(2,C)-invariant polynomial measures.

namespace qtangle {

struct PauliAlgebra {
  static const Eigen::Matrix2cd& sigma(int mu) {
    static const std::array<Eigen::Matrix2cd, 4> sig = [] {
      std::array<Eigen::Matrix2cd, 4> s;
      const Complex I(0.0, 1.0);
      s[0] << 1, 0, 0, 1;
      s[1] << 0, 1, 1, 0;
      s[2] << 0, -I, I, 0;
      s[3] << 1, 0, 0, -1;
      return s;
    }();
    if (mu < 0 || mu > 3) throw BadWord("Pauli index outside {0..3}");
    return sig[mu];
  }

  static constexpr std::array<double, 4> metric{-1.0, 1.0, 0.0, 1.0};
};

// One word slot: either a fixed Pauli index or a contraction variable.
struct CombSlot {
  int pauli = -1;  // fixed Pauli index, or -1
  int var = -1;    // contraction variable label, or -1

  static CombSlot fixed(int mu) { return CombSlot{mu, -1}; }
  static CombSlot variable(int v) { return CombSlot{-1, v}; }
  bool is_var() const { return var >= 0; }
};

struct CombSpec {
  int n_qubits = 0;
  std::vector<std::vector<CombSlot>> copies;  // one word of slots per copy
  bool symmetrize = false;  // average over simultaneous qubit permutations
  Complex prefactor = Complex(1.0, 0.0);

  int n_vars() const {
    int v = -1;
    for (const auto& word : copies)
      for (const auto& slot : word)
        if (slot.is_var()) v = std::max(v, slot.var);
    return v + 1;
  }

  void validate() const {
    std::vector<int> counts(n_vars(), 0);
    for (const auto& word : copies) {
      if (static_cast<int>(word.size()) != n_qubits)
        throw BadArity("comb word length differs from qubit count");
      for (const auto& slot : word) {
        if (slot.is_var()) {
          ++counts[slot.var];
        } else if (slot.pauli < 0 || slot.pauli > 3) {
          throw BadWord("Pauli index outside {0..3}");
        }
      }
    }
    for (int c : counts)
      if (c != 2) throw BadWord("every contraction variable must occur exactly twice");
  }
};

// Comb value with its modulus and homogeneity degree in the amplitudes.
struct InvariantValue {
  Complex raw{0.0, 0.0};
  double modulus = 0.0;
  int homogeneity_degree = 0;

  // Modulus exponentiated to homogeneous degree 4 (nonnegative real root).
  double degree4_normalized() const {
    return std::pow(modulus, 4.0 / homogeneity_degree);
  }
};

// <psi*| s_{w1} x ... x s_{wN} |psi> = sum_ij psi_i M_ij psi_j.
// Bilinear: the amplitudes are NOT conjugated.
inline Complex bilinear_form(const PureState& state, const std::vector<int>& word) {
  if (static_cast<int>(word.size()) != state.n_qubits)
    throw BadArity("word length differs from qubit count");
  for (int w : word)
    if (w < 0 || w > 3) throw BadWord("Pauli index outside {0..3}");
  const int n = state.n_qubits;
  const Eigen::Index dim = state.dim();
  Complex total(0.0, 0.0);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (state.amplitudes[i] == Complex(0.0)) continue;
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (state.amplitudes[j] == Complex(0.0)) continue;
      Complex m(1.0, 0.0);
      for (int q = 0; q < n; ++q) {
        const int bi = static_cast<int>((i >> (n - 1 - q)) & 1);
        const int bj = static_cast<int>((j >> (n - 1 - q)) & 1);
        m *= PauliAlgebra::sigma(word[q])(bi, bj);
        if (m == Complex(0.0)) break;
      }
      total += state.amplitudes[i] * m * state.amplitudes[j];
    }
  }
  return total;
}

namespace detail {

inline std::uint32_t encode_word(const std::vector<int>& word) {
  std::uint32_t code = 1;  // leading 1 keeps different lengths distinct
  for (int w : word) code = code * 4 + static_cast<std::uint32_t>(w);
  return code;
}

// All permutations of {0, ..., n-1}.
inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return perms;
}

}  // namespace detail

inline InvariantValue eval_comb(const PureState& state, const CombSpec& spec) {
  if (spec.n_qubits != state.n_qubits)
    throw BadArity("comb qubit count differs from state");
  spec.validate();

  const int n_vars = spec.n_vars();
  const int n_copies = static_cast<int>(spec.copies.size());

  // Bilinear forms depend only on the substituted word; memoize per call.
  std::unordered_map<std::uint32_t, Complex> memo;
  auto bilinear_memo = [&](const std::vector<int>& word) {
    const std::uint32_t code = detail::encode_word(word);
    auto it = memo.find(code);
    if (it != memo.end()) return it->second;
    const Complex v = bilinear_form(state, word);
    memo.emplace(code, v);
    return v;
  };

  std::vector<std::vector<int>> perms =
      spec.symmetrize ? detail::all_permutations(spec.n_qubits)
                      : std::vector<std::vector<int>>{[&] {
                          std::vector<int> id(spec.n_qubits);
                          std::iota(id.begin(), id.end(), 0);
                          return id;
                        }()};

  Complex total(0.0, 0.0);
  std::vector<int> assignment(n_vars, 0);
  std::vector<int> word(spec.n_qubits, 0);
  for (const auto& perm : perms) {
    // Sum over contraction-variable assignments; G_2 = 0 terms are skipped.
    const long n_assign = 1L << (2 * n_vars);
    for (long code = 0; code < n_assign; ++code) {
      double weight = 1.0;
      long rest = code;
      for (int v = 0; v < n_vars; ++v) {
        assignment[v] = static_cast<int>(rest & 3);
        rest >>= 2;
        weight *= PauliAlgebra::metric[assignment[v]];
      }
      if (weight == 0.0) continue;
      Complex term(weight, 0.0);
      for (int c = 0; c < n_copies && term != Complex(0.0); ++c) {
        for (int q = 0; q < spec.n_qubits; ++q) {
          const CombSlot& slot = spec.copies[c][q];
          // perm moves slot q to slot perm[q], simultaneously in all copies
          word[perm[q]] = slot.is_var() ? assignment[slot.var] : slot.pauli;
        }
        term *= bilinear_memo(word);
      }
      total += term;
    }
  }
  if (spec.symmetrize) total /= static_cast<double>(perms.size());
  total *= spec.prefactor;

  InvariantValue out;
  out.raw = total;
  out.modulus = std::abs(total);
  out.homogeneity_degree = 2 * n_copies;
  return out;
}

// ---------------------------------------------------------------------------
// Named invariants
// ---------------------------------------------------------------------------

namespace combs {

inline CombSlot F(int mu) { return CombSlot::fixed(mu); }
inline CombSlot V(int v) { return CombSlot::variable(v); }

// (s_mu s2 s2) . (s^mu s2 s2) -- the three-tangle comb.
inline CombSpec tau3() {
  CombSpec spec;
  spec.n_qubits = 3;
  spec.copies = {{V(0), F(2), F(2)}, {V(0), F(2), F(2)}};
  return spec;
}

// Two-copy comb with contraction variables at slots i and j (1-based),
// sigma_2 elsewhere; e.g. C4_(1,4) = (s_mu s2 s2 s_nu).(s^mu s2 s2 s^nu).
inline CombSpec C4(int i, int j) {
  if (i < 1 || j > 4 || i >= j) throw BadPair("need 1 <= i < j <= 4");
  CombSpec spec;
  spec.n_qubits = 4;
  spec.copies.assign(2, std::vector<CombSlot>(4, F(2)));
  for (int c = 0; c < 2; ++c) {
    spec.copies[c][i - 1] = V(0);
    spec.copies[c][j - 1] = V(1);
  }
  return spec;
}

// (s_mu s_nu s2 s2) . (s^mu s2 s_la s2) . (s2 s^nu s^la s2), degree 6.
inline CombSpec F1() {
  CombSpec spec;
  spec.n_qubits = 4;
  spec.copies = {{V(0), V(1), F(2), F(2)},
                 {V(0), F(2), V(2), F(2)},
                 {F(2), V(1), V(2), F(2)}};
  return spec;
}

// Four-copy comb, symmetrized over the 24 qubit permutations, degree 8.
inline CombSpec F2() {
  CombSpec spec;
  spec.n_qubits = 4;
  spec.copies = {{V(0), V(1), F(2), F(2)},
                 {V(0), F(2), V(2), F(2)},
                 {F(2), V(1), F(2), V(3)},
                 {F(2), F(2), V(2), V(3)}};
  spec.symmetrize = true;
  return spec;
}

// Six-copy comb with prefactor 1/2, degree 12.
inline CombSpec F3() {
  CombSpec spec;
  spec.n_qubits = 4;
  spec.copies = {{V(0), V(1), F(2), F(2)},
                 {V(0), V(1), F(2), F(2)},
                 {V(2), F(2), V(3), F(2)},
                 {V(2), F(2), V(3), F(2)},
                 {F(2), V(4), V(5), F(2)},
                 {F(2), V(4), V(5), F(2)}};
  spec.prefactor = Complex(0.5, 0.0);
  return spec;
}

}  // namespace combs

inline InvariantValue invariant_tau3_raw(const PureState& state) {
  if (state.n_qubits != 3) throw BadArity("tau3 needs a three-qubit state");
  return eval_comb(state, combs::tau3());
}

// Residual three-tangle of a pure three-qubit state.
inline double invariant_tau3_pure(const PureState& state) {
  return invariant_tau3_raw(state).modulus;
}

// 4-concurrence H = <psi*|s2 s2 s2 s2|psi> / 2.
inline Complex invariant_H(const PureState& state) {
  if (state.n_qubits != 4) throw BadArity("H needs a four-qubit state");
  return bilinear_form(state, {2, 2, 2, 2}) / 2.0;
}

inline InvariantValue invariant_C4(const PureState& state, int i, int j) {
  if (state.n_qubits != 4) throw BadArity("C4 needs a four-qubit state");
  return eval_comb(state, combs::C4(i, j));
}

inline InvariantValue invariant_F1(const PureState& state) {
  if (state.n_qubits != 4) throw BadArity("F1 needs a four-qubit state");
  return eval_comb(state, combs::F1());
}

inline InvariantValue invariant_F2(const PureState& state) {
  if (state.n_qubits != 4) throw BadArity("F2 needs a four-qubit state");
  return eval_comb(state, combs::F2());
}

inline InvariantValue invariant_F3(const PureState& state) {
  if (state.n_qubits != 4) throw BadArity("F3 needs a four-qubit state");
  return eval_comb(state, combs::F3());
}

// ---------------------------------------------------------------------------
// Registry of named invariants for the CLI
// ---------------------------------------------------------------------------

struct NamedInvariant {
  std::string name;
  int arity;  // required qubit count
  std::function<InvariantValue(const PureState&)> eval;
};

inline const std::vector<NamedInvariant>& invariant_registry() {
  static const std::vector<NamedInvariant> registry = [] {
    std::vector<NamedInvariant> r;
    r.push_back({"tau3", 3, [](const PureState& s) { return invariant_tau3_raw(s); }});
    r.push_back({"H", 4, [](const PureState& s) {
                   const Complex h = invariant_H(s);
                   return InvariantValue{h, std::abs(h), 2};
                 }});
    r.push_back({"C4_14", 4, [](const PureState& s) { return invariant_C4(s, 1, 4); }});
    r.push_back({"C4_13", 4, [](const PureState& s) { return invariant_C4(s, 1, 3); }});
    r.push_back({"C4_12", 4, [](const PureState& s) { return invariant_C4(s, 1, 2); }});
    r.push_back({"F1", 4, [](const PureState& s) { return invariant_F1(s); }});
    r.push_back({"F2", 4, [](const PureState& s) { return invariant_F2(s); }});
    r.push_back({"F3", 4, [](const PureState& s) { return invariant_F3(s); }});
    return r;
  }();
  return registry;
}

inline const NamedInvariant& find_invariant(const std::string& name) {
  for (const auto& inv : invariant_registry())
    if (inv.name == name) return inv;
  throw BadParam("unknown invariant: " + name);
}

}  // namespace qtangle
