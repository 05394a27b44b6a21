#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "qtangle/qstate.hpp"

// Constructors for the state families under study and the telescoping
// (qubit-doubling) operation.

namespace qtangle {

// sqrt(p/2)(|1111> + |1000>) + sqrt((1-p)/3)(|0100> + |0010> + |0001>)
inline PureState make_psi_p(double p) {
  if (p < 0.0 || p > 1.0) throw BadParam("p must lie in [0, 1]");
  Vector raw = Vector::Zero(16);
  const double ghz = std::sqrt(p / 2.0);
  const double w = std::sqrt((1.0 - p) / 3.0);
  raw[0b1111] = ghz;
  raw[0b1000] = ghz;
  raw[0b0100] = w;
  raw[0b0010] = w;
  raw[0b0001] = w;
  return normalize(raw);
}

// alpha|1111> + beta|1000> + gamma|0110>, normalized.
inline PureState make_psi_tel(Complex alpha, Complex beta, Complex gamma) {
  Vector raw = Vector::Zero(16);
  raw[0b1111] = alpha;
  raw[0b1000] = beta;
  raw[0b0110] = gamma;
  return normalize(raw);
}

// a|0000> - b|0111> - c|1100> + d|1011>, normalized.
inline PureState make_cluster(Complex a, Complex b, Complex c, Complex d) {
  Vector raw = Vector::Zero(16);
  raw[0b0000] = a;
  raw[0b0111] = -b;
  raw[0b1100] = -c;
  raw[0b1011] = d;
  return normalize(raw);
}

// (|0000> + |1011> + |1101> + |1110>) / 2
inline PureState make_chi1() {
  Vector raw = Vector::Zero(16);
  raw[0b0000] = 1.0;
  raw[0b1011] = 1.0;
  raw[0b1101] = 1.0;
  raw[0b1110] = 1.0;
  return normalize(raw);
}

// a|0000> + b|0101> + c|1000> + d|1110>, normalized.
inline PureState make_chi2(Complex a, Complex b, Complex c, Complex d) {
  Vector raw = Vector::Zero(16);
  raw[0b0000] = a;
  raw[0b0101] = b;
  raw[0b1000] = c;
  raw[0b1110] = d;
  return normalize(raw);
}

inline PureState make_ghz(int n) {
  if (n < 2 || n > 6) throw BadParam("ghz supports 2..6 qubits");
  Vector raw = Vector::Zero(Eigen::Index{1} << n);
  raw[0] = 1.0;
  raw[raw.size() - 1] = 1.0;
  return normalize(raw);
}

inline PureState make_w(int n) {
  if (n < 2 || n > 6) throw BadParam("w supports 2..6 qubits");
  Vector raw = Vector::Zero(Eigen::Index{1} << n);
  for (int k = 0; k < n; ++k) raw[Eigen::Index{1} << k] = 1.0;
  return normalize(raw);
}

// Seeded product of n random single-qubit states.
inline PureState make_product(int n, std::uint64_t seed) {
  if (n < 1 || n > 6) throw BadParam("product supports 1..6 qubits");
  PureState s = random_pure_state(1, seed * 977 + 1);
  for (int k = 2; k <= n; ++k)
    s = tensor(s, random_pure_state(1, seed * 977 + k));
  return s;
}

// Telescoping: doubles the selected qubit in the computational basis
// (|k> -> |k>|k>), appends the new qubit at the end of the register, then
// optionally applies a local unitary to the new qubit.
inline PureState make_telescope(const PureState& reference, int doubled_qubit,
                                const std::optional<Eigen::Matrix2cd>& post_unitary = {}) {
  if (reference.n_qubits < 2) throw BadArity("reference needs at least two qubits");
  if (doubled_qubit < 1 || doubled_qubit > reference.n_qubits)
    throw BadIndex("doubled qubit out of range");
  const int n = reference.n_qubits;
  const int shift = n - doubled_qubit;
  PureState out;
  out.n_qubits = n + 1;
  out.amplitudes = Vector::Zero(reference.dim() * 2);
  for (Eigen::Index i = 0; i < reference.dim(); ++i) {
    const Eigen::Index bit = (i >> shift) & 1;
    out.amplitudes[i * 2 + bit] = reference.amplitudes[i];
  }
  if (post_unitary) out = apply_single_qubit(out, n + 1, *post_unitary);
  return out;
}

// ---------------------------------------------------------------------------
// CLI family specs: "psi_p:p=0.35", "cluster:a=0.5,b=0.5,c=0.5,d=0.5", ...
// Complex values are written as "re+imj" (e.g. "0.5+0.1j").
// ---------------------------------------------------------------------------

struct FamilySpec {
  std::string name;
  std::map<std::string, Complex> params;

  static Complex parse_complex(const std::string& text) {
    std::string t = text;
    bool imag_suffix = false;
    if (!t.empty() && (t.back() == 'j' || t.back() == 'i')) {
      imag_suffix = true;
      t.pop_back();
    }
    if (imag_suffix) {
      // split re and im at the last +/- that is not an exponent sign
      for (std::size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
          const double re = std::stod(t.substr(0, k));
          const double im = std::stod(t.substr(k));
          return Complex(re, im);
        }
      }
      return Complex(0.0, std::stod(t));  // pure imaginary, e.g. "1j"
    }
    return Complex(std::stod(t), 0.0);
  }

  static FamilySpec parse(const std::string& text) {
    FamilySpec spec;
    const auto colon = text.find(':');
    spec.name = text.substr(0, colon);
    if (colon != std::string::npos) {
      std::stringstream rest(text.substr(colon + 1));
      std::string item;
      while (std::getline(rest, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw BadParam("expected key=value in " + item);
        try {
          spec.params[item.substr(0, eq)] = parse_complex(item.substr(eq + 1));
        } catch (const std::exception&) {
          throw BadParam("cannot parse value in " + item);
        }
      }
    }
    return spec;
  }

  Complex get(const std::string& key, std::optional<Complex> fallback = {}) const {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    if (fallback) return *fallback;
    throw BadParam("missing parameter " + key + " for family " + name);
  }

  double get_real(const std::string& key, std::optional<double> fallback = {}) const {
    if (fallback) return get(key, Complex(*fallback, 0.0)).real();
    return get(key).real();
  }

  PureState build() const {
    if (name == "psi_p") return make_psi_p(get_real("p"));
    if (name == "psi_tel")
      return make_psi_tel(get("alpha", Complex(1.0)), get("beta", Complex(1.0)),
                          get("gamma", Complex(1.0)));
    if (name == "cluster")
      return make_cluster(get("a"), get("b"), get("c"), get("d"));
    if (name == "chi1") return make_chi1();
    if (name == "chi2") return make_chi2(get("a"), get("b"), get("c"), get("d"));
    if (name == "ghz") return make_ghz(static_cast<int>(get_real("n", 3.0)));
    if (name == "w") return make_w(static_cast<int>(get_real("n", 3.0)));
    if (name == "product")
      return make_product(static_cast<int>(get_real("n", 4.0)),
                          static_cast<std::uint64_t>(get_real("seed", 0.0)));
    throw BadParam("unknown family: " + name);
  }
};

}  // namespace qtangle
