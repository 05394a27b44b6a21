#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "qtangle/monogamy.hpp"

// Regression corpus: every quantitative claim about the studied state
// families, evaluated against the implementation.  Backs the verify-paper
// CLI command.

namespace qtangle {

struct CheckResult {
  std::string claim;
  double expected = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  int restarts = 64;
};

namespace detail {

struct CheckSink {
  std::vector<CheckResult>& results;

  void check(std::string claim, double computed, double expected, double tol) {
    CheckResult r;
    r.claim = std::move(claim);
    r.expected = expected;
    r.computed = computed;
    r.tolerance = tol;
    r.pass = std::abs(computed - expected) <= tol;
    results.push_back(std::move(r));
  }

  // for claims of the form "computed exceeds threshold"
  void check_greater(std::string claim, double computed, double threshold) {
    CheckResult r;
    r.claim = std::move(claim);
    r.expected = threshold;
    r.computed = computed;
    r.tolerance = 0.0;
    r.pass = computed > threshold;
    results.push_back(std::move(r));
  }
};

}  // namespace detail

inline std::vector<CheckResult> run_paper_checks(const VerifyOptions& opts = {}) {
  std::vector<CheckResult> results;
  detail::CheckSink sink{results};
  const std::uint64_t seed = opts.seed;
  const int restarts = opts.restarts;

  // --- GHZ / W basics -------------------------------------------------
  sink.check("tau3(GHZ3) = 1", invariant_tau3_pure(make_ghz(3)), 1.0, 1e-12);
  sink.check("tau3(W3) = 0", invariant_tau3_pure(make_w(3)), 0.0, 1e-12);
  sink.check("|H(GHZ4)| = 1/2", std::abs(invariant_H(make_ghz(4))), 0.5, 1e-12);
  sink.check("|H(W4)| = 0", std::abs(invariant_H(make_w(4))), 0.0, 1e-12);
  for (int j = 1; j <= 4; ++j)
    sink.check("W4 residue R^(" + std::to_string(j) + ") = 0 (saturation)",
               ckw_residue(make_w(4), j), 0.0, 1e-9);
  {
    const PureState w3 = make_w(3);
    for (auto [j, k] : {std::pair{1, 2}, {1, 3}, {2, 3}})
      sink.check("W3 two-tangle (" + std::to_string(j) + std::to_string(k) + ") = 4/9",
                 two_tangle(w3, j, k), 4.0 / 9.0, 1e-12);
  }

  // --- Psi_p closed forms ----------------------------------------------
  const double p_c = 7.0 - std::sqrt(45.0);
  for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const PureState psi = make_psi_p(p);
    const std::string tag = " [Psi_p, p=" + std::to_string(p).substr(0, 3) + "]";
    sink.check("tau1^(1) = 4p(1-p)" + tag, one_tangle(psi, 1), 4.0 * p * (1.0 - p),
               1e-10);
    for (int j = 2; j <= 4; ++j)
      sink.check("tau1^(" + std::to_string(j) + ") = (2+p)(4-p)/9" + tag,
                 one_tangle(psi, j), (2.0 + p) * (4.0 - p) / 9.0, 1e-10);
    for (int k = 2; k <= 4; ++k)
      sink.check("tau2^(1" + std::to_string(k) + ") = 0" + tag, two_tangle(psi, 1, k),
                 0.0, 1e-10);
    sink.check("F1^(2/3) = 4 (2/3)^(1/3) p(1-p)" + tag,
               invariant_F1(psi).degree4_normalized(),
               4.0 * std::cbrt(2.0 / 3.0) * p * (1.0 - p), 1e-9);
    if (p > p_c)
      sink.check("tau2^(23) = 0 for p >= p_c" + tag, two_tangle(psi, 2, 3), 0.0, 1e-10);
  }
  sink.check_greater("tau2^(23) > 0 below p_c [Psi_p, p=0.25]",
                     two_tangle(make_psi_p(0.25), 2, 3), 1e-4);
  for (double p : {0.1, 0.4, 0.6}) {
    const PureState psi = make_psi_p(p);
    const std::string tag = " [Psi_p, p=" + std::to_string(p).substr(0, 3) + "]";
    RoofProblem prob;
    prob.rho = partial_trace(psi, QubitSubset{{2, 3, 4}});
    sink.check("roof tau3^(234) = 0 for p <= p0" + tag,
               roof_tau3(prob, seed, restarts).value, 0.0, 1e-4);
  }
  {
    auto roofs = roof_three_tangles_all(make_psi_p(0.2), seed, restarts);
    for (const auto& t : {std::array{1, 2, 3}, {1, 2, 4}, {1, 3, 4}})
      sink.check("roof tau3 = 0 on triples with qubit 1 [Psi_p, p=0.2]",
                 roofs.at(t).value, 0.0, 1e-4);
    RoofProblem prob;
    prob.rho = partial_trace(make_psi_p(0.8), QubitSubset{{2, 3, 4}});
    sink.check_greater("roof tau3^(234) > 0 above p0 [Psi_p, p=0.8]",
                       roof_tau3(prob, seed, restarts).value, 0.05);
  }

  // --- Psi_p no-go -----------------------------------------------------
  // The per-qubit candidates coincide accidentally at p = 0.4, where
  // 4p(1-p) = (2+p)(4-p)/9; the mismatch is generic elsewhere in (p_c, p0).
  {
    const MonogamyReport rep = analyze(make_psi_p(0.5), seed, restarts);
    sink.check("tau4;1 = 4p(1-p) [Psi_p, p=0.5]", rep.per_qubit.at(1).tau4_candidate,
               1.0, 1e-3);
    sink.check("tau4;2 = (2+p)(4-p)/9 [Psi_p, p=0.5]",
               rep.per_qubit.at(2).tau4_candidate, 2.5 * 3.5 / 9.0, 1e-3);
    sink.check_greater("no-go: |tau4;1 - tau4;2| > 0.01 [Psi_p, p=0.5]",
                       std::abs(rep.per_qubit.at(1).tau4_candidate -
                                rep.per_qubit.at(2).tau4_candidate),
                       0.01);
    sink.check("no-go: consistency flag false [Psi_p, p=0.5]",
               rep.consistent ? 1.0 : 0.0, 0.0, 0.5);
  }
  {
    // not even on average: mean(tau4;j) / F1^(2/3) is p-dependent
    double ratio_min = 1e300, ratio_max = -1e300;
    for (double p : {0.1, 0.4, 0.8}) {
      const PureState psi = make_psi_p(p);
      const double ratio = average_residue(psi, seed, restarts) /
                           invariant_F1(psi).degree4_normalized();
      ratio_min = std::min(ratio_min, ratio);
      ratio_max = std::max(ratio_max, ratio);
    }
    sink.check_greater("no p-independent scaling s on average [Psi_p]",
                       ratio_max - ratio_min, 1e-2);
  }

  // --- chi1 ------------------------------------------------------------
  {
    const PureState chi1 = make_chi1();
    sink.check("chi1 tau1^(1) = 3/4", one_tangle(chi1, 1), 0.75, 1e-10);
    for (int j = 2; j <= 4; ++j)
      sink.check("chi1 tau1^(" + std::to_string(j) + ") = 1", one_tangle(chi1, j), 1.0,
                 1e-10);
    for (int j = 1; j <= 4; ++j)
      for (int k = j + 1; k <= 4; ++k)
        sink.check("chi1 two-tangles vanish", two_tangle(chi1, j, k), 0.0, 1e-10);
    for (const auto& inv : invariant_registry())
      if (inv.arity == 4)
        sink.check("chi1: invariant " + inv.name + " vanishes",
                   inv.eval(chi1).modulus, 0.0, 1e-10);
    const MonogamyReport rep = analyze(chi1, seed, restarts);
    sink.check("chi1 roof tau3^(123) = 1/4", rep.roofs.at({1, 2, 3}).value, 0.25, 1e-4);
    sink.check("chi1 roof tau3^(124) = 1/4", rep.roofs.at({1, 2, 4}).value, 0.25, 1e-4);
    sink.check("chi1 roof tau3^(134) = 1/4", rep.roofs.at({1, 3, 4}).value, 0.25, 1e-4);
    sink.check("chi1 roof tau3^(234) = 0", rep.roofs.at({2, 3, 4}).value, 0.0, 1e-4);
    sink.check("chi1 tau4;1 = 0", rep.per_qubit.at(1).tau4_candidate, 0.0, 1e-3);
    for (int j = 2; j <= 4; ++j)
      sink.check("chi1 mismatch of 1/2 on qubit " + std::to_string(j),
                 rep.per_qubit.at(j).tau4_candidate, 0.5, 1e-3);
    sink.check("chi1 consistency flag false", rep.consistent ? 1.0 : 0.0, 0.0, 0.5);
    // characteristic curve of the GHZ/product rank-2 family is p^2
    Vector ghz_part = Vector::Zero(8), prod_part = Vector::Zero(8);
    ghz_part[0] = ghz_part[7] = 1.0;
    prod_part[5] = prod_part[6] = 1.0;
    const auto curve = characteristic_curve(normalize(ghz_part), normalize(prod_part), 101);
    double max_gap = 0.0;
    for (const auto& [p, v] : curve) max_gap = std::max(max_gap, std::abs(v - p * p));
    sink.check("chi1 characteristic curve equals p^2", max_gap, 0.0, 1e-6);
  }

  // --- chi2 ------------------------------------------------------------
  {
    std::mt19937_64 rng(seed + 17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 2; ++trial) {
      Complex a(gauss(rng), gauss(rng)), b(gauss(rng), gauss(rng)),
          c(gauss(rng), gauss(rng)), d(gauss(rng), gauss(rng));
      const double nn =
          std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
      a /= nn; b /= nn; c /= nn; d /= nn;
      const PureState chi2 = make_chi2(a, b, c, d);
      const std::string tag = " [chi2 #" + std::to_string(trial) + "]";
      sink.check("chi2 tau2^(23) = 4|dc|^2" + tag, two_tangle(chi2, 2, 3),
                 4.0 * std::norm(d * c), 1e-10);
      sink.check("chi2 tau2^(24) = 4|ab|^2" + tag, two_tangle(chi2, 2, 4),
                 4.0 * std::norm(a * b), 1e-10);
      sink.check("chi2 tau1^(1) closed form" + tag, one_tangle(chi2, 1),
                 4.0 * (std::norm(b * c) + std::norm(d) * (std::norm(a) + std::norm(b))),
                 1e-10);
      sink.check("chi2 tau1^(2) closed form" + tag, one_tangle(chi2, 2),
                 4.0 * (std::norm(a) + std::norm(c)) * (std::norm(b) + std::norm(d)),
                 1e-10);
      sink.check("chi2 tau1^(3) closed form" + tag, one_tangle(chi2, 3),
                 4.0 * std::norm(d) * (1.0 - std::norm(d)), 1e-10);
      sink.check("chi2 tau1^(4) closed form" + tag, one_tangle(chi2, 4),
                 4.0 * std::norm(b) * (1.0 - std::norm(b)), 1e-10);
      const MonogamyReport rep = analyze(chi2, seed, restarts);
      sink.check("chi2 roof tau3^(123) = 4|ad|^2" + tag, rep.roofs.at({1, 2, 3}).value,
                 4.0 * std::norm(a * d), 1e-3);
      sink.check("chi2 roof tau3^(124) = 4|bc|^2" + tag, rep.roofs.at({1, 2, 4}).value,
                 4.0 * std::norm(b * c), 1e-3);
      sink.check("chi2 roof tau3^(134) = 4|bd|^2" + tag, rep.roofs.at({1, 3, 4}).value,
                 4.0 * std::norm(b * d), 1e-3);
      sink.check("chi2 roof tau3^(234) = 0" + tag, rep.roofs.at({2, 3, 4}).value, 0.0,
                 1e-3);
      for (int j = 1; j <= 4; ++j)
        sink.check("chi2 monogamy fulfilled: tau4;" + std::to_string(j) + " = 0" + tag,
                   rep.per_qubit.at(j).tau4_candidate, 0.0, 1e-3);
    }
  }

  // --- invariant algebra -----------------------------------------------
  {
    double worst_pair = 0.0, worst_sum = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const PureState psi = random_pure_state(4, seed + 1000 + trial);
      const Complex c14 = invariant_C4(psi, 1, 4).raw;
      const Complex c24 = invariant_C4(psi, 2, 4).raw;
      const Complex c34 = invariant_C4(psi, 3, 4).raw;
      worst_pair = std::max({worst_pair,
                             std::abs(c14 - invariant_C4(psi, 2, 3).raw),
                             std::abs(invariant_C4(psi, 1, 3).raw - c24),
                             std::abs(invariant_C4(psi, 1, 2).raw - c34)});
      const Complex h = invariant_H(psi);
      worst_sum = std::max(worst_sum, std::abs(c14 + c24 + c34 - 12.0 * h * h));
    }
    sink.check("C4 pair identities on 100 random states", worst_pair, 0.0, 1e-9);
    sink.check("C4 sum rule = 12 H^2 on 100 random states", worst_sum, 0.0, 1e-9);
  }

  // --- telescope states --------------------------------------------------
  {
    const PureState tel = make_psi_tel(1.0, 1.0, 1.0);
    const MonogamyReport rep = analyze(tel, seed, restarts);
    sink.check("Psi_tel satisfies monogamy with a single four-tangle",
               rep.consistent ? 1.0 : 0.0, 1.0, 0.5);
    for (int s = 0; s < 5; ++s) {
      const auto check = telescope_check(random_pure_state(3, seed + 2000 + s),
                                         seed, restarts);
      sink.check("telescope identities, random reference #" + std::to_string(s),
                 check.all_pass ? 1.0 : 0.0, 1.0, 0.5);
    }
    const auto w_check = telescope_check(make_w(3), seed, restarts);
    double worst = 0.0;
    for (const auto& [name, v] : analyze(w_check.telescoped, seed, restarts)
                                     .tau4_from_invariants)
      worst = std::max(worst, v);
    sink.check("tangle-free reference gives tangle-free telescope state", worst, 0.0,
               1e-10);
  }

  // --- cluster states ----------------------------------------------------
  // The nonzero reductions as constructed are the (134) and (234) triples,
  // and the common four-tangle is 16|abcd| = tau3 of the reference state;
  // it matches the degree-4 values of F2 (up to 1/sqrt(3)) and F3.
  {
    std::mt19937_64 rng(seed + 31);
    std::uniform_real_distribution<double> uni(0.05, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
      double a = uni(rng), b = uni(rng), c = uni(rng), d = uni(rng);
      const double nn = std::sqrt(a * a + b * b + c * c + d * d);
      a /= nn; b /= nn; c /= nn; d /= nn;
      const PureState cl = make_cluster(a, b, c, d);
      const std::string tag = " [cluster #" + std::to_string(trial) + "]";
      const MonogamyReport rep = analyze(cl, seed, restarts);
      sink.check("cluster roof tau3 = 4|ad-bc|^2 on the (134) triple" + tag,
                 rep.roofs.at({1, 3, 4}).value, 4.0 * std::norm(a * d - b * c), 1e-3);
      sink.check("cluster roof tau3 = 4|ab-cd|^2 on the (234) triple" + tag,
                 rep.roofs.at({2, 3, 4}).value, 4.0 * std::norm(a * b - c * d), 1e-3);
      for (int j = 1; j <= 4; ++j)
        sink.check("cluster tau4;" + std::to_string(j) + " = 16|abcd|" + tag,
                   rep.per_qubit.at(j).tau4_candidate, 16.0 * std::abs(a * b * c * d),
                   1e-3);
      sink.check("cluster F2^(1/2) = 16|abcd|/sqrt(3)" + tag,
                 invariant_F2(cl).degree4_normalized(),
                 16.0 * std::abs(a * b * c * d) / std::sqrt(3.0), 1e-8);
      sink.check("cluster F3^(1/3) = 16|abcd|" + tag,
                 invariant_F3(cl).degree4_normalized(),
                 16.0 * std::abs(a * b * c * d), 1e-8);
    }
  }

  // --- product states ------------------------------------------------------
  {
    double worst = 0.0;
    for (int s = 0; s < 5; ++s) {
      const PureState prod = tensor(random_pure_state(2, seed + 300 + s),
                                    random_pure_state(2, seed + 400 + s));
      for (const auto& inv : invariant_registry())
        if (inv.arity == 4)
          worst = std::max(worst, inv.eval(prod).degree4_normalized());
    }
    sink.check("all four-tangles vanish on product states", worst, 0.0, 1e-10);
  }

  return results;
}

inline int print_check_table(const std::vector<CheckResult>& results, FILE* out) {
  int failures = 0;
  std::fprintf(out, "%-62s %14s %14s %10s %s\n", "claim", "expected", "computed",
               "tolerance", "status");
  for (const auto& r : results) {
    if (!r.pass) ++failures;
    std::fprintf(out, "%-62s %14.6g %14.6g %10.2g %s\n", r.claim.c_str(), r.expected,
                 r.computed, r.tolerance, r.pass ? "pass" : "FAIL");
  }
  std::fprintf(out, "%zu checks, %d failures\n", results.size(), failures);
  return failures;
}

}  // namespace qtangle
