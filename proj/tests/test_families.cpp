#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qtangle/convex_roof.hpp"
#include "qtangle/families.hpp"
#include "qtangle/tangles.hpp"

using namespace qtangle;
using Catch::Approx;

TEST_CASE("psi_p endpoints and validation") {
  const PureState ghz_like = make_psi_p(1.0);
  REQUIRE(std::abs(ghz_like.amplitudes[0b1111]) == Approx(1.0 / std::sqrt(2.0)));
  REQUIRE(std::abs(ghz_like.amplitudes[0b1000]) == Approx(1.0 / std::sqrt(2.0)));
  const PureState w_like = make_psi_p(0.0);
  REQUIRE(std::abs(w_like.amplitudes[0b0100]) == Approx(1.0 / std::sqrt(3.0)));
  REQUIRE(one_tangle(w_like, 1) == Approx(0.0).margin(1e-14));
  REQUIRE_THROWS_AS(make_psi_p(-0.1), BadParam);
  REQUIRE_THROWS_AS(make_psi_p(1.1), BadParam);
}

TEST_CASE("telescoping doubles the chosen qubit in the computational basis") {
  // GHZ3 telescoped at any qubit is GHZ4
  for (int d = 1; d <= 3; ++d) {
    const PureState t = make_telescope(make_ghz(3), d);
    REQUIRE(t.n_qubits == 4);
    REQUIRE((t.amplitudes - make_ghz(4).amplitudes).norm() < 1e-14);
  }
  REQUIRE_THROWS_AS(make_telescope(make_ghz(3), 0), BadIndex);
  REQUIRE_THROWS_AS(make_telescope(make_ghz(3), 4), BadIndex);
  REQUIRE_THROWS_AS(make_telescope(random_pure_state(1, 1), 1), BadArity);
}

TEST_CASE("telescoped reference reproduces the explicit three-parameter family") {
  // alpha|111> + beta|100> + gamma|011>, qubit 3 doubled, gives
  // alpha|1111> + beta|1000> + gamma|0110>
  const Complex alpha(0.3, 0.1), beta(-0.5, 0.2), gamma(0.7, 0.0);
  Vector raw = Vector::Zero(8);
  raw[0b111] = alpha;
  raw[0b100] = beta;
  raw[0b011] = gamma;
  const PureState tel = make_telescope(normalize(raw), 3);
  REQUIRE((tel.amplitudes - make_psi_tel(alpha, beta, gamma).amplitudes).norm() < 1e-14);
}

TEST_CASE("telescope marginal identity: tracing the new qubit classicalizes") {
  // rho_{1..n} of T_M equals M's density with the doubled qubit decohered
  for (std::uint64_t seed : {1, 2, 3}) {
    const PureState ref = random_pure_state(3, seed);
    const PureState tel = make_telescope(ref, 3);
    const DensityMatrix traced = partial_trace(tel, QubitSubset{{1, 2, 3}});
    CMatrix expected = density(ref).entries;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        if ((i & 1) != (j & 1)) expected(i, j) = 0.0;  // qubit-3 off-diagonals die
    REQUIRE((traced.entries - expected).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("post-unitary on the new qubit") {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const PureState tel = make_telescope(make_ghz(2), 2, h);
  // (|000> + |011>)/sqrt(2) -> (|00+> + |11->)/sqrt(2)
  REQUIRE(tel.amplitudes[0b000].real() == Approx(0.5));
  REQUIRE(tel.amplitudes[0b001].real() == Approx(0.5));
  REQUIRE(tel.amplitudes[0b110].real() == Approx(0.5));
  REQUIRE(tel.amplitudes[0b111].real() == Approx(-0.5));
}

TEST_CASE("telescoping and qubit permutation do not commute in general") {
  const PureState ref = random_pure_state(3, 9);
  const PureState a = make_telescope(permute_qubits(ref, {3, 2, 1}), 3);
  const PureState b = permute_qubits(make_telescope(ref, 3), {3, 2, 1, 4});
  // identical only for permutation-symmetric references
  REQUIRE((a.amplitudes - b.amplitudes).norm() > 1e-3);
}

TEST_CASE("telescoped product states stay product across the same cut") {
  const PureState ref = tensor(random_pure_state(1, 5), random_pure_state(2, 6));
  const PureState tel = make_telescope(ref, 2);
  REQUIRE(one_tangle(tel, 1) == Approx(0.0).margin(1e-12));
}

TEST_CASE("lifting: two-tangles of the reference become roofs of the telescope") {
  for (std::uint64_t seed : {21, 22, 23, 24}) {
    const PureState ref = random_pure_state(3, seed);
    const PureState tel = make_telescope(ref, 3);
    RoofProblem p234;
    p234.rho = partial_trace(tel, QubitSubset{{2, 3, 4}});
    REQUIRE(roof_tau3(p234, 0, 64).value ==
            Approx(two_tangle(ref, 2, 3)).margin(1e-4));
    RoofProblem p134;
    p134.rho = partial_trace(tel, QubitSubset{{1, 3, 4}});
    REQUIRE(roof_tau3(p134, 0, 64).value ==
            Approx(two_tangle(ref, 1, 3)).margin(1e-4));
  }
}

TEST_CASE("cluster family amplitudes and signs") {
  const PureState cl = make_cluster(0.5, 0.5, 0.5, 0.5);
  REQUIRE(cl.amplitudes[0b0000].real() == Approx(0.5));
  REQUIRE(cl.amplitudes[0b0111].real() == Approx(-0.5));
  REQUIRE(cl.amplitudes[0b1100].real() == Approx(-0.5));
  REQUIRE(cl.amplitudes[0b1011].real() == Approx(0.5));
  // qubit 4 duplicates qubit 3 on every basis ket, so the cluster family is
  // a telescope state of a|000> - b|011> - c|110> + d|101>
  for (Eigen::Index i = 0; i < 16; ++i)
    if (std::abs(cl.amplitudes[i]) > 0.0) REQUIRE(((i >> 1) & 1) == (i & 1));
}

TEST_CASE("chi1 is symmetric under permutations of qubits 2..4") {
  const PureState chi1 = make_chi1();
  const PureState p = permute_qubits(chi1, {1, 3, 4, 2});
  REQUIRE((chi1.amplitudes - p.amplitudes).norm() < 1e-14);
}

TEST_CASE("ghz / w / product constructors") {
  REQUIRE(make_ghz(2).dim() == 4);
  REQUIRE(make_w(5).amplitudes.cwiseAbs().maxCoeff() == Approx(1.0 / std::sqrt(5.0)));
  REQUIRE_THROWS_AS(make_ghz(1), BadParam);
  REQUIRE_THROWS_AS(make_ghz(7), BadParam);
  REQUIRE_THROWS_AS(make_w(1), BadParam);
  const PureState prod = make_product(4, 7);
  for (int j = 1; j <= 4; ++j)
    REQUIRE(one_tangle(prod, j) == Approx(0.0).margin(1e-12));
  REQUIRE((make_product(3, 5).amplitudes - make_product(3, 5).amplitudes).norm() == 0.0);
}

TEST_CASE("family spec parsing") {
  const FamilySpec spec = FamilySpec::parse("psi_p:p=0.35");
  REQUIRE(spec.name == "psi_p");
  REQUIRE(spec.get_real("p") == Approx(0.35));
  REQUIRE((spec.build().amplitudes - make_psi_p(0.35).amplitudes).norm() < 1e-14);

  const FamilySpec cx = FamilySpec::parse("chi2:a=0.5+0.1j,b=0.5,c=-0.5,d=0.1-0.2j");
  REQUIRE(cx.get("a") == Complex(0.5, 0.1));
  REQUIRE(cx.get("d") == Complex(0.1, -0.2));
  REQUIRE_NOTHROW(cx.build());

  REQUIRE(FamilySpec::parse_complex("1j") == Complex(0.0, 1.0));
  REQUIRE(FamilySpec::parse_complex("-2.5") == Complex(-2.5, 0.0));
  REQUIRE(FamilySpec::parse_complex("1e-3+2e-4j") == Complex(1e-3, 2e-4));

  REQUIRE_THROWS_AS(FamilySpec::parse("psi_p:p").build(), BadParam);
  REQUIRE_THROWS_AS(FamilySpec::parse("psi_p:p=abc"), BadParam);
  REQUIRE_THROWS_AS(FamilySpec::parse("nope:x=1").build(), BadParam);
  REQUIRE_THROWS_AS(FamilySpec::parse("cluster:a=1").build(), BadParam);
}
