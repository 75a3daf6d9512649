#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "catalysis/channels.hpp"
#include "catalysis/error.hpp"
#include "catalysis/fock.hpp"
#include "oracles.hpp"

using namespace catalysis;

namespace {

DensityMatrix projector(int n, int dim) { return DensityMatrix::pure(fock_state(n, dim)); }

}  // namespace

TEST_CASE("fock_state basis vectors and bounds") {
  const auto zero = fock_state(0, 4);
  CHECK(zero.dim() == 4);
  CHECK(zero[0] == Complex(1.0));
  for (int k = 1; k < 4; ++k) CHECK(std::abs(zero[k]) == 0.0);

  const auto one = fock_state(1, 4);
  CHECK(one[1] == Complex(1.0));
  CHECK(std::abs(one[0]) == 0.0);

  CHECK_THROWS_AS(fock_state(4, 4), OutOfRangeError);
  CHECK_THROWS_AS(fock_state(-1, 4), OutOfRangeError);
}

TEST_CASE("coherent_state amplitudes") {
  SUBCASE("zero amplitude is vacuum") {
    const auto v = coherent_state(0.0, 5);
    CHECK(std::abs(v[0] - 1.0) < 1e-15);
    for (int k = 1; k < 5; ++k) CHECK(std::abs(v[k]) == 0.0);
  }
  SUBCASE("alpha = 0.3 against the series") {
    const auto c = coherent_state(0.3, 10);
    const double c0 = std::exp(-0.045);
    CHECK(c[0].real() == doctest::Approx(c0).epsilon(1e-10));
    CHECK(c[1].real() == doctest::Approx(0.3 * c0).epsilon(1e-10));
    CHECK(c[0].real() == doctest::Approx(0.9560).epsilon(1e-4));
    CHECK(c[1].real() == doctest::Approx(0.2868).epsilon(2e-4));
    CHECK(std::abs(c[1] / c[0] - 0.3) < 1e-12);
    CHECK(std::abs(c.norm() - 1.0) < 1e-10);
    const auto stats = diagnostics(DensityMatrix::pure(c));
    CHECK(stats.mean_photon_number == doctest::Approx(0.09).epsilon(1e-9));
    CHECK(!c.tail_warning());
  }
  SUBCASE("recursion ratio before renormalization") {
    for (Complex alpha : {Complex(0.3, 0.0), Complex(0.4, -0.7), Complex(-1.1, 0.2)}) {
      const auto raw = coherent_amplitudes(alpha, 15);
      for (int n = 0; n + 1 < 15; ++n) {
        const Complex ratio = raw(n + 1) / raw(n);
        CHECK(std::abs(ratio - alpha / std::sqrt(n + 1.0)) < 1e-12);
      }
    }
  }
  SUBCASE("tail warning for a large amplitude") { CHECK(coherent_state(2.5, 6).tail_warning()); }
}

TEST_CASE("mixed_single_photon") {
  const auto one = mixed_single_photon(1.0, 3);
  CHECK(max_element_deviation(one.elements(), projector(1, 3).elements()) < 1e-15);
  const auto zero = mixed_single_photon(0.0, 3);
  CHECK(max_element_deviation(zero.elements(), projector(0, 3).elements()) < 1e-15);
  const auto rho = mixed_single_photon(0.69, 3);
  CHECK(rho(0, 0).real() == doctest::Approx(0.31));
  CHECK(rho(1, 1).real() == doctest::Approx(0.69));
  CHECK(std::abs(rho(2, 2)) == 0.0);
  CHECK_THROWS_AS(mixed_single_photon(1.2, 3), DomainError);
  CHECK_THROWS_AS(mixed_single_photon(-0.1, 3), DomainError);
}

TEST_CASE("displacement_operator") {
  SUBCASE("identity at zero") {
    const auto d = displacement_operator(0.0, 8);
    CHECK(max_element_deviation(d.matrix, CMatrix::Identity(8, 8)) < 1e-15);
    CHECK(d.kind == OperatorKind::Displacement);
  }
  SUBCASE("displaced vacuum is coherent") {
    const auto d = displacement_operator(0.2, 15);
    const FockKet moved(d.matrix * fock_state(0, 15).amplitudes());
    const auto target = coherent_state(0.2, 15);
    const double overlap = std::norm(target.amplitudes().dot(moved.amplitudes()));
    CHECK(overlap >= 1.0 - 1e-8);
  }
  SUBCASE("inverse pair is the identity") {
    for (Complex beta : {Complex(0.1, 0.0), Complex(0.5, 0.5), Complex(0.0, -1.0), Complex(0.6, -0.8)}) {
      const auto plus = displacement_operator(beta, 15);
      const auto minus = displacement_operator(-beta, 15);
      CHECK(max_element_deviation(plus.matrix * minus.matrix, CMatrix::Identity(15, 15)) < 1e-8);
      CHECK(!plus.warning);
    }
  }
  SUBCASE("large displacement warns") { CHECK(displacement_operator(2.0, 10).warning); }
}

TEST_CASE("fidelity against a ket") {
  CHECK(fidelity(projector(1, 4), fock_state(1, 4)) == doctest::Approx(1.0));
  CHECK(fidelity(projector(1, 4), fock_state(0, 4)) == doctest::Approx(0.0));
  CHECK(fidelity(mixed_single_photon(0.69, 4), fock_state(1, 4)) == doctest::Approx(0.69));
  CHECK_THROWS_AS(fidelity(projector(1, 4), fock_state(1, 5)), DimensionMismatch);

  const auto b = coherent_state(Complex(0.3, 0.2), 12);
  const auto c = coherent_state(Complex(-0.1, 0.4), 12);
  const double overlap = std::norm(b.amplitudes().dot(c.amplitudes()));
  CHECK(fidelity(DensityMatrix::pure(b), c) == doctest::Approx(overlap).epsilon(1e-12));
  CHECK(uhlmann_fidelity(DensityMatrix::pure(b), DensityMatrix::pure(c)) ==
        doctest::Approx(overlap).epsilon(1e-9));
}

TEST_CASE("diagnostics") {
  const auto vac = diagnostics(projector(0, 4));
  CHECK(vac.mean_photon_number == 0.0);
  CHECK(!vac.mandel_q.has_value());

  const auto one = diagnostics(projector(1, 4));
  CHECK(one.mean_photon_number == doctest::Approx(1.0));
  REQUIRE(one.mandel_q.has_value());
  CHECK(*one.mandel_q == doctest::Approx(-1.0));

  const auto kitten = diagnostics(DensityMatrix::pure(kitten_state(0.3, 0.3, 4)));
  CHECK(kitten.mean_photon_number == doctest::Approx(0.5));
  REQUIRE(kitten.mandel_q.has_value());
  CHECK(*kitten.mandel_q == doctest::Approx(-0.5));
  CHECK(kitten.distribution[0] == doctest::Approx(0.5));

  const auto coh = diagnostics(DensityMatrix::pure(coherent_state(0.5, 20)));
  REQUIRE(coh.mandel_q.has_value());
  CHECK(std::abs(*coh.mandel_q) < 1e-9);
}

TEST_CASE("density matrix validation") {
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 0) = 0.5;
  CHECK_THROWS_AS(DensityMatrix{bad}, NumericalError);
  bad(1, 1) = 0.5;
  bad(0, 1) = Complex(0.1, 0.0);
  CHECK_THROWS_AS(DensityMatrix{bad}, NumericalError);
  bad(1, 0) = Complex(0.1, 0.0);
  CHECK_NOTHROW(DensityMatrix{bad});
  bad(0, 1) = bad(1, 0) = 0.9;
  CHECK_THROWS_AS(DensityMatrix{bad}, NumericalError);
}

TEST_CASE("nearest_psd projects onto the state space") {
  CMatrix raw = CMatrix::Zero(3, 3);
  raw(0, 0) = 0.7;
  raw(1, 1) = 0.4;
  raw(2, 2) = -0.1;
  raw(0, 1) = raw(1, 0) = 0.2;
  const auto psd = nearest_psd(raw);
  CHECK(psd.trace() == doctest::Approx(1.0));
  CHECK(psd.min_eigenvalue() > -1e-12);
}

TEST_CASE("trace distance extremes") {
  CHECK(trace_distance(projector(0, 3), projector(1, 3)) == doctest::Approx(1.0));
  CHECK(trace_distance(projector(2, 3), projector(2, 3)) == doctest::Approx(0.0));
  CHECK(trace_distance(mixed_single_photon(0.3, 3), mixed_single_photon(0.8, 3)) ==
        doctest::Approx(0.5));
}

TEST_CASE("phase rotation multiplies coherences") {
  const auto rho = DensityMatrix::pure(coherent_state(0.4, 8));
  const auto turned = phase_rotated(rho, 0.7);
  const auto expected = DensityMatrix::pure(coherent_state(std::polar(0.4, 0.7), 8));
  CHECK(max_element_deviation(turned.elements(), expected.elements()) < 1e-12);
}
