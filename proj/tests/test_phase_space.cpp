#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "catalysis/channels.hpp"
#include "catalysis/error.hpp"
#include "catalysis/phase_space.hpp"
#include "oracles.hpp"

using namespace catalysis;

namespace {

DensityMatrix projector(int n, int dim) { return DensityMatrix::pure(fock_state(n, dim)); }

DensityMatrix pipeline_state() {
  ExperimentParams p;
  return catalysis_pipeline(p, 10).rho_at_detector;
}

// A generic mixed state with coherences of every order up to n = 3.
DensityMatrix scrambled_state() {
  CMatrix m = CMatrix::Zero(6, 6);
  m.topLeftCorner(4, 4) = CMatrix::Random(4, 4);
  CMatrix rho = m * m.adjoint();
  return DensityMatrix(rho / rho.trace());
}

std::pair<double, double> moments(const QuadraturePdf& pdf) {
  Eigen::VectorXd x(pdf.x_axis.points), x2(pdf.x_axis.points);
  for (int i = 0; i < pdf.x_axis.points; ++i) {
    x(i) = pdf.x_axis[i] * pdf.density(i);
    x2(i) = pdf.x_axis[i] * pdf.x_axis[i] * pdf.density(i);
  }
  const double mean = trapezoid(x, pdf.x_axis.step());
  return {mean, trapezoid(x2, pdf.x_axis.step()) - mean * mean};
}

}  // namespace

TEST_CASE("hermite functions") {
  for (double x : {-3.1, -0.4, 0.0, 0.7, 2.5}) {
    const auto psi = hermite_functions(x, 11);
    for (int n = 0; n <= 10; ++n) CHECK(psi(n) == doctest::Approx(oracle::hermite_function(n, x)).epsilon(1e-10));
  }
  // Normalization far beyond where factorial forms overflow.
  const int n = 40;
  const double integral = oracle::simpson(
      [&](double x) {
        const double v = hermite_functions(x, n + 1)(n);
        return v * v;
      },
      -14.0, 14.0, 8000);
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("hermite function derivatives") {
  const double h = 1e-5;
  for (double x : {-1.3, 0.2, 1.9}) {
    const auto d = hermite_function_derivatives(x, 8);
    const auto hi = hermite_functions(x + h, 8), lo = hermite_functions(x - h, 8);
    for (int n = 0; n < 8; ++n) CHECK(d(n) == doctest::Approx((hi(n) - lo(n)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("wigner extrema") {
  CHECK(wigner_at(projector(0, 4), 0.0, 0.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-12));
  CHECK(wigner_at(projector(1, 4), 0.0, 0.0) == doctest::Approx(-1.0 / M_PI).epsilon(1e-12));
  CHECK(wigner_at(projector(2, 4), 0.0, 0.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-12));
  // Vacuum Gaussian with variance 1/2 per quadrature.
  CHECK(wigner_at(projector(0, 4), 0.8, -0.3) ==
        doctest::Approx(std::exp(-(0.64 + 0.09)) / M_PI).epsilon(1e-12));
}

TEST_CASE("displacement covariance of the Wigner function") {
  const int dim = 25;
  const Complex beta(0.5, 0.3);
  const CVector ket = displacement_operator(beta, dim).matrix * fock_state(1, dim).amplitudes();
  const auto displaced = DensityMatrix::pure(FockKet(ket / ket.norm()));
  const auto one = projector(1, dim);
  const double dx = std::sqrt(2.0) * beta.real(), dp = std::sqrt(2.0) * beta.imag();
  double worst = 0.0;
  for (double x = -3.0; x <= 3.0; x += 0.25)
    for (double p = -3.0; p <= 3.0; p += 0.25)
      worst = std::max(worst, std::abs(wigner_at(displaced, x, p) - wigner_at(one, x - dx, p - dp)));
  CHECK(worst < 1e-8);
}

TEST_CASE("wigner grid normalization and marginal") {
  for (const auto& rho : {projector(0, 6), projector(1, 6), pipeline_state(), scrambled_state()}) {
    const auto grid = wigner_from_density(rho);
    CHECK(std::abs(grid.norm_estimate - 1.0) < 1e-3);
  }
  CHECK(!wigner_from_density(pipeline_state()).support_warning);
  const auto rho = pipeline_state();
  GridSpec spec{{-4.0, 4.0, 81}, {-7.0, 7.0, 561}};
  const auto grid = wigner_from_density(rho, spec);
  const auto pdf = quadrature_pdf(rho, 0.0, spec.x);
  for (int i = 0; i < spec.x.points; ++i) {
    const Eigen::VectorXd row = grid.values.row(i).transpose();
    CHECK(std::abs(trapezoid(row, spec.p.step()) - pdf.density(i)) < 1e-4);
  }
}

TEST_CASE("small grid warns about support") {
  GridSpec tiny{{-1.0, 1.0, 21}, {-1.0, 1.0, 21}};
  CHECK(wigner_from_density(DensityMatrix::pure(coherent_state(1.0, 12)), tiny).support_warning);
}

TEST_CASE("quadrature pdf moments") {
  const auto vac = quadrature_pdf(projector(0, 4), 1.1);
  auto [m0, v0] = moments(vac);
  CHECK(std::abs(m0) < 1e-10);
  CHECK(v0 == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(vac.integral == doctest::Approx(1.0).epsilon(1e-6));

  const auto coh = quadrature_pdf(DensityMatrix::pure(coherent_state(0.4, 15)), 0.0);
  auto [m1, v1] = moments(coh);
  CHECK(m1 == doctest::Approx(std::sqrt(2.0) * 0.4).epsilon(1e-8));
  CHECK(v1 == doctest::Approx(0.5).epsilon(1e-8));

  const Complex beta(0.3, -0.5);
  for (double theta : {0.4, 2.0, 4.5}) {
    auto [m, v] = moments(quadrature_pdf(DensityMatrix::pure(coherent_state(beta, 15)), theta));
    CHECK(m == doctest::Approx(std::sqrt(2.0) * (beta * std::polar(1.0, -theta)).real()).epsilon(1e-8));
  }
  const auto pdf = quadrature_pdf(pipeline_state(), 0.3);
  CHECK(pdf.cumulative(pdf.cumulative.size() - 1) == doctest::Approx(1.0));
  for (int i = 1; i < pdf.cumulative.size(); ++i) CHECK(pdf.cumulative(i) >= pdf.cumulative(i - 1));
}

TEST_CASE("quadrature pdf is the Radon transform of the Wigner function") {
  const Axis xs{-3.0, 3.0, 25};
  for (const auto& rho : {pipeline_state(), scrambled_state(), projector(1, 4)})
    for (double theta : {0.0, 0.6, 1.9, 3.7}) {
      const auto pdf = quadrature_pdf(rho, theta, xs);
      for (int i = 0; i < xs.points; ++i) {
        const double x = xs[i];
        const double line = oracle::simpson(
            [&](double s) {
              return wigner_at(rho, x * std::cos(theta) - s * std::sin(theta),
                               x * std::sin(theta) + s * std::cos(theta));
            },
            -8.0, 8.0, 400);
        CHECK(std::abs(line - pdf.density(i)) < 1e-4);
      }
    }
}

TEST_CASE("phase covariance") {
  const auto rho = scrambled_state();
  const double delta = 0.8;
  const auto rotated = phase_rotated(rho, delta);
  for (double theta : {0.0, 1.3, 2.9}) {
    const auto a = quadrature_pdf(rotated, theta);
    const auto b = quadrature_pdf(rho, theta - delta);
    CHECK((a.density - b.density).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("negativity of the ideal heralded state") {
  ExperimentParams p;
  p.alpha = 0.05;
  p.bs = BeamsplitterParams(0.05);
  p.eta_spd = p.eta_photon = p.eta_hd = 1.0;
  const auto rho = catalysis_pipeline(p, 8).rho_at_detector;
  CHECK(wigner_from_density(rho).min() < -0.01);
}
