#include "catalysis/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "catalysis/error.hpp"

namespace catalysis {

namespace {

constexpr double kPdfNegativityFloor = -1e-12;

// Generalized Laguerre L_0^a..L_{count-1}^a at u by the three-term recurrence.
void laguerre(int alpha, double u, int count, std::vector<double>& out) {
  out.assign(count, 0.0);
  if (count == 0) return;
  out[0] = 1.0;
  if (count > 1) out[1] = 1.0 + alpha - u;
  for (int k = 1; k + 1 < count; ++k)
    out[k + 1] = ((2.0 * k + 1.0 + alpha - u) * out[k] - (k + alpha) * out[k - 1]) / (k + 1.0);
}

// sum_{m,n} rho_mn W[|m><n|](x, p), with W[|m><n|] for m >= n equal to
// (1/pi) (-1)^n sqrt(n!/m!) (sqrt2 (x - i p))^{m-n} e^{-(x^2+p^2)} L_n^{m-n}(2(x^2+p^2))
// and W[|n><m|] its complex conjugate.
Complex wigner_sum(const CMatrix& rho, double x, double p, std::vector<double>& lag) {
  const int dim = static_cast<int>(rho.rows());
  const double r2 = x * x + p * p;
  const double gauss = std::exp(-r2) / std::numbers::pi;
  const Complex z(std::sqrt(2.0) * x, -std::sqrt(2.0) * p);
  Complex total = 0.0;
  Complex z_pow = 1.0;
  for (int d = 0; d < dim; ++d) {
    laguerre(d, 2.0 * r2, dim - d, lag);
    double ratio = 1.0;  // sqrt(n!/(n+d)!) built incrementally
    for (int k = 1; k <= d; ++k) ratio /= std::sqrt(double(k));
    for (int n = 0; n + d < dim; ++n) {
      if (n > 0) ratio *= std::sqrt(double(n) / double(n + d));
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      const Complex kernel = sign * ratio * z_pow * lag[n] * gauss;
      const int m = n + d;
      total += rho(m, n) * kernel;
      if (d > 0) total += rho(n, m) * std::conj(kernel);
    }
    z_pow *= z;
  }
  return total;
}

}  // namespace

std::vector<double> Axis::values() const {
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) v[i] = (*this)[i];
  return v;
}

Eigen::VectorXd hermite_functions(double x, int count) {
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(count);
  if (count == 0) return psi;
  // Normalized recurrence; no factorials or unscaled Hermite polynomials appear.
  psi(0) = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (count > 1) psi(1) = std::sqrt(2.0) * x * psi(0);
  for (int n = 1; n + 1 < count; ++n)
    psi(n + 1) = std::sqrt(2.0 / (n + 1)) * x * psi(n) - std::sqrt(double(n) / (n + 1)) * psi(n - 1);
  return psi;
}

Eigen::VectorXd hermite_function_derivatives(double x, int count) {
  // psi_n' = sqrt(n/2) psi_{n-1} - sqrt((n+1)/2) psi_{n+1} = x psi_n - sqrt(2(n+1)) psi_{n+1}
  const Eigen::VectorXd ext = hermite_functions(x, count + 1);
  Eigen::VectorXd d(count);
  for (int n = 0; n < count; ++n) d(n) = x * ext(n) - std::sqrt(2.0 * (n + 1)) * ext(n + 1);
  return d;
}

double wigner_at(const DensityMatrix& rho, double x, double p) {
  std::vector<double> lag;
  return wigner_sum(rho.elements(), x, p, lag).real();
}

double trapezoid(const Eigen::VectorXd& values, double step) {
  const auto n = values.size();
  if (n < 2) return 0.0;
  return step * (values.sum() - 0.5 * (values(0) + values(n - 1)));
}

double trapezoid_2d(const Eigen::MatrixXd& values, const Axis& x, const Axis& p) {
  Eigen::VectorXd rows(values.rows());
  for (Eigen::Index i = 0; i < values.rows(); ++i) rows(i) = trapezoid(values.row(i).transpose(), p.step());
  return trapezoid(rows, x.step());
}

WignerGrid wigner_from_density(const DensityMatrix& rho, const GridSpec& grid) {
  if (grid.x.points < 2 || grid.p.points < 2) throw DomainError("Wigner grid needs >= 2 points per axis");
  WignerGrid w{grid.x, grid.p, Eigen::MatrixXd(grid.x.points, grid.p.points)};
  std::vector<double> lag;
  double worst_imag = 0.0;
  for (int i = 0; i < grid.x.points; ++i)
    for (int j = 0; j < grid.p.points; ++j) {
      const Complex v = wigner_sum(rho.elements(), grid.x[i], grid.p[j], lag);
      worst_imag = std::max(worst_imag, std::abs(v.imag()));
      w.values(i, j) = v.real();
    }
  if (worst_imag > 1e-10)
    throw NumericalError("Wigner function has imaginary residue " + std::to_string(worst_imag),
                         "non_hermitian");
  w.norm_estimate = trapezoid_2d(w.values, grid.x, grid.p);
  const double reach = 2.0 * std::sqrt(std::max(diagnostics(rho).mean_photon_number, 0.0)) + 3.0;
  const double cover = std::min({-grid.x.lo, grid.x.hi, -grid.p.lo, grid.p.hi});
  w.support_warning = cover < reach;
  return w;
}

QuadraturePdf quadrature_pdf(const DensityMatrix& rho, double theta, const Axis& x_axis) {
  const int dim = rho.dim();
  QuadraturePdf pdf{theta, x_axis, Eigen::VectorXd(x_axis.points), Eigen::VectorXd(x_axis.points)};
  // Phase-weighted matrix: rho_mn e^{i(n-m) theta}.
  CMatrix weighted(dim, dim);
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < dim; ++n) weighted(m, n) = rho(m, n) * std::polar(1.0, (n - m) * theta);
  for (int i = 0; i < x_axis.points; ++i) {
    const Eigen::VectorXd psi = hermite_functions(x_axis[i], dim);
    const double v = (psi.transpose().cast<Complex>() * weighted * psi.cast<Complex>())(0, 0).real();
    if (v < kPdfNegativityFloor)
      throw NumericalError("quadrature density negative (" + std::to_string(v) + ") at x=" +
                               std::to_string(x_axis[i]),
                           "negative_density");
    pdf.density(i) = std::max(v, 0.0);
  }
  const double h = x_axis.step();
  pdf.cumulative(0) = 0.0;
  for (int i = 1; i < x_axis.points; ++i)
    pdf.cumulative(i) = pdf.cumulative(i - 1) + 0.5 * h * (pdf.density(i - 1) + pdf.density(i));
  pdf.integral = pdf.cumulative(x_axis.points - 1);
  if (pdf.integral <= 0.0) throw NumericalError("quadrature density integrates to zero", "negative_density");
  pdf.cumulative /= pdf.integral;
  return pdf;
}

}  // namespace catalysis
