#pragma once

#include <vector>

#include <Eigen/Dense>

#include "catalysis/fock.hpp"

namespace catalysis {

// Quadrature convention used throughout: x = (a + a^dag)/sqrt(2),
// p = (a - a^dag)/(i sqrt(2)), vacuum variance 1/2, W_vac(0,0) = 1/pi.
inline constexpr const char* kQuadratureConvention = "var_vac_0.5";

/// Uniform axis [lo, hi] with `points` samples.
struct Axis {
  double lo = -5.0;
  double hi = 5.0;
  int points = 201;

  double step() const { return (hi - lo) / (points - 1); }
  double operator[](int i) const { return lo + i * step(); }
  std::vector<double> values() const;
};

struct GridSpec {
  Axis x;
  Axis p;
};

struct WignerGrid {
  Axis x_axis;
  Axis p_axis;
  /// values(i, j) = W(x_i, p_j).
  Eigen::MatrixXd values;
  /// Trapezoidal integral of W over the grid.
  double norm_estimate = 0.0;
  /// The grid does not cover the state's support (|x|max < 2 sqrt(<n>) + 3).
  bool support_warning = false;

  double min() const { return values.minCoeff(); }
  double max() const { return values.maxCoeff(); }
};

struct QuadraturePdf {
  double theta = 0.0;
  Axis x_axis;
  Eigen::VectorXd density;
  /// Trapezoidal running integral, rescaled to end at exactly 1.
  Eigen::VectorXd cumulative;
  /// Trapezoidal integral of `density` before rescaling.
  double integral = 0.0;
};

/// Normalized harmonic-oscillator eigenfunctions psi_0..psi_{count-1} at x.
Eigen::VectorXd hermite_functions(double x, int count);

/// Derivatives psi_n'(x) from the ladder relation.
Eigen::VectorXd hermite_function_derivatives(double x, int count);

/// W(x, p) at a single point.
double wigner_at(const DensityMatrix& rho, double x, double p);

WignerGrid wigner_from_density(const DensityMatrix& rho, const GridSpec& grid = {});

/// pr(x, theta) = sum rho_mn psi_m(x) psi_n(x) e^{i(n-m) theta}: the
/// distribution of x cos(theta) + p sin(theta).
QuadraturePdf quadrature_pdf(const DensityMatrix& rho, double theta, const Axis& x_axis = {});

/// Trapezoidal integral of W over the grid.
double trapezoid_2d(const Eigen::MatrixXd& values, const Axis& x, const Axis& p);
double trapezoid(const Eigen::VectorXd& values, double step);

}  // namespace catalysis
