#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "catalysis/fock.hpp"
#include "catalysis/homodyne.hpp"
#include "catalysis/phase_space.hpp"

namespace catalysis {

inline constexpr double kDefaultCutoff = 6.4;

struct ReconstructionSettings {
  /// Spatial-frequency cutoff k_c of the back-projection filter, in inverse
  /// quadrature units (vacuum variance 1/2).
  double cutoff = kDefaultCutoff;
  GridSpec grid{{-5.0, 5.0, 101}, {-5.0, 5.0, 101}};
  /// Fock-space size of the density-matrix estimate.
  int dim = 6;
  /// Equal bins over [0, pi); every one must hold a sample.
  int binning = 16;
  /// Also report the nearest positive semidefinite matrix.
  bool psd_projection = false;

  void validate() const;
};

/// Band-limited ramp kernel K(z) = int_0^kc k cos(kz) dk
///   = [cos(kc z) + kc z sin(kc z) - 1] / z^2, with K(0) = kc^2 / 2.
double fbp_kernel(double z, double cutoff);

/// Throws CoverageError unless every phase bin over [0, pi) is occupied.
void check_phase_coverage(const QuadratureRecord& record, int bins);

/// Filtered back-projection straight from the samples:
///   W(x, p) = 1/(2 pi) * mean_i K(x cos theta_i + p sin theta_i - x_i).
/// Each grid point sums its samples in record order.
WignerGrid fbp_wigner(const QuadratureRecord& record, const ReconstructionSettings& settings = {});

/// Tabulated pattern functions f_mn, m >= n, for the quantum state sampling
/// estimator rho_mn = < f_mn(x) e^{i(m-n) theta} >.
///
/// f_mn = d/dx [psi_n phi_m], where psi_n is the oscillator eigenfunction and
/// phi_m the non-normalizable solution at the energy of level m, chosen with
/// parity opposite to psi_m and Wronskian psi_m phi_m' - psi_m' phi_m = 2.
class PatternFunctions {
public:
  explicit PatternFunctions(int dim, double x_max = 10.0, double step = 5e-4);

  int dim() const noexcept { return dim_; }
  double x_max() const noexcept { return x_max_; }

  /// f_mn(x) for any m, n < dim (symmetric in m, n).
  double operator()(int m, int n, double x) const;
  /// All f_mn(x) for m >= n, packed in the order of `packed_index`.
  void evaluate(double x, std::vector<double>& out) const;
  int packed_index(int m, int n) const noexcept { return m * (m + 1) / 2 + n; }

  /// Irregular solution phi_m and its derivative at x >= 0.
  double irregular(int m, double x) const;

private:
  double interpolate(const std::vector<double>& table, double ax) const;

  int dim_;
  double x_max_;
  double step_;
  std::vector<std::vector<double>> phi_;    // per order, x >= 0
  std::vector<std::vector<double>> table_;  // per packed (m, n), x >= 0
};

struct PatternEstimate {
  /// Hermitian raw estimate; trace near but not exactly 1, not necessarily positive.
  DensityMatrix rho;
  /// Standard error of each element: sqrt((Var Re + Var Im) / n).
  Eigen::MatrixXd standard_error;
  /// Some diagonal element has standard error above 0.2.
  bool statistics_warning = false;
  std::optional<DensityMatrix> psd;
};

PatternEstimate pattern_density(const QuadratureRecord& record,
                                const ReconstructionSettings& settings = {});
PatternEstimate pattern_density(const QuadratureRecord& record, const ReconstructionSettings& settings,
                                const PatternFunctions& patterns);

}  // namespace catalysis
