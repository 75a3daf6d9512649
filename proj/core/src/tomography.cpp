#include "catalysis/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "catalysis/error.hpp"

namespace catalysis {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStatisticsWarningSe = 0.2;
constexpr double kWronskian = 2.0;

double kernel_series(double z, double kc) {
  const double kc2 = kc * kc, z2 = z * z;
  return kc2 / 2.0 - kc2 * kc2 * z2 / 8.0 + kc2 * kc2 * kc2 * z2 * z2 / 144.0;
}

}  // namespace

void ReconstructionSettings::validate() const {
  if (!(cutoff > 0.0)) throw DomainError("reconstruction cutoff must be positive");
  if (dim < 2) throw DomainError("reconstruction dim must be >= 2");
  if (binning < 1) throw DomainError("phase binning must be >= 1");
  if (grid.x.points < 2 || grid.p.points < 2) throw DomainError("Wigner grid needs >= 2 points per axis");
}

double fbp_kernel(double z, double cutoff) {
  const double u = cutoff * z;
  if (std::abs(u) < 1e-3) return kernel_series(z, cutoff);
  return (std::cos(u) + u * std::sin(u) - 1.0) / (z * z);
}

void check_phase_coverage(const QuadratureRecord& record, int bins) {
  std::vector<bool> seen(bins, false);
  for (const auto& s : record.samples) {
    const double folded = std::fmod(s.theta, kPi);
    seen[std::min(static_cast<int>(folded / kPi * bins), bins - 1)] = true;
  }
  const auto covered = std::count(seen.begin(), seen.end(), true);
  if (covered < bins)
    throw CoverageError("samples occupy " + std::to_string(covered) + " of " + std::to_string(bins) +
                        " phase bins over [0, pi)");
}

WignerGrid fbp_wigner(const QuadratureRecord& record, const ReconstructionSettings& settings) {
  settings.validate();
  record.validate();
  check_phase_coverage(record, settings.binning);

  const Axis& xa = settings.grid.x;
  const Axis& pa = settings.grid.p;
  const double kc = settings.cutoff;
  const double dp = pa.step();
  const std::size_t n = record.size();
  std::vector<double> cos_t(n), sin_t(n);
  for (std::size_t s = 0; s < n; ++s) {
    cos_t[s] = std::cos(record.samples[s].theta);
    sin_t[s] = std::sin(record.samples[s].theta);
  }

  WignerGrid w{xa, pa, Eigen::MatrixXd::Zero(xa.points, pa.points)};
  std::vector<double> row(pa.points);
  for (int i = 0; i < xa.points; ++i) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      // Along a row z advances by dp sin(theta); e^{i kc z} advances by a
      // fixed rotation, so no trig calls in the inner loop.
      const double z0 = xa[i] * cos_t[s] + pa.lo * sin_t[s] - record.samples[s].x;
      const double dz = dp * sin_t[s];
      Complex phase = std::polar(1.0, kc * z0);
      const Complex rotor = std::polar(1.0, kc * dz);
      for (int j = 0; j < pa.points; ++j) {
        const double z = z0 + j * dz;
        const double u = kc * z;
        row[j] += std::abs(u) < 1e-3 ? kernel_series(z, kc)
                                     : (phase.real() + u * phase.imag() - 1.0) / (z * z);
        phase *= rotor;
      }
    }
    for (int j = 0; j < pa.points; ++j) w.values(i, j) = row[j] / (2.0 * kPi * double(n));
  }
  w.norm_estimate = trapezoid_2d(w.values, xa, pa);
  return w;
}

PatternFunctions::PatternFunctions(int dim, double x_max, double step)
    : dim_(dim), x_max_(x_max), step_(step) {
  if (dim < 1) throw DomainError("pattern functions need dim >= 1");
  if (!(x_max > 0.0 && step > 0.0)) throw DomainError("pattern table range and step must be positive");
  const int nodes = static_cast<int>(std::ceil(x_max / step)) + 1;
  x_max_ = (nodes - 1) * step;

  // Regular functions and derivatives at every node.
  std::vector<Eigen::VectorXd> psi(nodes), dpsi(nodes);
  for (int k = 0; k < nodes; ++k) {
    psi[k] = hermite_functions(k * step, dim);
    dpsi[k] = hermite_function_derivatives(k * step, dim);
  }

  phi_.assign(dim, std::vector<double>(nodes));
  std::vector<std::vector<double>> dphi(dim, std::vector<double>(nodes));
  for (int m = 0; m < dim; ++m) {
    const double energy = 2.0 * m + 1.0;
    // Opposite parity to psi_m, normalized through the Wronskian at x = 0.
    double y = 0.0, dy = 0.0;
    if (m % 2 == 0)
      dy = kWronskian / psi[0](m);
    else
      y = -kWronskian / dpsi[0](m);
    auto accel = [energy](double x, double v) { return (x * x - energy) * v; };
    phi_[m][0] = y;
    dphi[m][0] = dy;
    for (int k = 1; k < nodes; ++k) {
      const double x = (k - 1) * step, h = step;
      // Classical RK4 on (y, y').
      const double k1y = dy, k1v = accel(x, y);
      const double k2y = dy + 0.5 * h * k1v, k2v = accel(x + 0.5 * h, y + 0.5 * h * k1y);
      const double k3y = dy + 0.5 * h * k2v, k3v = accel(x + 0.5 * h, y + 0.5 * h * k2y);
      const double k4y = dy + h * k3v, k4v = accel(x + h, y + h * k3y);
      y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
      dy += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      phi_[m][k] = y;
      dphi[m][k] = dy;
    }
  }

  table_.assign(dim * (dim + 1) / 2, std::vector<double>(nodes));
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n <= m; ++n) {
      auto& t = table_[packed_index(m, n)];
      for (int k = 0; k < nodes; ++k) t[k] = dpsi[k](n) * phi_[m][k] + psi[k](n) * dphi[m][k];
    }
}

double PatternFunctions::interpolate(const std::vector<double>& table, double ax) const {
  const double pos = ax / step_;
  const auto k = std::min(static_cast<std::size_t>(pos), table.size() - 2);
  const double frac = pos - double(k);
  return table[k] + frac * (table[k + 1] - table[k]);
}

double PatternFunctions::irregular(int m, double x) const {
  if (x < 0.0 || x > x_max_) throw OutOfRangeError("irregular solution evaluated outside [0, x_max]");
  return interpolate(phi_.at(m), x);
}

double PatternFunctions::operator()(int m, int n, double x) const {
  if (m < n) std::swap(m, n);
  if (n < 0 || m >= dim_) throw OutOfRangeError("pattern function index outside table");
  const double ax = std::abs(x);
  if (ax > x_max_)
    throw OutOfRangeError("quadrature value " + std::to_string(x) + " beyond pattern table range");
  const double v = interpolate(table_[packed_index(m, n)], ax);
  return (x < 0.0 && (m + n) % 2 == 1) ? -v : v;
}

void PatternFunctions::evaluate(double x, std::vector<double>& out) const {
  const double ax = std::abs(x);
  if (ax > x_max_)
    throw OutOfRangeError("quadrature value " + std::to_string(x) + " beyond pattern table range");
  out.resize(table_.size());
  const double pos = ax / step_;
  const auto k = std::min(static_cast<std::size_t>(pos), table_[0].size() - 2);
  const double frac = pos - double(k);
  for (int m = 0; m < dim_; ++m)
    for (int n = 0; n <= m; ++n) {
      const int idx = packed_index(m, n);
      const auto& t = table_[idx];
      const double v = t[k] + frac * (t[k + 1] - t[k]);
      out[idx] = (x < 0.0 && (m + n) % 2 == 1) ? -v : v;
    }
}

PatternEstimate pattern_density(const QuadratureRecord& record, const ReconstructionSettings& settings) {
  settings.validate();
  return pattern_density(record, settings, PatternFunctions(settings.dim));
}

PatternEstimate pattern_density(const QuadratureRecord& record, const ReconstructionSettings& settings,
                                const PatternFunctions& patterns) {
  settings.validate();
  record.validate();
  check_phase_coverage(record, settings.binning);
  const int dim = settings.dim;
  if (patterns.dim() < dim) throw DimensionMismatch("pattern table smaller than requested dim");

  const int packed = dim * (dim + 1) / 2;
  std::vector<double> sum_re(packed, 0.0), sum_im(packed, 0.0), sq_re(packed, 0.0), sq_im(packed, 0.0);
  std::vector<double> f;
  std::vector<Complex> harmonics(dim);
  for (const auto& s : record.samples) {
    patterns.evaluate(s.x, f);
    for (int d = 0; d < dim; ++d) harmonics[d] = std::polar(1.0, d * s.theta);
    for (int m = 0; m < dim; ++m)
      for (int n = 0; n <= m; ++n) {
        const int idx = patterns.packed_index(m, n);
        const Complex v = f[idx] * harmonics[m - n];
        sum_re[idx] += v.real();
        sum_im[idx] += v.imag();
        sq_re[idx] += v.real() * v.real();
        sq_im[idx] += v.imag() * v.imag();
      }
  }

  const double count = double(record.size());
  CMatrix rho(dim, dim);
  Eigen::MatrixXd se(dim, dim);
  auto variance = [count](double sum, double sq) {
    if (count < 2.0) return 0.0;
    return std::max(sq - sum * sum / count, 0.0) / (count - 1.0);
  };
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n <= m; ++n) {
      const int idx = patterns.packed_index(m, n);
      const Complex mean(sum_re[idx] / count, m == n ? 0.0 : sum_im[idx] / count);
      rho(m, n) = mean;
      rho(n, m) = std::conj(mean);
      const double var = variance(sum_re[idx], sq_re[idx]) + (m == n ? 0.0 : variance(sum_im[idx], sq_im[idx]));
      se(m, n) = se(n, m) = std::sqrt(var / count);
    }

  PatternEstimate est{DensityMatrix::estimate(std::move(rho)), std::move(se), false, std::nullopt};
  est.statistics_warning = (est.standard_error.diagonal().array() > kStatisticsWarningSe).any();
  if (settings.psd_projection) {
    est.psd = nearest_psd(est.rho.elements());
  }
  return est;
}

}  // namespace catalysis
