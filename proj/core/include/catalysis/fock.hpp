#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace catalysis {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr int kDefaultModeDim = 15;
/// Discarded probability mass above which a constructor raises its tail flag.
inline constexpr double kTailThreshold = 1e-8;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kNegativeEigenTolerance = -1e-8;

/// Pure state of one mode in the truncated Fock basis |0>..|N-1>.
class FockKet {
public:
  explicit FockKet(CVector amplitudes, bool tail_warning = false);

  int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](int n) const { return amplitudes_(n); }
  double norm() const { return amplitudes_.norm(); }

  /// Set when truncation discarded more than kTailThreshold of probability.
  bool tail_warning() const noexcept { return tail_warning_; }

private:
  CVector amplitudes_;
  bool tail_warning_;
};

/// Hermitian, positive semidefinite density matrix in the Fock basis.
///
/// A normalized matrix has unit trace; `weight()` is then 1. Sub-normalized
/// matrices (conditional, not yet divided by their probability) are built with
/// `DensityMatrix::unnormalized` and carry their trace as the weight.
class DensityMatrix {
public:
  /// Validates Hermiticity, unit trace and the eigenvalue floor.
  explicit DensityMatrix(CMatrix elements);

  static DensityMatrix unnormalized(CMatrix elements);
  static DensityMatrix pure(const FockKet& ket);
  /// Hermitizes without further checks. Used for raw tomographic estimates,
  /// whose trace is only statistically 1 and which need not be positive.
  static DensityMatrix estimate(CMatrix elements);

  int dim() const noexcept { return static_cast<int>(elements_.rows()); }
  const CMatrix& elements() const noexcept { return elements_; }
  Complex operator()(int m, int n) const { return elements_(m, n); }
  double trace() const { return elements_.trace().real(); }
  double weight() const noexcept { return weight_; }
  bool normalized() const noexcept { return weight_ == 1.0; }

  double min_eigenvalue() const;
  /// Copy embedded in a larger basis (zero padded) or cut to a smaller one.
  DensityMatrix resized(int dim) const;

private:
  struct Unchecked {};
  DensityMatrix(CMatrix elements, double weight, Unchecked);

  CMatrix elements_;
  double weight_ = 1.0;
};

enum class OperatorKind { Displacement, PovmElement, Generic };

struct ModeOperator {
  CMatrix matrix;
  OperatorKind kind = OperatorKind::Generic;
  bool warning = false;

  int dim() const noexcept { return static_cast<int>(matrix.rows()); }
};

FockKet fock_state(int n, int dim);

/// Truncated coherent state e^{-|a|^2/2} sum a^n/sqrt(n!) |n>, renormalized.
FockKet coherent_state(Complex alpha, int dim = kDefaultModeDim);

/// Unnormalized coherent-state amplitudes before truncation renormalization.
CVector coherent_amplitudes(Complex alpha, int dim);

/// eta |1><1| + (1 - eta) |0><0|.
DensityMatrix mixed_single_photon(double eta, int dim);

/// exp(beta a^dag - conj(beta) a) built by dense matrix exponential in the
/// truncated basis. Flags a warning when |beta|^2 >= dim / 4.
ModeOperator displacement_operator(Complex beta, int dim = kDefaultModeDim);

/// Annihilation operator on the truncated basis.
CMatrix annihilation(int dim);

/// <b| rho |b>.
double fidelity(const DensityMatrix& rho, const FockKet& ket);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2 for mixed states. The first
/// argument must be positive semidefinite; negative spectral parts of the
/// product are dropped, so it also accepts raw tomographic estimates as `b`.
double uhlmann_fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// Half the trace norm of a - b.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

double max_element_deviation(const CMatrix& a, const CMatrix& b);

struct PhotonStatistics {
  double mean_photon_number = 0.0;
  /// Mandel Q; empty when the mean photon number is zero.
  std::optional<double> mandel_q;
  std::vector<double> distribution;
};

PhotonStatistics diagnostics(const DensityMatrix& rho);

/// Hermitian part (rho + rho^dag) / 2.
CMatrix hermitize(const CMatrix& m);

/// Nearest positive semidefinite unit-trace matrix in Frobenius norm
/// (eigenvalues projected onto the probability simplex).
DensityMatrix nearest_psd(const CMatrix& m);

/// e^{i phi n} rho e^{-i phi n}.
DensityMatrix phase_rotated(const DensityMatrix& rho, double phi);

}  // namespace catalysis
