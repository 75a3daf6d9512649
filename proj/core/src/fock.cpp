#include "catalysis/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "catalysis/error.hpp"

namespace catalysis {

namespace {

void require_dim(int dim) {
  if (dim < 2) throw DomainError("truncation dimension must be >= 2, got " + std::to_string(dim));
}

double hermitian_defect(const CMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

Eigen::VectorXd eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitize(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

// Matrix square root of a Hermitian PSD matrix. Eigenvalues at rounding level
// are zeroed, so a pure state's root is an exact rank-one projector.
CMatrix psd_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitize(m));
  const double floor = 1e-14 * std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
  Eigen::VectorXd ev = (solver.eigenvalues().array() > floor).select(solver.eigenvalues(), 0.0).cwiseSqrt();
  return solver.eigenvectors() * ev.asDiagonal() * solver.eigenvectors().adjoint();
}

std::pair<CMatrix, CMatrix> padded_pair(const DensityMatrix& a, const DensityMatrix& b) {
  const int n = std::max(a.dim(), b.dim());
  return {a.resized(n).elements(), b.resized(n).elements()};
}

}  // namespace

FockKet::FockKet(CVector amplitudes, bool tail_warning)
    : amplitudes_(std::move(amplitudes)), tail_warning_(tail_warning) {
  require_dim(dim());
}

DensityMatrix::DensityMatrix(CMatrix elements, double weight, Unchecked)
    : elements_(std::move(elements)), weight_(weight) {}

DensityMatrix::DensityMatrix(CMatrix elements) {
  if (elements.rows() != elements.cols() || elements.rows() < 1)
    throw DomainError("density matrix must be square and non-empty");
  if (hermitian_defect(elements) > kHermitianTolerance)
    throw NumericalError("density matrix is not Hermitian", "invalid_state");
  elements_ = hermitize(elements);
  const double tr = trace();
  if (std::abs(tr - 1.0) > kNormTolerance)
    throw NumericalError("density matrix trace " + std::to_string(tr) + " differs from 1",
                         "invalid_state");
  if (min_eigenvalue() < kNegativeEigenTolerance)
    throw NumericalError("density matrix has a negative eigenvalue", "invalid_state");
}

DensityMatrix DensityMatrix::unnormalized(CMatrix elements) {
  if (elements.rows() != elements.cols() || elements.rows() < 1)
    throw DomainError("density matrix must be square and non-empty");
  if (hermitian_defect(elements) > kHermitianTolerance)
    throw NumericalError("density matrix is not Hermitian", "invalid_state");
  CMatrix h = hermitize(elements);
  const double w = h.trace().real();
  if (w < -kNormTolerance || w > 1.0 + kNormTolerance)
    throw NumericalError("sub-normalized weight outside [0,1]", "invalid_state");
  return DensityMatrix(std::move(h), std::clamp(w, 0.0, 1.0), Unchecked{});
}

DensityMatrix DensityMatrix::estimate(CMatrix elements) {
  if (elements.rows() != elements.cols() || elements.rows() < 1)
    throw DomainError("density matrix must be square and non-empty");
  return DensityMatrix(hermitize(elements), 1.0, Unchecked{});
}

DensityMatrix DensityMatrix::pure(const FockKet& ket) {
  return DensityMatrix(ket.amplitudes() * ket.amplitudes().adjoint());
}

double DensityMatrix::min_eigenvalue() const { return eigenvalues(elements_).minCoeff(); }

DensityMatrix DensityMatrix::resized(int dim) const {
  if (dim < 1) throw DomainError("cannot resize to an empty basis");
  CMatrix out = CMatrix::Zero(dim, dim);
  const int keep = std::min(dim, this->dim());
  out.topLeftCorner(keep, keep) = elements_.topLeftCorner(keep, keep);
  return DensityMatrix(std::move(out), weight_, Unchecked{});
}

FockKet fock_state(int n, int dim) {
  require_dim(dim);
  if (n < 0 || n >= dim)
    throw OutOfRangeError("photon number " + std::to_string(n) + " outside basis of size " +
                          std::to_string(dim));
  CVector v = CVector::Zero(dim);
  v(n) = 1.0;
  return FockKet(std::move(v));
}

CVector coherent_amplitudes(Complex alpha, int dim) {
  require_dim(dim);
  CVector c(dim);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n + 1 < dim; ++n) c(n + 1) = c(n) * alpha / std::sqrt(double(n + 1));
  return c;
}

FockKet coherent_state(Complex alpha, int dim) {
  CVector c = coherent_amplitudes(alpha, dim);
  const double kept = c.squaredNorm();
  const bool tail = (1.0 - kept) > kTailThreshold;
  c /= std::sqrt(kept);
  return FockKet(std::move(c), tail);
}

DensityMatrix mixed_single_photon(double eta, int dim) {
  require_dim(dim);
  if (!(eta >= 0.0 && eta <= 1.0))
    throw DomainError("preparation efficiency must lie in [0,1], got " + std::to_string(eta));
  CMatrix m = CMatrix::Zero(dim, dim);
  m(0, 0) = 1.0 - eta;
  m(1, 1) = eta;
  return DensityMatrix(std::move(m));
}

CMatrix annihilation(int dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

ModeOperator displacement_operator(Complex beta, int dim) {
  require_dim(dim);
  const CMatrix a = annihilation(dim);
  const CMatrix generator = beta * a.adjoint() - std::conj(beta) * a;
  ModeOperator op;
  op.matrix = generator.exp();
  op.kind = OperatorKind::Displacement;
  op.warning = std::norm(beta) >= dim / 4.0;
  return op;
}

double fidelity(const DensityMatrix& rho, const FockKet& ket) {
  if (rho.dim() != ket.dim())
    throw DimensionMismatch("fidelity: state dims " + std::to_string(rho.dim()) + " and " +
                            std::to_string(ket.dim()));
  const Complex f = ket.amplitudes().dot(rho.elements() * ket.amplitudes());
  return std::clamp(f.real(), 0.0, 1.0);
}

double uhlmann_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  auto [ma, mb] = padded_pair(a, b);
  // Trace norm of sqrt(a) sqrt(b), via singular values.
  const CMatrix product = psd_sqrt(ma) * psd_sqrt(mb);
  const double s = Eigen::JacobiSVD<CMatrix>(product).singularValues().sum();
  return std::clamp(s * s, 0.0, 1.0);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  auto [ma, mb] = padded_pair(a, b);
  return 0.5 * eigenvalues(ma - mb).cwiseAbs().sum();
}

double max_element_deviation(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("element comparison of differently sized matrices");
  return (a - b).cwiseAbs().maxCoeff();
}

PhotonStatistics diagnostics(const DensityMatrix& rho) {
  PhotonStatistics s;
  double n1 = 0.0, n2 = 0.0;
  for (int n = 0; n < rho.dim(); ++n) {
    const double p = rho(n, n).real();
    s.distribution.push_back(p);
    n1 += n * p;
    n2 += double(n) * n * p;
  }
  s.mean_photon_number = n1;
  if (n1 > 0.0) s.mandel_q = (n2 - n1 * n1 - n1) / n1;
  return s;
}

CMatrix hermitize(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

DensityMatrix nearest_psd(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitize(m));
  const Eigen::VectorXd ev = solver.eigenvalues();
  // Euclidean projection of the spectrum onto the probability simplex.
  std::vector<double> sorted(ev.data(), ev.data() + ev.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0, shift = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / double(k + 1);
    if (sorted[k] - candidate > 0.0) shift = candidate;
  }
  Eigen::VectorXd projected = (ev.array() - shift).cwiseMax(0.0);
  CMatrix out = solver.eigenvectors() * projected.asDiagonal() * solver.eigenvectors().adjoint();
  return DensityMatrix(hermitize(out));
}

DensityMatrix phase_rotated(const DensityMatrix& rho, double phi) {
  const int d = rho.dim();
  CVector phases(d);
  for (int n = 0; n < d; ++n) phases(n) = std::polar(1.0, phi * n);
  CMatrix out = phases.asDiagonal() * rho.elements() * phases.conjugate().asDiagonal();
  return DensityMatrix(std::move(out));
}

}  // namespace catalysis
