#include "catalysis/channels.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "catalysis/error.hpp"

namespace catalysis {

namespace {

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw DomainError(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
}

double log_factorial(int n) { return std::lgamma(double(n) + 1.0); }

double binomial(int n, int k) {
  return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

// Pascal triangle up to `n`, exact in double for the sizes used here.
std::vector<std::vector<double>> pascal(int n) {
  std::vector<std::vector<double>> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    c[i].assign(i + 1, 1.0);
    for (int k = 1; k < i; ++k) c[i][k] = c[i - 1][k - 1] + c[i - 1][k];
  }
  return c;
}

}  // namespace

BeamsplitterParams::BeamsplitterParams(double t) : t_(t) {
  require_unit_interval(t, "beamsplitter amplitude transmission t");
}

BeamsplitterParams BeamsplitterParams::from_reflectivity(double r_squared) {
  require_unit_interval(r_squared, "beamsplitter reflectivity r^2");
  return BeamsplitterParams(std::sqrt(1.0 - r_squared));
}

void ExperimentParams::validate() const {
  require_unit_interval(eta_spd, "eta_spd");
  require_unit_interval(eta_photon, "eta_photon");
  require_unit_interval(eta_hd, "eta_hd");
  require_unit_interval(p_dark, "p_dark");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw DomainError("coherent amplitude must be finite");
}

TwoModeState::TwoModeState(CMatrix elements, int dim_per_mode, double discarded_mass)
    : elements_(std::move(elements)), dim_(dim_per_mode), discarded_(discarded_mass) {
  if (dim_ < 2) throw DomainError("two-mode truncation must be >= 2 per mode");
  if (elements_.rows() != dim_ * dim_ || elements_.cols() != dim_ * dim_)
    throw DimensionMismatch("two-mode matrix size does not match dim_per_mode^2");
}

TwoModeState TwoModeState::product(const DensityMatrix& signal, const DensityMatrix& spd) {
  if (signal.dim() != spd.dim())
    throw DimensionMismatch("two-mode product requires equal per-mode truncation");
  const int n = signal.dim();
  CMatrix joint(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2)
      joint.block(a * n, a2 * n, n, n) = signal(a, a2) * spd.elements();
  return TwoModeState(std::move(joint), n);
}

DensityMatrix TwoModeState::reduced_signal() const {
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (int a = 0; a < dim_; ++a)
    for (int a2 = 0; a2 < dim_; ++a2)
      for (int b = 0; b < dim_; ++b) out(a, a2) += elements_(index(a, b), index(a2, b));
  return DensityMatrix::unnormalized(std::move(out));
}

DensityMatrix TwoModeState::reduced_spd() const {
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (int b = 0; b < dim_; ++b)
    for (int b2 = 0; b2 < dim_; ++b2)
      for (int a = 0; a < dim_; ++a) out(b, b2) += elements_(index(a, b), index(a, b2));
  return DensityMatrix::unnormalized(std::move(out));
}

Complex beamsplitter_matrix_element(int m, int n, int j_out, int k_out,
                                    const BeamsplitterParams& bs) {
  if (m < 0 || n < 0 || j_out < 0 || k_out < 0)
    throw DomainError("beamsplitter photon numbers must be non-negative");
  if (j_out + k_out != m + n) return 0.0;
  const double t = bs.t(), r = bs.r();
  const double norm =
      0.5 * (log_factorial(j_out) + log_factorial(k_out) - log_factorial(m) - log_factorial(n));
  double sum = 0.0;
  for (int j = 0; j <= m; ++j) {
    const int k = j_out - j;
    if (k < 0 || k > n) continue;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binomial(m, j) * binomial(n, k) * std::pow(t, n + j - k) *
           std::pow(r, m - j + k);
  }
  return std::exp(norm) * sum;
}

CMatrix beamsplitter_unitary(int dim_per_mode, const BeamsplitterParams& bs) {
  const int n = dim_per_mode;
  CMatrix u = CMatrix::Zero(n * n, n * n);
  for (int sig_in = 0; sig_in < n; ++sig_in)
    for (int spd_in = 0; spd_in < n; ++spd_in) {
      const int total = sig_in + spd_in;
      for (int spd_out = 0; spd_out <= total && spd_out < n; ++spd_out) {
        const int sig_out = total - spd_out;
        if (sig_out >= n) continue;
        u(sig_out * n + spd_out, sig_in * n + spd_in) =
            beamsplitter_matrix_element(spd_in, sig_in, spd_out, sig_out, bs);
      }
    }
  return u;
}

TwoModeState apply_beamsplitter(const TwoModeState& state, const BeamsplitterParams& bs) {
  const int n = state.dim_per_mode();
  // U only couples states of equal total photon number, so it acts block by
  // block; the result equals the dense U rho U^dag.
  std::vector<std::vector<int>> sectors(2 * n - 1);
  for (int sig = 0; sig < n; ++sig)
    for (int spd = 0; spd < n; ++spd) sectors[sig + spd].push_back(state.index(sig, spd));
  std::vector<CMatrix> blocks(sectors.size());
  for (std::size_t total = 0; total < sectors.size(); ++total) {
    const auto& idx = sectors[total];
    CMatrix& b = blocks[total];
    b.resize(idx.size(), idx.size());
    for (std::size_t o = 0; o < idx.size(); ++o)
      for (std::size_t i = 0; i < idx.size(); ++i)
        b(o, i) = beamsplitter_matrix_element(idx[i] % n, idx[i] / n, idx[o] % n, idx[o] / n, bs);
  }
  const CMatrix& rho = state.elements();
  CMatrix out = CMatrix::Zero(n * n, n * n);
  for (std::size_t a = 0; a < sectors.size(); ++a)
    for (std::size_t b = 0; b < sectors.size(); ++b) {
      const CMatrix in = rho(sectors[a], sectors[b]);
      if (in.cwiseAbs().maxCoeff() == 0.0) continue;
      out(sectors[a], sectors[b]) = blocks[a] * in * blocks[b].adjoint();
    }
  out = 0.5 * (out + out.adjoint());
  const double lost = state.elements().trace().real() - out.trace().real();
  const double discarded = state.discarded_mass() + std::max(lost, 0.0);
  if (discarded > kMaxDiscardedMass)
    throw TruncationError("beamsplitter output discarded " + std::to_string(discarded) +
                          " of probability; increase the truncation dimension");
  return TwoModeState(std::move(out), state.dim_per_mode(), discarded);
}

SpdPovm spd_povm(double eta_spd, int dim) {
  require_unit_interval(eta_spd, "eta_spd");
  if (dim < 2) throw DomainError("truncation dimension must be >= 2");
  SpdPovm povm;
  povm.no_click.matrix = CMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) povm.no_click.matrix(n, n) = std::pow(1.0 - eta_spd, n);
  povm.click.matrix = CMatrix::Identity(dim, dim) - povm.no_click.matrix;
  povm.no_click.kind = povm.click.kind = OperatorKind::PovmElement;
  return povm;
}

ConditionedState condition_on_click(const TwoModeState& state, const ModeOperator& click) {
  const int n = state.dim_per_mode();
  if (click.dim() != n) throw DimensionMismatch("click operator dim differs from SPD mode dim");
  const CMatrix& rho = state.elements();
  CMatrix out = CMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2) {
      Complex acc = 0.0;
      for (int b = 0; b < n; ++b)
        for (int b2 = 0; b2 < n; ++b2) {
          const Complex pi = click.matrix(b2, b);
          if (pi != 0.0) acc += rho(a * n + b, a2 * n + b2) * pi;
        }
      out(a, a2) = acc;
    }
  const double p = out.trace().real();
  if (!(p >= kMinClickProbability))
    throw NoStatisticsError("click probability " + std::to_string(p) +
                            " is too small to condition on");
  return {DensityMatrix(hermitize(out / p)), p};
}

DensityMatrix loss_channel(const DensityMatrix& rho, double eta) {
  require_unit_interval(eta, "loss efficiency");
  const int n = rho.dim();
  const auto c = pascal(2 * n);
  std::vector<double> sqrt_eta(n), loss_pow(n);
  for (int i = 0; i < n; ++i) {
    sqrt_eta[i] = std::pow(std::sqrt(eta), i);
    loss_pow[i] = std::pow(1.0 - eta, i);
  }
  CMatrix out = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Complex acc = 0.0;
      for (int m = 0; j + m < n && k + m < n; ++m)
        acc += std::sqrt(c[j + m][j] * c[k + m][k]) * loss_pow[m] * rho(j + m, k + m);
      out(j, k) = sqrt_eta[j] * sqrt_eta[k] * acc;
    }
  if (rho.normalized()) return DensityMatrix(std::move(out));
  return DensityMatrix::unnormalized(std::move(out));
}

DensityMatrix dark_count_state(const ExperimentParams& params, int dim) {
  params.validate();
  const Complex beta = params.alpha * params.bs.t();
  const double w = params.eta_photon * params.bs.reflectivity();
  const CVector displaced = displacement_operator(beta, dim).matrix * fock_state(1, dim).amplitudes();
  const CVector coherent = coherent_state(beta, dim).amplitudes();
  CMatrix rho = w * displaced * displaced.adjoint() + (1.0 - w) * coherent * coherent.adjoint();
  return DensityMatrix(hermitize(rho));
}

PipelineResult catalysis_pipeline(const ExperimentParams& params, int dim) {
  params.validate();
  const DensityMatrix coherent = DensityMatrix::pure(coherent_state(params.alpha, dim));
  const ModeOperator click = spd_povm(params.eta_spd, dim).click;

  auto herald = [&](const DensityMatrix& photon) {
    return condition_on_click(apply_beamsplitter(TwoModeState::product(coherent, photon), params.bs),
                              click);
  };

  // Full imperfect-photon input.
  const TwoModeState out =
      apply_beamsplitter(TwoModeState::product(coherent, mixed_single_photon(params.eta_photon, dim)),
                         params.bs);
  const ConditionedState mixed = condition_on_click(out, click);

  // Component click probabilities give the photon's share of the heralds.
  const ConditionedState photon = herald(DensityMatrix::pure(fock_state(1, dim)));
  double p_vacuum_click = 0.0;
  try {
    p_vacuum_click = herald(DensityMatrix::pure(fock_state(0, dim))).p_click;
  } catch (const NoStatisticsError&) {
    // alpha = 0: a vacuum photon port never clicks.
  }
  const double photon_share = params.eta_photon * photon.p_click;
  const double eta_prime = photon_share / (photon_share + (1.0 - params.eta_photon) * p_vacuum_click);

  CMatrix with_dark = (1.0 - params.p_dark) * mixed.rho_signal.elements();
  if (params.p_dark > 0.0) with_dark += params.p_dark * dark_count_state(params, dim).elements();
  DensityMatrix rho_with_dark(hermitize(with_dark));
  DensityMatrix at_detector = loss_channel(rho_with_dark, params.eta_hd);

  return PipelineResult{mixed.rho_signal,       std::move(rho_with_dark), std::move(at_detector),
                        photon.rho_signal,      mixed.p_click,            eta_prime,
                        out.discarded_mass()};
}

FockKet kitten_state(double t, Complex alpha, int dim) {
  CVector v = CVector::Zero(dim);
  v(0) = t;
  v(1) = alpha;
  const double n = v.norm();
  if (n == 0.0) throw DomainError("kitten state with t = alpha = 0 is undefined");
  return FockKet(v / n);
}

}  // namespace catalysis
