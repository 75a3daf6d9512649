#pragma once

#include <cmath>

#include "catalysis/fock.hpp"

namespace catalysis {

inline constexpr int kDefaultPipelineDim = 10;
/// Discarded two-mode probability above which the beamsplitter refuses to run.
inline constexpr double kMaxDiscardedMass = 1e-6;
inline constexpr double kMinClickProbability = 1e-15;

/// Real amplitude transmission t; the reflection r = sqrt(1 - t^2) is derived.
class BeamsplitterParams {
public:
  explicit BeamsplitterParams(double t);
  static BeamsplitterParams from_reflectivity(double r_squared);

  double t() const noexcept { return t_; }
  double r() const noexcept { return std::sqrt(1.0 - t_ * t_); }
  double transmissivity() const noexcept { return t_ * t_; }
  double reflectivity() const noexcept { return 1.0 - t_ * t_; }

private:
  double t_;
};

/// Defaults are the laboratory parameter set: r^2 = 0.92, eta_SPD = 0.5,
/// eta_|1> = 0.69, eta_HD = 0.91, no dark counts.
struct ExperimentParams {
  Complex alpha{0.3, 0.0};
  BeamsplitterParams bs = BeamsplitterParams::from_reflectivity(0.92);
  double eta_spd = 0.5;
  double eta_photon = 0.69;
  double eta_hd = 0.91;
  double p_dark = 0.0;

  /// Throws DomainError when an efficiency or probability leaves [0,1].
  void validate() const;
  /// |alpha|^2 large compared to the truncation.
  bool alpha_warning(int dim) const { return std::norm(alpha) >= dim / 4.0; }
};

/// Joint density matrix of two modes, each truncated to `dim_per_mode`.
///
/// Basis index = signal * N + spd. The "signal" mode is the port whose output
/// reaches the homodyne detector; the "spd" mode is the port whose output
/// reaches the single-photon detector and is traced out on conditioning. At
/// the input, the spd-side port carries the single photon and the signal-side
/// port carries the coherent state.
class TwoModeState {
public:
  TwoModeState(CMatrix elements, int dim_per_mode, double discarded_mass = 0.0);

  static TwoModeState product(const DensityMatrix& signal, const DensityMatrix& spd);

  int dim_per_mode() const noexcept { return dim_; }
  const CMatrix& elements() const noexcept { return elements_; }
  double discarded_mass() const noexcept { return discarded_; }
  int index(int signal, int spd) const noexcept { return signal * dim_ + spd; }

  DensityMatrix reduced_signal() const;
  DensityMatrix reduced_spd() const;

private:
  CMatrix elements_;
  int dim_;
  double discarded_;
};

/// Coefficient <j_out, k_out| B |m, n> of the two-mode beamsplitter.
///
/// Ports are ordered (spd, signal): `m` photons enter the port that transmits
/// to the SPD, `n` enter the port that transmits to the signal. The binomial
/// sum runs over (j, k) with j + k = j_out, each term weighted by
/// (-1)^k t^{n+j-k} r^{m-j+k}. Zero unless j_out + k_out == m + n.
Complex beamsplitter_matrix_element(int m, int n, int j_out, int k_out,
                                    const BeamsplitterParams& bs);

/// Beamsplitter unitary assembled in the TwoModeState basis. Columns with
/// input photon number m + n <= N - 1 are exactly unitary; higher inputs lose
/// the components that leave the truncated space.
CMatrix beamsplitter_unitary(int dim_per_mode, const BeamsplitterParams& bs);

/// U rho U^dag. Throws TruncationError when more than kMaxDiscardedMass of
/// probability falls outside the truncated output space.
TwoModeState apply_beamsplitter(const TwoModeState& state, const BeamsplitterParams& bs);

struct SpdPovm {
  ModeOperator no_click;
  ModeOperator click;
};

SpdPovm spd_povm(double eta_spd, int dim);

struct ConditionedState {
  DensityMatrix rho_signal;
  double p_click;
};

/// Projects the SPD mode onto `click`, traces it out and renormalizes.
ConditionedState condition_on_click(const TwoModeState& state, const ModeOperator& click);

/// Generalized Bernoulli transformation (photon loss with efficiency eta).
DensityMatrix loss_channel(const DensityMatrix& rho, double eta);

/// State heralded by a dark count: eta_|1> r^2 D(at)|1><1|D^dag(at) +
/// (1 - eta_|1> r^2)|at><at|.
DensityMatrix dark_count_state(const ExperimentParams& params, int dim = kDefaultPipelineDim);

struct PipelineResult {
  /// Conditioned signal state for the imperfect photon, before dark counts.
  DensityMatrix rho_ideal_conditioned;
  /// After admixing the dark-count state with weight p_dark.
  DensityMatrix rho_with_dark;
  /// After homodyne-detector loss; this is what the detector samples.
  DensityMatrix rho_at_detector;
  /// Conditioned state for a pure single photon (eta_|1> = 1).
  DensityMatrix rho_pure_photon;
  double p_click;
  /// Fraction of clicks contributed by the single-photon component.
  double eta_prime;
  double discarded_mass;
};

PipelineResult catalysis_pipeline(const ExperimentParams& params, int dim = kDefaultPipelineDim);

/// Normalized t|0> + alpha|1>.
FockKet kitten_state(double t, Complex alpha, int dim);

}  // namespace catalysis
