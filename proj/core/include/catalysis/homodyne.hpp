#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "catalysis/fock.hpp"
#include "catalysis/phase_space.hpp"

namespace catalysis {

/// Name of the per-sample generator written into record files.
inline constexpr const char* kRngAlgorithm = "splitmix64-counter";

struct QuadratureSample {
  double theta;  ///< local-oscillator phase, radians in [0, 2pi)
  double x;      ///< quadrature value, vacuum variance 1/2 units

  bool operator==(const QuadratureSample&) const = default;
};

struct QuadratureRecord {
  std::vector<QuadratureSample> samples;
  std::uint64_t seed = 0;
  double vacuum_scale = 1.0;
  std::string source_label;

  std::size_t size() const noexcept { return samples.size(); }
  /// Throws InputError on an empty record, phases outside [0, 2pi) or a
  /// non-positive vacuum scale.
  void validate() const;
};

/// Phase ramp theta_i = 2pi * periods * i / n (mod 2pi): a mirror scanned at
/// constant speed across the acquisition.
struct LinearRamp {
  double periods = 1.0;
};

/// Phases taken cyclically from a list.
struct ExplicitPhases {
  std::vector<double> thetas;
};

using PhaseModel = std::variant<LinearRamp, ExplicitPhases>;

struct SamplingOptions {
  /// Grid on which the inverse CDF is tabulated.
  Axis x_axis{-8.0, 8.0, 1601};
  /// Phase bins over [0, 2pi) sharing one tabulated distribution.
  int phase_bins = 64;
  std::string source_label;
};

/// Uniform double in [0, 1) for sample `index` of stream `seed`. Counter
/// based: any partition of the index range reproduces the same values.
double counter_uniform(std::uint64_t seed, std::uint64_t index) noexcept;

double phase_of(const PhaseModel& model, std::size_t index, std::size_t count);

/// Draws `count` homodyne samples of `rho` by inverse-CDF lookup.
/// Deterministic for a given (rho, count, phase model, seed, options).
QuadratureRecord sample_quadratures(const DensityMatrix& rho, std::size_t count,
                                    const PhaseModel& phase_model, std::uint64_t seed,
                                    const SamplingOptions& options = {});

/// Factor s such that s * x has variance 1/2 on a vacuum record.
double calibrate_vacuum(const QuadratureRecord& record);

/// Copy of `record` with every x multiplied by `scale`; `scale` is stored as
/// the record's vacuum_scale.
QuadratureRecord apply_vacuum_scale(const QuadratureRecord& record, double scale);

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  /// Standard error of `variance`.
  double variance_se = 0.0;
  /// Mean of x^2, the phase-averaged second moment <n> + 1/2.
  double second_moment = 0.0;
  double second_moment_se = 0.0;
};

MomentSummary quadrature_moments(const QuadratureRecord& record);

}  // namespace catalysis
