#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "catalysis/channels.hpp"
#include "catalysis/tomography.hpp"

namespace catalysis {

inline constexpr int kSummarySchemaVersion = 1;

enum class Scenario { VacuumCal, CoherentCal, FockCal, Catalysis, DarkLimit, AlphaSweep };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

/// Everything one run needs. Defaults reproduce the laboratory parameter set
/// (t^2 = 0.08, eta_SPD = 0.5, eta_|1> = 0.69, eta_HD = 0.91, p_dark = 0).
struct RunConfig {
  ExperimentParams params = {};
  int dim = kDefaultPipelineDim;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  Scenario scenario = Scenario::Catalysis;
  std::filesystem::path output_dir = "run";
  ReconstructionSettings settings = {};
  double phase_periods = 1.0;
  std::vector<double> sweep_alphas{0.1, 0.3, 0.6};

  void validate() const;
};

/// Flat JSON config. Missing keys keep their defaults; unknown keys are an
/// input error. Keys: scenario, alpha, alpha_im, t2, eta_spd, eta_photon,
/// eta_hd, p_dark, dim, samples, seed, output_dir, cutoff, recon_dim, binning,
/// grid_half_width, grid_points, psd_projection, phase_periods, sweep_alphas.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
nlohmann::json config_to_json(const RunConfig& config);

/// The state that reaches the homodyne detector in `config.scenario`
/// (not defined for the alpha sweep).
DensityMatrix scenario_true_state(const RunConfig& config);

/// Runs a scenario end to end and writes state_true.json,
/// state_reconstructed.json, wigner_true.csv, wigner_fbp.csv, quadratures.csv
/// and summary.json into `config.output_dir`. Returns the summary.
///
/// The alpha sweep writes one such directory per alpha (alpha_<value>/) plus
/// a sweep-level summary.json.
nlohmann::json run_scenario(const RunConfig& config);

struct StateComparison {
  double fidelity;
  double trace_distance;
  double max_deviation;
};

/// Compares two states, zero-padding the smaller one.
StateComparison compare_states(const DensityMatrix& a, const DensityMatrix& b);
StateComparison compare_states(const std::filesystem::path& a, const std::filesystem::path& b);
nlohmann::json to_json(const StateComparison& c);

}  // namespace catalysis
