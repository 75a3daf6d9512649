#include "catalysis/scenario.hpp"

#include <array>
#include <cmath>
#include <future>
#include <numbers>
#include <optional>
#include <utility>

#include <fmt/format.h>

#include "catalysis/error.hpp"
#include "catalysis/homodyne.hpp"
#include "catalysis/io.hpp"
#include "catalysis/phase_space.hpp"

namespace catalysis {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Scenario, const char*>, 6> kScenarioNames{{
    {Scenario::VacuumCal, "vacuum-cal"},
    {Scenario::CoherentCal, "coherent-cal"},
    {Scenario::FockCal, "fock-cal"},
    {Scenario::Catalysis, "catalysis"},
    {Scenario::DarkLimit, "dark-limit"},
    {Scenario::AlphaSweep, "alpha-sweep"},
}};

// Heralded single photons per second in the laboratory source; a run whose
// click probability gives fewer than one conditioned event per second is
// flagged as impractical.
constexpr double kHeraldRate = 350.0;

constexpr const char* kConventionNote = "x=(a+a^dag)/sqrt2, p=(a-a^dag)/(i sqrt2), vacuum variance 1/2";
constexpr const char* kQuadUnit = "quadrature (vacuum variance 1/2)";
constexpr const char* kQuad2Unit = "quadrature^2 (vacuum variance 1/2)";
constexpr const char* kWignerUnit = "1/quadrature^2 (int W dx dp = 1)";

json quantity(double value, const char* unit) { return json{{"value", value}, {"unit", unit}}; }

json quantity(double value, double se, const char* unit) {
  return json{{"value", value}, {"standard_error", se}, {"unit", unit}};
}

// Grid of `points` over [-half, half] on both axes.
GridSpec square_grid(double half, int points) { return {{-half, half, points}, {-half, half, points}}; }

std::string alpha_dir(double alpha) { return fmt::format("alpha_{:.4f}", alpha); }

// <a> estimated from the record: E[x e^{i theta}] = <a> / sqrt2 for uniform phases.
std::pair<Complex, double> amplitude_estimate(const QuadratureRecord& record) {
  Complex sum = 0.0;
  double sq = 0.0;
  for (const auto& s : record.samples) {
    const Complex v = std::sqrt(2.0) * s.x * std::polar(1.0, s.theta);
    sum += v;
    sq += std::norm(v);
  }
  const double n = double(record.size());
  const Complex mean = sum / n;
  const double var = std::max(sq / n - std::norm(mean), 0.0);
  return {mean, std::sqrt(var / n)};
}

json run_single(const RunConfig& config) {
  config.validate();
  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);

  const ExperimentParams& p = config.params;
  json q = json::object();
  json warnings = json::array();

  std::optional<PipelineResult> pipeline;
  DensityMatrix truth = [&] {
    if (config.scenario == Scenario::Catalysis) {
      pipeline = catalysis_pipeline(p, config.dim);
      return pipeline->rho_at_detector;
    }
    return scenario_true_state(config);
  }();

  if (pipeline) {
    q["p_click"] = quantity(pipeline->p_click, "probability per heralded photon");
    q["eta_prime"] = quantity(pipeline->eta_prime, "dimensionless");
    q["discarded_mass"] = quantity(pipeline->discarded_mass, "probability");
    // Literal t|0> + alpha|1>, and with the sign the beamsplitter imprints on
    // the one-photon term relative to the |alpha t> admixture.
    q["fidelity_to_kitten"] = quantity(
        fidelity(pipeline->rho_ideal_conditioned, kitten_state(p.bs.t(), p.alpha, config.dim)),
        "dimensionless");
    q["fidelity_to_kitten_bs_phase"] = quantity(
        fidelity(pipeline->rho_ideal_conditioned, kitten_state(p.bs.t(), -p.alpha, config.dim)),
        "dimensionless");
    if (pipeline->p_click * kHeraldRate < 1.0)
      warnings.push_back(fmt::format("click probability {:.3g} gives < 1 conditioned event per second "
                                     "at {} heralds/s",
                                     pipeline->p_click, kHeraldRate));
  }
  if (p.alpha_warning(config.dim)) warnings.push_back("|alpha|^2 exceeds dim/4; truncation may be inaccurate");

  QuadratureRecord record = sample_quadratures(truth, config.samples, LinearRamp{config.phase_periods},
                                               config.seed, SamplingOptions{{-8.0, 8.0, 1601}, 64, to_string(config.scenario)});
  const MomentSummary moments = quadrature_moments(record);
  q["quadrature_variance"] = quantity(moments.variance, moments.variance_se, kQuad2Unit);
  q["phase_averaged_second_moment"] = quantity(moments.second_moment, moments.second_moment_se, kQuad2Unit);

  if (config.scenario == Scenario::VacuumCal) {
    const double scale = calibrate_vacuum(record);
    q["vacuum_scale"] = quantity(scale, "dimensionless");
    record = apply_vacuum_scale(record, scale);
  }
  if (config.scenario == Scenario::CoherentCal) {
    auto [amp, se] = amplitude_estimate(record);
    const double denom = p.bs.t() * std::sqrt(p.eta_hd);
    q["coherent_amplitude_at_detector"] = quantity(std::abs(amp), se, kQuadUnit);
    if (denom > 0.0) q["alpha_estimate"] = quantity(std::abs(amp) / denom, se / denom, "sqrt(photons)");
  }
  if (config.scenario == Scenario::FockCal) {
    q["eta_tot_expected"] = quantity(p.bs.reflectivity() * p.eta_photon * p.eta_hd, "dimensionless");
  }

  const PatternEstimate estimate = pattern_density(record, config.settings);
  const WignerGrid w_true = wigner_from_density(truth, config.settings.grid);
  const WignerGrid w_fbp = fbp_wigner(record, config.settings);
  if (estimate.statistics_warning) warnings.push_back("pattern-function standard error above 0.2 on a diagonal element");
  if (w_true.support_warning) warnings.push_back("Wigner grid smaller than the state's support");

  const auto stats = diagnostics(truth);
  q["mean_photon_number"] = quantity(stats.mean_photon_number, "photons");
  q["mandel_q"] = stats.mandel_q ? quantity(*stats.mandel_q, "dimensionless") : json(nullptr);
  q["rho00_reconstructed"] =
      quantity(estimate.rho(0, 0).real(), estimate.standard_error(0, 0), "probability");
  q["rho11_reconstructed"] =
      quantity(estimate.rho(1, 1).real(), estimate.standard_error(1, 1), "probability");
  q["abs_rho01_reconstructed"] =
      quantity(std::abs(estimate.rho(0, 1)), estimate.standard_error(0, 1), "dimensionless");
  const StateComparison cmp = compare_states(truth, estimate.rho);
  q["fidelity_true_vs_reconstructed"] = quantity(cmp.fidelity, "dimensionless");
  q["trace_distance_true_vs_reconstructed"] = quantity(cmp.trace_distance, "dimensionless");
  q["wigner_min_true"] = quantity(w_true.min(), kWignerUnit);
  q["wigner_min_fbp"] = quantity(w_fbp.min(), kWignerUnit);
  q["wigner_fbp_max_deviation"] = quantity((w_fbp.values - w_true.values).cwiseAbs().maxCoeff(), kWignerUnit);
  q["wigner_true_norm"] = quantity(w_true.norm_estimate, "dimensionless");

  const fs::path& out = config.output_dir;
  io::write_json(out / "state_true.json", io::to_json(truth));
  io::write_json(out / "state_reconstructed.json", io::to_json(estimate));
  io::write_wigner_csv(out / "wigner_true.csv", w_true);
  io::write_wigner_csv(out / "wigner_fbp.csv", w_fbp);
  io::write_record_csv(out / "quadratures.csv", record);
  if (pipeline) io::write_json(out / "pipeline.json", io::to_json(*pipeline));

  json summary{{"schema", "catalysis.summary"},
               {"schema_version", kSummarySchemaVersion},
               {"scenario", to_string(config.scenario)},
               {"convention", kConventionNote},
               {"rng", kRngAlgorithm},
               {"config", config_to_json(config)},
               {"quantities", q},
               {"warnings", warnings}};
  io::write_json(out / "summary.json", summary);
  return summary;
}

json run_sweep(const RunConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.output_dir);
  std::vector<std::future<json>> runs;
  for (double a : config.sweep_alphas) {
    RunConfig one = config;
    one.scenario = Scenario::Catalysis;
    one.params.alpha = a;
    one.output_dir = config.output_dir / alpha_dir(a);
    runs.push_back(std::async(std::launch::async, run_single, one));
  }
  json points = json::array();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    json run = runs[i].get();
    RunConfig one = config;
    one.params.alpha = config.sweep_alphas[i];
    const PipelineResult pr = catalysis_pipeline(one.params, one.dim);
    const DensityMatrix dark = loss_channel(dark_count_state(one.params, one.dim), one.params.eta_hd);
    const DensityMatrix vacuum = DensityMatrix::pure(fock_state(0, one.dim));
    points.push_back(json{
        {"alpha", config.sweep_alphas[i]},
        {"directory", alpha_dir(config.sweep_alphas[i])},
        {"p_click", run["quantities"]["p_click"]},
        {"eta_prime", run["quantities"]["eta_prime"]},
        {"fidelity_to_vacuum", quantity(uhlmann_fidelity(vacuum, pr.rho_at_detector), "dimensionless")},
        {"fidelity_to_dark_count_state", quantity(uhlmann_fidelity(dark, pr.rho_at_detector), "dimensionless")},
        {"fidelity_true_vs_reconstructed", run["quantities"]["fidelity_true_vs_reconstructed"]},
        {"wigner_min_true", run["quantities"]["wigner_min_true"]},
        {"warnings", run["warnings"]}});
  }
  json summary{{"schema", "catalysis.sweep_summary"},
               {"schema_version", kSummarySchemaVersion},
               {"scenario", to_string(Scenario::AlphaSweep)},
               {"convention", kConventionNote},
               {"config", config_to_json(config)},
               {"points", points}};
  io::write_json(config.output_dir / "summary.json", summary);
  return summary;
}

}  // namespace

std::string to_string(Scenario s) {
  for (const auto& [value, name] : kScenarioNames)
    if (value == s) return name;
  return "unknown";
}

Scenario scenario_from_string(const std::string& name) {
  for (const auto& [value, n] : kScenarioNames)
    if (name == n) return value;
  throw InputError("unknown scenario '" + name + "'", "bad_config");
}

void RunConfig::validate() const {
  params.validate();
  settings.validate();
  if (dim < 2) throw DomainError("dim must be >= 2");
  if (samples < 2) throw DomainError("samples must be >= 2");
  if (!(phase_periods > 0.0)) throw DomainError("phase_periods must be positive");
  if (scenario == Scenario::AlphaSweep && sweep_alphas.empty())
    throw DomainError("alpha sweep needs at least one alpha");
}

RunConfig config_from_json(const json& j, RunConfig c) {
  if (!j.is_object()) throw InputError("config must be a JSON object", "bad_config");
  try {
    double alpha_re = c.params.alpha.real(), alpha_im = c.params.alpha.imag();
    for (const auto& [key, v] : j.items()) {
      if (key == "scenario") c.scenario = scenario_from_string(v.get<std::string>());
      else if (key == "alpha") alpha_re = v.get<double>();
      else if (key == "alpha_im") alpha_im = v.get<double>();
      else if (key == "t2") {
        const double t2 = v.get<double>();
        if (!(t2 >= 0.0 && t2 <= 1.0)) throw DomainError("t2 must lie in [0,1]");
        c.params.bs = BeamsplitterParams(std::sqrt(t2));
      } else if (key == "eta_spd") c.params.eta_spd = v.get<double>();
      else if (key == "eta_photon") c.params.eta_photon = v.get<double>();
      else if (key == "eta_hd") c.params.eta_hd = v.get<double>();
      else if (key == "p_dark") c.params.p_dark = v.get<double>();
      else if (key == "dim") c.dim = v.get<int>();
      else if (key == "samples") c.samples = v.get<std::size_t>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "output_dir") c.output_dir = v.get<std::string>();
      else if (key == "cutoff") c.settings.cutoff = v.get<double>();
      else if (key == "recon_dim") c.settings.dim = v.get<int>();
      else if (key == "binning") c.settings.binning = v.get<int>();
      else if (key == "grid_half_width") {
        const double h = v.get<double>();
        c.settings.grid = square_grid(h, c.settings.grid.x.points);
      } else if (key == "grid_points") {
        c.settings.grid = square_grid(c.settings.grid.x.hi, v.get<int>());
      } else if (key == "psd_projection") c.settings.psd_projection = v.get<bool>();
      else if (key == "phase_periods") c.phase_periods = v.get<double>();
      else if (key == "sweep_alphas") c.sweep_alphas = v.get<std::vector<double>>();
      else throw InputError("unknown config key '" + key + "'", "bad_config");
    }
    c.params.alpha = Complex(alpha_re, alpha_im);
  } catch (const json::exception& e) {
    throw InputError(std::string("bad config value: ") + e.what(), "bad_config");
  }
  return c;
}

json config_to_json(const RunConfig& c) {
  return json{{"scenario", to_string(c.scenario)},
              {"alpha", c.params.alpha.real()},
              {"alpha_im", c.params.alpha.imag()},
              {"t2", c.params.bs.transmissivity()},
              {"eta_spd", c.params.eta_spd},
              {"eta_photon", c.params.eta_photon},
              {"eta_hd", c.params.eta_hd},
              {"p_dark", c.params.p_dark},
              {"dim", c.dim},
              {"samples", c.samples},
              {"seed", c.seed},
              {"output_dir", c.output_dir.generic_string()},
              {"cutoff", c.settings.cutoff},
              {"recon_dim", c.settings.dim},
              {"binning", c.settings.binning},
              {"grid_half_width", c.settings.grid.x.hi},
              {"grid_points", c.settings.grid.x.points},
              {"psd_projection", c.settings.psd_projection},
              {"phase_periods", c.phase_periods},
              {"sweep_alphas", c.sweep_alphas}};
}

DensityMatrix scenario_true_state(const RunConfig& config) {
  const ExperimentParams& p = config.params;
  p.validate();
  const int dim = config.dim;
  switch (config.scenario) {
    case Scenario::VacuumCal:
      return DensityMatrix::pure(fock_state(0, dim));
    case Scenario::CoherentCal:
      return loss_channel(DensityMatrix::pure(coherent_state(p.alpha * p.bs.t(), dim)), p.eta_hd);
    case Scenario::FockCal:
      // Coherent input blocked: the beamsplitter only attenuates the photon by r^2.
      return loss_channel(loss_channel(mixed_single_photon(p.eta_photon, dim), p.bs.reflectivity()), p.eta_hd);
    case Scenario::Catalysis:
      return catalysis_pipeline(p, dim).rho_at_detector;
    case Scenario::DarkLimit:
      return loss_channel(dark_count_state(p, dim), p.eta_hd);
    case Scenario::AlphaSweep:
      break;
  }
  throw InputError("alpha-sweep has no single true state", "bad_config");
}

json run_scenario(const RunConfig& config) {
  if (config.scenario == Scenario::AlphaSweep) return run_sweep(config);
  return run_single(config);
}

StateComparison compare_states(const DensityMatrix& a, const DensityMatrix& b) {
  const int n = std::max(a.dim(), b.dim());
  const DensityMatrix pa = a.resized(n), pb = b.resized(n);
  return {uhlmann_fidelity(pa, pb), trace_distance(pa, pb), max_element_deviation(pa.elements(), pb.elements())};
}

StateComparison compare_states(const std::filesystem::path& a, const std::filesystem::path& b) {
  return compare_states(io::density_from_json(io::read_json(a), true),
                        io::density_from_json(io::read_json(b), true));
}

json to_json(const StateComparison& c) {
  return json{{"fidelity", c.fidelity}, {"trace_distance", c.trace_distance}, {"max_deviation", c.max_deviation}};
}

}  // namespace catalysis
