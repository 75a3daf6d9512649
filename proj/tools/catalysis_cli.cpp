// catalysis: simulate, sample, reconstruct and compare heralded kitten states.
//
// Exit codes: 0 success, 1 input error, 2 numerical failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "catalysis/error.hpp"
#include "catalysis/homodyne.hpp"
#include "catalysis/io.hpp"
#include "catalysis/scenario.hpp"
#include "catalysis/tomography.hpp"

namespace fs = std::filesystem;
using catalysis::ExitCode;
using nlohmann::json;

namespace {

struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

// Overrides that map one-to-one onto flat config keys.
struct Overrides {
  std::optional<std::string> scenario;
  std::optional<double> alpha, alpha_im, t2, eta_spd, eta_photon, eta_hd, p_dark;
  std::optional<int> dim, recon_dim, binning, grid_points;
  std::optional<std::size_t> samples;
  std::optional<double> cutoff, grid_half_width, phase_periods;
  std::optional<std::vector<double>> sweep_alphas;
  bool psd = false;

  json as_json() const {
    json j = json::object();
    auto put = [&j](const char* key, const auto& v) {
      if (v) j[key] = *v;
    };
    put("scenario", scenario);
    put("alpha", alpha);
    put("alpha_im", alpha_im);
    put("t2", t2);
    put("eta_spd", eta_spd);
    put("eta_photon", eta_photon);
    put("eta_hd", eta_hd);
    put("p_dark", p_dark);
    put("dim", dim);
    put("samples", samples);
    put("cutoff", cutoff);
    put("recon_dim", recon_dim);
    put("binning", binning);
    put("grid_half_width", grid_half_width);
    put("grid_points", grid_points);
    put("phase_periods", phase_periods);
    put("sweep_alphas", sweep_alphas);
    if (psd) j["psd_projection"] = true;
    return j;
  }
};

void add_common(CLI::App* cmd, CommonFlags& c) {
  cmd->add_option("--config", c.config, "Flat JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "Master RNG seed (u64)");
  cmd->add_option("--out", c.out, "Output directory");
}

void add_physics(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--alpha", o.alpha, "Coherent amplitude (real part)");
  cmd->add_option("--alpha-im", o.alpha_im, "Coherent amplitude (imaginary part)");
  cmd->add_option("--t2", o.t2, "Beamsplitter transmissivity t^2");
  cmd->add_option("--eta-spd", o.eta_spd, "Single-photon detector efficiency");
  cmd->add_option("--eta-photon", o.eta_photon, "Single-photon preparation efficiency");
  cmd->add_option("--eta-hd", o.eta_hd, "Homodyne detector efficiency");
  cmd->add_option("--p-dark", o.p_dark, "Fraction of clicks that are dark counts");
  cmd->add_option("--dim", o.dim, "Fock truncation per mode");
  cmd->add_option("--samples", o.samples, "Number of homodyne samples");
  cmd->add_option("--phase-periods", o.phase_periods, "Local-oscillator scan periods across the record");
}

void add_reconstruction(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--cutoff", o.cutoff, "Back-projection cutoff frequency");
  cmd->add_option("--recon-dim", o.recon_dim, "Fock size of the reconstructed density matrix");
  cmd->add_option("--binning", o.binning, "Phase bins over [0,pi) required to be occupied");
  cmd->add_option("--grid-half-width", o.grid_half_width, "Wigner grid covers [-w, w] on both axes");
  cmd->add_option("--grid-points", o.grid_points, "Wigner grid points per axis");
  cmd->add_flag("--psd", o.psd, "Also report the nearest positive semidefinite density matrix");
}

catalysis::RunConfig build_config(const CommonFlags& c, const Overrides& o) {
  catalysis::RunConfig config;
  if (c.config) config = catalysis::config_from_json(catalysis::io::read_json(*c.config));
  config = catalysis::config_from_json(o.as_json(), config);
  if (c.seed) config.seed = *c.seed;
  if (c.out) config.output_dir = *c.out;
  config.validate();
  return config;
}

int report_error(const catalysis::Error& e, const std::optional<std::string>& out) {
  const json record{{"error", e.kind()}, {"message", e.what()}, {"exit_code", static_cast<int>(e.exit_code())}};
  std::cerr << record.dump() << '\n';
  if (out) {
    std::error_code ec;
    fs::create_directories(*out, ec);
    if (!ec) {
      try {
        catalysis::io::write_json(fs::path(*out) / "error.json", record);
      } catch (const catalysis::Error&) {
      }
    }
  }
  return static_cast<int>(e.exit_code());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heralded photon-catalysis simulator and homodyne tomography toolkit"};
  app.require_subcommand(1);

  CommonFlags common;
  Overrides overrides;

  auto* simulate = app.add_subcommand("simulate", "Run one scenario end to end");
  add_common(simulate, common);
  simulate->add_option("--scenario", overrides.scenario,
                       "vacuum-cal | coherent-cal | fock-cal | catalysis | dark-limit | alpha-sweep");
  add_physics(simulate, overrides);
  add_reconstruction(simulate, overrides);

  auto* sweep = app.add_subcommand("sweep", "Catalysis runs over a list of coherent amplitudes");
  add_common(sweep, common);
  sweep->add_option("--alphas", overrides.sweep_alphas, "Coherent amplitudes")->delimiter(',');
  add_physics(sweep, overrides);
  add_reconstruction(sweep, overrides);

  std::string state_path;
  std::size_t sample_count = 100000;
  double sample_periods = 1.0;
  std::string label;
  auto* sample = app.add_subcommand("sample", "Draw homodyne samples from a density matrix");
  add_common(sample, common);
  sample->add_option("--state", state_path, "Density matrix JSON")->required()->check(CLI::ExistingFile);
  sample->add_option("--samples", sample_count, "Number of samples");
  sample->add_option("--phase-periods", sample_periods, "Local-oscillator scan periods");
  sample->add_option("--label", label, "Source label written into the record");

  std::string record_path;
  auto* reconstruct = app.add_subcommand("reconstruct", "Tomography of a quadrature record");
  add_common(reconstruct, common);
  reconstruct->add_option("--input", record_path, "Quadrature record CSV")->required()->check(CLI::ExistingFile);
  add_reconstruction(reconstruct, overrides);

  std::string compare_a, compare_b;
  auto* compare = app.add_subcommand("compare", "Fidelity, trace distance and max deviation of two states");
  add_common(compare, common);
  compare->add_option("a", compare_a, "First density matrix JSON")->required();
  compare->add_option("b", compare_b, "Second density matrix JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::InputError);
  }

  try {
    if (simulate->parsed() || sweep->parsed()) {
      catalysis::RunConfig config = build_config(common, overrides);
      if (sweep->parsed()) config.scenario = catalysis::Scenario::AlphaSweep;
      const json summary = catalysis::run_scenario(config);
      std::cout << summary.dump(2) << '\n';
    } else if (sample->parsed()) {
      const catalysis::RunConfig config = build_config(common, overrides);
      const auto rho = catalysis::io::density_from_json(catalysis::io::read_json(state_path));
      catalysis::SamplingOptions options;
      options.source_label = label;
      const auto record = catalysis::sample_quadratures(rho, sample_count, catalysis::LinearRamp{sample_periods},
                                                        config.seed, options);
      fs::create_directories(config.output_dir);
      catalysis::io::write_record_csv(config.output_dir / "quadratures.csv", record);
      std::cout << (config.output_dir / "quadratures.csv").string() << '\n';
    } else if (reconstruct->parsed()) {
      const catalysis::RunConfig config = build_config(common, overrides);
      const auto record = catalysis::io::read_record_csv(fs::path(record_path));
      const auto estimate = catalysis::pattern_density(record, config.settings);
      const auto wigner = catalysis::fbp_wigner(record, config.settings);
      fs::create_directories(config.output_dir);
      catalysis::io::write_json(config.output_dir / "state_reconstructed.json", catalysis::io::to_json(estimate));
      catalysis::io::write_wigner_csv(config.output_dir / "wigner_fbp.csv", wigner);
      std::cout << json{{"samples", record.size()},
                        {"rho00", estimate.rho(0, 0).real()},
                        {"rho11", estimate.rho(1, 1).real()},
                        {"wigner_min_fbp", wigner.min()},
                        {"statistics_warning", estimate.statistics_warning}}
                       .dump(2)
                << '\n';
    } else if (compare->parsed()) {
      const json metrics = catalysis::to_json(catalysis::compare_states(fs::path(compare_a), fs::path(compare_b)));
      if (common.out) {
        fs::create_directories(*common.out);
        catalysis::io::write_json(fs::path(*common.out) / "compare.json", metrics);
      }
      std::cout << metrics.dump(2) << '\n';
    }
  } catch (const catalysis::Error& e) {
    return report_error(e, common.out);
  } catch (const fs::filesystem_error& e) {
    return report_error(catalysis::InputError(e.what(), "unwritable_path"), common.out);
  } catch (const std::exception& e) {
    return report_error(catalysis::NumericalError(e.what(), "internal"), common.out);
  }
  return 0;
}
