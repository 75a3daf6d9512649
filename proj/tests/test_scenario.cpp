#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <iterator>
#include <map>
#include <string>

#include "catalysis/error.hpp"
#include "catalysis/io.hpp"
#include "catalysis/scenario.hpp"

using namespace catalysis;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("catalysis_scenario_" + name);
  fs::remove_all(dir);
  return dir;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    files[fs::relative(entry.path(), dir).generic_string()] =
        std::string(std::istreambuf_iterator<char>(in), {});
  }
  return files;
}

RunConfig quick(Scenario s, const fs::path& out) {
  RunConfig c;
  c.scenario = s;
  c.samples = 20000;
  c.output_dir = out;
  c.settings.grid = {{-4.0, 4.0, 21}, {-4.0, 4.0, 21}};
  return c;
}

}  // namespace

TEST_CASE("scenario names") {
  for (auto s : {Scenario::VacuumCal, Scenario::CoherentCal, Scenario::FockCal, Scenario::Catalysis,
                 Scenario::DarkLimit, Scenario::AlphaSweep})
    CHECK(scenario_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(scenario_from_string("cat"), InputError);
}

TEST_CASE("config defaults and overrides") {
  const RunConfig c;
  CHECK(c.params.bs.transmissivity() == doctest::Approx(0.08));
  CHECK(c.params.eta_spd == 0.5);
  CHECK(c.params.eta_photon == 0.69);
  CHECK(c.params.eta_hd == 0.91);
  CHECK(c.params.p_dark == 0.0);
  CHECK(c.settings.cutoff == 6.4);

  const auto parsed = config_from_json(nlohmann::json::parse(
      R"({"scenario":"fock-cal","alpha":0.6,"eta_hd":0.83,"seed":9,"grid_points":51,"sweep_alphas":[0.2]})"));
  CHECK(parsed.scenario == Scenario::FockCal);
  CHECK(parsed.params.alpha == Complex(0.6, 0.0));
  CHECK(parsed.params.eta_hd == 0.83);
  CHECK(parsed.seed == 9);
  CHECK(parsed.settings.grid.p.points == 51);
  CHECK(parsed.sweep_alphas == std::vector<double>{0.2});

  const auto again = config_from_json(config_to_json(parsed));
  CHECK(config_to_json(again) == config_to_json(parsed));

  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"alfa":0.3})")), InputError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"seed":"x"})")), InputError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"t2":1.5})")), InputError);
}

TEST_CASE("true states of the calibration scenarios") {
  RunConfig c;
  c.scenario = Scenario::VacuumCal;
  CHECK(fidelity(scenario_true_state(c), fock_state(0, c.dim)) == doctest::Approx(1.0));
  c.scenario = Scenario::FockCal;
  const auto fock = scenario_true_state(c);
  CHECK(fock(1, 1).real() == doctest::Approx(0.92 * 0.69 * 0.91));
  CHECK(std::abs(fock(1, 1).real() - 0.58) < 0.02);
  c.scenario = Scenario::CoherentCal;
  CHECK(fidelity(scenario_true_state(c), coherent_state(0.3 * std::sqrt(0.08 * 0.91), c.dim)) ==
        doctest::Approx(1.0));
}

TEST_CASE("vacuum calibration run") {
  const auto dir = scratch("vacuum");
  const auto summary = run_scenario(quick(Scenario::VacuumCal, dir));
  CHECK(summary["schema"] == "catalysis.summary");
  CHECK(summary["schema_version"] == kSummarySchemaVersion);
  const auto& q = summary["quantities"];
  for (const auto& [name, value] : q.items())
    if (!value.is_null()) CHECK_MESSAGE(value.contains("unit"), name);
  const double var = q["quadrature_variance"]["value"];
  const double se = q["quadrature_variance"]["standard_error"];
  CHECK(std::abs(var - 0.5) < 3.0 * se);
  CHECK(std::abs(q["rho00_reconstructed"]["value"].get<double>() - 1.0) <
        3.0 * q["rho00_reconstructed"]["standard_error"].get<double>());
  for (const char* f : {"state_true.json", "state_reconstructed.json", "wigner_true.csv", "wigner_fbp.csv",
                        "quadratures.csv", "summary.json"})
    CHECK_MESSAGE(fs::exists(dir / f), f);
  fs::remove_all(dir);
}

TEST_CASE("reruns are byte-identical") {
  const auto dir = scratch("rerun");
  const auto config = quick(Scenario::Catalysis, dir);
  run_scenario(config);
  const auto first = snapshot(dir);
  run_scenario(config);
  const auto second = snapshot(dir);
  CHECK(first.size() >= 7);
  CHECK(first == second);
  fs::remove_all(dir);
}

TEST_CASE("alpha sweep trend") {
  const auto dir = scratch("sweep");
  auto config = quick(Scenario::AlphaSweep, dir);
  config.samples = 5000;
  const auto summary = run_scenario(config);
  const auto& points = summary["points"];
  REQUIRE(points.size() == 3);
  for (std::size_t i = 1; i < points.size(); ++i) {
    CHECK(points[i]["fidelity_to_vacuum"]["value"].get<double>() <
          points[i - 1]["fidelity_to_vacuum"]["value"].get<double>());
    CHECK(points[i]["fidelity_to_dark_count_state"]["value"].get<double>() >
          points[i - 1]["fidelity_to_dark_count_state"]["value"].get<double>());
    CHECK(fs::exists(dir / points[i]["directory"].get<std::string>() / "summary.json"));
  }
  fs::remove_all(dir);
}

TEST_CASE("compare_states") {
  const auto a = DensityMatrix::pure(fock_state(0, 4));
  const auto b = DensityMatrix::pure(fock_state(1, 3));
  const auto same = compare_states(a, a);
  CHECK(same.fidelity == doctest::Approx(1.0));
  CHECK(same.trace_distance == doctest::Approx(0.0).epsilon(1e-12));
  const auto apart = compare_states(a, b);
  CHECK(apart.fidelity == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(apart.trace_distance == doctest::Approx(1.0));
  CHECK(apart.max_deviation == doctest::Approx(1.0));

  const auto dir = scratch("compare");
  fs::create_directories(dir);
  io::write_json(dir / "a.json", io::to_json(a));
  io::write_json(dir / "b.json", io::to_json(b));
  CHECK(compare_states(dir / "a.json", dir / "b.json").trace_distance == doctest::Approx(1.0));
  CHECK_THROWS_AS(compare_states(dir / "a.json", dir / "nope.json"), InputError);
  fs::remove_all(dir);
}
