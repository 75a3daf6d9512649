#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>

#include "catalysis/error.hpp"
#include "catalysis/io.hpp"

using namespace catalysis;
namespace fs = std::filesystem;

TEST_CASE("density matrix JSON round trip") {
  const auto rho = catalysis_pipeline(ExperimentParams{}, 6).rho_at_detector;
  const auto j = io::to_json(rho);
  CHECK(j["dim"] == 6);
  CHECK(j["re"].size() == 6);
  CHECK(j["im"][0].size() == 6);
  const auto back = io::density_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.elements() == rho.elements());
}

TEST_CASE("ket JSON round trip") {
  const auto ket = coherent_state(Complex(0.2, -0.4), 7);
  const auto back = io::ket_from_json(nlohmann::json::parse(io::to_json(ket).dump()));
  CHECK(back.amplitudes() == ket.amplitudes());
}

TEST_CASE("malformed density JSON") {
  CHECK_THROWS_AS(io::density_from_json(nlohmann::json{{"dim", 2}}), InputError);
  CHECK_THROWS_AS(io::density_from_json(nlohmann::json{{"dim", 2}, {"re", {{1, 0}}}, {"im", {{0, 0}, {0, 0}}}}),
                  InputError);
  // Trace two is not a state, but is acceptable as a raw estimate.
  const nlohmann::json twice{{"dim", 2}, {"re", {{1, 0}, {0, 1}}}, {"im", {{0, 0}, {0, 0}}}};
  CHECK_THROWS_AS(io::density_from_json(twice), InputError);
  CHECK_NOTHROW(io::density_from_json(twice, true));
  try {
    io::density_from_json(twice);
  } catch (const Error& e) {
    CHECK(e.exit_code() == ExitCode::InputError);
  }
}

TEST_CASE("quadrature record CSV") {
  QuadratureRecord rec;
  rec.seed = 18446744073709551557ull;
  rec.vacuum_scale = 0.987654321;
  rec.source_label = "unit";
  rec.samples = {{0.0, -1.0 / 3.0}, {1.2345678901234567, 2.0e-17}, {6.2831, 4.75}};
  std::stringstream buffer;
  io::write_record_csv(buffer, rec);
  const std::string text = buffer.str();
  CHECK(text.rfind("# seed=18446744073709551557 vacuum_scale=0.987654321 convention=var_vac_0.5\n", 0) == 0);
  CHECK(text.find("\ntheta,x\n") != std::string::npos);

  const auto back = io::read_record_csv(buffer);
  CHECK(back.samples == rec.samples);
  CHECK(back.seed == rec.seed);
  CHECK(back.vacuum_scale == rec.vacuum_scale);
  CHECK(back.source_label == "unit");
}

TEST_CASE("externally produced record without header") {
  std::istringstream in("0.1,0.5\n0.2,-0.25\r\n\n3.0,1e-3\n");
  const auto rec = io::read_record_csv(in);
  REQUIRE(rec.size() == 3);
  CHECK(rec.samples[1].x == -0.25);
  CHECK(rec.vacuum_scale == 1.0);

  std::istringstream bad("theta,x\n0.1;0.5\n");
  CHECK_THROWS_AS(io::read_record_csv(bad), InputError);
  std::istringstream out_of_range("9.0,0.5\n");
  CHECK_THROWS_AS(io::read_record_csv(out_of_range), InputError);
}

TEST_CASE("Wigner CSV layout") {
  GridSpec spec{{-1.0, 1.0, 3}, {-2.0, 2.0, 5}};
  const auto grid = wigner_from_density(DensityMatrix::pure(fock_state(0, 3)), spec);
  std::stringstream buffer;
  io::write_wigner_csv(buffer, grid);
  std::string line;
  std::getline(buffer, line);
  CHECK(line.rfind("# wigner convention=var_vac_0.5", 0) == 0);
  std::getline(buffer, line);
  CHECK(line == "x,-1,0,1");
  std::getline(buffer, line);
  CHECK(line == "p,-2,-1,0,1,2");
  int rows = 0;
  while (std::getline(buffer, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
    ++rows;
  }
  CHECK(rows == 3);

  const auto j = io::wigner_to_json(grid);
  CHECK(j["x"].size() == 3);
  CHECK(j["p"].size() == 5);
  CHECK(j["w"][1][2].get<double>() == doctest::Approx(1.0 / M_PI));
}

TEST_CASE("estimate JSON carries standard errors") {
  const auto rec = sample_quadratures(DensityMatrix::pure(fock_state(0, 4)), 2000, LinearRamp{}, 1);
  ReconstructionSettings s;
  s.dim = 3;
  const auto j = io::to_json(pattern_density(rec, s));
  CHECK(j["dim"] == 3);
  CHECK(j["standard_error"].size() == 3);
  CHECK(j.contains("statistics_warning"));
}

TEST_CASE("file round trip and unreadable paths") {
  const fs::path dir = fs::temp_directory_path() / "catalysis_io_test";
  fs::create_directories(dir);
  const auto rho = mixed_single_photon(0.4, 3);
  io::write_json(dir / "rho.json", io::to_json(rho));
  CHECK(io::density_from_json(io::read_json(dir / "rho.json")).elements() == rho.elements());
  CHECK_THROWS_AS(io::read_json(dir / "missing.json"), InputError);
  fs::remove_all(dir);
}
