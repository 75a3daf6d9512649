#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "catalysis/channels.hpp"
#include "catalysis/fock.hpp"
#include "catalysis/homodyne.hpp"
#include "catalysis/phase_space.hpp"
#include "catalysis/tomography.hpp"

namespace catalysis::io {

using nlohmann::json;

// Density matrices: {"dim": N, "re": N x N, "im": N x N}, optionally with a
// parallel "standard_error" N x N array. Kets: {"dim": N, "re": [..], "im": [..]}.
json to_json(const DensityMatrix& rho);
json to_json(const FockKet& ket);
json to_json(const PatternEstimate& estimate);
json to_json(const PipelineResult& result);

/// Parses a density matrix. Raw estimates (non-positive) are accepted when
/// `allow_estimate` is set; otherwise the full validity check applies.
DensityMatrix density_from_json(const json& j, bool allow_estimate = false);
FockKet ket_from_json(const json& j);

void write_json(const std::filesystem::path& path, const json& j);
json read_json(const std::filesystem::path& path);

/// Wigner CSV: a comment line, "x,<x_0>,...", "p,<p_0>,...", then one row of
/// W(x_i, p_j) values per x_i.
void write_wigner_csv(std::ostream& out, const WignerGrid& grid);
void write_wigner_csv(const std::filesystem::path& path, const WignerGrid& grid);
/// Flat form {"x": [...], "p": [...], "w": [[...]]}.
json wigner_to_json(const WignerGrid& grid);

/// Record CSV:
///   # seed=<u64> vacuum_scale=<float> convention=var_vac_0.5
///   # rng=<algorithm> source=<label>
///   theta,x
///   <theta>,<x>        (17 significant digits)
void write_record_csv(std::ostream& out, const QuadratureRecord& record);
void write_record_csv(const std::filesystem::path& path, const QuadratureRecord& record);
/// Accepts files without comment headers (seed 0, vacuum_scale 1) and with or
/// without the column header line.
QuadratureRecord read_record_csv(std::istream& in);
QuadratureRecord read_record_csv(const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace catalysis::io
