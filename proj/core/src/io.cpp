#include "catalysis/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "catalysis/error.hpp"

namespace catalysis::io {

namespace {

json real_matrix(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd parse_real_matrix(const json& j, int dim, const char* key) {
  const json& rows = j.at(key);
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
    throw InputError(fmt::format("'{}' must be a {}x{} array", key, dim, dim), "bad_file");
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != dim)
      throw InputError(fmt::format("'{}' row {} has the wrong length", key, i), "bad_file");
    for (int k = 0; k < dim; ++k) m(i, k) = rows[i][k].get<double>();
  }
  return m;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string(), "unwritable_path");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string(), "unreadable_file");
  return in;
}

}  // namespace

std::string format_double(double v) { return fmt::format("{}", v); }

json to_json(const DensityMatrix& rho) {
  return json{{"dim", rho.dim()},
              {"convention", kQuadratureConvention},
              {"re", real_matrix(rho.elements().real())},
              {"im", real_matrix(rho.elements().imag())}};
}

json to_json(const FockKet& ket) {
  json re = json::array(), im = json::array();
  for (int n = 0; n < ket.dim(); ++n) {
    re.push_back(ket[n].real());
    im.push_back(ket[n].imag());
  }
  return json{{"dim", ket.dim()}, {"re", re}, {"im", im}};
}

json to_json(const PatternEstimate& estimate) {
  json j = to_json(estimate.rho);
  j["standard_error"] = real_matrix(estimate.standard_error);
  j["statistics_warning"] = estimate.statistics_warning;
  if (estimate.psd) j["psd_projection"] = to_json(*estimate.psd);
  return j;
}

json to_json(const PipelineResult& r) {
  return json{{"rho_ideal_conditioned", to_json(r.rho_ideal_conditioned)},
              {"rho_with_dark", to_json(r.rho_with_dark)},
              {"rho_at_detector", to_json(r.rho_at_detector)},
              {"rho_pure_photon", to_json(r.rho_pure_photon)},
              {"scalars",
               {{"p_click", r.p_click}, {"eta_prime", r.eta_prime}, {"discarded_mass", r.discarded_mass}}}};
}

DensityMatrix density_from_json(const json& j, bool allow_estimate) {
  try {
    const int dim = j.at("dim").get<int>();
    if (dim < 1) throw InputError("density matrix dim must be positive", "bad_file");
    CMatrix m(dim, dim);
    m.real() = parse_real_matrix(j, dim, "re");
    m.imag() = parse_real_matrix(j, dim, "im");
    if (allow_estimate) return DensityMatrix::estimate(std::move(m));
    return DensityMatrix(std::move(m));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed density matrix JSON: ") + e.what(), "bad_file");
  } catch (const NumericalError& e) {
    throw InputError(std::string("invalid density matrix: ") + e.what(), "bad_file");
  }
}

FockKet ket_from_json(const json& j) {
  try {
    const int dim = j.at("dim").get<int>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (dim < 2 || static_cast<int>(re.size()) != dim || static_cast<int>(im.size()) != dim)
      throw InputError("ket arrays do not match dim", "bad_file");
    CVector v(dim);
    for (int n = 0; n < dim; ++n) v(n) = Complex(re[n].get<double>(), im[n].get<double>());
    return FockKet(std::move(v));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed ket JSON: ") + e.what(), "bad_file");
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what(), "bad_file");
  }
}

void write_wigner_csv(std::ostream& out, const WignerGrid& grid) {
  out << "# wigner convention=" << kQuadratureConvention
      << " norm_estimate=" << format_double(grid.norm_estimate) << " rows=x cols=p\n";
  out << 'x';
  for (int i = 0; i < grid.x_axis.points; ++i) out << ',' << format_double(grid.x_axis[i]);
  out << "\np";
  for (int j = 0; j < grid.p_axis.points; ++j) out << ',' << format_double(grid.p_axis[j]);
  out << '\n';
  for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < grid.values.cols(); ++j) {
      if (j) out << ',';
      out << format_double(grid.values(i, j));
    }
    out << '\n';
  }
}

void write_wigner_csv(const std::filesystem::path& path, const WignerGrid& grid) {
  auto out = open_out(path);
  write_wigner_csv(out, grid);
}

json wigner_to_json(const WignerGrid& grid) {
  return json{{"convention", kQuadratureConvention},
              {"x", grid.x_axis.values()},
              {"p", grid.p_axis.values()},
              {"w", real_matrix(grid.values)}};
}

void write_record_csv(std::ostream& out, const QuadratureRecord& record) {
  out << "# seed=" << record.seed << " vacuum_scale=" << format_double(record.vacuum_scale)
      << " convention=" << kQuadratureConvention << '\n';
  out << "# rng=" << kRngAlgorithm << " source=" << (record.source_label.empty() ? "-" : record.source_label)
      << '\n';
  out << "theta,x\n";
  for (const auto& s : record.samples) out << format_double(s.theta) << ',' << format_double(s.x) << '\n';
}

void write_record_csv(const std::filesystem::path& path, const QuadratureRecord& record) {
  auto out = open_out(path);
  write_record_csv(out, record);
}

QuadratureRecord read_record_csv(std::istream& in) {
  QuadratureRecord record;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream tokens(line.substr(1));
      std::string tok;
      while (tokens >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
        try {
          if (key == "seed") record.seed = std::stoull(value);
          else if (key == "vacuum_scale") record.vacuum_scale = std::stod(value);
          else if (key == "source") record.source_label = value == "-" ? "" : value;
        } catch (const std::exception&) {
          throw InputError(fmt::format("line {}: bad header value '{}'", line_no, tok), "bad_file");
        }
      }
      continue;
    }
    if (line.rfind("theta", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw InputError(fmt::format("line {}: expected 'theta,x'", line_no), "bad_file");
    try {
      const double theta = std::stod(line.substr(0, comma));
      const double x = std::stod(line.substr(comma + 1));
      record.samples.push_back({theta, x});
    } catch (const std::exception&) {
      throw InputError(fmt::format("line {}: unparsable sample '{}'", line_no, line), "bad_file");
    }
  }
  record.validate();
  return record;
}

QuadratureRecord read_record_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_record_csv(in);
}

}  // namespace catalysis::io
