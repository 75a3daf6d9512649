#include "catalysis/homodyne.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "catalysis/error.hpp"

namespace catalysis {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double wrap_phase(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t >= kTwoPi ? 0.0 : t;
}

double inverse_cdf(const QuadraturePdf& pdf, double u) {
  const auto& c = pdf.cumulative;
  const auto* begin = c.data();
  const auto* end = c.data() + c.size();
  auto it = std::upper_bound(begin, end, u);
  if (it == end) return pdf.x_axis.hi;
  if (it == begin) return pdf.x_axis.lo;
  const auto k = static_cast<int>(it - begin) - 1;
  const double span = c(k + 1) - c(k);
  const double frac = span > 0.0 ? (u - c(k)) / span : 0.5;
  return pdf.x_axis[k] + frac * pdf.x_axis.step();
}

}  // namespace

void QuadratureRecord::validate() const {
  if (samples.empty()) throw InputError("quadrature record has no samples", "empty_record");
  if (!(vacuum_scale > 0.0)) throw InputError("vacuum_scale must be positive", "invalid_record");
  for (const auto& s : samples) {
    if (!(s.theta >= 0.0 && s.theta < kTwoPi))
      throw InputError("phase " + std::to_string(s.theta) + " outside [0, 2pi)", "invalid_record");
    if (!std::isfinite(s.x)) throw InputError("non-finite quadrature value", "invalid_record");
  }
}

double counter_uniform(std::uint64_t seed, std::uint64_t index) noexcept {
  const std::uint64_t bits = splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
  return double(bits >> 11) * 0x1.0p-53;
}

double phase_of(const PhaseModel& model, std::size_t index, std::size_t count) {
  return std::visit(
      [&](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, LinearRamp>) {
          return wrap_phase(kTwoPi * m.periods * double(index) / double(count));
        } else {
          if (m.thetas.empty()) throw InputError("explicit phase list is empty", "invalid_phase_model");
          return wrap_phase(m.thetas[index % m.thetas.size()]);
        }
      },
      model);
}

QuadratureRecord sample_quadratures(const DensityMatrix& rho, std::size_t count,
                                    const PhaseModel& phase_model, std::uint64_t seed,
                                    const SamplingOptions& options) {
  if (count == 0) throw DomainError("sample count must be >= 1");
  if (options.phase_bins < 1) throw DomainError("phase_bins must be >= 1");
  const double bin_width = kTwoPi / options.phase_bins;
  std::vector<std::optional<QuadraturePdf>> cache(options.phase_bins);

  QuadratureRecord record;
  record.seed = seed;
  record.source_label = options.source_label;
  record.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = phase_of(phase_model, i, count);
    const int bin = std::min(static_cast<int>(theta / bin_width), options.phase_bins - 1);
    auto& pdf = cache[bin];
    if (!pdf) pdf = quadrature_pdf(rho, (bin + 0.5) * bin_width, options.x_axis);
    record.samples.push_back({theta, inverse_cdf(*pdf, counter_uniform(seed, i))});
  }
  return record;
}

MomentSummary quadrature_moments(const QuadratureRecord& record) {
  const double n = double(record.size());
  MomentSummary m;
  if (record.size() < 2) return m;
  double s1 = 0.0, s2 = 0.0;
  for (const auto& s : record.samples) {
    s1 += s.x;
    s2 += s.x * s.x;
  }
  m.mean = s1 / n;
  m.second_moment = s2 / n;
  double c2 = 0.0, c4 = 0.0, r4 = 0.0;
  for (const auto& s : record.samples) {
    const double d = s.x - m.mean;
    c2 += d * d;
    c4 += d * d * d * d;
    const double q = s.x * s.x - m.second_moment;
    r4 += q * q;
  }
  m.variance = c2 / (n - 1.0);
  // Var(sample variance) ~ (mu4 - sigma^4) / n.
  m.variance_se = std::sqrt(std::max(c4 / n - m.variance * m.variance, 0.0) / n);
  m.second_moment_se = std::sqrt(r4 / (n - 1.0) / n);
  return m;
}

double calibrate_vacuum(const QuadratureRecord& record) {
  if (record.size() < 2) throw DegenerateRecordError("vacuum calibration needs at least two samples");
  const double var = quadrature_moments(record).variance;
  if (!(var >= 1e-6))
    throw DegenerateRecordError("vacuum record variance " + std::to_string(var) + " is degenerate");
  return std::sqrt(0.5 / var);
}

QuadratureRecord apply_vacuum_scale(const QuadratureRecord& record, double scale) {
  if (!(scale > 0.0)) throw DomainError("vacuum scale must be positive");
  QuadratureRecord out = record;
  for (auto& s : out.samples) s.x *= scale;
  out.vacuum_scale = scale;
  return out;
}

}  // namespace catalysis
