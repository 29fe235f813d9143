#include "afcproc/detection.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "afcproc/errors.hpp"

namespace afcproc {

namespace {

double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa uniform in (0, 1]; avoids implementation-defined
  // std::uniform_real_distribution so seeded runs are bit-stable everywhere.
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

std::uint64_t poisson_knuth(double lambda, std::mt19937_64& rng) {
  // Exact for moderate lambda; chunked so exp(-lambda) never underflows.
  std::uint64_t total = 0;
  while (lambda > 0.0) {
    const double step = std::min(lambda, 500.0);
    lambda -= step;
    const double limit = std::exp(-step);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01(rng);
    } while (p > limit);
    total += k - 1;
  }
  return total;
}

std::uint64_t poisson_sample(double lambda, std::mt19937_64& rng) {
  if (lambda <= 0.0) return 0;
  if (lambda < 1000.0) return poisson_knuth(lambda, rng);
  // Normal approximation; skew ~ lambda^-1/2 < 3% here and irrelevant next to
  // the multi-sigma acceptance windows.
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  const double value = std::round(lambda + std::sqrt(lambda) * z);
  return value > 0.0 ? static_cast<std::uint64_t>(value) : 0;
}

}  // namespace

void DetectionSpec::validate(const TimeGrid& grid) const {
  if (det_efficiency < 0.0 || det_efficiency > 1.0) {
    throw std::invalid_argument("detector efficiency must be in [0, 1]");
  }
  if (!(bin_width_ns >= grid.dt)) {
    throw std::invalid_argument("bin width must be at least the grid step");
  }
  if (dark_rate_hz < 0.0 || !(pulse_rate_mhz > 0.0) || !(duration_s > 0.0) ||
      duty_cycle <= 0.0 || duty_cycle > 1.0) {
    throw std::invalid_argument("invalid detection parameters");
  }
}

std::vector<double> expected_histogram(const ComplexField& field, const DetectionSpec& spec) {
  spec.validate(field.grid);
  const std::size_t n_bins = static_cast<std::size_t>(
      std::ceil(field.grid.span() / spec.bin_width_ns - 1e-12));
  std::vector<double> bin_energy(n_bins, 0.0);
  for (std::size_t i = 0; i < field.samples.size(); ++i) {
    const double t = field.grid.t(i) - field.grid.t_start;
    auto b = static_cast<std::size_t>(t / spec.bin_width_ns);
    if (b >= n_bins) b = n_bins - 1;
    bin_energy[b] += std::norm(field.samples[i]) * field.grid.dt;
  }
  const double dark_per_bin = spec.dark_rate_hz * spec.bin_width_ns * 1e-9;
  const double cycles = spec.cycles();
  std::vector<double> expected(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    expected[b] = cycles * (spec.det_efficiency * bin_energy[b] + dark_per_bin);
  }
  return expected;
}

Histogram simulate_counts(const ComplexField& field, const DetectionSpec& spec) {
  Histogram h;
  h.spec = spec;
  h.cycles = spec.cycles();
  h.expectation = expected_histogram(field, spec);

  const std::size_t n_bins = h.expectation.size();
  h.edges_ns.resize(n_bins + 1);
  for (std::size_t b = 0; b <= n_bins; ++b) {
    h.edges_ns[b] = field.grid.t_start + static_cast<double>(b) * spec.bin_width_ns;
  }

  std::mt19937_64 rng(spec.rng_seed);
  h.counts.resize(n_bins);
  double total = 0.0;
  double total_expected = 0.0;
  for (std::size_t b = 0; b < n_bins; ++b) {
    h.counts[b] = poisson_sample(h.expectation[b], rng);
    total += static_cast<double>(h.counts[b]);
    total_expected += h.expectation[b];
  }
  if (total > 10.0 * (total_expected + 100.0)) {
    throw std::logic_error("histogram counts exceed the sanity bound");
  }
  return h;
}

std::string histogram_table(const Histogram& histogram) {
  std::ostringstream os;
  os << "bin_start_ns\tbin_end_ns\tcounts\texpectation\n";
  os.precision(9);
  for (std::size_t b = 0; b < histogram.counts.size(); ++b) {
    os << histogram.edges_ns[b] << '\t' << histogram.edges_ns[b + 1] << '\t'
       << histogram.counts[b] << '\t' << histogram.expectation[b] << '\n';
  }
  return os.str();
}

}  // namespace afcproc
