#ifndef AFCPROC_DETECTION_HPP
#define AFCPROC_DETECTION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "afcproc/signal.hpp"

namespace afcproc {

// Single-photon-detector acquisition parameters. The field's energy is the
// mean photon number per pulse arriving at the detector.
struct DetectionSpec {
  double det_efficiency = 0.70;
  double dark_rate_hz = 100.0;
  double bin_width_ns = 1.0;
  double pulse_rate_mhz = 2.7;
  double duration_s = 60.0;
  double duty_cycle = 1.0;  // fraction of wall time spent in the probe stage
  std::uint64_t rng_seed = 1;

  void validate(const TimeGrid& grid) const;
  double cycles() const { return pulse_rate_mhz * 1e6 * duration_s * duty_cycle; }
};

struct Histogram {
  std::vector<double> edges_ns;          // n_bins + 1
  std::vector<std::uint64_t> counts;     // per bin, summed over all cycles
  std::vector<double> expectation;       // per-bin expected counts
  double cycles = 0.0;
  DetectionSpec spec;
};

// Per cycle and bin the count is Poissonian with mean
//   det_efficiency * (field energy in bin) + dark_rate * bin_width.
// The histogram aggregates all cycles; identical seeds give identical counts.
Histogram simulate_counts(const ComplexField& field, const DetectionSpec& spec);

// Noise-free expectation of simulate_counts.
std::vector<double> expected_histogram(const ComplexField& field, const DetectionSpec& spec);

// Columns: bin_start_ns, bin_end_ns, counts, expectation.
std::string histogram_table(const Histogram& histogram);

}  // namespace afcproc

#endif
