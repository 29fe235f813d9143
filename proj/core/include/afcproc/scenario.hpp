#ifndef AFCPROC_SCENARIO_HPP
#define AFCPROC_SCENARIO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "afcproc/chain.hpp"
#include "afcproc/detection.hpp"
#include "afcproc/pulse.hpp"

namespace afcproc {

struct GridConfig {
  double t_start_ns = -100.0;
  double dt_ns = 0.05;
  std::size_t n = 8000;

  TimeGrid make() const { return TimeGrid{t_start_ns, dt_ns, n}; }
};

// One self-contained run: input pulses, controller actions, comb program,
// optional filter, detection. Serialized as JSON with units in the key names.
struct ScenarioConfig {
  std::string id = "scenario";
  std::string description;
  GridConfig grid;
  std::vector<GaussianPulseSpec> pulses;
  std::optional<TimeBinSpec> time_bin;
  double mean_photons = 20.0;
  ChainSpec chain;
  DetectionSpec detection;
};

// Parses a config document; ConfigError messages name the offending field.
// A "program_ref" entry resolves the comb program from the catalog.
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario_file(const std::filesystem::path& path);
std::string scenario_to_json(const ScenarioConfig& config);

struct RunOptions {
  std::optional<std::uint64_t> seed;     // overrides detection.rng_seed
  std::optional<double> grid_dt;         // overrides grid.dt_ns, preserving the span
  std::optional<std::filesystem::path> out_dir;  // write output files when set
};

struct EchoPeak {
  double time_ns = 0.0;
  double intensity = 0.0;
};

struct ScenarioRun {
  ScenarioConfig config;  // after overrides
  ComplexField input;
  ChainResult chain;
  Histogram histogram;    // of the coherent transmitted+echo sum at the detector
  std::vector<EchoPeak> echo_peaks;
  std::optional<double> kappa;  // input FWHM / echo FWHM
  std::string summary_json;
  std::vector<std::filesystem::path> files;
};

// Deterministic end-to-end run; with out_dir set writes the comb profile,
// intensity traces, histogram, and summary (same config + seed => identical
// bytes).
ScenarioRun run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

}  // namespace afcproc

#endif
