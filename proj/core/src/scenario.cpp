#include "afcproc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "afcproc/catalog.hpp"
#include "afcproc/errors.hpp"

namespace afcproc {

namespace {

using njson = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config field '" + path + "': " + what);
}

const njson& require(const njson& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

double get_number(const njson& j, const std::string& path, const char* key) {
  const njson& v = require(j, path, key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double get_number_or(const njson& j, const std::string& path, const char* key,
                     double fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) fail(path + "." + key, "expected a number");
  return it->get<double>();
}

bool get_bool_or(const njson& j, const std::string& path, const char* key, bool fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) fail(path + "." + key, "expected a boolean");
  return it->get<bool>();
}

std::string get_string(const njson& j, const std::string& path, const char* key) {
  const njson& v = require(j, path, key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

cplx get_complex_or(const njson& j, const std::string& path, const char* key,
                    cplx fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (it->is_number()) return cplx(it->get<double>(), 0.0);
  if (it->is_array() && it->size() == 2 && (*it)[0].is_number() && (*it)[1].is_number()) {
    return cplx((*it)[0].get<double>(), (*it)[1].get<double>());
  }
  fail(path + "." + key, "expected a number or [re, im]");
}

std::optional<Gate> get_gate(const njson& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_array() || it->size() != 2) fail(path + "." + key, "expected [t_lo, t_hi]");
  return Gate{(*it)[0].get<double>(), (*it)[1].get<double>()};
}

GaussianPulseSpec parse_pulse(const njson& j, const std::string& path) {
  GaussianPulseSpec p;
  p.t0_ns = get_number_or(j, path, "t0_ns", 0.0);
  p.fwhm_ns = get_number(j, path, "fwhm_ns");
  p.detuning_mhz = get_number_or(j, path, "detuning_mhz", 0.0);
  p.amplitude = get_complex_or(j, path, "amplitude", 1.0);
  return p;
}

ModulatorAction parse_action(const njson& j, const std::string& path) {
  ModulatorAction action;
  const std::string kind = get_string(j, path, "kind");
  if (kind == "serrodyne") {
    SerrodyneSpec s;
    s.shift_mhz = get_number(j, path, "shift_mhz");
    s.amplitude_fraction = get_number_or(j, path, "amplitude_fraction", 1.0);
    s.dac_rate_per_ns = get_number_or(j, path, "dac_rate_per_ns", 0.0);
    s.gate = get_gate(j, path, "gate_ns");
    action.op = s;
  } else if (kind == "chirp") {
    ChirpSpec c;
    c.rate_mhz_per_ns = get_number(j, path, "rate_mhz_per_ns");
    c.f1_mhz = get_number_or(j, path, "f1_mhz", 0.0);
    c.gate = get_gate(j, path, "gate_ns");
    action.op = c;
  } else if (kind == "gated_shifts") {
    GatedShiftProgram g;
    const njson& windows = require(j, path, "windows");
    if (!windows.is_array()) fail(path + ".windows", "expected an array");
    for (std::size_t i = 0; i < windows.size(); ++i) {
      const std::string wpath = path + ".windows[" + std::to_string(i) + "]";
      const njson& w = windows[i];
      auto gate = get_gate(w, wpath, "gate_ns");
      if (!gate) fail(wpath + ".gate_ns", "missing");
      g.shifts.push_back({*gate, get_number(w, wpath, "shift_mhz"),
                          get_number_or(w, wpath, "amplitude_fraction", 1.0)});
    }
    action.op = g;
  } else {
    fail(path + ".kind", "unknown action kind '" + kind + "'");
  }
  auto it = j.find("target");
  if (it != j.end()) {
    const std::string t = it->get<std::string>();
    if (t == "both") action.target = StageTarget::both;
    else if (t == "transmitted") action.target = StageTarget::transmitted;
    else if (t == "echo") action.target = StageTarget::echo;
    else fail(path + ".target", "expected both|transmitted|echo");
  }
  return action;
}

Segment parse_segment(const njson& j, const std::string& path) {
  const std::string kind = get_string(j, path, "kind");
  if (kind == "comb") {
    CombSegment s;
    s.f_lo_mhz = get_number(j, path, "f_lo_mhz");
    s.f_hi_mhz = get_number(j, path, "f_hi_mhz");
    s.delta_mhz = get_number(j, path, "delta_mhz");
    s.eta = get_number_or(j, path, "eta", s.eta);
    s.t_bg = get_number_or(j, path, "t_bg", s.t_bg);
    if (j.contains("f_ref_mhz")) s.f_ref_mhz = get_number(j, path, "f_ref_mhz");
    return s;
  }
  if (kind == "chirped") {
    ChirpedCombSegment s;
    s.f_lo_mhz = get_number(j, path, "f_lo_mhz");
    s.f_hi_mhz = get_number(j, path, "f_hi_mhz");
    s.delta_lo_mhz = get_number(j, path, "delta_lo_mhz");
    s.delta_hi_mhz = get_number(j, path, "delta_hi_mhz");
    s.eta = get_number_or(j, path, "eta", s.eta);
    s.t_bg = get_number_or(j, path, "t_bg", s.t_bg);
    if (j.contains("f0_mhz")) s.f0_mhz = get_number(j, path, "f0_mhz");
    return s;
  }
  if (kind == "double") {
    DoubleCombSegment s;
    s.f_lo_mhz = get_number(j, path, "f_lo_mhz");
    s.f_hi_mhz = get_number(j, path, "f_hi_mhz");
    s.t_bg = get_number_or(j, path, "t_bg", 0.0);
    const njson& combs = require(j, path, "combs");
    if (!combs.is_array() || combs.size() != 2) fail(path + ".combs", "expected 2 entries");
    for (int k = 0; k < 2; ++k) {
      const std::string cpath = path + ".combs[" + std::to_string(k) + "]";
      s.combs[k].delta_mhz = get_number(combs[k], cpath, "delta_mhz");
      s.combs[k].eta = get_number(combs[k], cpath, "eta");
      s.combs[k].extra_phase_rad = get_number_or(combs[k], cpath, "extra_phase_rad", 0.0);
    }
    if (j.contains("f_ref_mhz")) s.f_ref_mhz = get_number(j, path, "f_ref_mhz");
    return s;
  }
  fail(path + ".kind", "unknown segment kind '" + kind + "'");
}

ProcessorProgram parse_program(const njson& j, const std::string& path) {
  ProcessorProgram p;
  p.out_of_band_transmission = get_number_or(j, path, "out_of_band_transmission", 1.0);
  p.equalize_efficiencies = get_bool_or(j, path, "equalize_efficiencies", false);
  const njson& segments = require(j, path, "segments");
  if (!segments.is_array()) fail(path + ".segments", "expected an array");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    p.segments.push_back(
        parse_segment(segments[i], path + ".segments[" + std::to_string(i) + "]"));
  }
  return p;
}

njson action_to_json(const ModulatorAction& action) {
  njson j;
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, SerrodyneSpec>) {
          j["kind"] = "serrodyne";
          j["shift_mhz"] = op.shift_mhz;
          j["amplitude_fraction"] = op.amplitude_fraction;
          j["dac_rate_per_ns"] = op.dac_rate_per_ns;
          if (op.gate) j["gate_ns"] = {op.gate->t_lo, op.gate->t_hi};
        } else if constexpr (std::is_same_v<T, ChirpSpec>) {
          j["kind"] = "chirp";
          j["rate_mhz_per_ns"] = op.rate_mhz_per_ns;
          j["f1_mhz"] = op.f1_mhz;
          if (op.gate) j["gate_ns"] = {op.gate->t_lo, op.gate->t_hi};
        } else {
          j["kind"] = "gated_shifts";
          njson windows = njson::array();
          for (const GatedShift& g : op.shifts) {
            windows.push_back({{"gate_ns", {g.window.t_lo, g.window.t_hi}},
                               {"shift_mhz", g.shift_mhz},
                               {"amplitude_fraction", g.amplitude_fraction}});
          }
          j["windows"] = windows;
        }
      },
      action.op);
  switch (action.target) {
    case StageTarget::both: break;
    case StageTarget::transmitted: j["target"] = "transmitted"; break;
    case StageTarget::echo: j["target"] = "echo"; break;
  }
  return j;
}

njson segment_to_json(const Segment& segment) {
  njson j;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        j["f_lo_mhz"] = s.f_lo_mhz;
        j["f_hi_mhz"] = s.f_hi_mhz;
        j["t_bg"] = s.t_bg;
        if constexpr (std::is_same_v<T, CombSegment>) {
          j["kind"] = "comb";
          j["delta_mhz"] = s.delta_mhz;
          j["eta"] = s.eta;
          if (s.f_ref_mhz) j["f_ref_mhz"] = *s.f_ref_mhz;
        } else if constexpr (std::is_same_v<T, ChirpedCombSegment>) {
          j["kind"] = "chirped";
          j["delta_lo_mhz"] = s.delta_lo_mhz;
          j["delta_hi_mhz"] = s.delta_hi_mhz;
          j["eta"] = s.eta;
          if (s.f0_mhz) j["f0_mhz"] = *s.f0_mhz;
        } else {
          j["kind"] = "double";
          njson combs = njson::array();
          for (const DoubleCombEntry& c : s.combs) {
            combs.push_back({{"delta_mhz", c.delta_mhz},
                             {"eta", c.eta},
                             {"extra_phase_rad", c.extra_phase_rad}});
          }
          j["combs"] = combs;
          if (s.f_ref_mhz) j["f_ref_mhz"] = *s.f_ref_mhz;
        }
      },
      segment);
  return j;
}

std::vector<EchoPeak> find_echo_peaks(const ComplexField& echo) {
  const std::size_t n = echo.samples.size();
  std::vector<double> intensity(n);
  double global = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    intensity[i] = std::norm(echo.samples[i]);
    global = std::max(global, intensity[i]);
  }
  std::vector<EchoPeak> peaks;
  if (global == 0.0) return peaks;
  const double floor_level = 0.05 * global;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (intensity[i] < floor_level) continue;
    if (intensity[i] >= intensity[i - 1] && intensity[i] > intensity[i + 1]) {
      // Keep only the largest sample within +-2 ns to suppress ripple.
      const auto guard = static_cast<std::size_t>(2.0 / echo.grid.dt);
      bool is_local_max = true;
      for (std::size_t k = i > guard ? i - guard : 0; k <= std::min(i + guard, n - 1); ++k) {
        if (intensity[k] > intensity[i]) {
          is_local_max = false;
          break;
        }
      }
      if (!is_local_max) continue;
      double t = echo.grid.t(i);
      const double a = intensity[i - 1], b = intensity[i], c = intensity[i + 1];
      const double den = a - 2.0 * b + c;
      if (den < 0.0) t += 0.5 * (a - c) / den * echo.grid.dt;
      peaks.push_back({t, intensity[i]});
    }
  }
  return peaks;
}

njson measurement_to_json(const std::optional<Measurement>& m, double e) {
  if (!m) return nullptr;
  njson j;
  j["peak_time_ns"] = m->peak_time;
  j["fwhm_ns"] = m->fwhm;
  j["energy_photons"] = e;
  j["centroid_mhz"] = m->centroid_frequency;
  j["multi_lobe"] = m->multi_lobe;
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& text,
                std::vector<std::filesystem::path>& files) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os << text;
  files.push_back(path);
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
  njson j;
  try {
    j = njson::parse(json_text);
  } catch (const njson::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  ScenarioConfig c;
  c.id = j.contains("id") ? get_string(j, "", "id") : "scenario";
  if (j.contains("description")) c.description = get_string(j, "", "description");

  if (j.contains("grid")) {
    const njson& g = j["grid"];
    c.grid.t_start_ns = get_number_or(g, "grid", "t_start_ns", c.grid.t_start_ns);
    c.grid.dt_ns = get_number_or(g, "grid", "dt_ns", c.grid.dt_ns);
    c.grid.n = static_cast<std::size_t>(
        get_number_or(g, "grid", "n", static_cast<double>(c.grid.n)));
  }

  if (j.contains("pulses")) {
    const njson& pulses = j["pulses"];
    if (!pulses.is_array()) fail("pulses", "expected an array");
    for (std::size_t i = 0; i < pulses.size(); ++i) {
      c.pulses.push_back(parse_pulse(pulses[i], "pulses[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("time_bin")) {
    const njson& tb = j["time_bin"];
    TimeBinSpec spec;
    spec.a_early = get_complex_or(tb, "time_bin", "a_early", 1.0);
    spec.a_late = get_complex_or(tb, "time_bin", "a_late", 0.0);
    spec.separation_ns = get_number(tb, "time_bin", "separation_ns");
    spec.base = parse_pulse(require(tb, "time_bin", "base"), "time_bin.base");
    c.time_bin = spec;
  }
  if (c.pulses.empty() && !c.time_bin) fail("pulses", "scenario needs pulses or time_bin");
  c.mean_photons = get_number_or(j, "", "mean_photons", c.mean_photons);

  for (const char* key : {"input_actions", "output_actions"}) {
    if (!j.contains(key)) continue;
    const njson& actions = j[key];
    if (!actions.is_array()) fail(key, "expected an array");
    auto& dst = std::string(key) == "input_actions" ? c.chain.input_actions
                                                    : c.chain.output_actions;
    for (std::size_t i = 0; i < actions.size(); ++i) {
      dst.push_back(
          parse_action(actions[i], std::string(key) + "[" + std::to_string(i) + "]"));
    }
  }

  if (j.contains("program_ref")) {
    const std::string ref = get_string(j, "", "program_ref");
    if (!catalog_has(ref)) fail("program_ref", "unknown catalog id '" + ref + "'");
    c.chain.program = catalog_program(ref);
  } else if (j.contains("program")) {
    c.chain.program = parse_program(j["program"], "program");
  } else {
    fail("program", "missing (or use program_ref)");
  }

  if (j.contains("fp_filter") && !j["fp_filter"].is_null()) {
    const njson& fp = j["fp_filter"];
    FPFilterSpec f;
    f.center_mhz = get_number_or(fp, "fp_filter", "center_mhz", 0.0);
    f.linewidth_mhz = get_number(fp, "fp_filter", "linewidth_mhz");
    f.fsr_mhz = get_number(fp, "fp_filter", "fsr_mhz");
    c.chain.fp = f;
  }
  c.chain.input_loss_db = get_number_or(j, "", "input_loss_db", 0.0);
  c.chain.output_loss_db = get_number_or(j, "", "output_loss_db", 0.0);

  if (j.contains("detection")) {
    const njson& d = j["detection"];
    c.detection.det_efficiency =
        get_number_or(d, "detection", "det_efficiency", c.detection.det_efficiency);
    c.detection.dark_rate_hz =
        get_number_or(d, "detection", "dark_rate_hz", c.detection.dark_rate_hz);
    c.detection.bin_width_ns =
        get_number_or(d, "detection", "bin_width_ns", c.detection.bin_width_ns);
    c.detection.pulse_rate_mhz =
        get_number_or(d, "detection", "pulse_rate_mhz", c.detection.pulse_rate_mhz);
    c.detection.duration_s =
        get_number_or(d, "detection", "duration_s", c.detection.duration_s);
    c.detection.duty_cycle =
        get_number_or(d, "detection", "duty_cycle", c.detection.duty_cycle);
    c.detection.rng_seed = static_cast<std::uint64_t>(get_number_or(
        d, "detection", "rng_seed", static_cast<double>(c.detection.rng_seed)));
  }
  return c;
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << is.rdbuf();
  return parse_scenario(buffer.str());
}

std::string scenario_to_json(const ScenarioConfig& c) {
  njson j;
  j["id"] = c.id;
  j["description"] = c.description;
  j["grid"] = {{"t_start_ns", c.grid.t_start_ns},
               {"dt_ns", c.grid.dt_ns},
               {"n", c.grid.n}};
  njson pulses = njson::array();
  for (const GaussianPulseSpec& p : c.pulses) {
    pulses.push_back({{"t0_ns", p.t0_ns},
                      {"fwhm_ns", p.fwhm_ns},
                      {"detuning_mhz", p.detuning_mhz},
                      {"amplitude", {p.amplitude.real(), p.amplitude.imag()}}});
  }
  j["pulses"] = pulses;
  if (c.time_bin) {
    j["time_bin"] = {
        {"a_early", {c.time_bin->a_early.real(), c.time_bin->a_early.imag()}},
        {"a_late", {c.time_bin->a_late.real(), c.time_bin->a_late.imag()}},
        {"separation_ns", c.time_bin->separation_ns},
        {"base",
         {{"t0_ns", c.time_bin->base.t0_ns},
          {"fwhm_ns", c.time_bin->base.fwhm_ns},
          {"detuning_mhz", c.time_bin->base.detuning_mhz},
          {"amplitude",
           {c.time_bin->base.amplitude.real(), c.time_bin->base.amplitude.imag()}}}}};
  }
  j["mean_photons"] = c.mean_photons;
  njson in_actions = njson::array(), out_actions = njson::array();
  for (const ModulatorAction& a : c.chain.input_actions) in_actions.push_back(action_to_json(a));
  for (const ModulatorAction& a : c.chain.output_actions) out_actions.push_back(action_to_json(a));
  j["input_actions"] = in_actions;
  j["output_actions"] = out_actions;
  njson segments = njson::array();
  for (const Segment& s : c.chain.program.segments) segments.push_back(segment_to_json(s));
  j["program"] = {{"out_of_band_transmission", c.chain.program.out_of_band_transmission},
                  {"equalize_efficiencies", c.chain.program.equalize_efficiencies},
                  {"segments", segments}};
  if (c.chain.fp) {
    j["fp_filter"] = {{"center_mhz", c.chain.fp->center_mhz},
                      {"linewidth_mhz", c.chain.fp->linewidth_mhz},
                      {"fsr_mhz", c.chain.fp->fsr_mhz}};
  }
  j["input_loss_db"] = c.chain.input_loss_db;
  j["output_loss_db"] = c.chain.output_loss_db;
  j["detection"] = {{"det_efficiency", c.detection.det_efficiency},
                    {"dark_rate_hz", c.detection.dark_rate_hz},
                    {"bin_width_ns", c.detection.bin_width_ns},
                    {"pulse_rate_mhz", c.detection.pulse_rate_mhz},
                    {"duration_s", c.detection.duration_s},
                    {"duty_cycle", c.detection.duty_cycle},
                    {"rng_seed", c.detection.rng_seed}};
  return j.dump(2) + "\n";
}

ScenarioRun run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  ScenarioRun run;
  run.config = config;
  if (options.seed) run.config.detection.rng_seed = *options.seed;
  if (options.grid_dt) {
    const double span = config.grid.dt_ns * static_cast<double>(config.grid.n);
    run.config.grid.dt_ns = *options.grid_dt;
    run.config.grid.n =
        static_cast<std::size_t>(std::llround(span / *options.grid_dt));
  }

  const TimeGrid grid = run.config.grid.make();
  ComplexField field;
  field.grid = grid;
  field.samples.assign(grid.n, 0.0);
  if (!run.config.pulses.empty()) {
    field = add(field, pulse_train(run.config.pulses, grid));
  }
  if (run.config.time_bin) {
    field = add(field, time_bin_state(*run.config.time_bin, grid));
  }
  field = set_mean_photons(field, run.config.mean_photons);
  run.input = field;

  run.chain = run_chain(field, run.config.chain);
  run.echo_peaks = find_echo_peaks(run.chain.echo);

  const ComplexField at_detector = add(run.chain.transmitted, run.chain.echo);
  run.histogram = simulate_counts(at_detector, run.config.detection);

  std::optional<Measurement> in_obs;
  if (run.config.mean_photons > 0.0) in_obs = measure(field);
  if (in_obs && run.chain.echo_obs) {
    run.kappa = in_obs->fwhm / run.chain.echo_obs->fwhm;
  }

  njson summary;
  summary["id"] = run.config.id;
  summary["description"] = run.config.description;
  summary["seed"] = run.config.detection.rng_seed;
  summary["grid"] = {{"t_start_ns", grid.t_start}, {"dt_ns", grid.dt}, {"n", grid.n}};
  summary["input"] = measurement_to_json(in_obs, field_energy(field));
  summary["transmitted"] = measurement_to_json(
      run.chain.transmitted_obs, field_energy(run.chain.transmitted));
  summary["echo"] = measurement_to_json(run.chain.echo_obs, field_energy(run.chain.echo));
  njson peaks = njson::array();
  for (const EchoPeak& p : run.echo_peaks) {
    peaks.push_back({{"time_ns", p.time_ns}, {"intensity", p.intensity}});
  }
  summary["echo_peaks"] = peaks;
  if (run.kappa) summary["kappa"] = *run.kappa;
  summary["total_counts"] = [&] {
    std::uint64_t total = 0;
    for (std::uint64_t c : run.histogram.counts) total += c;
    return total;
  }();
  summary["warnings"] = run.chain.warnings;
  run.summary_json = summary.dump(2) + "\n";

  if (options.out_dir) {
    std::filesystem::create_directories(*options.out_dir);
    const std::string stem = run.config.id;
    write_file(*options.out_dir / (stem + "_comb_profile.tsv"),
               comb_profile_table(run.config.chain.program, grid), run.files);

    std::ostringstream traces;
    traces.precision(9);
    traces << "t_ns\tinput_intensity\ttransmitted_intensity\techo_intensity\n";
    for (std::size_t i = 0; i < grid.n; ++i) {
      traces << grid.t(i) << '\t' << std::norm(run.input.samples[i]) << '\t'
             << std::norm(run.chain.transmitted.samples[i]) << '\t'
             << std::norm(run.chain.echo.samples[i]) << '\n';
    }
    write_file(*options.out_dir / (stem + "_traces.tsv"), traces.str(), run.files);
    write_file(*options.out_dir / (stem + "_histogram.tsv"),
               histogram_table(run.histogram), run.files);
    write_file(*options.out_dir / (stem + "_summary.json"), run.summary_json, run.files);
  }
  return run;
}

}  // namespace afcproc
