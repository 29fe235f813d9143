#include "afcproc/catalog.hpp"

#include <cmath>

#include "afcproc/errors.hpp"

namespace afcproc {

namespace {

GaussianPulseSpec probe_pulse(double t0, double amplitude = 1.0, double detuning = 0.0) {
  GaussianPulseSpec p;
  p.t0_ns = t0;
  p.fwhm_ns = 12.0;
  p.detuning_mhz = detuning;
  p.amplitude = amplitude;
  return p;
}

ModulatorAction shift_all(double shift_mhz) {
  SerrodyneSpec s;
  s.shift_mhz = shift_mhz;
  return ModulatorAction{s, StageTarget::both};
}

ModulatorAction shift_windows(std::initializer_list<GatedShift> windows) {
  GatedShiftProgram g;
  g.shifts = windows;
  return ModulatorAction{g, StageTarget::both};
}

ModulatorAction chirp_action(double rate, double f1 = 0.0) {
  ChirpSpec c;
  c.rate_mhz_per_ns = rate;
  c.f1_mhz = f1;
  return ModulatorAction{c, StageTarget::both};
}

// 500 MHz processor with storage ramping 33.3 -> 100 ns (spacing 30 -> 10 MHz),
// mu = 0.133 ns/MHz.
ProcessorProgram ramp_500mhz() {
  ChirpedCombSegment seg;
  seg.f_lo_mhz = -250.0;
  seg.f_hi_mhz = 250.0;
  seg.delta_lo_mhz = 30.0;
  seg.delta_hi_mhz = 10.0;
  ProcessorProgram p;
  p.segments.emplace_back(seg);
  return p;
}

// 2 GHz version of the same ramp, mu = 0.0333 ns/MHz.
ProcessorProgram ramp_2ghz() {
  ChirpedCombSegment seg;
  seg.f_lo_mhz = -1000.0;
  seg.f_hi_mhz = 1000.0;
  seg.delta_lo_mhz = 30.0;
  seg.delta_hi_mhz = 10.0;
  ProcessorProgram p;
  p.segments.emplace_back(seg);
  return p;
}

// 600 MHz band at +700 MHz, 33.3 MHz spacing -> 30 ns storage.
ProcessorProgram carving_comb() {
  CombSegment seg;
  seg.f_lo_mhz = 400.0;
  seg.f_hi_mhz = 1000.0;
  seg.delta_mhz = 1e3 / 30.0;
  ProcessorProgram p;
  p.segments.emplace_back(seg);
  return p;
}

ScenarioConfig base_scenario(const std::string& id, const std::string& description) {
  ScenarioConfig c;
  c.id = id;
  c.description = description;
  c.detection.rng_seed = 1234567;
  return c;
}

}  // namespace

ProcessorProgram six_segment_processor(const SegmentDefaults& defaults) {
  const DelayTarget targets[] = {
      {-500.0, -300.0, {25.0}, {}},  {-300.0, -100.0, {50.0}, {}},
      {100.0, 300.0, {75.0}, {}},    {300.0, 500.0, {100.0}, {}},
      {500.0, 700.0, {125.0}, {}},   {700.0, 900.0, {40.0, 65.0}, {}},
  };
  ProcessorProgram p = design_comb(targets, DesignLimits{}, defaults);
  p.equalize_efficiencies = true;
  return p;
}

std::vector<CatalogEntry> list_catalog() {
  std::vector<CatalogEntry> entries;
  for (const char* id :
       {"fig2", "fig3a", "fig3b", "fig3c", "fig4", "fig5", "fig6b", "fig6c", "fig7a",
        "fig7b", "fig7c", "fig8b", "fig8c", "fig9", "fig10a", "fig10b", "figA2a",
        "figA2b"}) {
    entries.push_back({id, catalog_scenario(id).description});
  }
  return entries;
}

bool catalog_has(const std::string& id) {
  for (const char* known :
       {"fig2", "fig3a", "fig3b", "fig3c", "fig4", "fig5", "fig6b", "fig6c", "fig7a",
        "fig7b", "fig7c", "fig8b", "fig8c", "fig9", "fig10a", "fig10b", "figA2a",
        "figA2b"}) {
    if (id == known) return true;
  }
  return false;
}

ProcessorProgram catalog_program(const std::string& id) {
  return catalog_scenario(id).chain.program;
}

ScenarioConfig catalog_scenario(const std::string& id) {
  if (id == "fig2") {
    ScenarioConfig c = base_scenario(
        "fig2",
        "Six-segment processor profile: 200 MHz segments at -400/-200/+200/+400/+600 MHz "
        "detuning with 25/50/75/100/125 ns storage, plus a double segment at +800 MHz "
        "(40 ns and 65 ns). The probe is mapped onto the +200 MHz segment (75 ns).");
    c.pulses = {probe_pulse(0.0, 1.0, 200.0)};
    c.chain.program = six_segment_processor();
    return c;
  }
  if (id == "fig3a") {
    ScenarioConfig c = base_scenario(
        "fig3a",
        "Sequencing, first-in-first-out: three 12 ns pulses (25 ns apart, amplitudes "
        "1.0/0.75/0.5) all shifted +200 MHz onto the 75 ns segment.");
    c.pulses = {probe_pulse(0.0, 1.0), probe_pulse(25.0, 0.75), probe_pulse(50.0, 0.5)};
    c.chain.input_actions = {shift_all(200.0)};
    c.chain.program = six_segment_processor();
    return c;
  }
  if (id == "fig3b") {
    ScenarioConfig c = base_scenario(
        "fig3b",
        "Sequencing, first-in-last-out: pulses 1/2/3 shifted to the 125/75/25 ns "
        "segments (+600/+200/-400 MHz), reversing the order on recall.");
    c.pulses = {probe_pulse(0.0, 1.0), probe_pulse(25.0, 0.75), probe_pulse(50.0, 0.5)};
    c.chain.input_actions = {shift_windows({{{-12.5, 12.5}, 600.0, 1.0},
                                            {{12.5, 37.5}, 200.0, 1.0},
                                            {{37.5, 62.5}, -400.0, 1.0}})};
    c.chain.program = six_segment_processor();
    return c;
  }
  if (id == "fig3c") {
    ScenarioConfig c = base_scenario(
        "fig3c",
        "Sequencing, arbitrary re-ordering: pulses 1/2/3 to the 100/50/75 ns segments "
        "(+400/-200/+200 MHz), recalled as 2, 1, 3.");
    c.pulses = {probe_pulse(0.0, 1.0), probe_pulse(25.0, 0.75), probe_pulse(50.0, 0.5)};
    c.chain.input_actions = {shift_windows({{{-12.5, 12.5}, 400.0, 1.0},
                                            {{12.5, 37.5}, -200.0, 1.0},
                                            {{37.5, 62.5}, 200.0, 1.0}})};
    c.chain.program = six_segment_processor();
    return c;
  }
  if (id == "fig4") {
    ScenarioConfig c = base_scenario(
        "fig4",
        "Time-to-frequency demultiplexing: one temporal mode carrying -400/-200/+200 MHz "
        "frequency modes, retrieved after 25/50/75 ns respectively.");
    c.pulses = {probe_pulse(0.0, 1.0, -400.0), probe_pulse(0.0, 1.0, -200.0),
                probe_pulse(0.0, 1.0, 200.0)};
    c.chain.program = six_segment_processor();
    return c;
  }
  if (id == "fig5") {
    ScenarioConfig c = base_scenario(
        "fig5",
        "Pulse splitting: three 4 ns portions of one 12 ns pulse shifted to the "
        "75/50/25 ns segments (+200/-200/-400 MHz); three spectro-temporal modes out.");
    c.pulses = {probe_pulse(0.0)};
    c.chain.input_actions = {shift_windows({{{-6.0, -2.0}, 200.0, 1.0},
                                            {{-2.0, 2.0}, -200.0, 1.0},
                                            {{2.0, 6.0}, -400.0, 1.0}})};
    c.chain.program = six_segment_processor();
    return c;
  }
  if (id == "fig6b") {
    ScenarioConfig c = base_scenario(
        "fig6b",
        "Time-bin generation: one pulse shifted +800 MHz onto the double segment "
        "(40 ns and 65 ns storage) is recalled as an early/late superposition.");
    c.pulses = {probe_pulse(0.0)};
    c.chain.input_actions = {shift_all(800.0)};
    c.chain.program = six_segment_processor();
    return c;
  }
  if (id == "fig6c") {
    ScenarioConfig c = base_scenario(
        "fig6c",
        "Time-bin interference: input (|e> - |l>)/sqrt(2), 25 ns separation, onto the "
        "40/65 ns double segment; the central bin at 65 ns interferes destructively.");
    TimeBinSpec tb;
    const double s2 = 1.0 / std::sqrt(2.0);
    tb.a_early = s2;
    tb.a_late = -s2;
    tb.separation_ns = 25.0;
    tb.base = probe_pulse(0.0);
    c.time_bin = tb;
    c.chain.input_actions = {shift_all(800.0)};
    c.chain.program = six_segment_processor();
    return c;
  }
  if (id == "fig7a") {
    ScenarioConfig c = base_scenario(
        "fig7a",
        "Temporal shaping: three 3 ns portions of a 12 ns pulse shifted +700 MHz onto a "
        "600 MHz-wide comb with 30 ns storage; the echo is temporally modulated.");
    c.pulses = {probe_pulse(0.0)};
    c.chain.input_actions = {shift_windows({{{-4.5, -1.5}, 700.0, 1.0},
                                            {{-1.5, 1.5}, 700.0, 1.0},
                                            {{1.5, 4.5}, 700.0, 1.0}})};
    c.chain.program = carving_comb();
    return c;
  }
  if (id == "fig7b") {
    ScenarioConfig c = base_scenario(
        "fig7b",
        "Temporal carving: a single 3 ns portion of a 12 ns pulse shifted +700 MHz onto "
        "the 600 MHz comb (30 ns storage); the echo is several times shorter.");
    c.pulses = {probe_pulse(0.0)};
    c.chain.input_actions = {shift_windows({{{-1.5, 1.5}, 700.0, 1.0}})};
    c.chain.program = carving_comb();
    return c;
  }
  if (id == "fig7c") {
    ScenarioConfig c = base_scenario(
        "fig7c",
        "Spectral filtering: a 70 MHz-wide pulse (10.7 ns) shifted +700 MHz onto a comb "
        "narrowed to 40 MHz bandwidth (50 ns storage); the echo is about twice as long.");
    GaussianPulseSpec p = probe_pulse(0.0);
    p.fwhm_ns = 10.708;  // spectral intensity 1/e^2 full width = 70 MHz
    c.pulses = {p};
    c.chain.input_actions = {shift_all(700.0)};
    CombSegment seg;
    seg.f_lo_mhz = 680.0;
    seg.f_hi_mhz = 720.0;
    seg.delta_mhz = 20.0;
    c.chain.program.segments.emplace_back(seg);
    return c;
  }
  if (id == "fig8b") {
    ScenarioConfig c = base_scenario(
        "fig8b",
        "Compression: 500 MHz comb with storage ramping 33-100 ns (mu = 0.133 ns/MHz); "
        "12 ns pulse chirped at +8.3 MHz/ns (mu*r = 1.11) compresses about 2.4x.");
    c.pulses = {probe_pulse(0.0)};
    c.chain.input_actions = {chirp_action(8.3)};
    c.chain.program = ramp_500mhz();
    return c;
  }
  if (id == "fig8c") {
    ScenarioConfig c = base_scenario(
        "fig8c",
        "Stretching: same 33-100 ns ramp comb, chirp sign flipped (-8.3 MHz/ns); the "
        "echo stretches to roughly the input duration plus the 100 MHz-span delay ramp.");
    c.pulses = {probe_pulse(0.0)};
    c.chain.input_actions = {chirp_action(-8.3)};
    c.chain.program = ramp_500mhz();
    return c;
  }
  if (id == "fig9") {
    ScenarioConfig c = base_scenario(
        "fig9",
        "High compression: 2 GHz comb, storage 33-100 ns (mu = 0.033 ns/MHz); 30 ns "
        "pulse chirped at +32.9 MHz/ns (mu*r = 1.10) compresses about 10x.");
    GaussianPulseSpec p = probe_pulse(0.0);
    p.fwhm_ns = 30.0;
    c.pulses = {p};
    c.chain.input_actions = {chirp_action(32.9)};
    c.chain.program = ramp_2ghz();
    return c;
  }
  if (id == "fig10a") {
    ScenarioConfig c = base_scenario(
        "fig10a",
        "Selective delay, discrete: shifting the pulse by -400/-200/+200 MHz selects "
        "25/50/75 ns storage on the six-segment processor (this run uses +200 MHz).");
    c.pulses = {probe_pulse(0.0)};
    c.chain.input_actions = {shift_all(200.0)};
    c.chain.program = six_segment_processor();
    return c;
  }
  if (id == "fig10b") {
    ScenarioConfig c = base_scenario(
        "fig10b",
        "Selective delay, continuous: 2 GHz ramp comb (storage 33-100 ns); chirped at "
        "+36.85 MHz/ns the echo compresses about 4x, and moving the chirp start "
        "frequency tunes the delay at 0.033 ns per MHz.");
    c.pulses = {probe_pulse(0.0)};
    c.chain.input_actions = {chirp_action(36.85)};
    c.chain.program = ramp_2ghz();
    return c;
  }
  if (id == "figA2a") {
    ScenarioConfig c = base_scenario(
        "figA2a",
        "Output filtering: 600 MHz comb with 30 ns storage; the transmitted pulse is "
        "shifted -200 MHz behind the processor while the echo stays at 0 MHz, so the "
        "80 MHz Fabry-Perot filter at 0 MHz passes only the echo.");
    c.pulses = {probe_pulse(0.0)};
    CombSegment seg;
    seg.f_lo_mhz = -300.0;
    seg.f_hi_mhz = 300.0;
    seg.delta_mhz = 1e3 / 30.0;
    c.chain.program.segments.emplace_back(seg);
    SerrodyneSpec out_shift;
    out_shift.shift_mhz = -200.0;
    out_shift.gate = Gate{-15.0, 15.0};
    c.chain.output_actions = {ModulatorAction{out_shift, StageTarget::both}};
    c.chain.fp = FPFilterSpec{0.0, 80.0, 23000.0};
    return c;
  }
  if (id == "figA2b") {
    ScenarioConfig c = base_scenario(
        "figA2b",
        "Frequency-mode selection: two pulses at -100/+100 MHz stored for 50/70 ns in a "
        "two-segment comb; shifting the echoes -200 MHz routes the +100 MHz mode "
        "through the Fabry-Perot filter at -100 MHz (shift 0 selects the other mode).");
    c.pulses = {probe_pulse(0.0, 1.0, -100.0), probe_pulse(25.0, 1.0, 100.0)};
    const DelayTarget targets[] = {
        {-200.0, 0.0, {50.0}, {}},
        {0.0, 200.0, {70.0}, {}},
    };
    c.chain.program = design_comb(targets);
    SerrodyneSpec out_shift;
    out_shift.shift_mhz = -200.0;
    out_shift.gate = Gate{40.0, 110.0};  // echo windows only
    c.chain.output_actions = {ModulatorAction{out_shift, StageTarget::both}};
    c.chain.fp = FPFilterSpec{-100.0, 80.0, 23000.0};
    return c;
  }
  throw ConfigError("unknown catalog id '" + id + "'");
}

}  // namespace afcproc
