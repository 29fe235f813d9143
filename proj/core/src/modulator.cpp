#include "afcproc/modulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "afcproc/errors.hpp"

namespace afcproc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double frac(double x) { return x - std::floor(x); }

bool in_gate(const std::optional<Gate>& gate, double t) {
  return !gate || (t >= gate->t_lo && t < gate->t_hi);
}

// Phase of the modeled sawtooth waveform at time t, in cycles, for a positive
// repetition frequency fs (GHz = 1/ns). The ideal waveform ramps A per period
// and drops instantaneously. With a DAC the ramp is sampled with a zero-order
// hold, and each drop relaxes exponentially (time constant tau_fb) instead of
// instantaneously; in steady state the accumulated drop tails sum to a
// geometric closed form, making the waveform a pure function of the position
// in the period.
double sawtooth_cycles(double t, double fs, double amplitude, double dac_rate,
                       double tau_fb) {
  const double t_held = dac_rate > 0.0 ? std::floor(t * dac_rate) / dac_rate : t;
  double value = frac(fs * t_held);
  if (dac_rate > 0.0 && tau_fb > 0.0) {
    const double position = frac(fs * t);  // exact position of the last drop
    const double decay = std::exp(-1.0 / (fs * tau_fb));
    value += std::exp(-position / (fs * tau_fb)) / (1.0 - decay);
  }
  return amplitude * value;
}

ComplexField apply_phase(const ComplexField& field,
                         const std::optional<Gate>& gate,
                         const std::function<double(double)>& phase_cycles) {
  ComplexField out = field;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    const double t = out.grid.t(i);
    if (!in_gate(gate, t)) continue;
    out.samples[i] *= std::polar(1.0, kTwoPi * phase_cycles(t));
  }
  return out;
}

void flag_near_nyquist(ComplexField& field) {
  if (near_nyquist_fraction(to_spectrum(field)) >= 1e-6) {
    field.flags |= kFlagNearNyquist;
  }
}

void validate_serrodyne(const SerrodyneSpec& spec) {
  if (std::abs(spec.shift_mhz) > kMaxSerrodyneShiftMhz) {
    throw RangeError("serrodyne shift beyond +-5 GHz");
  }
  if (spec.amplitude_fraction < 0.0 || spec.amplitude_fraction > 1.0) {
    throw std::invalid_argument("serrodyne amplitude fraction must be in [0, 1]");
  }
  if (spec.dac_rate_per_ns < 0.0) {
    throw std::invalid_argument("DAC rate must be >= 0");
  }
}

}  // namespace

ComplexField serrodyne(const ComplexField& field, const SerrodyneSpec& spec) {
  validate_serrodyne(spec);
  const double sign = spec.shift_mhz < 0.0 ? -1.0 : 1.0;
  const double fs = std::abs(spec.shift_mhz) * 1e-3;  // GHz = cycles/ns
  const double a = spec.amplitude_fraction;
  if (fs == 0.0 || a == 0.0) return field;

  ComplexField out;
  if (spec.dac_rate_per_ns == 0.0 && a == 1.0) {
    // Ideal full-depth sawtooth == exact frequency translation.
    out = apply_phase(field, spec.gate,
                      [&](double t) { return sign * fs * t; });
  } else {
    const double tau_fb =
        spec.dac_rate_per_ns > 0.0 ? serrodyne_flyback_time_constant() : 0.0;
    out = apply_phase(field, spec.gate, [&](double t) {
      return sign * sawtooth_cycles(t, fs, a, spec.dac_rate_per_ns, tau_fb);
    });
  }
  flag_near_nyquist(out);
  return out;
}

ComplexField chirp(const ComplexField& field, const ChirpSpec& spec) {
  const double r = spec.rate_mhz_per_ns;
  const double f1 = spec.f1_mhz;
  ComplexField out = apply_phase(field, spec.gate, [&](double t) {
    return cycles(f1, t) - 0.5 * cycles(r * t, t);
  });
  const double edge_fraction = near_nyquist_fraction(to_spectrum(out));
  if (edge_fraction >= 1e-3) {
    throw NyquistError("chirp pushes spectral content past the Nyquist edge");
  }
  if (edge_fraction >= 1e-6) out.flags |= kFlagNearNyquist;
  return out;
}

ComplexField gated_shifts(const ComplexField& field, const GatedShiftProgram& program) {
  std::vector<GatedShift> sorted = program.shifts;
  std::sort(sorted.begin(), sorted.end(),
            [](const GatedShift& a, const GatedShift& b) { return a.window.t_lo < b.window.t_lo; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Gate& w = sorted[i].window;
    if (!(w.t_hi > w.t_lo)) throw ProgramError("gated shift window is empty");
    if (w.t_lo < field.grid.t_start || w.t_hi > field.grid.t_end()) {
      throw ProgramError("gated shift window outside the grid");
    }
    if (i > 0 && w.t_lo < sorted[i - 1].window.t_hi) {
      throw ProgramError("gated shift windows overlap");
    }
  }
  ComplexField out = field;
  for (const GatedShift& gs : sorted) {
    SerrodyneSpec s;
    s.shift_mhz = gs.shift_mhz;
    s.amplitude_fraction = gs.amplitude_fraction;
    s.gate = gs.window;
    out = serrodyne(out, s);
  }
  return out;
}

double serrodyne_harmonic_power(const SerrodyneSpec& spec, int harmonic) {
  validate_serrodyne(spec);
  const double fs = std::abs(spec.shift_mhz) * 1e-3;
  if (fs == 0.0) throw std::invalid_argument("harmonic power needs a nonzero shift");
  const double tau_fb =
      spec.dac_rate_per_ns > 0.0 ? serrodyne_flyback_time_constant() : 0.0;

  // Project e^{i phi(t)} onto the k-th sideband over many periods (the DAC
  // grid need not be commensurate with the period).
  const int periods = 64;
  const int per_period = 512;
  const long total = static_cast<long>(periods) * per_period;
  const double dt = 1.0 / (fs * per_period);
  cplx acc = 0.0;
  for (long i = 0; i < total; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * dt;
    const double phase = sawtooth_cycles(t, fs, spec.amplitude_fraction,
                                         spec.dac_rate_per_ns, tau_fb);
    acc += std::polar(1.0, kTwoPi * (phase - harmonic * fs * t));
  }
  return std::norm(acc / static_cast<double>(total));
}

double serrodyne_flyback_time_constant() {
  static const double calibrated = [] {
    // Anchor: 1 GHz shift, full depth, 20 GS/ns DAC -> 80% first-harmonic power.
    SerrodyneSpec anchor;
    anchor.shift_mhz = 1000.0;
    anchor.amplitude_fraction = 1.0;
    anchor.dac_rate_per_ns = 20.0;

    const double target = 0.80;
    auto power = [&](double tau) {
      const double fs = 1.0;
      const int per_period = 2048;
      cplx acc = 0.0;
      for (int i = 0; i < 20 * per_period; ++i) {
        const double t = (i + 0.5) / (fs * per_period);
        const double phase = sawtooth_cycles(t, fs, 1.0, anchor.dac_rate_per_ns, tau);
        acc += std::polar(1.0, kTwoPi * (phase - fs * t));
      }
      return std::norm(acc / static_cast<double>(20 * per_period));
    };

    double lo = 1e-4, hi = 0.5;  // power(lo) ~ 0.99, power(hi) ~ 0.15
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (power(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return calibrated;
}

ComplexField apply_insertion_loss(const ComplexField& field, double loss_db) {
  if (loss_db < 0.0) throw std::invalid_argument("insertion loss must be >= 0 dB");
  if (loss_db == 0.0) return field;
  return scaled(field, std::pow(10.0, -loss_db / 20.0));
}

}  // namespace afcproc
