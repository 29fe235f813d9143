#ifndef AFCPROC_MODULATOR_HPP
#define AFCPROC_MODULATOR_HPP

#include <optional>
#include <vector>

#include "afcproc/signal.hpp"

namespace afcproc {

inline constexpr double kMaxSerrodyneShiftMhz = 5000.0;

// Half-open time window [t_lo, t_hi), hard (rectangular) edges.
struct Gate {
  double t_lo = 0.0;
  double t_hi = 0.0;
};

// Sawtooth phase modulation of depth 2*pi*A at repetition frequency |shift|.
// A = 1 with an ideal DAC multiplies by e^{i 2 pi shift t} exactly.
// dac_rate > 0 switches to the imperfect model: zero-order hold at dac_rate
// samples/ns plus an exponential flyback of the sawtooth drops, whose time
// constant is calibrated once so a 1 GHz shift transfers 80% of the power
// into the shifted mode.
struct SerrodyneSpec {
  double shift_mhz = 0.0;
  double amplitude_fraction = 1.0;     // fraction of the 2*pi voltage, [0, 1]
  double dac_rate_per_ns = 0.0;        // 0 = ideal continuous sawtooth
  std::optional<Gate> gate;
};

// Linear chirp e^{i 2 pi (f1 t - r t^2 / 2)}: instantaneous frequency
// f1 - r*t, so positive r sweeps from high to low.
struct ChirpSpec {
  double rate_mhz_per_ns = 0.0;
  double f1_mhz = 0.0;
  std::optional<Gate> gate;
};

struct GatedShift {
  Gate window;
  double shift_mhz = 0.0;
  double amplitude_fraction = 1.0;
};

// Per-window serrodyne shifts; windows must not overlap. Un-gated regions
// pass unchanged.
struct GatedShiftProgram {
  std::vector<GatedShift> shifts;
};

ComplexField serrodyne(const ComplexField& field, const SerrodyneSpec& spec);
ComplexField chirp(const ComplexField& field, const ChirpSpec& spec);
ComplexField gated_shifts(const ComplexField& field, const GatedShiftProgram& program);

// |c_k|^2 of the modeled phase waveform: the power transferred to the k-th
// sideband of the repetition frequency (k is counted in the shift direction).
double serrodyne_harmonic_power(const SerrodyneSpec& spec, int harmonic);

// Flyback time constant (ns) of the imperfect model; solved lazily from the
// 80% @ 1 GHz anchor and cached.
double serrodyne_flyback_time_constant();

// Scalar controller insertion loss; loss_db = 0 is the identity.
ComplexField apply_insertion_loss(const ComplexField& field, double loss_db);

}  // namespace afcproc

#endif
