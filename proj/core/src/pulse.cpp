#include "afcproc/pulse.hpp"

#include <cmath>
#include <numbers>

#include "afcproc/errors.hpp"

namespace afcproc {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kFwhmPerTau = 2.0 * std::sqrt(std::numbers::ln2);
}  // namespace

double GaussianPulseSpec::tau() const { return fwhm_ns / kFwhmPerTau; }

ComplexField gaussian_pulse(const GaussianPulseSpec& spec, const TimeGrid& grid) {
  grid.validate();
  if (!(spec.fwhm_ns > 0.0)) throw std::invalid_argument("pulse fwhm must be positive");
  const double tau = spec.tau();

  if (spec.amplitude != 0.0) {
    // Intensity ~ exp(-(t-t0)^2/tau^2); the fraction outside [t_lo, t_hi] is
    // erfc-shaped per side. Truncating more than 1e-6 of the energy is an error.
    const double left = (spec.t0_ns - grid.t_start) / tau;
    const double right = (grid.t_end() - grid.dt - spec.t0_ns) / tau;
    const double truncated = 0.5 * (std::erfc(left) + std::erfc(right));
    if (!(truncated < 1e-6)) {
      throw PulseOutsideGridError("pulse truncated by grid (energy loss >= 1e-6)");
    }
  }

  ComplexField out;
  out.grid = grid;
  out.samples.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double t = grid.t(i);
    const double arg = (t - spec.t0_ns) / tau;
    const double env = std::exp(-0.5 * arg * arg);
    out.samples[i] =
        spec.amplitude * env * std::polar(1.0, kTwoPi * cycles(spec.detuning_mhz, t));
  }
  if (std::abs(spec.detuning_mhz) > 0.85 * grid.f_nyquist() &&
      near_nyquist_fraction(to_spectrum(out)) >= 1e-6) {
    out.flags |= kFlagNearNyquist;
  }
  return out;
}

ComplexField pulse_train(std::span<const GaussianPulseSpec> specs, const TimeGrid& grid) {
  grid.validate();
  ComplexField out;
  out.grid = grid;
  out.samples.assign(grid.n, 0.0);
  for (const GaussianPulseSpec& spec : specs) {
    out = add(out, gaussian_pulse(spec, grid));
  }
  return out;
}

ComplexField time_bin_state(const TimeBinSpec& spec, const TimeGrid& grid) {
  const double norm = std::norm(spec.a_early) + std::norm(spec.a_late);
  if (std::abs(norm - 1.0) > 1e-9) {
    throw NormalizationError("time-bin amplitudes must satisfy |a_e|^2 + |a_l|^2 = 1");
  }
  if (!(spec.separation_ns > 0.0)) {
    throw std::invalid_argument("time-bin separation must be positive");
  }
  if (!(spec.separation_ns > 0.5 * spec.base.fwhm_ns)) {
    throw std::invalid_argument("time bins not resolvable (separation <= FWHM/2)");
  }
  GaussianPulseSpec early = spec.base;
  early.amplitude *= spec.a_early;
  GaussianPulseSpec late = spec.base;
  late.t0_ns += spec.separation_ns;
  late.amplitude *= spec.a_late;
  const GaussianPulseSpec both[] = {early, late};
  return pulse_train(both, grid);
}

ComplexField set_mean_photons(const ComplexField& field, double n_bar) {
  if (!(n_bar >= 0.0)) throw std::invalid_argument("mean photon number must be >= 0");
  if (n_bar == 0.0) {
    ComplexField out = field;
    for (cplx& s : out.samples) s = 0.0;
    return out;
  }
  const double e = field_energy(field);
  if (e == 0.0) throw EmptyFieldError("cannot normalize a zero field to n_bar > 0");
  return scaled(field, std::sqrt(n_bar / e));
}

}  // namespace afcproc
