#ifndef AFCPROC_PULSE_HPP
#define AFCPROC_PULSE_HPP

#include <span>

#include "afcproc/signal.hpp"

namespace afcproc {

// Gaussian amplitude envelope a * exp(-(t-t0)^2 / (2 tau^2)) at a carrier
// detuning. Durations are quoted as the intensity FWHM = 2 tau sqrt(ln 2).
struct GaussianPulseSpec {
  double t0_ns = 0.0;
  double fwhm_ns = 12.0;
  double detuning_mhz = 0.0;
  cplx amplitude = 1.0;

  double tau() const;  // Gaussian amplitude parameter, ns
};

// Early/late superposition a_early|e> + a_late|l> of two copies of `base`
// separated in time. Amplitudes must be normalized.
struct TimeBinSpec {
  cplx a_early = 1.0;
  cplx a_late = 0.0;
  double separation_ns = 25.0;
  GaussianPulseSpec base;
};

ComplexField gaussian_pulse(const GaussianPulseSpec& spec, const TimeGrid& grid);
ComplexField pulse_train(std::span<const GaussianPulseSpec> specs, const TimeGrid& grid);
ComplexField time_bin_state(const TimeBinSpec& spec, const TimeGrid& grid);

// Rescales so that field_energy() == n_bar exactly. n_bar = 0 zeroes the field.
ComplexField set_mean_photons(const ComplexField& field, double n_bar);

}  // namespace afcproc

#endif
