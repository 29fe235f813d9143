#ifndef AFCPROC_SIGNAL_HPP
#define AFCPROC_SIGNAL_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace afcproc {

// Unit conventions, used consistently everywhere:
//   time t        ns
//   frequency f   MHz (baseband detuning from the optical carrier)
//   phase         cycles(f, t) = f * t * 1e-3, radians = 2*pi*cycles
// A transfer e^{-i 2 pi f T * 1e-3} delays a field by T ns.
inline constexpr double kCyclesPerMHzNs = 1e-3;

inline double cycles(double f_mhz, double t_ns) { return f_mhz * t_ns * kCyclesPerMHzNs; }

using cplx = std::complex<double>;

// Uniform time axis t_i = t_start + i*dt. The conjugate frequency axis has
// resolution 1000/(n*dt) MHz and spans 1000/dt MHz.
struct TimeGrid {
  double t_start = 0.0;  // ns
  double dt = 0.05;      // ns
  std::size_t n = 0;

  double t(std::size_t i) const { return t_start + static_cast<double>(i) * dt; }
  double t_end() const { return t_start + static_cast<double>(n) * dt; }
  double span() const { return static_cast<double>(n) * dt; }
  double df() const { return 1e3 / (static_cast<double>(n) * dt); }  // MHz
  double f_nyquist() const { return 500.0 / dt; }                    // MHz
  double f_start() const { return -static_cast<double>(n / 2) * df(); }

  void validate() const;
  bool operator==(const TimeGrid&) const = default;
};

enum FieldFlag : unsigned {
  kFlagNone = 0,
  // Set when >= 1e-6 of the energy sits within 5% of the Nyquist edge.
  kFlagNearNyquist = 1u << 0,
};

// Complex baseband envelope on a TimeGrid. |samples|^2 integrates (sum * dt)
// to the pulse energy in photon-number units.
struct ComplexField {
  TimeGrid grid;
  std::vector<cplx> samples;
  unsigned flags = kFlagNone;
};

// Frequency-domain counterpart, stored in monotonically increasing frequency
// order starting at grid.f_start() with spacing grid.df(). Keeps the
// originating TimeGrid so the inverse transform restores the exact time axis.
struct Spectrum {
  TimeGrid grid;
  std::vector<cplx> samples;
  unsigned flags = kFlagNone;

  double f_start() const { return grid.f_start(); }
  double df() const { return grid.df(); }
  double f(std::size_t k) const { return f_start() + static_cast<double>(k) * df(); }
};

// Discrete analogue of X(f) = integral x(t) e^{-i 2 pi f t} dt and its
// inverse, normalized so that sum|X|^2 df == sum|x|^2 dt (energy-unitary).
// Round trip reproduces the input to ~1e-12 relative error.
Spectrum to_spectrum(const ComplexField& field);
ComplexField to_time(const Spectrum& spectrum);

// Pointwise product with a transfer function. Passive elements must satisfy
// |H| <= 1 + 1e-9 everywhere; pass passive=false for deliberate gain.
Spectrum apply_transfer(const Spectrum& spectrum, std::span<const cplx> transfer,
                        bool passive = true);
Spectrum apply_transfer(const Spectrum& spectrum,
                        const std::function<cplx(double f_mhz)>& transfer,
                        bool passive = true);

struct Measurement {
  double peak_time = 0.0;           // ns, parabolic refinement of the global peak
  double fwhm = 0.0;                // ns, of |s|^2, linear interpolation, global-peak lobe
  double energy = 0.0;              // sum |s|^2 dt
  double centroid_frequency = 0.0;  // MHz, intensity-weighted spectral mean
  bool multi_lobe = false;          // disjoint regions above half max exist
};

Measurement measure(const ComplexField& field);

double field_energy(const ComplexField& field);
double spectrum_energy(const Spectrum& spectrum);
// Energy of |s|^2 restricted to t in [t_lo, t_hi).
double energy_in_window(const ComplexField& field, double t_lo, double t_hi);
// Energy of |S|^2 restricted to f in [f_lo, f_hi).
double band_energy(const Spectrum& spectrum, double f_lo, double f_hi);

// Inner product <a, b> = sum conj(a_i) b_i dt on a shared grid.
cplx overlap(const ComplexField& a, const ComplexField& b);

// Fraction of spectral energy with |f| >= 0.95 * f_nyquist.
double near_nyquist_fraction(const Spectrum& spectrum);

ComplexField scaled(const ComplexField& field, cplx factor);
ComplexField add(const ComplexField& a, const ComplexField& b);

}  // namespace afcproc

#endif
