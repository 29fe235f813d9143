#include "afcproc/signal.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "afcproc/errors.hpp"

namespace afcproc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW plan creation is not thread-safe; execution of a given plan on fresh
// buffers is (FFTW_UNALIGNED plans accept any buffer). Plans are cached per
// size behind a mutex.
class FftEngine {
 public:
  static FftEngine& instance() {
    static FftEngine engine;
    return engine;
  }

  void forward(std::vector<cplx>& data) { execute(data, true); }
  void backward(std::vector<cplx>& data) { execute(data, false); }

 private:
  struct Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
  };

  void execute(std::vector<cplx>& data, bool fwd) {
    const std::size_t n = data.size();
    fftw_plan plan;
    {
      std::scoped_lock lock(mutex_);
      auto it = plans_.find(n);
      if (it == plans_.end()) {
        std::vector<cplx> scratch(n);
        auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
        Plans np;
        np.fwd = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_FORWARD,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
        np.bwd = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_BACKWARD,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
        it = plans_.emplace(n, np).first;
      }
      plan = fwd ? it->second.fwd : it->second.bwd;
    }
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
  }

  std::mutex mutex_;
  std::unordered_map<std::size_t, Plans> plans_;
};

void require_finite(const std::vector<cplx>& samples) {
  for (const cplx& s : samples) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw InvalidFieldError("field contains non-finite samples");
    }
  }
}

}  // namespace

void TimeGrid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw GridError("grid dt must be positive and finite");
  if (n < 2) throw GridError("grid needs at least 2 samples");
  if (!std::isfinite(t_start) || !std::isfinite(t_end())) {
    throw GridError("grid span must be finite");
  }
}

Spectrum to_spectrum(const ComplexField& field) {
  field.grid.validate();
  if (field.samples.size() != field.grid.n) {
    throw InvalidFieldError("sample count does not match grid");
  }
  require_finite(field.samples);

  const std::size_t n = field.grid.n;
  std::vector<cplx> work = field.samples;
  FftEngine::instance().forward(work);

  // Monotone frequency order: spectrum index k holds fft bin (k + half) % n,
  // where half = (n+1)/2 is the count of non-negative fft frequencies.
  Spectrum out;
  out.grid = field.grid;
  out.flags = field.flags;
  out.samples.resize(n);
  const std::size_t half = (n + 1) / 2;
  const double dt = field.grid.dt;
  const double t0 = field.grid.t_start;
  for (std::size_t k = 0; k < n; ++k) {
    const double f = out.f(k);
    const cplx tw = std::polar(dt, -kTwoPi * cycles(f, t0));
    out.samples[k] = work[(k + half) % n] * tw;
  }
  return out;
}

ComplexField to_time(const Spectrum& spectrum) {
  spectrum.grid.validate();
  const std::size_t n = spectrum.grid.n;
  if (spectrum.samples.size() != n) {
    throw InvalidFieldError("spectrum sample count does not match grid");
  }
  require_finite(spectrum.samples);

  const std::size_t half = (n + 1) / 2;
  const double dt = spectrum.grid.dt;
  const double t0 = spectrum.grid.t_start;
  std::vector<cplx> work(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = spectrum.f(k);
    const cplx tw = std::polar(1.0, kTwoPi * cycles(f, t0));
    work[(k + half) % n] = spectrum.samples[k] * tw;
  }
  FftEngine::instance().backward(work);

  ComplexField out;
  out.grid = spectrum.grid;
  out.flags = spectrum.flags;
  out.samples.resize(n);
  const double norm = 1.0 / (static_cast<double>(n) * dt);
  for (std::size_t i = 0; i < n; ++i) out.samples[i] = work[i] * norm;
  return out;
}

Spectrum apply_transfer(const Spectrum& spectrum, std::span<const cplx> transfer,
                        bool passive) {
  if (transfer.size() != spectrum.samples.size()) {
    throw InvalidFieldError("transfer length does not match spectrum");
  }
  if (passive) {
    for (const cplx& h : transfer) {
      if (std::abs(h) > 1.0 + 1e-9) {
        throw PassivityError("passive transfer exceeds unit magnitude");
      }
    }
  }
  Spectrum out = spectrum;
  for (std::size_t k = 0; k < out.samples.size(); ++k) out.samples[k] *= transfer[k];
  return out;
}

Spectrum apply_transfer(const Spectrum& spectrum,
                        const std::function<cplx(double)>& transfer, bool passive) {
  std::vector<cplx> h(spectrum.samples.size());
  for (std::size_t k = 0; k < h.size(); ++k) h[k] = transfer(spectrum.f(k));
  return apply_transfer(spectrum, h, passive);
}

double field_energy(const ComplexField& field) {
  double e = 0.0;
  for (const cplx& s : field.samples) e += std::norm(s);
  return e * field.grid.dt;
}

double spectrum_energy(const Spectrum& spectrum) {
  double e = 0.0;
  for (const cplx& s : spectrum.samples) e += std::norm(s);
  // Samples carry amp*ns, so the frequency measure is df in 1/ns (GHz).
  return e * spectrum.df() * kCyclesPerMHzNs;
}

double energy_in_window(const ComplexField& field, double t_lo, double t_hi) {
  double e = 0.0;
  for (std::size_t i = 0; i < field.samples.size(); ++i) {
    const double t = field.grid.t(i);
    if (t >= t_lo && t < t_hi) e += std::norm(field.samples[i]);
  }
  return e * field.grid.dt;
}

double band_energy(const Spectrum& spectrum, double f_lo, double f_hi) {
  double e = 0.0;
  for (std::size_t k = 0; k < spectrum.samples.size(); ++k) {
    const double f = spectrum.f(k);
    if (f >= f_lo && f < f_hi) e += std::norm(spectrum.samples[k]);
  }
  return e * spectrum.df() * kCyclesPerMHzNs;
}

cplx overlap(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid == b.grid)) throw GridError("overlap requires a shared grid");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    acc += std::conj(a.samples[i]) * b.samples[i];
  }
  return acc * a.grid.dt;
}

double near_nyquist_fraction(const Spectrum& spectrum) {
  const double edge = 0.95 * spectrum.grid.f_nyquist();
  double total = 0.0;
  double near = 0.0;
  for (std::size_t k = 0; k < spectrum.samples.size(); ++k) {
    const double e = std::norm(spectrum.samples[k]);
    total += e;
    if (std::abs(spectrum.f(k)) >= edge) near += e;
  }
  return total > 0.0 ? near / total : 0.0;
}

ComplexField scaled(const ComplexField& field, cplx factor) {
  ComplexField out = field;
  for (cplx& s : out.samples) s *= factor;
  return out;
}

ComplexField add(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid == b.grid)) throw GridError("add requires a shared grid");
  ComplexField out = a;
  out.flags |= b.flags;
  for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] += b.samples[i];
  return out;
}

Measurement measure(const ComplexField& field) {
  const std::size_t n = field.samples.size();
  if (n != field.grid.n) throw InvalidFieldError("sample count does not match grid");
  require_finite(field.samples);

  std::vector<double> intensity(n);
  double peak = 0.0;
  std::size_t ipk = 0;
  for (std::size_t i = 0; i < n; ++i) {
    intensity[i] = std::norm(field.samples[i]);
    if (intensity[i] > peak) {
      peak = intensity[i];
      ipk = i;
    }
  }
  if (peak == 0.0) throw EmptyFieldError("measure() on an all-zero field");

  Measurement m;
  m.energy = field_energy(field);

  // Peak time with parabolic refinement.
  m.peak_time = field.grid.t(ipk);
  if (ipk > 0 && ipk + 1 < n) {
    const double a = intensity[ipk - 1], b = intensity[ipk], c = intensity[ipk + 1];
    const double den = a - 2.0 * b + c;
    if (den < 0.0) m.peak_time += 0.5 * (a - c) / den * field.grid.dt;
  }

  // FWHM of the global-peak lobe, half-max crossings by linear interpolation.
  const double half = 0.5 * peak;
  std::size_t il = ipk;
  while (il > 0 && intensity[il] > half) --il;
  double t_left = field.grid.t(il);
  if (intensity[il] <= half && il < ipk) {
    const double frac = (half - intensity[il]) / (intensity[il + 1] - intensity[il]);
    t_left += frac * field.grid.dt;
  }
  std::size_t ir = ipk;
  while (ir + 1 < n && intensity[ir] > half) ++ir;
  double t_right = field.grid.t(ir);
  if (intensity[ir] <= half && ir > ipk) {
    const double frac = (intensity[ir - 1] - half) / (intensity[ir - 1] - intensity[ir]);
    t_right = field.grid.t(ir - 1) + frac * field.grid.dt;
  }
  m.fwhm = t_right - t_left;

  // Any sample above half max outside [il, ir] means a disjoint lobe.
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= il && i <= ir) continue;
    if (intensity[i] > half) {
      m.multi_lobe = true;
      break;
    }
  }

  Spectrum spec = to_spectrum(field);
  double wsum = 0.0, fsum = 0.0;
  for (std::size_t k = 0; k < spec.samples.size(); ++k) {
    const double w = std::norm(spec.samples[k]);
    wsum += w;
    fsum += w * spec.f(k);
  }
  m.centroid_frequency = fsum / wsum;
  return m;
}

}  // namespace afcproc
