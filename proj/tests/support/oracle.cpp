#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace afcproc::oracle {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kFwhmPerTau = 2.0 * std::sqrt(std::numbers::ln2);
}  // namespace

double Profile::peak_time() const { return profile_peak_time(t_ns, intensity); }
double Profile::fwhm() const { return profile_fwhm(t_ns, intensity); }

cplx quadrature_spectrum_point(const ComplexField& field, double f_mhz) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < field.samples.size(); ++i) {
    acc += field.samples[i] * std::polar(1.0, -kTwoPi * cycles(f_mhz, field.grid.t(i)));
  }
  return acc * field.grid.dt;
}

std::vector<cplx> quadrature_spectrum(const ComplexField& field,
                                      std::span<const double> f_mhz) {
  std::vector<cplx> out(f_mhz.size());
  for (std::size_t k = 0; k < f_mhz.size(); ++k) {
    out[k] = quadrature_spectrum_point(field, f_mhz[k]);
  }
  return out;
}

Profile quadrature_echo_profile(const GaussianEchoScenario& s, double t_lo, double t_hi,
                                std::size_t n_points) {
  // Frequency support of the chirped Gaussian: centered f1 with amplitude
  // sigma covering both the transform-limited and chirp-broadened widths.
  const double sigma_f =
      std::hypot(1e3 / (kTwoPi * s.tau_in_ns), s.r_mhz_per_ns * s.tau_in_ns);
  const double f_lo = s.f1_mhz - 8.0 * sigma_f;
  const double f_hi = s.f1_mhz + 8.0 * sigma_f;
  const std::size_t nf = 4096;
  const double df = (f_hi - f_lo) / static_cast<double>(nf);

  // Input samples for the time->frequency quadrature. 6 tau covers the
  // envelope to ~1e-8 amplitude and keeps the chirp resolved where it matters.
  const double t_span = 6.0 * s.tau_in_ns;
  const std::size_t nt = 8192;
  const double dt_in = 2.0 * t_span / static_cast<double>(nt);

  std::vector<cplx> spectrum(nf);
  for (std::size_t k = 0; k < nf; ++k) {
    const double f = f_lo + (static_cast<double>(k) + 0.5) * df;
    cplx acc = 0.0;
    for (std::size_t i = 0; i < nt; ++i) {
      const double t = -t_span + (static_cast<double>(i) + 0.5) * dt_in;
      const double env = std::exp(-0.5 * t * t / (s.tau_in_ns * s.tau_in_ns));
      const double chirp_cycles =
          cycles(s.f1_mhz, t) - 0.5 * cycles(s.r_mhz_per_ns * t, t);
      acc += env * std::polar(1.0, kTwoPi * (chirp_cycles - cycles(f, t)));
    }
    const double fr = f - s.f0_mhz;
    const double comb_cycles =
        -(0.5 * s.mu_ns_per_mhz * fr * fr + fr * s.t_offset_ns) * kCyclesPerMHzNs;
    spectrum[k] = acc * dt_in * std::polar(1.0, kTwoPi * comb_cycles);
  }

  Profile p;
  p.t_ns.resize(n_points);
  p.intensity.resize(n_points);
  const double dt_out = (t_hi - t_lo) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double t = t_lo + static_cast<double>(i) * dt_out;
    cplx acc = 0.0;
    for (std::size_t k = 0; k < nf; ++k) {
      const double f = f_lo + (static_cast<double>(k) + 0.5) * df;
      acc += spectrum[k] * std::polar(1.0, kTwoPi * cycles(f, t));
    }
    p.t_ns[i] = t;
    p.intensity[i] = std::norm(acc * df * 1e-3);  // df MHz -> GHz for unit synthesis
  }
  return p;
}

ClosedForm closed_form_echo(const GaussianEchoScenario& s) {
  ClosedForm c;
  const double mu_q = s.mu_ns_per_mhz * 1e3 / kTwoPi;
  const double mismatch = s.mu_ns_per_mhz * s.r_mhz_per_ns - 1.0;
  c.tau_out_ns =
      s.tau_in_ns * std::hypot(mu_q / (s.tau_in_ns * s.tau_in_ns), mismatch);
  c.fwhm_ns = kFwhmPerTau * c.tau_out_ns;
  c.t_center_ns = s.t_offset_ns + s.mu_ns_per_mhz * (s.f1_mhz - s.f0_mhz);
  return c;
}

double stft_instantaneous_frequency(const ComplexField& field, double t_center_ns,
                                    double window_fwhm_ns) {
  const double wtau = window_fwhm_ns / kFwhmPerTau;
  ComplexField windowed = field;
  for (std::size_t i = 0; i < windowed.samples.size(); ++i) {
    const double arg = (windowed.grid.t(i) - t_center_ns) / wtau;
    windowed.samples[i] *= std::exp(-0.5 * arg * arg);
  }
  // Centroid over a dense local frequency scan.
  double wsum = 0.0, fsum = 0.0;
  const double f_ny = field.grid.f_nyquist();
  const std::size_t nf = 2000;
  for (std::size_t k = 0; k < nf; ++k) {
    const double f = -f_ny + (static_cast<double>(k) + 0.5) * (2.0 * f_ny / nf);
    const double w = std::norm(quadrature_spectrum_point(windowed, f));
    wsum += w;
    fsum += w * f;
  }
  return fsum / wsum;
}

double profile_peak_time(std::span<const double> t, std::span<const double> intensity) {
  std::size_t ipk = 0;
  for (std::size_t i = 1; i < intensity.size(); ++i) {
    if (intensity[i] > intensity[ipk]) ipk = i;
  }
  if (ipk == 0 || ipk + 1 == intensity.size()) return t[ipk];
  const double a = intensity[ipk - 1], b = intensity[ipk], c = intensity[ipk + 1];
  const double den = a - 2.0 * b + c;
  if (den >= 0.0) return t[ipk];
  return t[ipk] + 0.5 * (a - c) / den * (t[1] - t[0]);
}

double profile_fwhm(std::span<const double> t, std::span<const double> intensity) {
  std::size_t ipk = 0;
  for (std::size_t i = 1; i < intensity.size(); ++i) {
    if (intensity[i] > intensity[ipk]) ipk = i;
  }
  const double half = 0.5 * intensity[ipk];
  std::size_t il = ipk;
  while (il > 0 && intensity[il] > half) --il;
  double t_left = t[il];
  if (il < ipk) {
    t_left += (half - intensity[il]) / (intensity[il + 1] - intensity[il]) * (t[1] - t[0]);
  }
  std::size_t ir = ipk;
  while (ir + 1 < intensity.size() && intensity[ir] > half) ++ir;
  double t_right = t[ir];
  if (ir > ipk) {
    t_right = t[ir - 1] +
              (intensity[ir - 1] - half) / (intensity[ir - 1] - intensity[ir]) * (t[1] - t[0]);
  }
  return t_right - t_left;
}

double intensity_cross_correlation(const ComplexField& a, const ComplexField& b) {
  const std::size_t n = a.samples.size();
  std::vector<double> ia(n), ib(n);
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ia[i] = std::norm(a.samples[i]);
    ib[i] = std::norm(b.samples[i]);
    na += ia[i] * ia[i];
    nb += ib[i] * ib[i];
  }
  const double norm = std::sqrt(na * nb);
  if (norm == 0.0) return 0.0;
  double best = 0.0;
  const long nn = static_cast<long>(n);
  for (long lag = -nn + 1; lag < nn; ++lag) {
    double acc = 0.0;
    const long lo = std::max<long>(0, -lag);
    const long hi = std::min<long>(nn, nn - lag);
    for (long i = lo; i < hi; ++i) acc += ia[i] * ib[i + lag];
    best = std::max(best, acc);
  }
  return best / norm;
}

ComplexField time_reversed(const ComplexField& field, double pivot_ns) {
  ComplexField out = field;
  const double t0 = field.grid.t_start;
  const double dt = field.grid.dt;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    // Sample at t maps from 2*pivot - t, linearly interpolated.
    const double src = (2.0 * pivot_ns - out.grid.t(i) - t0) / dt;
    const auto j = static_cast<long>(std::floor(src));
    if (j < 0 || j + 1 >= static_cast<long>(field.samples.size())) {
      out.samples[i] = 0.0;
      continue;
    }
    const double w = src - static_cast<double>(j);
    out.samples[i] =
        field.samples[static_cast<std::size_t>(j)] * (1.0 - w) +
        field.samples[static_cast<std::size_t>(j) + 1] * w;
  }
  return out;
}

OracleReport make_report(std::string scenario, std::string quantity, double oracle_value,
                         double simulator_value, double tolerance) {
  OracleReport r;
  r.scenario = std::move(scenario);
  r.quantity = std::move(quantity);
  r.oracle_value = oracle_value;
  r.simulator_value = simulator_value;
  r.rel_error = oracle_value != 0.0
                    ? std::abs(simulator_value - oracle_value) / std::abs(oracle_value)
                    : std::abs(simulator_value - oracle_value);
  r.tolerance = tolerance;
  r.pass = r.rel_error <= tolerance;
  return r;
}

std::string report_table(std::span<const OracleReport> reports) {
  std::ostringstream os;
  os << "scenario\tquantity\toracle\tsimulator\trel_error\ttolerance\tpass\n";
  os.precision(9);
  for (const OracleReport& r : reports) {
    os << r.scenario << '\t' << r.quantity << '\t' << r.oracle_value << '\t'
       << r.simulator_value << '\t' << r.rel_error << '\t' << r.tolerance << '\t'
       << (r.pass ? "yes" : "no") << '\n';
  }
  return os.str();
}

std::vector<OracleReport> fine_grid_cross_check(const ScenarioConfig& config,
                                                int refinement) {
  if (refinement < 2) throw std::invalid_argument("refinement must be >= 2");
  ScenarioRun coarse = run_scenario(config);
  RunOptions fine_options;
  fine_options.grid_dt = config.grid.dt_ns / refinement;
  ScenarioRun fine = run_scenario(config, fine_options);

  std::vector<OracleReport> reports;
  if (coarse.chain.echo_obs && fine.chain.echo_obs) {
    reports.push_back(make_report(config.id, "echo_fwhm_ns", fine.chain.echo_obs->fwhm,
                                  coarse.chain.echo_obs->fwhm, 0.02));
    reports.push_back(make_report(
        config.id, "echo_peak_time_ns", fine.chain.echo_obs->peak_time,
        coarse.chain.echo_obs->peak_time,
        config.grid.dt_ns / std::max(std::abs(fine.chain.echo_obs->peak_time), 1.0)));
    reports.push_back(make_report(config.id, "echo_energy", field_energy(fine.chain.echo),
                                  field_energy(coarse.chain.echo), 0.02));
  }
  return reports;
}

}  // namespace afcproc::oracle
