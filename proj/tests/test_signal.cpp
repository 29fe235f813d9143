#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "afcproc/errors.hpp"
#include "afcproc/pulse.hpp"
#include "afcproc/signal.hpp"
#include "support/oracle.hpp"

using namespace afcproc;

namespace {

TimeGrid small_grid() { return {-100.0, 0.1, 2048}; }

ComplexField random_field(std::mt19937_64& rng, const TimeGrid& grid) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexField f;
  f.grid = grid;
  f.samples.resize(grid.n);
  for (cplx& s : f.samples) s = cplx(u(rng), u(rng));
  return f;
}

}  // namespace

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(TimeGrid({0.0, -0.1, 64}).validate(), GridError);
  CHECK_THROWS_AS(TimeGrid({0.0, 0.1, 1}).validate(), GridError);
  TimeGrid g{-100.0, 0.05, 8000};
  CHECK(g.df() == doctest::Approx(2.5));
  CHECK(g.f_nyquist() == doctest::Approx(10000.0));
  CHECK(g.f_start() == doctest::Approx(-10000.0));
}

TEST_CASE("round trip and Parseval") {
  std::mt19937_64 rng(7);
  for (const std::size_t n : {2048u, 2000u, 513u}) {  // power of two, even, odd
    TimeGrid grid{-50.0, 0.1, n};
    ComplexField x = random_field(rng, grid);
    Spectrum s = to_spectrum(x);
    CHECK(spectrum_energy(s) == doctest::Approx(field_energy(x)).epsilon(1e-12));
    ComplexField back = to_time(s);
    double max_err = 0.0, max_ref = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      max_err = std::max(max_err, std::abs(back.samples[i] - x.samples[i]));
      max_ref = std::max(max_ref, std::abs(x.samples[i]));
    }
    CHECK(max_err / max_ref < 1e-10);
  }
}

TEST_CASE("transform matches direct quadrature") {
  TimeGrid grid = small_grid();
  ComplexField x = gaussian_pulse({0.0, 12.0, 150.0, 1.0}, grid);
  Spectrum s = to_spectrum(x);
  for (const std::size_t k : {512u, 1024u, 1311u}) {
    const cplx direct = oracle::quadrature_spectrum_point(x, s.f(k));
    CHECK(std::abs(s.samples[k] - direct) < 1e-9);
  }
}

TEST_CASE("gaussian time-bandwidth product") {
  // 12 ns intensity FWHM -> spectral intensity FWHM 2 ln2 / (pi * 12 ns).
  TimeGrid grid{-200.0, 0.05, 8192};
  ComplexField x = gaussian_pulse({0.0, 12.0, 0.0, 1.0}, grid);
  Spectrum s = to_spectrum(x);
  std::vector<double> f(s.samples.size()), intensity(s.samples.size());
  for (std::size_t k = 0; k < s.samples.size(); ++k) {
    f[k] = s.f(k);
    intensity[k] = std::norm(s.samples[k]);
  }
  const double bw = oracle::profile_fwhm(f, intensity);
  const double expected = 2.0 * std::numbers::ln2 / (std::numbers::pi * 12.0) * 1e3;
  CHECK(bw == doctest::Approx(expected).epsilon(2e-3));  // 36.75 MHz
}

TEST_CASE("delta transform and shift theorem") {
  TimeGrid grid{0.0, 0.1, 1024};
  ComplexField x;
  x.grid = grid;
  x.samples.assign(grid.n, 0.0);
  x.samples[333] = 1.0;
  Spectrum s = to_spectrum(x);
  for (const std::size_t k : {0u, 137u, 1023u}) {
    CHECK(std::abs(s.samples[k]) == doctest::Approx(grid.dt).epsilon(1e-12));
  }

  // Multiplying by e^{-i 2 pi f t0} delays by t0.
  const double delay = 25.0;
  Spectrum shifted = apply_transfer(
      s, [&](double f) { return std::polar(1.0, -2.0 * std::numbers::pi * cycles(f, delay)); });
  ComplexField moved = to_time(shifted);
  const std::size_t expect = 333 + 250;
  CHECK(std::abs(moved.samples[expect]) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("linearity") {
  std::mt19937_64 rng(11);
  TimeGrid grid = small_grid();
  ComplexField x = random_field(rng, grid);
  ComplexField y = random_field(rng, grid);
  const cplx a(0.3, -1.1), b(-0.7, 0.2);
  Spectrum lhs = to_spectrum(add(scaled(x, a), scaled(y, b)));
  Spectrum sx = to_spectrum(x), sy = to_spectrum(y);
  double max_err = 0.0;
  for (std::size_t k = 0; k < grid.n; ++k) {
    max_err = std::max(max_err,
                       std::abs(lhs.samples[k] - (a * sx.samples[k] + b * sy.samples[k])));
  }
  CHECK(max_err < 1e-12 * std::sqrt(field_energy(x)));
}

TEST_CASE("apply_transfer guards passivity") {
  TimeGrid grid{0.0, 0.1, 256};
  ComplexField x = gaussian_pulse({12.0, 3.0, 0.0, 1.0}, grid);
  Spectrum s = to_spectrum(x);
  CHECK_THROWS_AS(apply_transfer(s, [](double) { return cplx(1.1, 0.0); }), PassivityError);
  CHECK_NOTHROW(apply_transfer(s, [](double) { return cplx(1.1, 0.0); }, false));
  // identity transfer is exact
  Spectrum id = apply_transfer(s, [](double) { return cplx(1.0, 0.0); });
  for (std::size_t k = 0; k < s.samples.size(); ++k) CHECK(id.samples[k] == s.samples[k]);
}

TEST_CASE("invalid fields are rejected") {
  TimeGrid grid{0.0, 0.1, 64};
  ComplexField x;
  x.grid = grid;
  x.samples.assign(grid.n, 0.0);
  x.samples[3] = cplx(std::nan(""), 0.0);
  CHECK_THROWS_AS(to_spectrum(x), InvalidFieldError);
  x.samples.pop_back();
  CHECK_THROWS_AS(to_spectrum(x), InvalidFieldError);
}

TEST_CASE("measure: gaussian, rectangle, two lobes") {
  TimeGrid grid{-100.0, 0.05, 4000};

  ComplexField g = gaussian_pulse({10.0, 12.0, 40.0, 2.0}, grid);
  Measurement mg = measure(g);
  CHECK(mg.peak_time == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(mg.fwhm == doctest::Approx(12.0).epsilon(0.005));
  CHECK(mg.centroid_frequency == doctest::Approx(40.0).epsilon(1e-6));
  CHECK_FALSE(mg.multi_lobe);

  ComplexField rect;
  rect.grid = grid;
  rect.samples.assign(grid.n, 0.0);
  for (std::size_t i = 0; i < grid.n; ++i) {
    if (std::abs(grid.t(i) - 20.0) <= 4.0) rect.samples[i] = 1.0;
  }
  Measurement mr = measure(rect);
  CHECK(std::abs(mr.fwhm - 8.0) <= 2.0 * grid.dt);

  const GaussianPulseSpec two[] = {{0.0, 12.0, 0.0, 1.0}, {25.0, 12.0, 0.0, 1.0}};
  Measurement m2 = measure(pulse_train(two, grid));
  CHECK(m2.multi_lobe);
  // Lobe width computed against a brute-force scan of the same waveform.
  ComplexField built = pulse_train(two, grid);
  std::vector<double> t(grid.n), intensity(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    t[i] = grid.t(i);
    intensity[i] = std::norm(built.samples[i]);
  }
  CHECK(m2.fwhm == doctest::Approx(oracle::profile_fwhm(t, intensity)).epsilon(1e-9));

  ComplexField zero;
  zero.grid = grid;
  zero.samples.assign(grid.n, 0.0);
  CHECK_THROWS_AS(measure(zero), EmptyFieldError);
}

TEST_CASE("near-nyquist guard") {
  TimeGrid grid{-50.0, 0.1, 2048};  // Nyquist 5 GHz
  ComplexField x = gaussian_pulse({0.0, 12.0, 0.0, 1.0}, grid);
  CHECK(near_nyquist_fraction(to_spectrum(x)) < 1e-12);
  ComplexField hot = gaussian_pulse({0.0, 12.0, 4900.0, 1.0}, grid);
  CHECK(near_nyquist_fraction(to_spectrum(hot)) > 0.5);
  CHECK((hot.flags & kFlagNearNyquist) != 0);
}
