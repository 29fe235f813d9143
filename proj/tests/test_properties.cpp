// Randomized property suites: passivity (no energy gain), chain linearity,
// phase-only modulator energy conservation, Parseval, and the shift theorem.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "afcproc/chain.hpp"
#include "afcproc/pulse.hpp"
#include "support/generators.hpp"

using namespace afcproc;
using testgen::Generator;

TEST_CASE("passivity: random programs never gain energy") {
  Generator gen;
  for (int i = 0; i < 1000; ++i) {
    ProcessorProgram p = gen.program();
    TransferFunction tf = transfer_function(p, gen.grid);
    double worst = 0.0;
    for (std::size_t k = 0; k < gen.grid.n; ++k) {
      worst = std::max(worst, std::norm(tf.transmitted[k]) + std::norm(tf.echo[k]));
    }
    REQUIRE(worst <= 1.0 + 1e-9);
  }
}

TEST_CASE("chains: no energy gain, superposition holds") {
  Generator gen;
  for (int i = 0; i < 1000; ++i) {
    ChainSpec chain = gen.chain();
    ComplexField x = gen.pulse();
    ComplexField y = gen.pulse();
    ChainResult rx = run_chain(x, chain);
    REQUIRE(field_energy(rx.transmitted) + field_energy(rx.echo) <=
            rx.input_energy * (1.0 + 1e-9) + 1e-30);

    if (i % 4 != 0) continue;  // full linearity check on a quarter of the cases
    const cplx a(gen.uniform(-1.0, 1.0), gen.uniform(-1.0, 1.0));
    const cplx b(gen.uniform(-1.0, 1.0), gen.uniform(-1.0, 1.0));
    ChainResult ry = run_chain(y, chain);
    ChainResult rsum = run_chain(add(scaled(x, a), scaled(y, b)), chain);
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < gen.grid.n; ++k) {
      const cplx expect_t = a * rx.transmitted.samples[k] + b * ry.transmitted.samples[k];
      const cplx expect_e = a * rx.echo.samples[k] + b * ry.echo.samples[k];
      err = std::max({err, std::abs(rsum.transmitted.samples[k] - expect_t),
                      std::abs(rsum.echo.samples[k] - expect_e)});
      scale = std::max({scale, std::abs(expect_t), std::abs(expect_e)});
    }
    REQUIRE(err <= 1e-9 * std::max(scale, 1e-6));
  }
}

TEST_CASE("modulators are exactly phase-only") {
  Generator gen;
  for (int i = 0; i < 200; ++i) {
    ComplexField x = gen.pulse();
    const double e0 = field_energy(x);
    SerrodyneSpec s;
    s.shift_mhz = gen.uniform(-2000.0, 2000.0);
    s.amplitude_fraction = gen.uniform(0.0, 1.0);
    if (gen.pick(2) == 0) s.dac_rate_per_ns = 20.0;
    if (gen.pick(2) == 0) s.gate = Gate{gen.uniform(-50.0, 0.0), gen.uniform(1.0, 60.0)};
    REQUIRE(field_energy(serrodyne(x, s)) == doctest::Approx(e0).epsilon(1e-12));

    ChirpSpec c;
    c.rate_mhz_per_ns = gen.uniform(-12.0, 12.0);
    c.f1_mhz = gen.uniform(-300.0, 300.0);
    REQUIRE(field_energy(chirp(x, c)) == doctest::Approx(e0).epsilon(1e-12));
  }
}

TEST_CASE("parseval and shift theorem on random fields") {
  Generator gen;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    ComplexField x;
    x.grid = gen.grid;
    x.samples.resize(gen.grid.n);
    for (cplx& s : x.samples) s = cplx(u(rng), u(rng));
    Spectrum sx = to_spectrum(x);
    REQUIRE(spectrum_energy(sx) == doctest::Approx(field_energy(x)).epsilon(1e-10));

    // Integer-bin circular shift: translation in time.
    const int bins = 1 + gen.pick(100);
    const double t0 = bins * gen.grid.dt;
    Spectrum shifted = apply_transfer(sx, [&](double f) {
      return std::polar(1.0, -2.0 * std::numbers::pi * cycles(f, t0));
    });
    ComplexField moved = to_time(shifted);
    double err = 0.0;
    for (std::size_t k = 0; k < gen.grid.n; ++k) {
      const cplx expect = x.samples[(k + gen.grid.n - bins) % gen.grid.n];
      err = std::max(err, std::abs(moved.samples[k] - expect));
    }
    REQUIRE(err < 1e-9);
  }
}
