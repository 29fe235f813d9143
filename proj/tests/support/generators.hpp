#ifndef AFCPROC_TESTS_GENERATORS_HPP
#define AFCPROC_TESTS_GENERATORS_HPP

// Random pulses, programs, and chains for the property suites.

#include <random>

#include "afcproc/chain.hpp"
#include "afcproc/pulse.hpp"

namespace afcproc::testgen {

struct Generator {
  TimeGrid grid{-100.0, 0.1, 2048};
  std::mt19937_64 rng{20240901};

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  ComplexField pulse() {
    const int n_pulses = 1 + pick(3);
    std::vector<GaussianPulseSpec> specs;
    for (int i = 0; i < n_pulses; ++i) {
      GaussianPulseSpec p;
      p.t0_ns = uniform(-20.0, 40.0);
      p.fwhm_ns = uniform(4.0, 20.0);
      p.detuning_mhz = uniform(-800.0, 800.0);
      p.amplitude = cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
      if (std::abs(p.amplitude) < 0.05) p.amplitude = 1.0;
      specs.push_back(p);
    }
    return pulse_train(specs, grid);
  }

  ProcessorProgram program() {
    ProcessorProgram p;
    const int n_segments = 1 + pick(3);
    double f_lo = uniform(-1800.0, -1200.0);
    for (int i = 0; i < n_segments; ++i) {
      const double width = uniform(100.0, 500.0);
      const double f_hi = f_lo + width;
      const int kind = pick(3);
      const double eta = uniform(0.005, 0.9);
      const double t_bg = uniform(0.0, std::sqrt(1.0 - eta) * 0.95);
      if (kind == 0) {
        CombSegment s;
        s.f_lo_mhz = f_lo;
        s.f_hi_mhz = f_hi;
        s.delta_mhz = uniform(10.0, 60.0);
        s.eta = eta;
        s.t_bg = t_bg;
        p.segments.emplace_back(s);
      } else if (kind == 1) {
        ChirpedCombSegment s;
        s.f_lo_mhz = f_lo;
        s.f_hi_mhz = f_hi;
        s.delta_lo_mhz = uniform(25.0, 60.0);
        s.delta_hi_mhz = uniform(10.0, s.delta_lo_mhz - 1.0);
        s.eta = eta;
        s.t_bg = t_bg;
        p.segments.emplace_back(s);
      } else {
        DoubleCombSegment s;
        s.f_lo_mhz = f_lo;
        s.f_hi_mhz = f_hi;
        // eta/4 per comb keeps the coherent sum within the eta budget.
        s.combs[0] = {uniform(20.0, 60.0), 0.25 * eta, uniform(0.0, 6.28)};
        s.combs[1] = {uniform(8.0, 18.0), 0.25 * eta, uniform(0.0, 6.28)};
        s.t_bg = t_bg;
        p.segments.emplace_back(s);
      }
      f_lo = f_hi + uniform(10.0, 400.0);
    }
    p.out_of_band_transmission = uniform(0.3, 1.0);
    p.equalize_efficiencies = pick(4) == 0;
    return p;
  }

  ChainSpec chain() {
    ChainSpec c;
    c.program = program();
    if (pick(2) == 0) {
      SerrodyneSpec s;
      s.shift_mhz = uniform(-900.0, 900.0);
      c.input_actions.push_back({s, StageTarget::both});
    }
    if (pick(3) == 0) {
      ChirpSpec s;
      s.rate_mhz_per_ns = uniform(-10.0, 10.0);
      s.f1_mhz = uniform(-200.0, 200.0);
      c.input_actions.push_back({s, StageTarget::both});
    }
    if (pick(3) == 0) {
      c.fp = FPFilterSpec{uniform(-500.0, 500.0), uniform(40.0, 200.0), 23000.0};
    }
    return c;
  }
};

}  // namespace afcproc::testgen

#endif
