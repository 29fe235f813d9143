#include "afcproc/comb.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "afcproc/errors.hpp"

namespace afcproc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kFwhmPerTau = 2.0 * std::sqrt(std::numbers::ln2);

void check_band(double f_lo, double f_hi) {
  if (!(f_lo < f_hi)) throw ProgramError("segment band requires f_lo < f_hi");
}

void check_passivity(double eta_total, double t_bg) {
  if (eta_total < 0.0 || t_bg < 0.0 || eta_total + t_bg * t_bg > 1.0 + 1e-12) {
    throw PassivityError("segment violates eta + t_bg^2 <= 1");
  }
}

double segment_eta_total(const Segment& segment) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DoubleCombSegment>) {
          return s.combs[0].eta + s.combs[1].eta;
        } else {
          return s.eta;
        }
      },
      segment);
}

}  // namespace

void CombSegment::validate() const {
  check_band(f_lo_mhz, f_hi_mhz);
  if (!(delta_mhz > 0.0)) throw ProgramError("tooth spacing must be positive");
  check_passivity(eta, t_bg);
}

double ChirpedCombSegment::storage_at(double f_mhz) const {
  return storage_lo_ns() + storage_gradient(*this) * (f_mhz - f_lo_mhz);
}

void ChirpedCombSegment::validate() const {
  check_band(f_lo_mhz, f_hi_mhz);
  if (!(delta_lo_mhz > 0.0) || !(delta_hi_mhz > 0.0)) {
    throw ProgramError("tooth spacings must be positive");
  }
  if (!(storage_gradient(*this) > 0.0)) {
    throw ProgramError("chirped segment needs spacing decreasing with frequency (mu > 0)");
  }
  check_passivity(eta, t_bg);
}

double storage_gradient(const ChirpedCombSegment& s) {
  return (s.storage_hi_ns() - s.storage_lo_ns()) / (s.f_hi_mhz - s.f_lo_mhz);
}

void DoubleCombSegment::validate() const {
  check_band(f_lo_mhz, f_hi_mhz);
  for (const DoubleCombEntry& c : combs) {
    if (!(c.delta_mhz > 0.0)) throw ProgramError("tooth spacing must be positive");
    if (c.eta < 0.0) throw ProgramError("negative efficiency");
  }
  if (combs[0].delta_mhz == combs[1].delta_mhz) {
    throw ProgramError("double comb needs two distinct echo delays");
  }
  // Coherent bound: the two echo responses add in amplitude wherever their
  // phases align, so (sqrt(eta1)+sqrt(eta2))^2 caps the summed response.
  // The incoherent bound eta1+eta2 <= 1 would admit programs that amplify
  // time-bin inputs aligned with the projector.
  const double amp = std::sqrt(combs[0].eta) + std::sqrt(combs[1].eta);
  check_passivity(amp * amp, t_bg);
}

double segment_f_lo(const Segment& s) {
  return std::visit([](const auto& seg) { return seg.f_lo_mhz; }, s);
}

double segment_f_hi(const Segment& s) {
  return std::visit([](const auto& seg) { return seg.f_hi_mhz; }, s);
}

double segment_max_storage_ns(const Segment& s) {
  return std::visit(
      [](const auto& seg) -> double {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, CombSegment>) {
          return seg.storage_time_ns();
        } else if constexpr (std::is_same_v<T, ChirpedCombSegment>) {
          return std::max(seg.storage_lo_ns(), seg.storage_hi_ns());
        } else {
          return std::max(1e3 / seg.combs[0].delta_mhz, 1e3 / seg.combs[1].delta_mhz);
        }
      },
      s);
}

void ProcessorProgram::validate() const {
  if (out_of_band_transmission < 0.0 || out_of_band_transmission > 1.0) {
    throw PassivityError("out-of-band transmission must be in [0, 1]");
  }
  std::vector<std::pair<double, double>> bands;
  for (const Segment& s : segments) {
    std::visit([](const auto& seg) { seg.validate(); }, s);
    bands.emplace_back(segment_f_lo(s), segment_f_hi(s));
  }
  std::sort(bands.begin(), bands.end());
  for (std::size_t i = 1; i < bands.size(); ++i) {
    if (bands[i].first < bands[i - 1].second - 1e-9) {
      throw ProgramError("segment bands overlap");
    }
  }
}

double ProcessorProgram::max_storage_ns() const {
  double m = 0.0;
  for (const Segment& s : segments) m = std::max(m, segment_max_storage_ns(s));
  return m;
}

TransferFunction transfer_function(const ProcessorProgram& program, const TimeGrid& grid) {
  program.validate();
  grid.validate();
  if (program.max_storage_ns() >= grid.span()) {
    throw GridError("programmed storage time exceeds the grid span");
  }

  double min_eta = 1.0;
  for (const Segment& s : program.segments) {
    min_eta = std::min(min_eta, segment_eta_total(s));
  }

  const std::size_t n = grid.n;
  TransferFunction tf;
  tf.transmitted.assign(n, cplx(program.out_of_band_transmission, 0.0));
  tf.echo.assign(n, cplx(0.0, 0.0));

  const double f0_grid = grid.f_start();
  const double df = grid.df();
  for (const Segment& s : program.segments) {
    const double f_lo = segment_f_lo(s);
    const double f_hi = segment_f_hi(s);
    const double eta_scale =
        program.equalize_efficiencies ? min_eta / segment_eta_total(s) : 1.0;
    const auto k_begin =
        static_cast<std::size_t>(std::max(0.0, std::ceil((f_lo - f0_grid) / df)));
    for (std::size_t k = k_begin; k < n; ++k) {
      const double f = f0_grid + static_cast<double>(k) * df;
      if (f >= f_hi) break;
      std::visit(
          [&](const auto& seg) {
            using T = std::decay_t<decltype(seg)>;
            tf.transmitted[k] = seg.t_bg;
            if constexpr (std::is_same_v<T, CombSegment>) {
              const double amp = std::sqrt(seg.eta * eta_scale);
              tf.echo[k] = std::polar(
                  amp, -kTwoPi * cycles(f - seg.reference(), seg.storage_time_ns()));
            } else if constexpr (std::is_same_v<T, ChirpedCombSegment>) {
              const double amp = std::sqrt(seg.eta * eta_scale);
              const double mu = storage_gradient(seg);
              const double fr = f - seg.reference();
              const double t_off = seg.storage_at(seg.reference());
              const double phase_cycles =
                  -(0.5 * mu * fr * fr + fr * t_off) * kCyclesPerMHzNs;
              tf.echo[k] = std::polar(amp, kTwoPi * phase_cycles);
            } else {
              cplx e = 0.0;
              for (const DoubleCombEntry& c : seg.combs) {
                const double amp = std::sqrt(c.eta * eta_scale);
                e += std::polar(amp, -kTwoPi * cycles(f - seg.reference(),
                                                      1e3 / c.delta_mhz) +
                                         c.extra_phase_rad);
              }
              tf.echo[k] = e;
            }
          },
          s);
    }
  }
  return tf;
}

EchoPrediction analytic_echo(double tau_in_ns, double mu_ns_per_mhz, double r_mhz_per_ns,
                             double f0_mhz, double f1_mhz, double t_offset_ns) {
  if (!(tau_in_ns > 0.0) || !(mu_ns_per_mhz > 0.0)) {
    throw std::invalid_argument("analytic_echo requires tau_in > 0 and mu > 0");
  }
  // Quadratic spectral-phase coefficient of the transfer in ns^2; the group
  // delay slope is mu ns/MHz = 1000*mu ns per (1/ns), and the angular-frequency
  // quadratic coefficient carries the extra 1/(2 pi).
  const double mu_q = mu_ns_per_mhz * 1e3 / kTwoPi;
  const double mismatch = mu_ns_per_mhz * r_mhz_per_ns - 1.0;
  EchoPrediction p;
  p.tau_out_ns = tau_in_ns * std::hypot(mu_q / (tau_in_ns * tau_in_ns), mismatch);
  p.fwhm_out_ns = kFwhmPerTau * p.tau_out_ns;
  p.kappa = tau_in_ns / p.tau_out_ns;
  p.t_center_ns = t_offset_ns + mu_ns_per_mhz * (f1_mhz - f0_mhz);
  return p;
}

MuRRegime mu_r_regime(double mu, double r) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (r <= 0.0) return MuRRegime::stretch_forward;
  const double mur = mu * r;
  if (mur <= 1.0) return MuRRegime::compress_forward;
  if (mur < 2.0) return MuRRegime::compress_reversed;
  if (mur == 2.0) return MuRRegime::pure_reversal;
  return MuRRegime::stretch_reversed;
}

std::string to_string(MuRRegime regime) {
  switch (regime) {
    case MuRRegime::compress_forward: return "compress-forward";
    case MuRRegime::compress_reversed: return "compress-reversed";
    case MuRRegime::pure_reversal: return "pure-reversal";
    case MuRRegime::stretch_reversed: return "stretch-reversed";
    case MuRRegime::stretch_forward: return "stretch-forward";
  }
  return "unknown";
}

ProcessorProgram design_comb(std::span<const DelayTarget> targets,
                             const DesignLimits& limits, const SegmentDefaults& defaults) {
  ProcessorProgram program;
  double f_min = 0.0, f_max = 0.0;
  bool first = true;
  for (const DelayTarget& t : targets) {
    check_band(t.f_lo_mhz, t.f_hi_mhz);
    if (t.delays_ns.empty() || t.delays_ns.size() > 2) {
      throw InfeasibleError("delay target needs 1 or 2 delays per band");
    }
    for (double d : t.delays_ns) {
      if (!(d > 0.0)) throw InfeasibleError("delays must be positive");
      if (d > limits.max_storage_ns) {
        throw InfeasibleError("storage-time limit: requested delay " +
                              std::to_string(d) + " ns exceeds max " +
                              std::to_string(limits.max_storage_ns) + " ns");
      }
    }
    if (first || t.f_lo_mhz < f_min) f_min = t.f_lo_mhz;
    if (first || t.f_hi_mhz > f_max) f_max = t.f_hi_mhz;
    first = false;

    if (t.delays_ns.size() == 1) {
      CombSegment seg;
      seg.f_lo_mhz = t.f_lo_mhz;
      seg.f_hi_mhz = t.f_hi_mhz;
      seg.delta_mhz = 1e3 / t.delays_ns[0];
      seg.eta = defaults.eta;
      seg.t_bg = defaults.t_bg;
      program.segments.emplace_back(seg);
    } else {
      DoubleCombSegment seg;
      seg.f_lo_mhz = t.f_lo_mhz;
      seg.f_hi_mhz = t.f_hi_mhz;
      // Equal split under the coherent passivity bound.
      const double eta_total =
          std::min(defaults.eta, 0.5 * (1.0 - defaults.t_bg * defaults.t_bg));
      for (int k = 0; k < 2; ++k) {
        seg.combs[k].delta_mhz = 1e3 / t.delays_ns[k];
        seg.combs[k].eta = 0.5 * eta_total;
        seg.combs[k].extra_phase_rad =
            k < static_cast<int>(t.phases_rad.size()) ? t.phases_rad[k] : 0.0;
      }
      seg.t_bg = defaults.t_bg;
      program.segments.emplace_back(seg);
    }
  }
  if (!first && f_max - f_min > limits.max_bandwidth_mhz) {
    throw InfeasibleError("bandwidth limit: program spans " +
                          std::to_string(f_max - f_min) + " MHz");
  }
  program.validate();
  return program;
}

CompressionDesign design_comb(const CompressionGoal& goal, const DesignLimits& limits,
                              const SegmentDefaults& defaults) {
  if (!(goal.kappa >= 1.0) || !(goal.tau_in_ns > 0.0)) {
    throw InfeasibleError("compression goal needs kappa >= 1 and tau_in > 0");
  }
  const double kappa_max = limits.max_storage_ns * limits.max_bandwidth_mhz * 1e-3;
  if (goal.kappa > kappa_max + 1e-9) {
    throw InfeasibleError("time-bandwidth limit: kappa " + std::to_string(goal.kappa) +
                          " exceeds max_storage*max_bandwidth = " +
                          std::to_string(kappa_max));
  }
  CompressionDesign d;
  const double mu_sq_ns2 = goal.tau_in_ns * goal.tau_in_ns / goal.kappa;
  d.mu_ns_per_mhz = mu_sq_ns2 * 1e-3;
  d.chirp_rate_mhz_per_ns = 1.0 / d.mu_ns_per_mhz;  // mu*r = 1
  d.bandwidth_mhz = goal.tau_in_ns * d.chirp_rate_mhz_per_ns;
  if (d.bandwidth_mhz > limits.max_bandwidth_mhz + 1e-9) {
    throw InfeasibleError("bandwidth limit: required chirp bandwidth " +
                          std::to_string(d.bandwidth_mhz) + " MHz exceeds max " +
                          std::to_string(limits.max_bandwidth_mhz) + " MHz");
  }
  const double spread_ns = d.mu_ns_per_mhz * d.bandwidth_mhz;  // = tau_in at mu*r = 1
  if (spread_ns > limits.max_storage_ns + 1e-9) {
    throw InfeasibleError("storage-time limit: delay spread " + std::to_string(spread_ns) +
                          " ns exceeds max " + std::to_string(limits.max_storage_ns) + " ns");
  }

  ChirpedCombSegment seg;
  seg.f_lo_mhz = goal.band_center_mhz - 0.5 * d.bandwidth_mhz;
  seg.f_hi_mhz = goal.band_center_mhz + 0.5 * d.bandwidth_mhz;
  seg.delta_lo_mhz = 1e3 / goal.min_storage_ns;
  seg.delta_hi_mhz = 1e3 / (goal.min_storage_ns + spread_ns);
  seg.eta = defaults.eta;
  seg.t_bg = defaults.t_bg;
  d.program.segments.emplace_back(seg);
  d.program.validate();
  return d;
}

DoubleCombSegment design_comb(const ProjectorTarget& target, const DesignLimits& limits) {
  if (target.delay_early_ns == target.delay_late_ns) {
    throw InfeasibleError("projector needs two distinct delays");
  }
  for (double d : {target.delay_early_ns, target.delay_late_ns}) {
    if (!(d > 0.0)) throw InfeasibleError("delays must be positive");
    if (d > limits.max_storage_ns) {
      throw InfeasibleError("storage-time limit: requested delay " + std::to_string(d) +
                            " ns exceeds max " + std::to_string(limits.max_storage_ns) +
                            " ns");
    }
  }
  DoubleCombSegment seg;
  seg.f_lo_mhz = target.f_lo_mhz;
  seg.f_hi_mhz = target.f_hi_mhz;
  seg.combs[0] = {1e3 / target.delay_early_ns, 0.5 * target.total_eta, 0.0};
  seg.combs[1] = {1e3 / target.delay_late_ns, 0.5 * target.total_eta,
                  target.relative_phase_rad};
  seg.validate();  // rejects total_eta beyond the coherent bound
  return seg;
}

std::string comb_profile_table(const ProcessorProgram& program, const TimeGrid& grid) {
  const TransferFunction tf = transfer_function(program, grid);
  std::ostringstream os;
  os << "f_mhz\ttransmitted_amp\techo_amp\tgroup_delay_ns\n";
  os << std::setprecision(9);
  const double f0 = grid.f_start();
  const double df = grid.df();
  for (std::size_t k = 0; k < grid.n; ++k) {
    const double f = f0 + static_cast<double>(k) * df;
    double delay = 0.0;
    for (const Segment& s : program.segments) {
      if (f < segment_f_lo(s) || f >= segment_f_hi(s)) continue;
      delay = std::visit(
          [&](const auto& seg) -> double {
            using T = std::decay_t<decltype(seg)>;
            if constexpr (std::is_same_v<T, CombSegment>) {
              return seg.storage_time_ns();
            } else if constexpr (std::is_same_v<T, ChirpedCombSegment>) {
              return seg.storage_at(f);
            } else {
              // Intensity-weighted mean of the two echo delays.
              const double e0 = seg.combs[0].eta, e1 = seg.combs[1].eta;
              const double t0 = 1e3 / seg.combs[0].delta_mhz;
              const double t1 = 1e3 / seg.combs[1].delta_mhz;
              return e0 + e1 > 0.0 ? (e0 * t0 + e1 * t1) / (e0 + e1) : 0.0;
            }
          },
          s);
      break;
    }
    os << f << '\t' << std::abs(tf.transmitted[k]) << '\t' << std::abs(tf.echo[k]) << '\t'
       << delay << '\n';
  }
  return os.str();
}

}  // namespace afcproc
