#ifndef AFCPROC_COMB_HPP
#define AFCPROC_COMB_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "afcproc/signal.hpp"

namespace afcproc {

// Constant-spacing AFC band: first echo delayed by 1/delta, phase referenced
// to the tooth at f_ref (band center when unset) so that a carrier detuned by
// d0 from the reference tooth acquires relative phase 2*pi*d0*delta^-1.
struct CombSegment {
  double f_lo_mhz = 0.0;
  double f_hi_mhz = 0.0;
  double delta_mhz = 0.0;      // tooth spacing
  double eta = 0.01;           // first-echo intensity efficiency
  double t_bg = 0.3;           // residual background amplitude transmission
  std::optional<double> f_ref_mhz;

  double storage_time_ns() const { return 1e3 / delta_mhz; }
  double reference() const { return f_ref_mhz ? *f_ref_mhz : 0.5 * (f_lo_mhz + f_hi_mhz); }
  void validate() const;
};

// Linearly varying storage time across the band: 1/delta_lo at f_lo up to
// 1/delta_hi at f_hi, realized as a quadratic spectral phase with group delay
// mu*(f - f0) + storage(f0).
struct ChirpedCombSegment {
  double f_lo_mhz = 0.0;
  double f_hi_mhz = 0.0;
  double delta_lo_mhz = 0.0;   // spacing at f_lo
  double delta_hi_mhz = 0.0;   // spacing at f_hi (smaller spacing = longer storage)
  double eta = 0.01;
  double t_bg = 0.3;
  std::optional<double> f0_mhz;  // phase reference, band center when unset

  double storage_lo_ns() const { return 1e3 / delta_lo_mhz; }
  double storage_hi_ns() const { return 1e3 / delta_hi_mhz; }
  double reference() const { return f0_mhz ? *f0_mhz : 0.5 * (f_lo_mhz + f_hi_mhz); }
  double storage_at(double f_mhz) const;
  void validate() const;
};

// Storage-time gradient mu = (max storage - min storage)/bandwidth, ns/MHz.
double storage_gradient(const ChirpedCombSegment& segment);

struct DoubleCombEntry {
  double delta_mhz = 0.0;
  double eta = 0.0;
  double extra_phase_rad = 0.0;
};

// Two superimposed combs in one band: a time-bin splitter/projector. Both
// share the tooth reference, so extra_phase is the inter-comb phase seen by a
// carrier at the reference. Passivity uses the coherent bound
// (sqrt(eta1)+sqrt(eta2))^2 + t_bg^2 <= 1.
struct DoubleCombSegment {
  double f_lo_mhz = 0.0;
  double f_hi_mhz = 0.0;
  std::array<DoubleCombEntry, 2> combs;
  double t_bg = 0.0;
  std::optional<double> f_ref_mhz;

  double reference() const { return f_ref_mhz ? *f_ref_mhz : 0.5 * (f_lo_mhz + f_hi_mhz); }
  void validate() const;
};

using Segment = std::variant<CombSegment, ChirpedCombSegment, DoubleCombSegment>;

double segment_f_lo(const Segment&);
double segment_f_hi(const Segment&);
double segment_max_storage_ns(const Segment&);

struct ProcessorProgram {
  std::vector<Segment> segments;
  double out_of_band_transmission = 1.0;  // amplitude
  // Sets every segment's efficiency to the program-wide minimum when compiling
  // (trades efficiency for uniform echo amplitudes).
  bool equalize_efficiencies = false;

  void validate() const;
  double max_storage_ns() const;
};

// Transmitted and first-echo spectral responses sampled on the grid's
// monotone frequency axis.
struct TransferFunction {
  std::vector<cplx> transmitted;
  std::vector<cplx> echo;
};

TransferFunction transfer_function(const ProcessorProgram& program, const TimeGrid& grid);

// Closed-form first-echo observables for a Gaussian input of amplitude
// parameter tau_in chirped at r and stored in a gradient-mu comb (chirp start
// f1, comb phase reference f0, storage t_offset at f0). Exact for Gaussian
// envelopes; the width uses the quadratic coefficient of this model's
// transfer, mu_q = 1000*mu/(2*pi) ns^2.
struct EchoPrediction {
  double t_center_ns = 0.0;
  double tau_out_ns = 0.0;
  double fwhm_out_ns = 0.0;
  double kappa = 0.0;  // tau_in / tau_out
};

EchoPrediction analytic_echo(double tau_in_ns, double mu_ns_per_mhz, double r_mhz_per_ns,
                             double f0_mhz = 0.0, double f1_mhz = 0.0,
                             double t_offset_ns = 0.0);

enum class MuRRegime {
  compress_forward,   // 0 < mu*r <= 1
  compress_reversed,  // 1 < mu*r < 2
  pure_reversal,      // mu*r == 2
  stretch_reversed,   // mu*r > 2
  stretch_forward,    // r <= 0
};

MuRRegime mu_r_regime(double mu_ns_per_mhz, double r_mhz_per_ns);
std::string to_string(MuRRegime regime);

// ----- inverse designer -----

struct DesignLimits {
  double max_storage_ns = 125.0;
  double max_bandwidth_mhz = 10000.0;
};

struct SegmentDefaults {
  double eta = 0.01;
  double t_bg = 0.3;
};

inline constexpr SegmentDefaults kIdealSegment{1.0, 0.0};

// One band mapped to one delay (comb) or two delays + phase (double comb).
struct DelayTarget {
  double f_lo_mhz = 0.0;
  double f_hi_mhz = 0.0;
  std::vector<double> delays_ns;        // size 1 or 2
  std::vector<double> phases_rad;       // per delay, optional (defaults 0)
};

ProcessorProgram design_comb(std::span<const DelayTarget> targets,
                             const DesignLimits& limits = {},
                             const SegmentDefaults& defaults = {});

// Compression goal: kappa = mu B^2 bookkeeping. Chooses mu = tau_in^2/kappa,
// r = 1/mu, B = tau_in*r and validates against the limits, naming the binding
// constraint on failure.
struct CompressionGoal {
  double kappa = 1.0;
  double tau_in_ns = 0.0;
  double min_storage_ns = 30.0;
  double band_center_mhz = 0.0;
};

struct CompressionDesign {
  ProcessorProgram program;
  double mu_ns_per_mhz = 0.0;
  double chirp_rate_mhz_per_ns = 0.0;
  double bandwidth_mhz = 0.0;
};

CompressionDesign design_comb(const CompressionGoal& goal, const DesignLimits& limits = {},
                              const SegmentDefaults& defaults = {});

// Time-bin projector: double comb with the two delays and relative phase.
// total_eta = 0.5 is the equal-split coherent-passivity maximum.
struct ProjectorTarget {
  double f_lo_mhz = 0.0;
  double f_hi_mhz = 0.0;
  double delay_early_ns = 0.0;
  double delay_late_ns = 0.0;
  double relative_phase_rad = 0.0;
  double total_eta = 0.5;
};

DoubleCombSegment design_comb(const ProjectorTarget& target, const DesignLimits& limits = {});

// Tab-separated comb profile (f, |transmitted|, |echo|, group delay) for
// plotting programmed processors.
std::string comb_profile_table(const ProcessorProgram& program, const TimeGrid& grid);

}  // namespace afcproc

#endif
