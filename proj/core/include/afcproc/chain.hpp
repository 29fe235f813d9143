#ifndef AFCPROC_CHAIN_HPP
#define AFCPROC_CHAIN_HPP

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "afcproc/comb.hpp"
#include "afcproc/modulator.hpp"
#include "afcproc/signal.hpp"

namespace afcproc {

// Single-pass etalon: periodic complex-Lorentzian amplitude transmission,
// unity at the resonance peaks, intensity FWHM = linewidth, period = fsr.
struct FPFilterSpec {
  double center_mhz = 0.0;
  double linewidth_mhz = 80.0;
  double fsr_mhz = 23000.0;

  void validate() const;
};

// Which output component an action applies to. Input actions always act on
// the single incoming field.
enum class StageTarget { both, transmitted, echo };

struct ModulatorAction {
  std::variant<SerrodyneSpec, ChirpSpec, GatedShiftProgram> op;
  StageTarget target = StageTarget::both;
};

// Full pipeline: input controller -> programmed AFC -> output controller ->
// optional Fabry-Perot filter.
struct ChainSpec {
  std::vector<ModulatorAction> input_actions;
  ProcessorProgram program;
  std::vector<ModulatorAction> output_actions;
  std::optional<FPFilterSpec> fp;
  double input_loss_db = 0.0;   // optional controller insertion loss
  double output_loss_db = 0.0;
};

// Transmitted and first-echo components are tracked as separate labeled
// fields from the AFC onward (they can overlap in time).
struct ChainResult {
  ComplexField transmitted;
  ComplexField echo;
  std::optional<Measurement> transmitted_obs;  // absent for an all-zero component
  std::optional<Measurement> echo_obs;
  double input_energy = 0.0;
  std::vector<std::string> warnings;
};

ChainResult run_chain(const ComplexField& input, const ChainSpec& spec);

// FP amplitude transmission sampled on the grid's monotone frequency axis.
std::vector<cplx> fp_transmission(const FPFilterSpec& spec, const TimeGrid& grid);
cplx fp_transmission_at(const FPFilterSpec& spec, double f_mhz);

// Post-chain serrodyne shifts that move components back to (or select) their
// carrier frequencies; observables are re-derived.
struct FrequencyRestore {
  double shift_mhz = 0.0;
  StageTarget target = StageTarget::both;
  std::optional<Gate> gate;
};

ChainResult restore_frequency(const ChainResult& result,
                              std::span<const FrequencyRestore> shifts,
                              const std::optional<FPFilterSpec>& fp = std::nullopt);

ComplexField apply_action(const ComplexField& field, const ModulatorAction& action);

}  // namespace afcproc

#endif
