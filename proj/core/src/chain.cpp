#include "afcproc/chain.hpp"

#include <cmath>
#include <stdexcept>

#include "afcproc/errors.hpp"

namespace afcproc {

namespace {

std::optional<Measurement> measure_if_nonzero(const ComplexField& field) {
  for (const cplx& s : field.samples) {
    if (s != 0.0) return measure(field);
  }
  return std::nullopt;
}

ComplexField filter_fp(const ComplexField& field, const FPFilterSpec& fp) {
  Spectrum spec = to_spectrum(field);
  spec = apply_transfer(spec, fp_transmission(fp, field.grid));
  return to_time(spec);
}

void collect_flag_warning(const ComplexField& field, const char* stage,
                          std::vector<std::string>& warnings) {
  if (field.flags & kFlagNearNyquist) {
    warnings.push_back(std::string(stage) + ": spectral content within 5% of Nyquist");
  }
}

}  // namespace

void FPFilterSpec::validate() const {
  if (!(linewidth_mhz > 0.0) || !(linewidth_mhz < fsr_mhz)) {
    throw ProgramError("FP filter requires 0 < linewidth < fsr");
  }
}

cplx fp_transmission_at(const FPFilterSpec& spec, double f_mhz) {
  // Detuning wrapped to the nearest resonance of the periodic response. The
  // +i sign keeps the pole in the causal half-plane for the e^{+i 2 pi f t}
  // synthesis convention (response lags, group delay 1/(pi linewidth)).
  double d = std::remainder(f_mhz - spec.center_mhz, spec.fsr_mhz);
  return 1.0 / cplx(1.0, 2.0 * d / spec.linewidth_mhz);
}

std::vector<cplx> fp_transmission(const FPFilterSpec& spec, const TimeGrid& grid) {
  spec.validate();
  std::vector<cplx> h(grid.n);
  const double f0 = grid.f_start();
  const double df = grid.df();
  for (std::size_t k = 0; k < grid.n; ++k) {
    h[k] = fp_transmission_at(spec, f0 + static_cast<double>(k) * df);
  }
  return h;
}

ComplexField apply_action(const ComplexField& field, const ModulatorAction& action) {
  return std::visit(
      [&](const auto& op) -> ComplexField {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, SerrodyneSpec>) {
          return serrodyne(field, op);
        } else if constexpr (std::is_same_v<T, ChirpSpec>) {
          return chirp(field, op);
        } else {
          return gated_shifts(field, op);
        }
      },
      action.op);
}

ChainResult run_chain(const ComplexField& input, const ChainSpec& spec) {
  ChainResult result;
  result.input_energy = field_energy(input);

  ComplexField field = apply_insertion_loss(input, spec.input_loss_db);
  for (std::size_t i = 0; i < spec.input_actions.size(); ++i) {
    field = apply_action(field, spec.input_actions[i]);
    collect_flag_warning(field, "input controller", result.warnings);
  }

  const Spectrum spec_in = to_spectrum(field);
  const TransferFunction tf = transfer_function(spec.program, input.grid);
  Spectrum transmitted_spec = apply_transfer(spec_in, tf.transmitted);
  Spectrum echo_spec = apply_transfer(spec_in, tf.echo);

  result.transmitted = to_time(transmitted_spec);
  result.echo = to_time(echo_spec);

  for (ComplexField* component : {&result.transmitted, &result.echo}) {
    const bool is_echo = component == &result.echo;
    *component = apply_insertion_loss(*component, spec.output_loss_db);
    for (const ModulatorAction& action : spec.output_actions) {
      if (action.target == StageTarget::transmitted && is_echo) continue;
      if (action.target == StageTarget::echo && !is_echo) continue;
      *component = apply_action(*component, action);
      collect_flag_warning(*component, "output controller", result.warnings);
    }
    if (spec.fp) *component = filter_fp(*component, *spec.fp);
  }

  const double out_energy = field_energy(result.transmitted) + field_energy(result.echo);
  if (out_energy > result.input_energy * (1.0 + 1e-9) + 1e-30) {
    throw std::logic_error("chain produced energy gain");
  }

  result.transmitted_obs = measure_if_nonzero(result.transmitted);
  result.echo_obs = measure_if_nonzero(result.echo);
  return result;
}

ChainResult restore_frequency(const ChainResult& result,
                              std::span<const FrequencyRestore> shifts,
                              const std::optional<FPFilterSpec>& fp) {
  ChainResult out = result;
  for (const FrequencyRestore& r : shifts) {
    SerrodyneSpec s;
    s.shift_mhz = r.shift_mhz;
    s.gate = r.gate;
    if (r.target != StageTarget::echo) out.transmitted = serrodyne(out.transmitted, s);
    if (r.target != StageTarget::transmitted) out.echo = serrodyne(out.echo, s);
  }
  if (fp) {
    out.transmitted = filter_fp(out.transmitted, *fp);
    out.echo = filter_fp(out.echo, *fp);
  }
  out.transmitted_obs = measure_if_nonzero(out.transmitted);
  out.echo_obs = measure_if_nonzero(out.echo);
  return out;
}

}  // namespace afcproc
