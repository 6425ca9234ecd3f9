#include "dbsim/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "dbsim/parallel.hpp"

namespace dbsim::metrics {

std::string channel_name(NoiseChannel channel) {
  switch (channel) {
    case NoiseChannel::AncillaDecay: return "ancilla-decay";
    case NoiseChannel::AncillaDephasing: return "ancilla-dephasing";
    case NoiseChannel::PhotonLoss: return "photon-loss";
  }
  return "?";
}

NoiseChannel channel_from_name(const std::string& name) {
  if (name == "ancilla-decay" || name == "decay") return NoiseChannel::AncillaDecay;
  if (name == "ancilla-dephasing" || name == "dephasing")
    return NoiseChannel::AncillaDephasing;
  if (name == "photon-loss" || name == "loss") return NoiseChannel::PhotonLoss;
  throw std::invalid_argument("unknown noise channel: " + name);
}

dynamics::NoiseModel channel_noise(NoiseChannel channel, double t_coh, int num_modes) {
  if (t_coh <= 0) throw std::invalid_argument("channel_noise: T_coh must be > 0");
  dynamics::NoiseModel noise;
  switch (channel) {
    case NoiseChannel::AncillaDecay:
      noise.gamma1_transmon = 1.0 / t_coh;
      break;
    case NoiseChannel::AncillaDephasing:
      noise.gammaphi_transmon = 0.5 / t_coh;
      break;
    case NoiseChannel::PhotonLoss:
      noise.gamma1_cavity.assign(num_modes, 1.0 / t_coh);
      break;
  }
  return noise;
}

GateSetup make_zz_gate(codes::CodeKind kind, double theta, double chi_f, double chi_e,
                       const circuits::GadgetOptions& opts, int mode_dim,
                       circuits::CzzVariant variant) {
  GateSetup gate;
  gate.code = codes::make_code(kind, mode_dim);
  gate.layout = codes::two_qubit_layout(gate.code);
  circuits::Schedule inner =
      circuits::schedule_czz(gate.code.rotation_order, chi_f, chi_e, variant);
  auto [ma, mb] = codes::gate_mode_pair(gate.code);
  inner.mode_a = ma;
  inner.mode_b = mb;
  gate.schedule = circuits::schedule_exponentiation(inner, theta, opts);
  gate.tau_gate = gate.schedule.total_duration();
  Matrix frame = dynamics::frame_removal_modes(gate.schedule, gate.layout);
  gate.target_modes =
      frame.adjoint() *
      codes::reference_unitary_modes(codes::LogicalGate::Zz, theta, gate.code);
  gate.cardinal_modes = codes::cardinal_states_modes(gate.code);
  gate.cardinal_full = codes::cardinal_states(gate.code, gate.layout);
  return gate;
}

SweepPoint error_detected_infidelity(const GateSetup& gate, const dynamics::NoiseModel& noise,
                                     const dynamics::ReadoutModel& readout,
                                     const dynamics::IntegratorOptions& opts,
                                     const NonlinearParams* nl, unsigned workers) {
  const std::size_t n = gate.cardinal_full.size();
  auto channels = dynamics::schedule_channels(gate.schedule, noise, gate.layout, opts, nl);

  std::vector<double> fidelity(n), failure(n), anc_failure(n), pass(n);
  parallel::parallel_for(n, workers, [&](std::size_t k) {
    Matrix rho = gate.cardinal_full[k] * gate.cardinal_full[k].adjoint();
    for (const auto& ch : channels) rho = ch.apply(rho);
    auto ro = dynamics::apply_readout(rho, readout, gate.layout);
    auto syn = dynamics::apply_syndrome(ro.rho_given_g, gate.code);
    double weight = syn.rho_ps.trace().real();
    if (weight <= 1e-300)
      throw std::runtime_error("degenerate postselection: zero accepted weight for state " +
                               std::to_string(k));
    Vector target = gate.target_modes * gate.cardinal_modes[k];
    fidelity[k] = (target.adjoint() * syn.rho_ps * target).value().real() / weight;
    failure[k] = 1.0 - weight;
    anc_failure[k] = ro.failure_prob;
    pass[k] = syn.pass_prob;
  });

  SweepPoint point;
  point.tau_gate = gate.tau_gate;
  double fsum = 0, failsum = 0, ancsum = 0, passsum = 0;
  for (std::size_t k = 0; k < n; ++k) {
    fsum += fidelity[k];
    failsum += failure[k];
    ancsum += anc_failure[k];
    passsum += pass[k];
  }
  point.ed_infidelity = 1.0 - fsum / n;
  point.failure_prob = failsum / n;
  point.ancilla_failure_prob = ancsum / n;
  point.syndrome_pass_prob = passsum / n;
  return point;
}

ScalingFit fit_scaling(std::span<const SweepPoint> points, FitQuantity quantity) {
  if (points.size() < 4)
    throw std::invalid_argument("fit_scaling: at least 4 sweep points required");
  double xmin = 1e300, xmax = -1e300;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : points) {
    double q = quantity == FitQuantity::Failure ? p.failure_prob : p.ed_infidelity;
    if (q <= 0) throw std::invalid_argument("fit_scaling: nonpositive quantity");
    if (p.t_coh <= 0 || p.tau_gate <= 0)
      throw std::invalid_argument("fit_scaling: invalid sweep point times");
    double x = std::log(p.tau_gate / p.t_coh);
    double y = std::log(q);
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (xmax - xmin < std::log(10.0))
    throw std::invalid_argument("fit_scaling: points must span at least one decade");
  double n = static_cast<double>(points.size());
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double intercept = (sy - slope * sx) / n;
  double ss = 0;
  for (const auto& p : points) {
    double q = quantity == FitQuantity::Failure ? p.failure_prob : p.ed_infidelity;
    double x = std::log(p.tau_gate / p.t_coh);
    double r = std::log(q) - (intercept + slope * x);
    ss += r * r;
  }
  return ScalingFit{std::exp(intercept), slope, std::sqrt(ss / n)};
}

std::vector<SweepPoint> coherence_sweep(const GateSetup& gate, NoiseChannel channel,
                                        std::span<const double> tcoh_over_tau,
                                        const dynamics::ReadoutModel& readout,
                                        const dynamics::IntegratorOptions& opts,
                                        unsigned workers) {
  std::vector<SweepPoint> out;
  out.reserve(tcoh_over_tau.size());
  for (double ratio : tcoh_over_tau) {
    double t_coh = ratio * gate.tau_gate;
    auto noise = channel_noise(channel, t_coh, gate.layout.num_modes());
    SweepPoint p = error_detected_infidelity(gate, noise, readout, opts, nullptr, workers);
    p.t_coh = t_coh;
    out.push_back(p);
  }
  return out;
}

NonlinearParams scale_nonlinearity(const NonlinearParams& anchor, double chi_anchor,
                                   double chi_f) {
  if (chi_anchor == 0) throw std::invalid_argument("scale_nonlinearity: zero anchor");
  double s = (chi_f / chi_anchor) * (chi_f / chi_anchor);
  NonlinearParams nl = anchor;
  nl.kerr_a *= s;
  nl.kerr_b *= s;
  nl.chi_e_prime *= s;
  nl.chi_f_prime *= s;
  // chi_ab stays fixed across the sweep
  return nl;
}

std::vector<ChiSweepPoint> chi_sweep(codes::CodeKind kind, const ChiSweepSettings& settings,
                                     const dynamics::ReadoutModel& readout,
                                     const dynamics::IntegratorOptions& opts,
                                     unsigned workers) {
  std::vector<ChiSweepPoint> out;
  out.reserve(settings.chi_values.size());
  for (double chi_f : settings.chi_values) {
    GateSetup gate = make_zz_gate(kind, settings.theta, chi_f, 0.5 * chi_f);
    NonlinearParams nl = scale_nonlinearity(settings.anchor_nl, settings.chi_anchor, chi_f);
    SweepPoint p =
        error_detected_infidelity(gate, settings.noise, readout, opts, &nl, workers);
    out.push_back(ChiSweepPoint{chi_f, gate.tau_gate, p.failure_prob, p.ed_infidelity});
  }
  return out;
}

}  // namespace dbsim::metrics
