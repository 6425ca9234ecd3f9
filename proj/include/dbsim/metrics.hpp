#pragma once

#include <span>
#include <string>
#include <vector>

#include "dbsim/dynamics.hpp"

namespace dbsim::metrics {

enum class NoiseChannel { AncillaDecay, AncillaDephasing, PhotonLoss };

std::string channel_name(NoiseChannel channel);
NoiseChannel channel_from_name(const std::string& name);

// Coherence-time conventions per channel: decay T_coh = 1/Gamma1 (transmon T1),
// dephasing T_coh = 1/(2 Gamma_phi) (the gf-manifold coherence time; the gf
// coherence decays as exp(-2 Gamma_phi t) under D[t†t]), photon loss
// T_coh = 1/Gamma1_cav per mode. These are the normalizations under which the
// first-order failure prefactors come out as A1 ~ 1 (ancilla) and
// A1 ~ total photon number (loss).
dynamics::NoiseModel channel_noise(NoiseChannel channel, double t_coh, int num_modes);

// Everything needed to score one logical gate.
struct GateSetup {
  circuits::Schedule schedule;
  codes::BosonicCode code;
  HilbertLayout layout;
  Matrix target_modes;                 // R_frame† U_ref on the mode space
  std::vector<Vector> cardinal_modes;  // 36 initial logical states
  std::vector<Vector> cardinal_full;   // same, with ancilla |g>
  double tau_gate = 0.0;
};

// ZZ_L(theta) via the exponentiation gadget with the code-appropriate
// controlled-joint-parity inner unitary.
GateSetup make_zz_gate(codes::CodeKind kind, double theta, double chi_f, double chi_e,
                       const circuits::GadgetOptions& opts = {}, int mode_dim = 0,
                       circuits::CzzVariant variant = circuits::CzzVariant::Fast);

struct SweepPoint {
  double t_coh = 0.0;
  double tau_gate = 0.0;
  double failure_prob = 0.0;   // 1 - P(observe g and syndromes pass)
  double ed_infidelity = 0.0;  // 1 - mean postselected state-transfer fidelity
  double ancilla_failure_prob = 0.0;  // 1 - Tr[|g><g| rho^f], averaged
  double syndrome_pass_prob = 1.0;
};

// Appendix-J pipeline over the 36 cardinal states: propagate, readout-condition
// on |g>, project syndromes, renormalize, overlap with the ideal gate.
SweepPoint error_detected_infidelity(const GateSetup& gate, const dynamics::NoiseModel& noise,
                                     const dynamics::ReadoutModel& readout,
                                     const dynamics::IntegratorOptions& opts = {},
                                     const NonlinearParams* nl = nullptr,
                                     unsigned workers = 1);

enum class FitQuantity { Failure, Infidelity };

struct ScalingFit {
  double amplitude = 0.0;
  double exponent = 0.0;
  double residual = 0.0;  // rms log residual
};

// Least squares of log(quantity) against log(tau_gate / T_coh).
ScalingFit fit_scaling(std::span<const SweepPoint> points, FitQuantity quantity);

std::vector<SweepPoint> coherence_sweep(const GateSetup& gate, NoiseChannel channel,
                                        std::span<const double> tcoh_over_tau,
                                        const dynamics::ReadoutModel& readout,
                                        const dynamics::IntegratorOptions& opts = {},
                                        unsigned workers = 1);

struct ChiSweepPoint {
  double chi_f = 0.0;
  double tau_gate = 0.0;
  double failure_prob = 0.0;
  double ed_infidelity = 0.0;
};

struct ChiSweepSettings {
  std::vector<double> chi_values;  // rad/s, same sign as chi_anchor
  double chi_anchor = 0.0;         // rad/s; nonlinearities are quoted here
  NonlinearParams anchor_nl;       // K, chi' scale as (chi_f/chi_anchor)^2, chi_ab fixed
  dynamics::NoiseModel noise;      // fixed rates (empty = coherent-error-only sweep)
  double theta = kPi / 2;
};

std::vector<ChiSweepPoint> chi_sweep(codes::CodeKind kind, const ChiSweepSettings& settings,
                                     const dynamics::ReadoutModel& readout,
                                     const dynamics::IntegratorOptions& opts = {},
                                     unsigned workers = 1);

NonlinearParams scale_nonlinearity(const NonlinearParams& anchor, double chi_anchor,
                                   double chi_f);

}  // namespace dbsim::metrics
