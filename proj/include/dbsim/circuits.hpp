#pragma once

#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dbsim/bloch.hpp"
#include "dbsim/fock.hpp"

namespace dbsim::circuits {

enum class RotationAxis { X, Y };

// Piecewise-constant control interval. Beamsplitter and Delay segments evolve
// under the dispersive(-beamsplitter) Hamiltonian; AncillaRotation segments
// evolve under H_T = drive_strength * sigma_{x|y}^{gf} alone (the dispersive
// coupling is dropped during transmon pulses), with angle = 2 * drive_strength
// * duration.
struct Segment {
  enum class Kind { Beamsplitter, AncillaRotation, Delay };
  Kind kind;
  double duration = 0.0;  // seconds, > 0
  PumpParams pump;        // Beamsplitter; Delay uses only chi_f / chi_e
  RotationAxis axis = RotationAxis::X;
  double angle = 0.0;           // radians, signed
  double drive_strength = 0.0;  // rad/s, = angle / (2 * duration)

  static Segment beamsplitter(const PumpParams& pump, double duration);
  static Segment rotation(RotationAxis axis, double angle, double duration);
  static Segment delay(double duration, double chi_f, double chi_e);
};

// Ordered control segments plus the software-tracked frame. frame_phi_a/b are
// the angles of the rotation exp(i(phi_a n_a + phi_b n_b)) on the beamsplitter
// mode pair that must be applied after physical propagation to obtain the
// ideal gate (U_ideal = R_frame * U_phys). Gates built from closed orbits have
// phi_a == phi_b; cSWAP needs distinct angles (see schedule_cswap).
struct Schedule {
  std::vector<Segment> segments;
  int mode_a = 0;
  int mode_b = 1;
  double frame_phi_a = 0.0;
  double frame_phi_b = 0.0;

  double total_duration() const;
  bool frame_symmetric(double tol = 1e-12) const;
};

enum class CzzVariant { Fast, Slow };

// Single beamsplitter pulse realizing the controlled joint-(4-)parity of
// Table I; n = 1 for Fock01/dual-rail, n = 2 for binomial/four-cat codes.
Schedule schedule_czz(int n, double chi_f, double chi_e,
                      CzzVariant variant = CzzVariant::Fast);

// Beamsplitter pulse at the cSWAP operating point followed by a dispersive
// delay that equalizes the branch phases. In the symmetric-gf frame the
// residual software frame is per-mode: (phi_a, phi_b) = (pi/2, -phi_orbit_g).
Schedule schedule_cswap(double chi_f, double chi_e);

// BS(T_eq) + X(pi) + BS(T_eq); needs g > |chi_f|/2. The two branches acquire
// opposite residual phases (asymmetry 2 phi); no software frame is recorded.
Schedule schedule_uswap(double g, double chi_f, double chi_e,
                        double rot_duration = 50e-9);

// Quarter-orbit beamsplitter with the |g>-branch detuning nulled.
Schedule schedule_bs5050(double g, double chi_f, double chi_e);

struct GadgetOptions {
  double rot_duration = 50e-9;
  double over_rotation = 0.0;  // extra angle on the first Y pulse (no-jump bias)
};

// Y(+pi/2) + inner + X(theta) + inner + Y(-pi/2): turns the controlled-P inner
// into P(theta) x |g><g| + P(-theta) x |f><f|. Requires a symmetric inner frame.
Schedule schedule_exponentiation(const Schedule& inner, double theta,
                                 const GadgetOptions& opts = {});

// Y(+pi/2) + inner + Y(-pi/2); ancilla z-readout then measures the P eigenvalue.
Schedule schedule_qnd_measurement(const Schedule& inner, double rot_duration = 50e-9);

// Segments concatenated, durations additive, frame angles additive (valid for
// photon-number-diagonal frames).
Schedule concat(std::span<const Schedule> parts);

nlohmann::json to_timeline(const Schedule& schedule);
Schedule from_timeline(const nlohmann::json& timeline);

// Operator Bloch-sphere samples along a schedule for a definite initial ancilla
// branch. Only pi (mod 2pi) or zero-angle ancilla rotations are trackable;
// anything else leaves the ancilla in a superposition and throws.
std::vector<bloch::TrajectorySample> schedule_trajectory(const Schedule& schedule,
                                                         bloch::AncillaBranch branch,
                                                         int nsteps);

}  // namespace dbsim::circuits
