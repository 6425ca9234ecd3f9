#pragma once

#include <memory>
#include <vector>

#include <Eigen/SparseCore>

#include "dbsim/circuits.hpp"
#include "dbsim/codes.hpp"

namespace dbsim::dynamics {

using SparseMatrix = Eigen::SparseMatrix<cplx>;

struct NoiseModel {
  double gamma1_transmon = 0.0;    // rate of D[t], t = |g><e| + sqrt(2)|e><f|
  double gammaphi_transmon = 0.0;  // rate of D[t†t]
  std::vector<double> gamma1_cavity;  // per-mode photon loss rates; empty = none

  bool any() const;
  static NoiseModel photon_loss(double rate, int num_modes);
};

// Assignment-probability matrix eta(observed, actual); each actual state's
// outcome distribution (a column) sums to 1.
struct ReadoutModel {
  Eigen::Matrix3d eta = Eigen::Matrix3d::Identity();

  static ReadoutModel perfect();
  // eta_gg = 1 - gg_error, eta_ge as given, eta_gf = eta_ge^2.
  static ReadoutModel standard(double eta_ge = 0.01, double gg_error = 1e-4);
  void validate(double tol = 1e-12) const;
};

struct IntegratorOptions {
  double rel_tol = 1e-9;
  int fixed_substeps = 0;  // > 0: exactly this many Taylor steps per segment
  double step_phase = 8.0;  // target ||tau L|| per step
  int max_terms = 96;
};

// Hamiltonian of one control segment on the full space (rad/s). Rotation
// segments carry only the transmon drive; Beamsplitter and Delay segments
// include the dispersive (and optional nonlinear) terms.
Matrix segment_hamiltonian(const circuits::Segment& segment, const HilbertLayout& layout,
                           std::pair<int, int> mode_pair,
                           const NonlinearParams* nl = nullptr);

// One segment of Lindblad evolution as a linear map on matrices. The coherent
// part of a noiseless segment is applied exactly via the eigendecomposition of
// H; noisy segments use an adaptive truncated-Taylor expansion of
// exp(duration * L) acting matrix-free, with the step count set by a rigorous
// norm bound. Deterministic for fixed inputs and options.
class SegmentChannel {
 public:
  SegmentChannel(Matrix hamiltonian, std::vector<std::pair<double, Matrix>> collapse,
                 double duration, IntegratorOptions opts);

  Matrix apply(const Matrix& x) const;
  int substeps() const { return nsteps_; }

 private:
  Matrix lindblad_rhs(const Matrix& x) const;

  SparseMatrix h_;
  struct Collapse {
    double rate;
    SparseMatrix l, ldl;
  };
  std::vector<Collapse> collapse_;
  double duration_;
  IntegratorOptions opts_;
  int nsteps_ = 1;
  bool coherent_only_ = false;
  Matrix u_exact_;  // duration propagator for the noiseless path
};

std::vector<SegmentChannel> schedule_channels(const circuits::Schedule& schedule,
                                              const NoiseModel& noise,
                                              const HilbertLayout& layout,
                                              const IntegratorOptions& opts = {},
                                              const NonlinearParams* nl = nullptr);

// Ordered product of the per-segment propagators e^{-i H_seg t}.
Operator propagate_unitary(const circuits::Schedule& schedule, const HilbertLayout& layout,
                           const NonlinearParams* nl = nullptr);
// Per-segment unitaries, for composing error-insertion experiments.
std::vector<Matrix> segment_unitaries(const circuits::Schedule& schedule,
                                      const HilbertLayout& layout,
                                      const NonlinearParams* nl = nullptr);

Matrix propagate_lindblad(const circuits::Schedule& schedule, const NoiseModel& noise,
                          const HilbertLayout& layout, const Matrix& rho0,
                          const IntegratorOptions& opts = {},
                          const NonlinearParams* nl = nullptr);

// Shared schedule, many initial states; states are independent and distributed
// over `workers` threads, results in input order.
std::vector<Matrix> propagate_lindblad_batch(const circuits::Schedule& schedule,
                                             const NoiseModel& noise,
                                             const HilbertLayout& layout,
                                             const std::vector<Matrix>& rho0s,
                                             const IntegratorOptions& opts = {},
                                             const NonlinearParams* nl = nullptr,
                                             unsigned workers = 1);

// Software frame rotation exp(i(phi_a n_a + phi_b n_b)) of the schedule,
// diagonal on the mode space.
Matrix frame_removal_modes(const circuits::Schedule& schedule, const HilbertLayout& layout);
Operator frame_removal(const circuits::Schedule& schedule, const HilbertLayout& layout);

Matrix partial_trace_ancilla(const Matrix& rho_full, const HilbertLayout& layout);
// <anc| rho |anc> block on the mode space.
Matrix ancilla_block(const Matrix& rho_full, const HilbertLayout& layout, int anc);

struct ReadoutResult {
  Matrix rho_given_g;   // mode-space, unnormalized: trace = P(observe g)
  double failure_prob;  // 1 - Tr[|g><g| rho]
};
ReadoutResult apply_readout(const Matrix& rho_full, const ReadoutModel& readout,
                            const HilbertLayout& layout);

struct SyndromeResult {
  Matrix rho_ps;  // M rho M†, unnormalized
  double pass_prob;
};
SyndromeResult apply_syndrome(const Matrix& rho_modes, const codes::BosonicCode& code);

struct SimOutcome {
  Matrix rho_postselected;  // mode-space, unnormalized (trace = acceptance prob)
  double failure_prob = 0.0;
  double syndrome_pass_prob = 1.0;
};

void check_density_matrix(const Matrix& rho, double tol = 1e-10);

}  // namespace dbsim::dynamics
