#include "dbsim/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "dbsim/parallel.hpp"

namespace dbsim::dynamics {

namespace {

SparseMatrix sparsify(const Matrix& m) {
  SparseMatrix s = m.sparseView(1e-300, 1.0);
  s.makeCompressed();
  return s;
}

double gershgorin_bound(const SparseMatrix& m) {
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(m.rows());
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      row_sums[it.row()] += std::abs(it.value());
  return row_sums.size() ? row_sums.maxCoeff() : 0.0;
}

// ||L||_1 ||L||_inf upper-bounds sigma_max(L)^2
double spectral_sq_bound(const SparseMatrix& m) {
  Eigen::VectorXd col(m.cols()), row(m.rows());
  col.setZero();
  row.setZero();
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      col[it.col()] += std::abs(it.value());
      row[it.row()] += std::abs(it.value());
    }
  double c = col.size() ? col.maxCoeff() : 0.0;
  double r = row.size() ? row.maxCoeff() : 0.0;
  return c * r;
}

Matrix hermitian_propagator(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((0.5 * (h + h.adjoint())).eval());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("propagator: eigendecomposition failed");
  Vector phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(-kI * (es.eigenvalues()(i) * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix transmon_lowering() {
  Matrix t = Matrix::Zero(3, 3);
  t(0, 1) = 1.0;                 // |g><e|
  t(1, 2) = std::sqrt(2.0);      // sqrt(2)|e><f|
  return t;
}

}  // namespace

bool NoiseModel::any() const {
  if (gamma1_transmon > 0 || gammaphi_transmon > 0) return true;
  for (double g : gamma1_cavity)
    if (g > 0) return true;
  return false;
}

NoiseModel NoiseModel::photon_loss(double rate, int num_modes) {
  NoiseModel n;
  n.gamma1_cavity.assign(num_modes, rate);
  return n;
}

ReadoutModel ReadoutModel::perfect() { return ReadoutModel{}; }

ReadoutModel ReadoutModel::standard(double eta_ge, double gg_error) {
  ReadoutModel r;
  double eta_gf = eta_ge * eta_ge;
  r.eta << 1.0 - gg_error, eta_ge, eta_gf,
           gg_error, 1.0 - eta_ge, 0.0,
           0.0, 0.0, 1.0 - eta_gf;
  r.validate();
  return r;
}

void ReadoutModel::validate(double tol) const {
  for (int actual = 0; actual < 3; ++actual) {
    double sum = eta.col(actual).sum();
    if (std::abs(sum - 1.0) > tol)
      throw std::invalid_argument("readout model: outcome distribution must sum to 1");
    for (int obs = 0; obs < 3; ++obs)
      if (eta(obs, actual) < -tol)
        throw std::invalid_argument("readout model: negative assignment probability");
  }
}

Matrix segment_hamiltonian(const circuits::Segment& segment, const HilbertLayout& layout,
                           std::pair<int, int> mode_pair, const NonlinearParams* nl) {
  using Kind = circuits::Segment::Kind;
  switch (segment.kind) {
    case Kind::AncillaRotation: {
      Matrix sigma = segment.axis == circuits::RotationAxis::X ? sigma_x_gf() : sigma_y_gf();
      return segment.drive_strength * embed(sigma, 0, layout).matrix;
    }
    case Kind::Beamsplitter:
    case Kind::Delay: {
      PumpParams p = segment.pump;
      if (segment.kind == Kind::Delay) {
        p.g = 0.0;
        p.delta = 0.0;
      }
      Matrix h = build_hamiltonian(p, layout, mode_pair).matrix;
      if (nl && nl->any()) h += build_nonlinear_terms(*nl, layout, mode_pair).matrix;
      return h;
    }
  }
  throw std::logic_error("unreachable");
}

SegmentChannel::SegmentChannel(Matrix hamiltonian,
                               std::vector<std::pair<double, Matrix>> collapse,
                               double duration, IntegratorOptions opts)
    : duration_(duration), opts_(opts) {
  h_ = sparsify(hamiltonian);
  double rate_scale = 0.0;
  for (auto& [rate, l] : collapse) {
    if (rate < 0) throw std::invalid_argument("collapse rate must be >= 0");
    if (rate == 0) continue;
    Collapse c;
    c.rate = rate;
    c.l = sparsify(l);
    c.ldl = sparsify((l.adjoint() * l).eval());
    rate_scale += 2.0 * rate * spectral_sq_bound(c.l);
    collapse_.push_back(std::move(c));
  }
  coherent_only_ = collapse_.empty();
  if (coherent_only_) {
    u_exact_ = hermitian_propagator(hamiltonian, duration_);
    nsteps_ = 1;
    return;
  }
  double bound = 2.0 * gershgorin_bound(h_) + rate_scale;
  nsteps_ = opts_.fixed_substeps > 0
                ? opts_.fixed_substeps
                : std::max(1, static_cast<int>(std::ceil(duration_ * bound / opts_.step_phase)));
}

Matrix SegmentChannel::lindblad_rhs(const Matrix& x) const {
  Matrix out = -kI * (h_ * x - x * h_);
  for (const auto& c : collapse_) {
    Matrix lx = c.l * x;
    out += c.rate * (lx * c.l.adjoint());
    out -= (0.5 * c.rate) * (c.ldl * x + x * c.ldl);
  }
  return out;
}

Matrix SegmentChannel::apply(const Matrix& x) const {
  if (coherent_only_) return u_exact_ * x * u_exact_.adjoint();
  double tau = duration_ / nsteps_;
  // Truncated-Taylor action of exp(tau L); terms are stopped once two
  // consecutive ones fall below the per-step budget.
  double term_tol = opts_.rel_tol / (8.0 * nsteps_);
  Matrix acc = x;
  for (int step = 0; step < nsteps_; ++step) {
    Matrix term = acc;
    Matrix sum = acc;
    double ref = std::max(acc.norm(), 1e-300);
    int small_streak = 0;
    bool converged = false;
    for (int k = 1; k <= opts_.max_terms; ++k) {
      term = (tau / k) * lindblad_rhs(term);
      sum += term;
      if (term.norm() <= term_tol * ref) {
        if (++small_streak >= 2) {
          converged = true;
          break;
        }
      } else {
        small_streak = 0;
      }
    }
    if (!converged)
      throw std::runtime_error(
          "lindblad integration error: Taylor step did not meet tolerance");
    acc.swap(sum);
  }
  return acc;
}

std::vector<SegmentChannel> schedule_channels(const circuits::Schedule& schedule,
                                              const NoiseModel& noise,
                                              const HilbertLayout& layout,
                                              const IntegratorOptions& opts,
                                              const NonlinearParams* nl) {
  if (!noise.gamma1_cavity.empty() &&
      static_cast<int>(noise.gamma1_cavity.size()) != layout.num_modes())
    throw std::invalid_argument("noise model: one cavity rate per mode required");

  std::vector<std::pair<double, Matrix>> collapse;
  if (noise.gamma1_transmon > 0)
    collapse.emplace_back(noise.gamma1_transmon, embed(transmon_lowering(), 0, layout).matrix);
  if (noise.gammaphi_transmon > 0) {
    Matrix t = transmon_lowering();
    collapse.emplace_back(noise.gammaphi_transmon, embed((t.adjoint() * t).eval(), 0, layout).matrix);
  }
  for (std::size_t m = 0; m < noise.gamma1_cavity.size(); ++m)
    if (noise.gamma1_cavity[m] > 0)
      collapse.emplace_back(noise.gamma1_cavity[m],
                            embed(ladder(layout.mode_dims[m]), 1 + static_cast<int>(m), layout).matrix);

  std::pair<int, int> pair{schedule.mode_a, schedule.mode_b};
  std::vector<SegmentChannel> channels;
  channels.reserve(schedule.segments.size());
  for (const auto& seg : schedule.segments)
    channels.emplace_back(segment_hamiltonian(seg, layout, pair, nl), collapse,
                          seg.duration, opts);
  return channels;
}

std::vector<Matrix> segment_unitaries(const circuits::Schedule& schedule,
                                      const HilbertLayout& layout,
                                      const NonlinearParams* nl) {
  std::pair<int, int> pair{schedule.mode_a, schedule.mode_b};
  std::vector<Matrix> out;
  out.reserve(schedule.segments.size());
  for (const auto& seg : schedule.segments)
    out.push_back(hermitian_propagator(segment_hamiltonian(seg, layout, pair, nl),
                                       seg.duration));
  return out;
}

Operator propagate_unitary(const circuits::Schedule& schedule, const HilbertLayout& layout,
                           const NonlinearParams* nl) {
  Matrix u = Matrix::Identity(layout.dim(), layout.dim());
  for (const Matrix& seg_u : segment_unitaries(schedule, layout, nl)) u = seg_u * u;
  return Operator{layout, std::move(u), OperatorRole::Unitary};
}

Matrix propagate_lindblad(const circuits::Schedule& schedule, const NoiseModel& noise,
                          const HilbertLayout& layout, const Matrix& rho0,
                          const IntegratorOptions& opts, const NonlinearParams* nl) {
  check_density_matrix(rho0);
  auto channels = schedule_channels(schedule, noise, layout, opts, nl);
  Matrix rho = rho0;
  for (const auto& ch : channels) rho = ch.apply(rho);
  return rho;
}

std::vector<Matrix> propagate_lindblad_batch(const circuits::Schedule& schedule,
                                             const NoiseModel& noise,
                                             const HilbertLayout& layout,
                                             const std::vector<Matrix>& rho0s,
                                             const IntegratorOptions& opts,
                                             const NonlinearParams* nl, unsigned workers) {
  for (const Matrix& r : rho0s) check_density_matrix(r);
  auto channels = schedule_channels(schedule, noise, layout, opts, nl);
  std::vector<Matrix> out(rho0s.size());
  parallel::parallel_for(rho0s.size(), workers, [&](std::size_t i) {
    Matrix rho = rho0s[i];
    for (const auto& ch : channels) rho = ch.apply(rho);
    out[i] = std::move(rho);
  });
  return out;
}

Matrix frame_removal_modes(const circuits::Schedule& schedule, const HilbertLayout& layout) {
  long mdim = layout.mode_dim();
  std::vector<long> stride(layout.num_modes());
  long acc = 1;
  for (int m = layout.num_modes() - 1; m >= 0; --m) {
    stride[m] = acc;
    acc *= layout.mode_dims[m];
  }
  Matrix r = Matrix::Zero(mdim, mdim);
  for (long idx = 0; idx < mdim; ++idx) {
    long na = (idx / stride[schedule.mode_a]) % layout.mode_dims[schedule.mode_a];
    long nb = (idx / stride[schedule.mode_b]) % layout.mode_dims[schedule.mode_b];
    r(idx, idx) = std::exp(kI * (schedule.frame_phi_a * static_cast<double>(na) +
                                 schedule.frame_phi_b * static_cast<double>(nb)));
  }
  return r;
}

Operator frame_removal(const circuits::Schedule& schedule, const HilbertLayout& layout) {
  return Operator{layout,
                  kron(Matrix::Identity(3, 3), frame_removal_modes(schedule, layout)),
                  OperatorRole::Unitary};
}

Matrix ancilla_block(const Matrix& rho_full, const HilbertLayout& layout, int anc) {
  long m = layout.mode_dim();
  return rho_full.block(anc * m, anc * m, m, m);
}

Matrix partial_trace_ancilla(const Matrix& rho_full, const HilbertLayout& layout) {
  long m = layout.mode_dim();
  Matrix out = Matrix::Zero(m, m);
  for (int anc = 0; anc < layout.ancilla_dim; ++anc)
    out += ancilla_block(rho_full, layout, anc);
  return out;
}

ReadoutResult apply_readout(const Matrix& rho_full, const ReadoutModel& readout,
                            const HilbertLayout& layout) {
  readout.validate();
  long m = layout.mode_dim();
  Matrix rho_g = Matrix::Zero(m, m);
  for (int actual = 0; actual < 3; ++actual)
    if (readout.eta(0, actual) != 0.0)
      rho_g += readout.eta(0, actual) * ancilla_block(rho_full, layout, actual);
  double p_g = ancilla_block(rho_full, layout, 0).trace().real();
  return ReadoutResult{std::move(rho_g), 1.0 - p_g};
}

SyndromeResult apply_syndrome(const Matrix& rho_modes, const codes::BosonicCode& code) {
  Matrix m = codes::syndrome_projector_modes(code);
  double before = rho_modes.trace().real();
  Matrix projected = m * rho_modes * m.adjoint();
  double after = projected.trace().real();
  double pass = before > 0 ? after / before : 0.0;
  return SyndromeResult{std::move(projected), pass};
}

void check_density_matrix(const Matrix& rho, double tol) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-10)
    throw std::invalid_argument("density matrix must have unit trace");
  if ((rho - rho.adjoint()).norm() > 1e-10 * std::max(1.0, rho.norm()))
    throw std::invalid_argument("density matrix must be Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("density matrix must be positive semidefinite");
}

}  // namespace dbsim::dynamics
