#include "dbsim/closure.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>

namespace dbsim::closure {

namespace {

Vector vectorize(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

// Guarded, unit-Frobenius vectorization; returns an empty vector if the guarded
// part vanishes.
Vector guarded_unit(const Operator& op, const Matrix& guard) {
  Matrix g = guard * op.matrix * guard;
  double n = g.norm();
  if (n < 1e-14) return Vector();
  return vectorize(g) / n;
}

// Residual component of v orthogonal to the columns of basis.
Vector orthogonal_residual(const Matrix& basis, const Vector& v) {
  if (basis.cols() == 0) return v;
  return v - basis * (basis.adjoint() * v);
}

void append_column(Matrix& basis, const Vector& v) {
  basis.conservativeResize(v.size(), basis.cols() + 1);
  basis.col(basis.cols() - 1) = v;
}

}  // namespace

Matrix guard_projector(const HilbertLayout& layout, int guard_levels, bool gf_only) {
  long dim = layout.dim();
  std::vector<long> stride(layout.num_slots());
  long acc = 1;
  for (int s = layout.num_slots() - 1; s >= 0; --s) {
    stride[s] = acc;
    acc *= layout.slot_dim(s);
  }
  Matrix p = Matrix::Zero(dim, dim);
  for (long idx = 0; idx < dim; ++idx) {
    bool keep = true;
    if (gf_only && (idx / stride[0]) % layout.ancilla_dim == 1) keep = false;
    for (int m = 0; m < layout.num_modes(); ++m) {
      long n = (idx / stride[1 + m]) % layout.mode_dims[m];
      if (n > layout.mode_dims[m] - 1 - guard_levels) keep = false;
    }
    if (keep) p(idx, idx) = 1.0;
  }
  return p;
}

ErrorSet make_error_set(std::vector<Operator> generators, std::string label,
                        int guard_levels, bool gf_only) {
  if (generators.empty()) throw std::invalid_argument("error set needs >= 1 generator");
  ErrorSet set;
  set.label = std::move(label);
  set.layout = generators.front().layout;
  set.guard_levels = guard_levels;
  set.gf_only = gf_only;
  Matrix guard = guard_projector(set.layout, guard_levels, gf_only);
  for (auto& g : generators) {
    if (!(g.layout == set.layout))
      throw std::invalid_argument("error set generators on mixed layouts");
    Vector v = guarded_unit(g, guard);
    if (v.size() == 0) continue;
    Vector r = orthogonal_residual(set.span_basis, v);
    if (r.norm() > 1e-10) append_column(set.span_basis, (r / r.norm()).eval());
    set.generators.push_back(std::move(g));
  }
  return set;
}

Operator commutator(const Operator& a, const Operator& b) {
  check_same_layout(a, b);
  return Operator{a.layout, a.matrix * b.matrix - b.matrix * a.matrix,
                  OperatorRole::Generic};
}

double span_residual(const ErrorSet& set, const Operator& op) {
  Matrix guard = guard_projector(set.layout, set.guard_levels, set.gf_only);
  Vector v = guarded_unit(op, guard);
  if (v.size() == 0) return 0.0;
  return orthogonal_residual(set.span_basis, v).norm();
}

namespace {

// Shared worker: grows the extended span; if `correctable` is given, also tests
// each new element for membership and reports the first violation.
struct ClosureRun {
  ExtendedSetResult extended;
  std::optional<Operator> witness;
};

ClosureRun run_closure(const Operator& hamiltonian, const ErrorSet& hardware,
                       const ErrorSet* correctable, const ClosureOptions& opts) {
  if (!(hamiltonian.layout == hardware.layout))
    throw std::invalid_argument("closure: hamiltonian and error set layouts differ");
  Matrix guard = guard_projector(hardware.layout, hardware.guard_levels, hardware.gf_only);

  ClosureRun run;
  ErrorSet& ext = run.extended.set;
  ext.label = hardware.label + " extended";
  ext.layout = hardware.layout;
  ext.guard_levels = hardware.guard_levels;
  ext.gf_only = hardware.gf_only;

  std::deque<Operator> frontier;
  auto try_add = [&](const Operator& op) -> bool {  // true if new
    Vector v = guarded_unit(op, guard);
    if (v.size() == 0) return false;
    Vector r = orthogonal_residual(ext.span_basis, v);
    if (r.norm() <= opts.growth_tol) return false;
    append_column(ext.span_basis, (r / r.norm()).eval());
    Matrix normalized = op.matrix / (guard * op.matrix * guard).norm();
    Operator stored{op.layout, std::move(normalized), OperatorRole::Generic};
    if (correctable && !run.witness &&
        span_residual(*correctable, stored) > opts.membership_tol)
      run.witness = stored;
    ext.generators.push_back(stored);
    frontier.push_back(ext.generators.back());
    return true;
  };

  for (const auto& g : hardware.generators) try_add(g);

  for (int depth = 1; depth <= opts.max_depth; ++depth) {
    std::deque<Operator> current;
    current.swap(frontier);
    bool grew = false;
    for (const auto& eps : current)
      if (try_add(commutator(hamiltonian, eps))) grew = true;
    run.extended.depth = depth;
    if (!grew) {
      run.extended.converged = true;
      break;
    }
  }
  return run;
}

}  // namespace

ExtendedSetResult generate_extended_set(const Operator& hamiltonian,
                                        const ErrorSet& hardware,
                                        const ClosureOptions& opts) {
  return run_closure(hamiltonian, hardware, nullptr, opts).extended;
}

ClosureVerdict check_closure(const Operator& hamiltonian, const ErrorSet& hardware,
                             const ErrorSet& correctable, const ClosureOptions& opts) {
  ClosureRun run = run_closure(hamiltonian, hardware, &correctable, opts);
  ClosureVerdict verdict;
  verdict.depth = run.extended.depth;
  verdict.converged = run.extended.converged;
  verdict.witness = run.witness;
  verdict.closed = run.extended.converged && !run.witness.has_value();
  return verdict;
}

ErrorSet correctable_photon_loss(const HilbertLayout& layout, int guard_levels) {
  Matrix a = ladder(layout.mode_dims[0]);
  Matrix b = ladder(layout.mode_dims[1]);
  std::vector<Operator> gens = {
      identity_op(layout),
      embed(a, 1, layout),
      embed(b, 2, layout),
      embed_many({{1, a}, {2, b}}, layout),
  };
  return make_error_set(std::move(gens), "correctable {1,a,b,ab}", guard_levels);
}

ErrorSet correctable_photon_loss_sigma(const HilbertLayout& layout, int guard_levels) {
  Matrix a = ladder(layout.mode_dims[0]);
  Matrix b = ladder(layout.mode_dims[1]);
  Matrix sz = sigma_z_gf();
  std::vector<Operator> gens = {
      identity_op(layout),
      embed(a, 1, layout),
      embed(b, 2, layout),
      embed(sz, 0, layout),
      embed_many({{0, sz}, {1, a}}, layout),
      embed_many({{0, sz}, {2, b}}, layout),
      embed_many({{1, a}, {2, b}}, layout),
      embed_many({{0, sz}, {1, a}, {2, b}}, layout),
  };
  return make_error_set(std::move(gens), "correctable {1,a,b,sz,...}", guard_levels, true);
}

std::vector<TableRow> closure_table(int mode_dim, const ClosureOptions& opts) {
  HilbertLayout layout({mode_dim, mode_dim});
  Matrix a = ladder(mode_dim);
  Matrix b = ladder(mode_dim);
  Matrix na = a.adjoint() * a;
  Matrix sz = sigma_z_gf();

  struct Candidate {
    std::string name;
    Matrix h;  // two-mode part
  };
  std::vector<Candidate> candidates = {
      {"a†a", embed(na, 1, layout).matrix},
      {"a + a†", embed((a + a.adjoint()).eval(), 1, layout).matrix},
      {"a b† + a†b",
       (embed_many({{1, a}, {2, b.adjoint()}}, layout).matrix +
        embed_many({{1, a.adjoint()}, {2, b}}, layout).matrix)},
      {"a†b† + ab",
       (embed_many({{1, a.adjoint()}, {2, b.adjoint()}}, layout).matrix +
        embed_many({{1, a}, {2, b}}, layout).matrix)},
      {"a†² + a²",
       embed((a.adjoint() * a.adjoint() + a * a).eval(), 1, layout).matrix},
      {"a†a (b + b†)",
       embed_many({{1, na}, {2, (b + b.adjoint()).eval()}}, layout).matrix},
      {"(a + a†) b†b",
       embed_many({{1, (a + a.adjoint()).eval()}, {2, (b.adjoint() * b).eval()}}, layout)
           .matrix},
  };

  ErrorSet hardware = make_error_set(
      {embed(a, 1, layout), embed(b, 2, layout)}, "{a, b}");
  ErrorSet hardware_sigma = make_error_set(
      {embed(a, 1, layout), embed(b, 2, layout), embed(sz, 0, layout)},
      "{a, b, sigma_z}", 2, true);
  ErrorSet corr = correctable_photon_loss(layout);
  ErrorSet corr_sigma = correctable_photon_loss_sigma(layout);

  std::vector<TableRow> rows;
  for (const auto& cand : candidates) {
    Operator h{layout, cand.h, OperatorRole::Hamiltonian};
    Operator h_sigma{layout, embed(sz, 0, layout).matrix * cand.h,
                     OperatorRole::Hamiltonian};
    TableRow row;
    row.hamiltonian = cand.name;
    row.closed = check_closure(h, hardware, corr, opts).closed;
    row.closed_sigma_variant =
        check_closure(h_sigma, hardware_sigma, corr_sigma, opts).closed;
    rows.push_back(row);
  }
  return rows;
}

std::string closure_table_markdown(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "| H0 | closed with {a, b} | H0 sigma_z closed with {a, b, sigma_z} |\n";
  out << "| --- | --- | --- |\n";
  for (const auto& r : rows)
    out << "| " << r.hamiltonian << " | " << (r.closed ? "yes" : "no") << " | "
        << (r.closed_sigma_variant ? "yes" : "no") << " |\n";
  return out.str();
}

std::string closure_table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "hamiltonian,closed,closed_sigma_variant\n";
  for (const auto& r : rows)
    out << "\"" << r.hamiltonian << "\"," << (r.closed ? 1 : 0) << ","
        << (r.closed_sigma_variant ? 1 : 0) << "\n";
  return out.str();
}

}  // namespace dbsim::closure
