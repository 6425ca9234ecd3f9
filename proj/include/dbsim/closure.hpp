#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dbsim/layout.hpp"

namespace dbsim::closure {

// Span of operators under the Frobenius inner product. Operators are compared
// after projecting out the top `guard_levels` Fock levels of every mode, which
// removes truncation artifacts such as the [a, a†] corner defect. gf_only
// additionally projects out the ancilla |e> level: on a three-level ancilla
// sigma_z^2 = 1 - |e><e|, so the sigma_z-tensored error algebras close only
// within the gf manifold.
struct ErrorSet {
  std::string label;
  HilbertLayout layout;
  int guard_levels = 2;
  bool gf_only = false;
  std::vector<Operator> generators;
  Matrix span_basis;  // columns: orthonormal vectorized guarded operators

  int span_dim() const { return static_cast<int>(span_basis.cols()); }
};

ErrorSet make_error_set(std::vector<Operator> generators, std::string label,
                        int guard_levels = 2, bool gf_only = false);

Operator commutator(const Operator& a, const Operator& b);

// Projector onto Fock levels <= mode_dim - 1 - guard_levels on every mode
// (and onto the gf ancilla manifold when gf_only is set).
Matrix guard_projector(const HilbertLayout& layout, int guard_levels,
                       bool gf_only = false);

// Residual Frobenius norm of the guarded, normalized operator after projecting
// onto the set's span.
double span_residual(const ErrorSet& set, const Operator& op);

// Guard configuration is inherited from the hardware ErrorSet.
struct ClosureOptions {
  int max_depth = 6;
  double membership_tol = 1e-8;  // residual threshold for "lies in the span"
  double growth_tol = 1e-6;      // residual threshold for adding new elements
};

struct ExtendedSetResult {
  ErrorSet set;  // hardware errors plus nested commutators with H
  bool converged = false;
  int depth = 0;
};

ExtendedSetResult generate_extended_set(const Operator& hamiltonian,
                                        const ErrorSet& hardware,
                                        const ClosureOptions& opts = {});

struct ClosureVerdict {
  bool closed = false;
  std::optional<Operator> witness;  // first extended element outside the span
  int depth = 0;
  bool converged = false;
};

ClosureVerdict check_closure(const Operator& hamiltonian, const ErrorSet& hardware,
                             const ErrorSet& correctable, const ClosureOptions& opts = {});

struct TableRow {
  std::string hamiltonian;
  bool closed = false;
  bool closed_sigma_variant = false;  // H x sigma_z^{gf} against {a, b, sigma_z}
};

// The seven candidate Hamiltonians of the closure table, evaluated numerically
// against hardware errors {a, b} (and the sigma_z-tensored variants against
// {a, b, sigma_z}).
std::vector<TableRow> closure_table(int mode_dim = 8, const ClosureOptions& opts = {});

std::string closure_table_markdown(const std::vector<TableRow>& rows);
std::string closure_table_csv(const std::vector<TableRow>& rows);

// Correctable sets used by the table: span{1, a, b, ab} and its sigma_z
// extension span{1, a, b, sz, a sz, b sz, ab, ab sz} (the latter restricted to
// the gf manifold).
ErrorSet correctable_photon_loss(const HilbertLayout& layout, int guard_levels = 2);
ErrorSet correctable_photon_loss_sigma(const HilbertLayout& layout, int guard_levels = 2);

}  // namespace dbsim::closure
