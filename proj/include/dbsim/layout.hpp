#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace dbsim {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Hilbert-space layout: slot 0 is the three-level ancilla, bosonic modes follow
// in declaration order. Flat basis index is row-major over slots, so
// |anc, n_0, n_1, ...>  ->  ((anc * d_0 + n_0) * d_1 + n_1) * ...
struct HilbertLayout {
  int ancilla_dim = 3;
  std::vector<int> mode_dims;

  HilbertLayout() = default;
  explicit HilbertLayout(std::vector<int> dims);

  int num_modes() const { return static_cast<int>(mode_dims.size()); }
  int num_slots() const { return 1 + num_modes(); }
  int slot_dim(int slot) const;  // slot 0 = ancilla
  long dim() const;
  long mode_dim() const;  // product of mode_dims only
  long basis_index(int anc, const std::vector<int>& photons) const;

  bool operator==(const HilbertLayout&) const = default;
};

enum class OperatorRole { Generic, Hamiltonian, Unitary, Projector };

// Dense operator tagged with its layout. Hamiltonian-role entries are rad/s,
// unitaries and projectors dimensionless.
struct Operator {
  HilbertLayout layout;
  Matrix matrix;
  OperatorRole role = OperatorRole::Generic;
};

// <n-1| a |n> = sqrt(n); requires dim >= 2.
Matrix ladder(int dim);
Matrix number_op(int dim);
Matrix kron(const Matrix& a, const Matrix& b);

// Ancilla sigma_z in the gf manifold, |g><g| - |f><f| (|e> untouched).
Matrix sigma_z_gf();
Matrix sigma_x_gf();  // |f><g| + |g><f|
Matrix sigma_y_gf();  // i|f><g| - i|g><f|

// Tensor product with identities on all slots except `slot`.
Operator embed(const Matrix& op, int slot, const HilbertLayout& layout);
// Tensor product with the given single-slot factors, identity elsewhere.
Operator embed_many(const std::vector<std::pair<int, Matrix>>& factors,
                    const HilbertLayout& layout);
Operator identity_op(const HilbertLayout& layout);

void check_same_layout(const Operator& a, const Operator& b);
bool is_hermitian(const Matrix& m, double rel_tol = 1e-12);
bool is_unitary(const Matrix& m, double tol = 1e-10);

double frobenius_norm(const Matrix& m);

}  // namespace dbsim
