#include "dbsim/layout.hpp"

#include <stdexcept>
#include <string>

namespace dbsim {

HilbertLayout::HilbertLayout(std::vector<int> dims) : mode_dims(std::move(dims)) {
  if (mode_dims.size() < 2 || mode_dims.size() > 4)
    throw std::invalid_argument("layout: 2-4 bosonic modes supported, got " +
                                std::to_string(mode_dims.size()));
  for (int d : mode_dims)
    if (d < 2) throw std::invalid_argument("layout: every mode_dim must be >= 2");
}

int HilbertLayout::slot_dim(int slot) const {
  if (slot == 0) return ancilla_dim;
  if (slot < 0 || slot > num_modes())
    throw std::out_of_range("layout: slot index out of range");
  return mode_dims[slot - 1];
}

long HilbertLayout::dim() const {
  long d = ancilla_dim;
  for (int m : mode_dims) d *= m;
  return d;
}

long HilbertLayout::mode_dim() const {
  long d = 1;
  for (int m : mode_dims) d *= m;
  return d;
}

long HilbertLayout::basis_index(int anc, const std::vector<int>& photons) const {
  if (anc < 0 || anc >= ancilla_dim) throw std::out_of_range("basis_index: ancilla level");
  if (static_cast<int>(photons.size()) != num_modes())
    throw std::invalid_argument("basis_index: wrong number of mode occupations");
  long idx = anc;
  for (int m = 0; m < num_modes(); ++m) {
    if (photons[m] < 0 || photons[m] >= mode_dims[m])
      throw std::out_of_range("basis_index: photon number exceeds truncation");
    idx = idx * mode_dims[m] + photons[m];
  }
  return idx;
}

Matrix ladder(int dim) {
  if (dim < 2) throw std::invalid_argument("ladder: dim must be >= 2");
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix number_op(int dim) {
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix sigma_z_gf() {
  Matrix s = Matrix::Zero(3, 3);
  s(0, 0) = 1.0;   // |g>
  s(2, 2) = -1.0;  // |f>
  return s;
}

Matrix sigma_x_gf() {
  Matrix s = Matrix::Zero(3, 3);
  s(0, 2) = 1.0;
  s(2, 0) = 1.0;
  return s;
}

Matrix sigma_y_gf() {
  Matrix s = Matrix::Zero(3, 3);
  s(2, 0) = kI;
  s(0, 2) = -kI;
  return s;
}

Operator embed(const Matrix& op, int slot, const HilbertLayout& layout) {
  return embed_many({{slot, op}}, layout);
}

Operator embed_many(const std::vector<std::pair<int, Matrix>>& factors,
                    const HilbertLayout& layout) {
  std::vector<const Matrix*> slot_ops(layout.num_slots(), nullptr);
  for (const auto& [slot, op] : factors) {
    if (slot < 0 || slot >= layout.num_slots())
      throw std::out_of_range("embed: slot index out of range");
    if (op.rows() != op.cols() || op.rows() != layout.slot_dim(slot))
      throw std::invalid_argument("embed: operator dimension does not match slot " +
                                  std::to_string(slot));
    if (slot_ops[slot]) throw std::invalid_argument("embed: duplicate slot");
    slot_ops[slot] = &op;
  }
  Matrix acc = Matrix::Identity(1, 1);
  for (int slot = 0; slot < layout.num_slots(); ++slot) {
    if (slot_ops[slot])
      acc = kron(acc, *slot_ops[slot]);
    else
      acc = kron(acc, Matrix::Identity(layout.slot_dim(slot), layout.slot_dim(slot)));
  }
  return Operator{layout, std::move(acc), OperatorRole::Generic};
}

Operator identity_op(const HilbertLayout& layout) {
  return Operator{layout, Matrix::Identity(layout.dim(), layout.dim()),
                  OperatorRole::Unitary};
}

void check_same_layout(const Operator& a, const Operator& b) {
  if (!(a.layout == b.layout))
    throw std::invalid_argument("operators live on different layouts");
}

double frobenius_norm(const Matrix& m) { return m.norm(); }

bool is_hermitian(const Matrix& m, double rel_tol) {
  double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= rel_tol * scale;
}

bool is_unitary(const Matrix& m, double tol) {
  Matrix d = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return d.norm() <= tol * std::sqrt(static_cast<double>(m.rows()));
}

}  // namespace dbsim
