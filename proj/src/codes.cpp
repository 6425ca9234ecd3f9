#include "dbsim/codes.hpp"

#include <cmath>
#include <stdexcept>

namespace dbsim::codes {

namespace {

long pow_long(int base, int exp) {
  long v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

Vector dense_codeword(const std::vector<CodewordComponent>& comps, int mode_dim,
                      int modes_per_qubit) {
  Vector v = Vector::Zero(pow_long(mode_dim, modes_per_qubit));
  for (const auto& c : comps) {
    long idx = 0;
    for (int m = 0; m < modes_per_qubit; ++m) idx = idx * mode_dim + c.occ[m];
    v(idx) += c.amp;
  }
  return v;
}

// Even four-legged cat codewords: |0_L> on n = 0 mod 4, |1_L> on n = 2 mod 4,
// coefficients from |alpha> + |-alpha> + |i alpha> + |-i alpha| combinations.
std::vector<CodewordComponent> four_cat_components(int residue, double alpha2,
                                                   int mode_dim) {
  std::vector<CodewordComponent> comps;
  double alpha = std::sqrt(alpha2);
  double norm2 = 0.0;
  for (int n = residue; n < mode_dim; n += 4) {
    double logc = n * std::log(alpha) - 0.5 * std::lgamma(n + 1.0);
    double c = std::exp(logc);
    comps.push_back({{n}, c});
    norm2 += c * c;
  }
  for (auto& c : comps) c.amp /= std::sqrt(norm2);
  return comps;
}

}  // namespace

std::string code_name(CodeKind kind) {
  switch (kind) {
    case CodeKind::Fock01: return "fock01";
    case CodeKind::DualRail: return "dual-rail";
    case CodeKind::Binomial: return "binomial";
    case CodeKind::FourCat: return "four-cat";
  }
  return "?";
}

CodeKind code_from_name(const std::string& name) {
  if (name == "fock01") return CodeKind::Fock01;
  if (name == "dual-rail" || name == "dualrail") return CodeKind::DualRail;
  if (name == "binomial") return CodeKind::Binomial;
  if (name == "four-cat" || name == "fourcat") return CodeKind::FourCat;
  throw std::invalid_argument("unknown code: " + name);
}

Vector BosonicCode::zero_vector() const {
  return dense_codeword(zero, mode_dim, modes_per_qubit);
}
Vector BosonicCode::one_vector() const {
  return dense_codeword(one, mode_dim, modes_per_qubit);
}

BosonicCode make_code(CodeKind kind, int mode_dim, double alpha2) {
  BosonicCode code;
  code.kind = kind;
  code.alpha2 = alpha2;
  double r = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case CodeKind::Fock01:
      code.modes_per_qubit = 1;
      code.rotation_order = 1;
      code.mode_dim = mode_dim > 0 ? mode_dim : 3;
      code.zero = {{{0}, 1.0}};
      code.one = {{{1}, 1.0}};
      break;
    case CodeKind::DualRail:
      code.modes_per_qubit = 2;
      code.rotation_order = 1;
      code.mode_dim = mode_dim > 0 ? mode_dim : 3;
      code.zero = {{{0, 1}, 1.0}};
      code.one = {{{1, 0}, 1.0}};
      break;
    case CodeKind::Binomial:
      code.modes_per_qubit = 1;
      code.rotation_order = 2;
      code.mode_dim = mode_dim > 0 ? mode_dim : 10;
      if (code.mode_dim < 5)
        throw std::invalid_argument("binomial code needs mode_dim >= 5");
      code.zero = {{{0}, r}, {{4}, r}};
      code.one = {{{2}, 1.0}};
      break;
    case CodeKind::FourCat:
      if (alpha2 <= 0.0) throw std::invalid_argument("four-cat code needs alpha^2 > 0");
      code.modes_per_qubit = 1;
      code.rotation_order = 2;
      code.mode_dim = mode_dim > 0 ? mode_dim : 12;
      code.zero = four_cat_components(0, alpha2, code.mode_dim);
      code.one = four_cat_components(2, alpha2, code.mode_dim);
      break;
  }
  return code;
}

HilbertLayout two_qubit_layout(const BosonicCode& code) {
  std::vector<int> dims(2 * code.modes_per_qubit, code.mode_dim);
  return HilbertLayout(dims);
}

std::pair<int, int> gate_mode_pair(const BosonicCode&) { return {0, 1}; }

std::vector<int> qubit_mode_slots(const BosonicCode& code, int qubit) {
  if (qubit != 0 && qubit != 1) throw std::out_of_range("qubit index");
  if (code.modes_per_qubit == 1) return {qubit};
  // dual-rail: (a1, a2, b1, b2); qubit q owns (a_{q+1}, b_{q+1})
  return {qubit, qubit + 2};
}

Vector logical_state_modes(const BosonicCode& code, const std::array<cplx, 2>& qubit0,
                           const std::array<cplx, 2>& qubit1) {
  int nmodes = 2 * code.modes_per_qubit;
  std::vector<long> stride(nmodes);
  long dim = 1;
  for (int m = nmodes - 1; m >= 0; --m) {
    stride[m] = dim;
    dim *= code.mode_dim;
  }
  auto slots0 = qubit_mode_slots(code, 0);
  auto slots1 = qubit_mode_slots(code, 1);
  Vector v = Vector::Zero(dim);
  const std::vector<CodewordComponent>* words[2] = {&code.zero, &code.one};
  for (int l0 = 0; l0 < 2; ++l0) {
    if (qubit0[l0] == cplx(0.0)) continue;
    for (int l1 = 0; l1 < 2; ++l1) {
      if (qubit1[l1] == cplx(0.0)) continue;
      for (const auto& c0 : *words[l0]) {
        for (const auto& c1 : *words[l1]) {
          long idx = 0;
          for (int m = 0; m < code.modes_per_qubit; ++m) {
            idx += c0.occ[m] * stride[slots0[m]];
            idx += c1.occ[m] * stride[slots1[m]];
          }
          v(idx) += qubit0[l0] * qubit1[l1] * c0.amp * c1.amp;
        }
      }
    }
  }
  return v;
}

std::vector<Vector> codespace_basis_modes(const BosonicCode& code) {
  std::array<cplx, 2> zero{1.0, 0.0}, one{0.0, 1.0};
  return {logical_state_modes(code, zero, zero), logical_state_modes(code, zero, one),
          logical_state_modes(code, one, zero), logical_state_modes(code, one, one)};
}

std::vector<Vector> cardinal_states_modes(const BosonicCode& code) {
  double r = 1.0 / std::sqrt(2.0);
  const std::array<std::array<cplx, 2>, 6> single = {{{1.0, 0.0},
                                                      {0.0, 1.0},
                                                      {r, r},
                                                      {r, -r},
                                                      {r, r * kI},
                                                      {r, -r * kI}}};
  std::vector<Vector> out;
  out.reserve(36);
  for (const auto& s0 : single)
    for (const auto& s1 : single) out.push_back(logical_state_modes(code, s0, s1));
  return out;
}

Vector with_ancilla_g(const Vector& modes_state, const HilbertLayout& layout) {
  if (modes_state.size() != layout.mode_dim())
    throw std::invalid_argument("with_ancilla_g: state does not match layout mode space");
  Vector full = Vector::Zero(layout.dim());
  full.segment(0, modes_state.size()) = modes_state;  // ancilla |g> is index 0
  return full;
}

std::vector<Vector> cardinal_states(const BosonicCode& code, const HilbertLayout& layout) {
  std::vector<Vector> out;
  for (const auto& psi : cardinal_states_modes(code))
    out.push_back(with_ancilla_g(psi, layout));
  return out;
}

Matrix logical_z_modes(const BosonicCode& code, int qubit) {
  // exp(i pi/n a†a) on the designated mode (first of the pair for dual-rail)
  int target_mode = qubit_mode_slots(code, qubit)[0];
  int nmodes = 2 * code.modes_per_qubit;
  long dim = pow_long(code.mode_dim, nmodes);
  Matrix z = Matrix::Zero(dim, dim);
  long stride = pow_long(code.mode_dim, nmodes - 1 - target_mode);
  for (long idx = 0; idx < dim; ++idx) {
    int n = static_cast<int>((idx / stride) % code.mode_dim);
    z(idx, idx) = std::exp(kI * (kPi * n / code.rotation_order));
  }
  return z;
}

Matrix syndrome_projector_modes(const BosonicCode& code) {
  int nmodes = 2 * code.modes_per_qubit;
  long dim = pow_long(code.mode_dim, nmodes);
  if (code.kind == CodeKind::Fock01) return Matrix::Identity(dim, dim);
  if (code.kind == CodeKind::DualRail) {
    Matrix m = Matrix::Zero(dim, dim);
    for (const Vector& c : codespace_basis_modes(code)) m += c * c.adjoint();
    return m;
  }
  // binomial / four-cat: photon-number parity per gate mode, (1+P_a)/2 (1+P_b)/2
  Matrix m = Matrix::Zero(dim, dim);
  for (long idx = 0; idx < dim; ++idx) {
    long rest = idx;
    bool even = true;
    for (int mo = nmodes - 1; mo >= 0; --mo) {
      int n = static_cast<int>(rest % code.mode_dim);
      rest /= code.mode_dim;
      if (n % 2 != 0) even = false;
    }
    if (even) m(idx, idx) = 1.0;
  }
  return m;
}

Operator logical_z(const BosonicCode& code, const HilbertLayout& layout, int qubit) {
  Matrix m = kron(Matrix::Identity(3, 3), logical_z_modes(code, qubit));
  if (m.rows() != layout.dim()) throw std::invalid_argument("logical_z: layout mismatch");
  return Operator{layout, std::move(m), OperatorRole::Unitary};
}

Operator syndrome_projector(const BosonicCode& code, const HilbertLayout& layout) {
  Matrix m = kron(Matrix::Identity(3, 3), syndrome_projector_modes(code));
  if (m.rows() != layout.dim())
    throw std::invalid_argument("syndrome_projector: layout mismatch");
  return Operator{layout, std::move(m), OperatorRole::Projector};
}

Eigen::Matrix4cd logical_gate_matrix(LogicalGate gate, double theta, double phi) {
  using M4 = Eigen::Matrix4cd;
  auto zz = [](double t) {
    M4 m = M4::Zero();
    m(0, 0) = m(3, 3) = std::exp(-kI * (0.5 * t));
    m(1, 1) = m(2, 2) = std::exp(kI * (0.5 * t));
    return m;
  };
  auto swap_pow = [](double t) {
    M4 swap = M4::Zero();
    swap(0, 0) = swap(3, 3) = 1.0;
    swap(1, 2) = swap(2, 1) = 1.0;
    return M4((std::cos(0.5 * t) * M4::Identity() - kI * std::sin(0.5 * t) * swap).eval());
  };
  auto local_z = [](double a) {
    M4 m = M4::Zero();
    cplx lo = std::exp(-kI * (0.5 * a)), hi = std::exp(kI * (0.5 * a));
    m(0, 0) = lo * lo;
    m(1, 1) = lo * hi;
    m(2, 2) = hi * lo;
    m(3, 3) = hi * hi;
    return m;
  };
  switch (gate) {
    case LogicalGate::Zz: return zz(theta);
    case LogicalGate::Eswap: return swap_pow(theta);
    case LogicalGate::Cphase: return M4(local_z(-0.5 * theta) * zz(theta));
    case LogicalGate::Iswap: return M4(swap_pow(2.0 * theta) * zz(-theta));
    case LogicalGate::Fsim:
      return M4(swap_pow(2.0 * theta) * zz(-theta + 0.5 * phi) * local_z(-0.5 * phi));
  }
  throw std::logic_error("unreachable");
}

Matrix reference_unitary_modes(LogicalGate gate, double theta, const BosonicCode& code,
                               double phi) {
  Eigen::Matrix4cd u = logical_gate_matrix(gate, theta, phi);
  auto basis = codespace_basis_modes(code);
  Matrix m = Matrix::Zero(basis[0].size(), basis[0].size());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (u(i, j) != cplx(0.0)) m += u(i, j) * (basis[i] * basis[j].adjoint());
  return m;
}

Operator reference_unitary(LogicalGate gate, double theta, const BosonicCode& code,
                           const HilbertLayout& layout, double phi) {
  Matrix m = kron(Matrix::Identity(3, 3), reference_unitary_modes(gate, theta, code, phi));
  if (m.rows() != layout.dim())
    throw std::invalid_argument("reference_unitary: layout mismatch");
  return Operator{layout, std::move(m), OperatorRole::Generic};
}

}  // namespace dbsim::codes
