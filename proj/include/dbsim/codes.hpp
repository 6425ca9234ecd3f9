#pragma once

#include <array>
#include <string>
#include <vector>

#include "dbsim/layout.hpp"

namespace dbsim::codes {

enum class CodeKind { Fock01, DualRail, Binomial, FourCat };

std::string code_name(CodeKind kind);
CodeKind code_from_name(const std::string& name);

// One codeword component: photon occupations on the qubit's own modes plus an
// amplitude. Codewords are kept in this sparse form so dual-rail qubits, whose
// two modes are not adjacent slots in the two-qubit layout, lift cleanly.
struct CodewordComponent {
  std::vector<int> occ;
  cplx amp;
};

struct BosonicCode {
  CodeKind kind;
  int modes_per_qubit;
  int rotation_order;  // n in Z_L = exp(i pi/n a†a)
  int mode_dim;
  double alpha2 = 2.0;  // four-cat |alpha|^2
  std::vector<CodewordComponent> zero, one;

  // Dense single-qubit codewords on the qubit's mode space (dim = mode_dim^modes_per_qubit).
  Vector zero_vector() const;
  Vector one_vector() const;
};

// mode_dim <= 0 picks the default truncation (3 for Fock01/dual-rail, 10 for
// binomial, 12 for four-cat).
BosonicCode make_code(CodeKind kind, int mode_dim = 0, double alpha2 = 2.0);

// Two logical qubits plus ancilla. Single-mode codes: modes (a, b), qubit 0 on a,
// qubit 1 on b. Dual-rail: modes (a1, a2, b1, b2), qubit 0 = (a1, b1),
// qubit 1 = (a2, b2); the beamsplitter couples (a1, a2) with the ancilla on a1.
HilbertLayout two_qubit_layout(const BosonicCode& code);
std::pair<int, int> gate_mode_pair(const BosonicCode& code);
std::vector<int> qubit_mode_slots(const BosonicCode& code, int qubit);

// Mode-space (no ancilla slot) objects.
Vector logical_state_modes(const BosonicCode& code,
                           const std::array<cplx, 2>& qubit0,
                           const std::array<cplx, 2>& qubit1);
std::vector<Vector> codespace_basis_modes(const BosonicCode& code);  // |00>,|01>,|10>,|11>
Matrix logical_z_modes(const BosonicCode& code, int qubit);
Matrix syndrome_projector_modes(const BosonicCode& code);

// The 36 cardinal two-qubit states: products of {0, 1, +, -, +i, -i} per qubit,
// qubit-0-major order.
std::vector<Vector> cardinal_states_modes(const BosonicCode& code);

// Full-space versions (ancilla slot included; states carry ancilla |g>).
std::vector<Vector> cardinal_states(const BosonicCode& code, const HilbertLayout& layout);
Vector with_ancilla_g(const Vector& modes_state, const HilbertLayout& layout);
Operator logical_z(const BosonicCode& code, const HilbertLayout& layout, int qubit);
Operator syndrome_projector(const BosonicCode& code, const HilbertLayout& layout);

enum class LogicalGate { Zz, Eswap, Cphase, Iswap, Fsim };

// 4x4 logical matrices in the |00>,|01>,|10>,|11> basis. Conventions:
// ZZ(t) = exp(-i t/2 Z.Z), eSWAP(t) = exp(-i t/2 SWAP), Z(a) = exp(-i a/2 Z);
// CPHASE(t) = Z(-t/2).Z(-t/2) ZZ(t), iSWAP(t) = SWAP(2t) ZZ(-t),
// fSim(t,p) = SWAP(2t) ZZ(-t+p/2) Z(-p/2).Z(-p/2).
Eigen::Matrix4cd logical_gate_matrix(LogicalGate gate, double theta, double phi = 0.0);

// Codespace-supported lift of the logical gate to the mode space (zero outside
// the codespace).
Matrix reference_unitary_modes(LogicalGate gate, double theta, const BosonicCode& code,
                               double phi = 0.0);
Operator reference_unitary(LogicalGate gate, double theta, const BosonicCode& code,
                           const HilbertLayout& layout, double phi = 0.0);

}  // namespace dbsim::codes
