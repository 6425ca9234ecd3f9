#pragma once

#include "dbsim/layout.hpp"

namespace dbsim {

// Knobs of the dispersive-beamsplitter Hamiltonian, all rad/s except varphi
// (radians). Conventions: g >= 0 with its sign absorbed into varphi;
// sigma_z = |g><g| - |f><f|; chi_f is the gf dispersive shift, chi_e the ge one
// (enters only through the |e><e| term of the static Hamiltonian).
struct PumpParams {
  double g = 0.0;
  double varphi = 0.0;
  double delta = 0.0;
  double chi_f = 0.0;
  double chi_e = 0.0;
};

struct AngularMomenta {
  Operator l_i, l_x, l_y, l_z;
};

// Schwinger two-mode angular momentum on the full space:
// L_I=(a†a+b†b)/2, L_X=(a†b+ab†)/2, L_Y=(a†b−ab†)/(2i), L_Z=(a†a−b†b)/2.
AngularMomenta angular_momentum(const HilbertLayout& layout,
                                std::pair<int, int> mode_pair);

// H/hbar = (g/2)(e^{i varphi} a†b + e^{-i varphi} a b†) + delta a†a
//          - a†a [ (chi_f/2)|g><g| + (chi_f/2 - chi_e)|e><e| - (chi_f/2)|f><f| ]
// in the frame where the gf dispersive interaction is symmetric. mode_pair is
// (a, b) as indices into layout.mode_dims; the ancilla couples to mode a.
Operator build_hamiltonian(const PumpParams& params, const HilbertLayout& layout,
                           std::pair<int, int> mode_pair);

struct NonlinearParams {
  double kerr_a = 0.0;       // self-Kerr of mode a, rad/s
  double kerr_b = 0.0;
  double chi_e_prime = 0.0;  // higher-order dispersive corrections
  double chi_f_prime = 0.0;
  double chi_ab = 0.0;       // cross-Kerr
  bool any() const {
    return kerr_a != 0 || kerr_b != 0 || chi_e_prime != 0 || chi_f_prime != 0 ||
           chi_ab != 0;
  }
};

// H_NL/hbar = -(K_a/2) a†a†aa - (K_b/2) b†b†bb
//             + a†a†aa (chi'_f |f><f| + chi'_e |e><e|) + chi_ab a†a b†b
Operator build_nonlinear_terms(const NonlinearParams& nl, const HilbertLayout& layout,
                               std::pair<int, int> mode_pair);

}  // namespace dbsim
