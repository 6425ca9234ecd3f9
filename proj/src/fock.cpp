#include "dbsim/fock.hpp"

#include <stdexcept>

namespace dbsim {

namespace {

void check_mode_pair(const HilbertLayout& layout, std::pair<int, int> mode_pair) {
  auto [a, b] = mode_pair;
  if (a == b) throw std::invalid_argument("mode pair: two distinct modes required");
  if (a < 0 || a >= layout.num_modes() || b < 0 || b >= layout.num_modes())
    throw std::out_of_range("mode pair: index out of range");
}

}  // namespace

AngularMomenta angular_momentum(const HilbertLayout& layout,
                                std::pair<int, int> mode_pair) {
  check_mode_pair(layout, mode_pair);
  auto [ma, mb] = mode_pair;
  int slot_a = 1 + ma, slot_b = 1 + mb;
  Matrix a = ladder(layout.slot_dim(slot_a));
  Matrix b = ladder(layout.slot_dim(slot_b));

  Matrix adb = embed_many({{slot_a, a.adjoint()}, {slot_b, b}}, layout).matrix;
  Matrix abd = embed_many({{slot_a, a}, {slot_b, b.adjoint()}}, layout).matrix;
  Matrix na = embed(a.adjoint() * a, slot_a, layout).matrix;
  Matrix nb = embed(b.adjoint() * b, slot_b, layout).matrix;

  AngularMomenta out{
      Operator{layout, 0.5 * (na + nb), OperatorRole::Hamiltonian},
      Operator{layout, 0.5 * (adb + abd), OperatorRole::Hamiltonian},
      Operator{layout, (adb - abd) / (2.0 * kI), OperatorRole::Hamiltonian},
      Operator{layout, 0.5 * (na - nb), OperatorRole::Hamiltonian}};
  return out;
}

Operator build_hamiltonian(const PumpParams& params, const HilbertLayout& layout,
                           std::pair<int, int> mode_pair) {
  check_mode_pair(layout, mode_pair);
  auto [ma, mb] = mode_pair;
  int slot_a = 1 + ma, slot_b = 1 + mb;
  Matrix a = ladder(layout.slot_dim(slot_a));
  Matrix b = ladder(layout.slot_dim(slot_b));
  Matrix na = a.adjoint() * a;

  Matrix h = Matrix::Zero(layout.dim(), layout.dim());
  if (params.g != 0.0) {
    cplx phase = std::exp(kI * params.varphi);
    h += 0.5 * params.g * phase *
         embed_many({{slot_a, a.adjoint()}, {slot_b, b}}, layout).matrix;
    h += 0.5 * params.g * std::conj(phase) *
         embed_many({{slot_a, a}, {slot_b, b.adjoint()}}, layout).matrix;
  }
  if (params.delta != 0.0) h += params.delta * embed(na, slot_a, layout).matrix;

  // Dispersive term in the symmetric gf frame; |e> carries chi_f/2 - chi_e.
  Matrix disp = Matrix::Zero(3, 3);
  disp(0, 0) = 0.5 * params.chi_f;
  disp(1, 1) = 0.5 * params.chi_f - params.chi_e;
  disp(2, 2) = -0.5 * params.chi_f;
  if (params.chi_f != 0.0 || params.chi_e != 0.0)
    h -= embed_many({{0, disp}, {slot_a, na}}, layout).matrix;

  return Operator{layout, std::move(h), OperatorRole::Hamiltonian};
}

Operator build_nonlinear_terms(const NonlinearParams& nl, const HilbertLayout& layout,
                               std::pair<int, int> mode_pair) {
  check_mode_pair(layout, mode_pair);
  auto [ma, mb] = mode_pair;
  int slot_a = 1 + ma, slot_b = 1 + mb;
  Matrix a = ladder(layout.slot_dim(slot_a));
  Matrix b = ladder(layout.slot_dim(slot_b));
  Matrix na = a.adjoint() * a;
  Matrix nb = b.adjoint() * b;
  // a†a†aa = n(n-1), diagonal in the Fock basis
  Matrix quart_a = na * na - na;
  Matrix quart_b = nb * nb - nb;

  Matrix h = Matrix::Zero(layout.dim(), layout.dim());
  if (nl.kerr_a != 0.0) h -= 0.5 * nl.kerr_a * embed(quart_a, slot_a, layout).matrix;
  if (nl.kerr_b != 0.0) h -= 0.5 * nl.kerr_b * embed(quart_b, slot_b, layout).matrix;
  if (nl.chi_f_prime != 0.0 || nl.chi_e_prime != 0.0) {
    Matrix corr = Matrix::Zero(3, 3);
    corr(1, 1) = nl.chi_e_prime;
    corr(2, 2) = nl.chi_f_prime;
    h += embed_many({{0, corr}, {slot_a, quart_a}}, layout).matrix;
  }
  if (nl.chi_ab != 0.0)
    h += nl.chi_ab * embed_many({{slot_a, na}, {slot_b, nb}}, layout).matrix;

  return Operator{layout, std::move(h), OperatorRole::Hamiltonian};
}

}  // namespace dbsim
