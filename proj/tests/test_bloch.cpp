#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "dbsim/bloch.hpp"

using namespace dbsim;
using namespace dbsim::bloch;

namespace {

constexpr double kMHz = 2 * kPi * 1e6;

// Oracle: propagate the full-space Hamiltonian with a scaling-and-squaring
// matrix exponential (independent of the ModeTransform algebra) and read the
// induced single-excitation block for a fixed ancilla level.
Eigen::Matrix2cd induced_transform(const PumpParams& p, double t, int anc, int mode_dim) {
  HilbertLayout layout({mode_dim, mode_dim});
  Matrix h = build_hamiltonian(p, layout, {0, 1}).matrix;
  Matrix u = (-kI * t * h).exp();
  long e0 = layout.basis_index(anc, {1, 0});
  long e1 = layout.basis_index(anc, {0, 1});
  Eigen::Matrix2cd m;
  m << u(e0, e0), u(e0, e1), u(e1, e0), u(e1, e1);
  return m;
}

PumpParams draw_params(int seed) {
  auto frac = [&](int k) {
    unsigned v = static_cast<unsigned>(seed) * 2654435761u + 0x517cc1b7u * k;
    return ((v >> 7) % 65521) / 65521.0;
  };
  PumpParams p;
  p.g = 4.0 * kMHz * frac(1);
  p.varphi = 2 * kPi * frac(2);
  p.delta = kMHz * (2 * frac(3) - 1);
  p.chi_f = -kMHz * (0.2 + 1.5 * frac(4));
  p.chi_e = 0.5 * p.chi_f;
  return p;
}

}  // namespace

TEST_SUITE_BEGIN("bloch");

TEST_CASE("precession vector geometry") {
  double chi = 1.0 * kMHz;
  auto p = precession_vector(0.5 * std::sqrt(3.0) * chi, 0.0, 0.5 * chi);
  CHECK(p.omega == doctest::Approx(chi).epsilon(1e-12));
  CHECK(p.n.x() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK(p.n.y() == doctest::Approx(0.0));
  CHECK(p.n.z() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.n.norm() == doctest::Approx(1.0).epsilon(1e-12));

  auto pole = precession_vector(0.0, 0.3, 2.0 * kMHz);
  CHECK(pole.n.z() == doctest::Approx(1.0));
  CHECK(pole.omega == doctest::Approx(2.0 * kMHz));

  auto diag = precession_vector(1.5 * kMHz, 0.0, 1.5 * kMHz);
  CHECK(diag.theta == doctest::Approx(kPi / 4).epsilon(1e-12));

  CHECK_THROWS(precession_vector(0.0, 0.0, 0.0));
}

TEST_CASE("mode transform basics") {
  auto id = mode_transform(1.0 * kMHz, 0.4, 0.5 * kMHz, 0.0);
  CHECK((id.su2 - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
  CHECK(std::abs(id.prefactor - 1.0) < 1e-14);

  // resonant pi pulse: full mode swap up to phase
  double g = 2.0 * kMHz;
  auto swap = mode_transform(g, 0.0, 0.0, kPi / g);
  Eigen::Matrix2cd expect;
  expect << 0, -kI, -kI, 0;
  CHECK((swap.su2 - expect).norm() < 1e-12);
}

TEST_CASE("mode transform matches the 2x2 matrix exponential oracle") {
  for (int seed : {11, 12, 13, 14, 15}) {
    PumpParams p = draw_params(seed);
    double t = 0.3e-6 * (1 + seed % 3);
    Eigen::Matrix2cd h;
    h << p.delta, 0.5 * p.g * std::exp(kI * p.varphi),
        0.5 * p.g * std::exp(-kI * p.varphi), 0.0;
    Eigen::Matrix2cd oracle = (-kI * t * h).exp();
    auto m = mode_transform(p.g, p.varphi, p.delta, t);
    CHECK((m.full() - oracle).norm() < 1e-10);
    CHECK(is_unitary(m.su2, 1e-10));
    CHECK(std::abs(m.su2.determinant() - 1.0) < 1e-10);
  }
}

TEST_CASE("composition property") {
  PumpParams p = draw_params(21);
  double t1 = 0.2e-6, t2 = 0.45e-6;
  auto a = mode_transform(p.g, p.varphi, p.delta, t1);
  auto b = mode_transform(p.g, p.varphi, p.delta, t2);
  auto c = mode_transform(p.g, p.varphi, p.delta, t1 + t2);
  CHECK((c.su2 - b.su2 * a.su2).norm() < 1e-10);
  CHECK(std::abs(c.prefactor - b.prefactor * a.prefactor) < 1e-10);
}

TEST_CASE("conditional transforms against the full-space oracle") {
  double chi = -1.0 * kMHz;  // simulation sign convention

  SUBCASE("cZZ: both branch orbits close") {
    auto sol = solve_pump(PumpTarget::CzzN1, chi);
    auto [mg, mf] = conditional_transforms(sol.params, sol.duration);
    CHECK((mg.su2 + Eigen::Matrix2cd::Identity()).norm() < 1e-10);
    CHECK((mf.su2 + Eigen::Matrix2cd::Identity()).norm() < 1e-10);
    CHECK((mg.full() - induced_transform(sol.params, sol.duration, 0, 6)).norm() < 1e-9);
    CHECK((mf.full() - induced_transform(sol.params, sol.duration, 2, 6)).norm() < 1e-9);
  }

  SUBCASE("chi = 0 collapses the two branches") {
    PumpParams p;
    p.g = 1.3 * kMHz;
    p.delta = 0.4 * kMHz;
    auto [mg, mf] = conditional_transforms(p, 0.8e-6);
    CHECK((mg.full() - mf.full()).norm() < 1e-14);
  }

  SUBCASE("cSWAP: |f> branch fully swaps at T") {
    auto sol = solve_pump(PumpTarget::Cswap, chi);
    auto [mg, mf] = conditional_transforms(sol.params, sol.duration);
    CHECK(std::abs(mf.su2(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(mg.su2(0, 1)) < 1e-10);  // |g> branch returns
  }
}

TEST_CASE("orbit phase") {
  CHECK(orbit_phase(1.0 * kMHz, 1.0 * kMHz) == doctest::Approx(0.0));
  CHECK_THROWS(orbit_phase(1.0, 0.0));
  CHECK_THROWS(orbit_phase(2.0, 1.0));

  double chi = -1.0 * kMHz;

  // cZZ |f> branch: delta_eff = -chi/2... with chi < 0 the |f> detuning is
  // chi/2 = -|chi|/2 and the |g> detuning +|chi|/2; the oracle fixes the phases.
  auto sol = solve_pump(PumpTarget::CzzN1, chi);
  for (int anc : {0, 2}) {
    double delta_eff = anc == 0 ? sol.params.delta - 0.5 * chi : sol.params.delta + 0.5 * chi;
    double omega = std::hypot(sol.params.g, delta_eff);
    double phi = orbit_phase(delta_eff, omega);
    Eigen::Matrix2cd m = induced_transform(sol.params, sol.duration, anc, 6);
    // closed orbit: m = e^{i phi} I
    CHECK((m - std::exp(kI * phi) * Eigen::Matrix2cd::Identity()).norm() < 1e-9);
  }
  double phi_f = orbit_phase(sol.params.delta + 0.5 * chi, std::abs(chi));
  CHECK(phi_f == doctest::Approx(1.5 * kPi).epsilon(1e-12));  // chi < 0: 3pi/2 branch
  double phi_g = orbit_phase(sol.params.delta - 0.5 * chi, std::abs(chi));
  CHECK(phi_g == doctest::Approx(0.5 * kPi).epsilon(1e-12));

  // cJP4-fast |f> branch at |delta_eff| = |chi|/2, Omega = 2|chi|
  auto fast = solve_pump(PumpTarget::CzzN2Fast, chi);
  double delta_f = fast.params.delta + 0.5 * chi;
  double omega_f = std::hypot(fast.params.g, delta_f);
  CHECK(omega_f == doctest::Approx(2 * std::abs(chi)).epsilon(1e-12));
  double phi_fast = orbit_phase(delta_f, omega_f);
  Eigen::Matrix2cd m = induced_transform(fast.params, fast.duration, 2, 6);
  CHECK((m - std::exp(kI * phi_fast) * Eigen::Matrix2cd::Identity()).norm() < 1e-9);
  CHECK(phi_fast == doctest::Approx(orbit_phase(-0.5 * std::abs(chi), 2 * std::abs(chi)))
                        .epsilon(1e-12));
}

TEST_CASE("solve_pump matches the tabulated conditions") {
  double chi = -1.0 * kMHz;
  double c = std::abs(chi);

  auto czz = solve_pump(PumpTarget::CzzN1, chi);
  CHECK(czz.params.g == doctest::Approx(0.5 * std::sqrt(3.0) * c).epsilon(1e-14));
  CHECK(czz.params.delta == 0.0);
  CHECK(czz.duration == doctest::Approx(2 * kPi / c).epsilon(1e-14));

  auto fast = solve_pump(PumpTarget::CzzN2Fast, chi);
  CHECK(fast.params.g == doctest::Approx(0.5 * std::sqrt(15.0) * c).epsilon(1e-14));
  CHECK(fast.duration == doctest::Approx(kPi / c).epsilon(1e-14));

  auto slow = solve_pump(PumpTarget::CzzN2Slow, chi);
  CHECK(slow.params.g == doctest::Approx(std::sqrt(7.0) / 6.0 * c).epsilon(1e-14));
  CHECK(slow.duration == doctest::Approx(3 * kPi / c).epsilon(1e-14));

  auto cswap = solve_pump(PumpTarget::Cswap, chi);
  CHECK(cswap.params.g == doctest::Approx(c / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(cswap.params.delta == doctest::Approx(0.5 * c).epsilon(1e-14));  // -chi/2, chi<0
  CHECK(cswap.duration == doctest::Approx(std::sqrt(3.0) * kPi / c).epsilon(1e-14));

  CHECK_THROWS(solve_pump(PumpTarget::CzzN1, 0.0));
}

TEST_CASE("alternate-orbit cSWAP condition") {
  double chi = -1.0 * kMHz;
  double c = std::abs(chi);
  auto alt = solve_pump(PumpTarget::CswapAlt, chi, 0.0, {.alt_orbits = 2});
  CHECK(alt.params.g == doctest::Approx(c / std::sqrt(15.0)).epsilon(1e-12));
  CHECK(alt.duration == doctest::Approx(kPi / alt.params.g).epsilon(1e-12));

  // full-space check: |f> swaps, |g> returns after two orbits
  Eigen::Matrix2cd mf = induced_transform(alt.params, alt.duration, 2, 6);
  Eigen::Matrix2cd mg = induced_transform(alt.params, alt.duration, 0, 6);
  CHECK(std::abs(mf(0, 1)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(mg(0, 0)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("full-space consistency property") {
  for (int seed : {31, 32, 33}) {
    PumpParams p = draw_params(seed);
    double t = 0.5e-6;
    for (int anc : {0, 2}) {
      double delta_eff = anc == 0 ? p.delta - 0.5 * p.chi_f : p.delta + 0.5 * p.chi_f;
      auto m = mode_transform(p.g, p.varphi, delta_eff, t);
      CHECK((m.full() - induced_transform(p, t, anc, 4)).norm() < 1e-9);
    }
  }
}

TEST_CASE("uswap equator time") {
  double chi = -1.0 * kMHz;
  double g = 2.0 * kMHz;
  double teq = uswap_equator_time(g, chi);
  double omega = std::hypot(g, 0.5 * std::abs(chi));
  double cos2 = std::pow(0.5 * std::abs(chi) / omega, 2);
  CHECK(cos2 + (1 - cos2) * std::cos(omega * teq) == doctest::Approx(0.0).epsilon(1e-10));

  // chi = 0 limit: plain beamsplitter quarter orbit
  CHECK(uswap_equator_time(g, 0.0) == doctest::Approx(0.5 * kPi / g).epsilon(1e-10));

  CHECK_THROWS(uswap_equator_time(0.4 * std::abs(chi), chi));
  CHECK_THROWS(solve_pump(PumpTarget::Uswap, chi, 0.0, {.g = 0.5 * std::abs(chi)}));
}

TEST_CASE("trajectory samples") {
  PumpParams p = draw_params(41);
  auto traj = sample_trajectory(p, AncillaBranch::G, 50, 1e-6);
  CHECK(traj.size() == 50);
  CHECK((traj.front().point - Eigen::Vector3d(0, 0, 1)).norm() < 1e-14);
  for (const auto& s : traj) CHECK(s.point.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS(sample_trajectory(p, AncillaBranch::G, 1, 1e-6));
}

TEST_CASE("solved pump conditions reproduce end-point geometry") {
  double chi = -1.0 * kMHz;
  struct Row {
    PumpTarget target;
    bool g_closes, f_closes, f_swaps;
  };
  for (const auto& row : {Row{PumpTarget::CzzN1, true, true, false},
                          Row{PumpTarget::CzzN2Fast, true, true, false},
                          Row{PumpTarget::CzzN2Slow, true, true, false},
                          Row{PumpTarget::Cswap, true, false, true}}) {
    auto sol = solve_pump(row.target, chi);
    auto [mg, mf] = conditional_transforms(sol.params, sol.duration);
    if (row.g_closes) CHECK(std::abs(mg.su2(0, 1)) < 1e-9);
    if (row.f_closes) CHECK(std::abs(mf.su2(0, 1)) < 1e-9);
    if (row.f_swaps) CHECK(std::abs(mf.su2(0, 1)) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_SUITE_END();
