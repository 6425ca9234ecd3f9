#include "dbsim/bloch.hpp"

#include <cmath>
#include <stdexcept>

namespace dbsim::bloch {

PrecessionVector precession_vector(double g, double varphi, double delta) {
  if (g == 0.0 && delta == 0.0)
    throw std::invalid_argument("precession_vector: g and delta both zero (degenerate axis)");
  if (g < 0.0)
    throw std::invalid_argument("precession_vector: g must be >= 0 (sign goes into varphi)");
  double omega = std::hypot(g, delta);
  double theta = std::atan2(g, delta);
  Eigen::Vector3d n(std::sin(theta) * std::cos(varphi),
                    -std::sin(theta) * std::sin(varphi), std::cos(theta));
  return PrecessionVector{n, omega, theta, varphi};
}

ModeTransform mode_transform(double g, double varphi, double delta, double t) {
  if (t < 0.0) throw std::invalid_argument("mode_transform: t must be >= 0");
  Eigen::Matrix2cd su2 = Eigen::Matrix2cd::Identity();
  if (g != 0.0 || delta != 0.0) {
    PrecessionVector p = precession_vector(g, varphi, delta);
    double half = 0.5 * p.omega * t;
    Eigen::Matrix2cd ndots;
    ndots << p.n.z(), cplx(p.n.x(), -p.n.y()), cplx(p.n.x(), p.n.y()), -p.n.z();
    su2 = std::cos(half) * Eigen::Matrix2cd::Identity() - kI * std::sin(half) * ndots;
  }
  return ModeTransform{su2, std::exp(-kI * (0.5 * delta * t)), t};
}

double branch_detuning(const PumpParams& params, AncillaBranch branch) {
  return branch == AncillaBranch::G ? params.delta - 0.5 * params.chi_f
                                    : params.delta + 0.5 * params.chi_f;
}

std::pair<ModeTransform, ModeTransform> conditional_transforms(const PumpParams& params,
                                                               double t) {
  return {mode_transform(params.g, params.varphi,
                         branch_detuning(params, AncillaBranch::G), t),
          mode_transform(params.g, params.varphi,
                         branch_detuning(params, AncillaBranch::F), t)};
}

double orbit_phase(double delta_eff, double omega) {
  if (omega <= 0.0) throw std::invalid_argument("orbit_phase: omega must be > 0");
  if (std::abs(delta_eff) > omega * (1.0 + 1e-12))
    throw std::invalid_argument("orbit_phase: |delta_eff| must be <= omega");
  double phi = kPi * (1.0 - delta_eff / omega);
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
  return phi;
}

PumpSolution solve_pump(PumpTarget target, double chi_f, double chi_e,
                        const PumpSolveOptions& opts) {
  if (chi_f == 0.0 && target != PumpTarget::Bs5050 && target != PumpTarget::Uswap)
    throw std::invalid_argument("solve_pump: chi_f must be nonzero");
  double c = std::abs(chi_f);
  PumpParams p;
  p.chi_f = chi_f;
  p.chi_e = chi_e;
  double duration = 0.0;
  switch (target) {
    case PumpTarget::CzzN1:
      p.g = 0.5 * std::sqrt(3.0) * c;
      duration = 2.0 * kPi / c;
      break;
    case PumpTarget::CzzN2Fast:
      p.g = 0.5 * std::sqrt(15.0) * c;
      duration = kPi / c;
      break;
    case PumpTarget::CzzN2Slow:
      p.g = std::sqrt(7.0) / 6.0 * c;
      duration = 3.0 * kPi / c;
      break;
    case PumpTarget::Cswap:
      p.g = c / std::sqrt(3.0);
      p.delta = -0.5 * chi_f;
      duration = std::sqrt(3.0) * kPi / c;
      break;
    case PumpTarget::CswapAlt: {
      // pi/g = 2 pi n / sqrt(g^2 + chi^2)  =>  g = |chi| / sqrt(4 n^2 - 1)
      int n = opts.alt_orbits;
      if (n < 1) throw std::invalid_argument("solve_pump: alternate orbit count must be >= 1");
      p.g = c / std::sqrt(4.0 * n * n - 1.0);
      p.delta = -0.5 * chi_f;
      duration = kPi / p.g;
      break;
    }
    case PumpTarget::Bs5050:
      if (opts.g <= 0.0) throw std::invalid_argument("solve_pump: 50:50 beamsplitter needs g > 0");
      p.g = opts.g;
      p.delta = 0.5 * chi_f;
      duration = 0.5 * kPi / p.g;
      break;
    case PumpTarget::Uswap:
      if (opts.g <= 0.5 * c)
        throw std::invalid_argument("solve_pump: uSWAP needs g > |chi_f|/2 (equator unreachable)");
      p.g = opts.g;
      duration = uswap_equator_time(p.g, chi_f);
      break;
  }
  return PumpSolution{p, duration};
}

double uswap_equator_time(double g, double chi_f) {
  double c = std::abs(chi_f);
  if (g <= 0.5 * c)
    throw std::invalid_argument("uswap_equator_time: g must exceed |chi_f|/2");
  if (c == 0.0) return 0.5 * kPi / g;
  double omega = std::hypot(g, 0.5 * c);
  double cos2 = (0.5 * c / omega) * (0.5 * c / omega);
  double sin2 = 1.0 - cos2;
  // z(t) = cos^2 + sin^2 cos(Omega t); monotone on (0, pi/Omega]
  auto z = [&](double t) { return cos2 + sin2 * std::cos(omega * t); };
  double lo = 0.0, hi = kPi / omega;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (z(mid) > 0.0 ? lo : hi) = mid;
    if (hi - lo <= 1e-12 * hi) break;
  }
  return 0.5 * (lo + hi);
}

Eigen::Vector3d bloch_point(const Eigen::Matrix2cd& su2) {
  cplx w = std::conj(su2(0, 0)) * su2(1, 0);
  return {2.0 * w.real(), 2.0 * w.imag(),
          std::norm(su2(0, 0)) - std::norm(su2(1, 0))};
}

std::vector<TrajectorySample> sample_trajectory(const PumpParams& params,
                                                AncillaBranch branch, int nsteps,
                                                double duration) {
  if (nsteps < 2) throw std::invalid_argument("sample_trajectory: nsteps must be >= 2");
  std::vector<TrajectorySample> out;
  out.reserve(nsteps);
  double delta_eff = branch_detuning(params, branch);
  for (int k = 0; k < nsteps; ++k) {
    double t = duration * k / (nsteps - 1);
    ModeTransform m = mode_transform(params.g, params.varphi, delta_eff, t);
    out.push_back({t, bloch_point(m.su2)});
  }
  return out;
}

}  // namespace dbsim::bloch
