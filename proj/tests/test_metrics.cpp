#include <doctest.h>

#include <algorithm>
#include <random>

#include "dbsim/metrics.hpp"

using namespace dbsim;
using namespace dbsim::metrics;

namespace {

constexpr double kMHz = 2 * kPi * 1e6;
const double kChi = -1.0 * kMHz;
const double kChiE = 0.5 * kChi;

}  // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("channel noise conventions") {
  auto decay = channel_noise(NoiseChannel::AncillaDecay, 1e-4, 2);
  CHECK(decay.gamma1_transmon == doctest::Approx(1e4));
  CHECK(decay.gammaphi_transmon == 0.0);

  auto dephase = channel_noise(NoiseChannel::AncillaDephasing, 1e-4, 2);
  CHECK(dephase.gammaphi_transmon == doctest::Approx(5e3));  // gf time = 1/(2 gamma)

  auto loss = channel_noise(NoiseChannel::PhotonLoss, 1e-3, 4);
  REQUIRE(loss.gamma1_cavity.size() == 4);
  CHECK(loss.gamma1_cavity[3] == doctest::Approx(1e3));

  CHECK_THROWS(channel_noise(NoiseChannel::PhotonLoss, 0.0, 2));
  CHECK(channel_from_name("dephasing") == NoiseChannel::AncillaDephasing);
  CHECK_THROWS(channel_from_name("thermal"));
}

TEST_CASE("noiseless gate: zero failure and zero infidelity") {
  for (auto kind : {codes::CodeKind::Fock01, codes::CodeKind::DualRail}) {
    auto gate = make_zz_gate(kind, kPi / 2, kChi, kChiE);
    auto point = error_detected_infidelity(gate, dynamics::NoiseModel{},
                                           dynamics::ReadoutModel::perfect(), {}, nullptr, 2);
    CHECK(point.failure_prob <= 1e-9);
    CHECK(point.ed_infidelity <= 1e-9);
    CHECK(point.syndrome_pass_prob >= 1.0 - 1e-9);
  }
}

TEST_CASE("fit_scaling recovers an exact power law") {
  std::vector<SweepPoint> points;
  for (double ratio : {30.0, 100.0, 300.0, 1000.0, 3000.0}) {
    SweepPoint p;
    p.tau_gate = 1e-6;
    p.t_coh = ratio * p.tau_gate;
    double x = p.tau_gate / p.t_coh;
    p.failure_prob = 3.0 * x * x;  // y = 3 x^2
    p.ed_infidelity = 0.7 * x;
    points.push_back(p);
  }
  auto fit2 = fit_scaling(points, FitQuantity::Failure);
  CHECK(fit2.exponent == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(fit2.amplitude == doctest::Approx(3.0).epsilon(1e-6));
  auto fit1 = fit_scaling(points, FitQuantity::Infidelity);
  CHECK(fit1.exponent == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit1.amplitude == doctest::Approx(0.7).epsilon(1e-6));

  points[2].failure_prob = 0.0;
  CHECK_THROWS(fit_scaling(points, FitQuantity::Failure));
  points.resize(3);
  CHECK_THROWS(fit_scaling(points, FitQuantity::Infidelity));
}

TEST_CASE("ed infidelity is invariant under cardinal-state relabeling") {
  auto gate = make_zz_gate(codes::CodeKind::Fock01, kPi / 2, kChi, kChiE);
  auto noise = channel_noise(NoiseChannel::AncillaDephasing, 50 * gate.tau_gate, 2);
  auto base = error_detected_infidelity(gate, noise, dynamics::ReadoutModel::perfect(),
                                        {}, nullptr, 2);

  GateSetup shuffled = gate;
  std::mt19937 rng(12345);
  std::vector<std::size_t> order(36);
  for (std::size_t i = 0; i < 36; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < 36; ++i) {
    shuffled.cardinal_modes[i] = gate.cardinal_modes[order[i]];
    shuffled.cardinal_full[i] = gate.cardinal_full[order[i]];
  }
  auto relabeled = error_detected_infidelity(shuffled, noise,
                                             dynamics::ReadoutModel::perfect(), {}, nullptr, 2);
  CHECK(relabeled.ed_infidelity == doctest::Approx(base.ed_infidelity).epsilon(1e-12));
  CHECK(relabeled.failure_prob == doctest::Approx(base.failure_prob).epsilon(1e-12));
}

TEST_CASE("failure probability is monotone in each decoherence rate") {
  auto gate = make_zz_gate(codes::CodeKind::Fock01, kPi / 2, kChi, kChiE);
  for (auto channel : {NoiseChannel::AncillaDecay, NoiseChannel::AncillaDephasing,
                       NoiseChannel::PhotonLoss}) {
    double last = -1.0;
    for (double ratio : {1000.0, 300.0, 100.0, 30.0}) {  // increasing rate
      auto noise = channel_noise(channel, ratio * gate.tau_gate, 2);
      auto point = error_detected_infidelity(gate, noise, dynamics::ReadoutModel::perfect(),
                                             {}, nullptr, 2);
      CHECK(point.failure_prob > last);
      last = point.failure_prob;
    }
  }
}

TEST_CASE("coherence sweep on the small code shows first and second order scaling") {
  auto gate = make_zz_gate(codes::CodeKind::Fock01, kPi / 2, kChi, kChiE);
  std::vector<double> ratios = {30, 100, 300, 1000, 3000};
  auto points = coherence_sweep(gate, NoiseChannel::AncillaDephasing, ratios,
                                dynamics::ReadoutModel::perfect(), {}, 2);
  REQUIRE(points.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(points[i].t_coh == doctest::Approx(ratios[i] * gate.tau_gate));
    CHECK(points[i].failure_prob > 0);
    CHECK(points[i].failure_prob < 1);
  }
  auto fail = fit_scaling(points, FitQuantity::Failure);
  CHECK(fail.exponent == doctest::Approx(1.0).epsilon(0.1));
  auto infid = fit_scaling(points, FitQuantity::Infidelity);
  CHECK(infid.exponent == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("nonlinearity scaling is quadratic in chi with fixed cross-Kerr") {
  NonlinearParams anchor;
  anchor.kerr_a = anchor.kerr_b = 2 * kPi * 2e3;
  anchor.chi_f_prime = 2 * kPi * 2e3;
  anchor.chi_e_prime = 2 * kPi * 1.125e3;
  anchor.chi_ab = 2 * kPi * 100.0;
  auto scaled = scale_nonlinearity(anchor, kChi, 2.0 * kChi);
  CHECK(scaled.kerr_a == doctest::Approx(4.0 * anchor.kerr_a));
  CHECK(scaled.chi_e_prime == doctest::Approx(4.0 * anchor.chi_e_prime));
  CHECK(scaled.chi_ab == doctest::Approx(anchor.chi_ab));
}

TEST_CASE("degenerate postselection is reported") {
  auto gate = make_zz_gate(codes::CodeKind::Fock01, kPi / 2, kChi, kChiE);
  dynamics::ReadoutModel never;  // never observes |g>
  never.eta << 0, 0, 0, 1, 1, 1, 0, 0, 0;
  CHECK_THROWS(error_detected_infidelity(gate, dynamics::NoiseModel{}, never, {}, nullptr, 1));
}

TEST_SUITE_END();
