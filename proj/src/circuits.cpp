#include "dbsim/circuits.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace dbsim::circuits {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

double wrap_to_pi(double phi) {
  phi = std::fmod(phi, kTwoPi);
  if (phi <= -kPi) phi += kTwoPi;
  if (phi > kPi) phi -= kTwoPi;
  return phi;
}

double positive_mod(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0) r += period;
  return r;
}

}  // namespace

Segment Segment::beamsplitter(const PumpParams& pump, double duration) {
  if (duration <= 0) throw std::invalid_argument("segment duration must be > 0");
  Segment s;
  s.kind = Kind::Beamsplitter;
  s.duration = duration;
  s.pump = pump;
  return s;
}

Segment Segment::rotation(RotationAxis axis, double angle, double duration) {
  if (duration <= 0) throw std::invalid_argument("segment duration must be > 0");
  Segment s;
  s.kind = Kind::AncillaRotation;
  s.duration = duration;
  s.axis = axis;
  s.angle = angle;
  s.drive_strength = angle / (2.0 * duration);
  return s;
}

Segment Segment::delay(double duration, double chi_f, double chi_e) {
  if (duration <= 0) throw std::invalid_argument("segment duration must be > 0");
  Segment s;
  s.kind = Kind::Delay;
  s.duration = duration;
  s.pump.chi_f = chi_f;
  s.pump.chi_e = chi_e;
  return s;
}

double Schedule::total_duration() const {
  double t = 0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

bool Schedule::frame_symmetric(double tol) const {
  return std::abs(wrap_to_pi(frame_phi_a - frame_phi_b)) <= tol;
}

Schedule schedule_czz(int n, double chi_f, double chi_e, CzzVariant variant) {
  if (n != 1 && n != 2) throw std::invalid_argument("schedule_czz: n must be 1 or 2");
  bloch::PumpTarget target = bloch::PumpTarget::CzzN1;
  if (n == 2)
    target = variant == CzzVariant::Fast ? bloch::PumpTarget::CzzN2Fast
                                         : bloch::PumpTarget::CzzN2Slow;
  auto sol = bloch::solve_pump(target, chi_f, chi_e);
  double delta_g = bloch::branch_detuning(sol.params, bloch::AncillaBranch::G);
  double omega = std::hypot(sol.params.g, delta_g);
  double phi_g = bloch::orbit_phase(delta_g, omega);

  Schedule sched;
  sched.segments = {Segment::beamsplitter(sol.params, sol.duration)};
  sched.frame_phi_a = sched.frame_phi_b = wrap_to_pi(-phi_g);
  return sched;
}

Schedule schedule_cswap(double chi_f, double chi_e) {
  auto sol = bloch::solve_pump(bloch::PumpTarget::Cswap, chi_f, chi_e);
  double delta_g = bloch::branch_detuning(sol.params, bloch::AncillaBranch::G);
  double phi_bs_g = bloch::orbit_phase(delta_g, std::hypot(sol.params.g, delta_g));

  // Phase nulling in the symmetric gf frame. A pre-delay of duration t gives the
  // a -> b state transfer of the |f> branch the phase -chi_f t / 2; matching it
  // to the |g>-branch orbit phase requires -chi_f t / 2 = phi_bs_g + pi/2
  // (mod 2pi), after which both branches share the per-mode frame
  // (-pi/2, phi_bs_g). The total duration equals the paper's two
  // pi(3-sqrt(3))/(2|chi|) delays.
  double need = positive_mod(phi_bs_g + 0.5 * kPi, kTwoPi);
  double t_delay = chi_f < 0 ? need * 2.0 / std::abs(chi_f)
                             : (kTwoPi - need) * 2.0 / chi_f;

  Schedule sched;
  sched.segments = {Segment::delay(t_delay, chi_f, chi_e),
                    Segment::beamsplitter(sol.params, sol.duration)};
  sched.frame_phi_a = wrap_to_pi(0.5 * kPi);
  sched.frame_phi_b = wrap_to_pi(-phi_bs_g);
  return sched;
}

Schedule schedule_uswap(double g, double chi_f, double chi_e, double rot_duration) {
  if (g <= 0.5 * std::abs(chi_f))
    throw std::invalid_argument("schedule_uswap: g must exceed |chi_f|/2");
  auto sol = bloch::solve_pump(bloch::PumpTarget::Uswap, chi_f, chi_e, {.g = g});
  Schedule sched;
  sched.segments = {Segment::beamsplitter(sol.params, sol.duration),
                    Segment::rotation(RotationAxis::X, kPi, rot_duration),
                    Segment::beamsplitter(sol.params, sol.duration)};
  return sched;
}

Schedule schedule_bs5050(double g, double chi_f, double chi_e) {
  auto sol = bloch::solve_pump(bloch::PumpTarget::Bs5050, chi_f, chi_e, {.g = g});
  Schedule sched;
  sched.segments = {Segment::beamsplitter(sol.params, sol.duration)};
  return sched;
}

Schedule schedule_exponentiation(const Schedule& inner, double theta,
                                 const GadgetOptions& opts) {
  if (!inner.frame_symmetric(1e-9))
    throw std::invalid_argument(
        "schedule_exponentiation: inner frame must be symmetric in the two modes "
        "(cSWAP inners carry a per-mode frame and do not exponentiate cleanly)");
  Schedule sched;
  sched.mode_a = inner.mode_a;
  sched.mode_b = inner.mode_b;
  sched.segments.push_back(
      Segment::rotation(RotationAxis::Y, 0.5 * kPi + opts.over_rotation, opts.rot_duration));
  for (const auto& s : inner.segments) sched.segments.push_back(s);
  sched.segments.push_back(Segment::rotation(RotationAxis::X, theta, opts.rot_duration));
  for (const auto& s : inner.segments) sched.segments.push_back(s);
  sched.segments.push_back(Segment::rotation(RotationAxis::Y, -0.5 * kPi, opts.rot_duration));
  sched.frame_phi_a = wrap_to_pi(2.0 * inner.frame_phi_a);
  sched.frame_phi_b = wrap_to_pi(2.0 * inner.frame_phi_b);
  return sched;
}

Schedule schedule_qnd_measurement(const Schedule& inner, double rot_duration) {
  Schedule sched;
  sched.mode_a = inner.mode_a;
  sched.mode_b = inner.mode_b;
  sched.segments.push_back(Segment::rotation(RotationAxis::Y, 0.5 * kPi, rot_duration));
  for (const auto& s : inner.segments) sched.segments.push_back(s);
  sched.segments.push_back(Segment::rotation(RotationAxis::Y, -0.5 * kPi, rot_duration));
  sched.frame_phi_a = inner.frame_phi_a;
  sched.frame_phi_b = inner.frame_phi_b;
  return sched;
}

Schedule concat(std::span<const Schedule> parts) {
  Schedule out;
  bool first = true;
  for (const auto& p : parts) {
    if (first) {
      out.mode_a = p.mode_a;
      out.mode_b = p.mode_b;
      first = false;
    } else if (p.mode_a != out.mode_a || p.mode_b != out.mode_b) {
      throw std::invalid_argument("concat: schedules act on different mode pairs");
    }
    for (const auto& s : p.segments) out.segments.push_back(s);
    out.frame_phi_a = wrap_to_pi(out.frame_phi_a + p.frame_phi_a);
    out.frame_phi_b = wrap_to_pi(out.frame_phi_b + p.frame_phi_b);
  }
  return out;
}

namespace {

constexpr double kMHz = 2.0 * kPi * 1e6;  // omega per (omega/2pi in MHz)

nlohmann::json segment_to_json(const Segment& s) {
  nlohmann::json j;
  j["duration_ns"] = s.duration * 1e9;
  switch (s.kind) {
    case Segment::Kind::Beamsplitter:
      j["kind"] = "beamsplitter";
      j["g_mhz"] = s.pump.g / kMHz;
      j["varphi_rad"] = s.pump.varphi;
      j["delta_mhz"] = s.pump.delta / kMHz;
      j["chi_f_mhz"] = s.pump.chi_f / kMHz;
      j["chi_e_mhz"] = s.pump.chi_e / kMHz;
      break;
    case Segment::Kind::AncillaRotation:
      j["kind"] = "ancilla_rotation";
      j["axis"] = s.axis == RotationAxis::X ? "x" : "y";
      j["angle_rad"] = s.angle;
      j["drive_strength_mhz"] = s.drive_strength / kMHz;
      break;
    case Segment::Kind::Delay:
      j["kind"] = "delay";
      j["chi_f_mhz"] = s.pump.chi_f / kMHz;
      j["chi_e_mhz"] = s.pump.chi_e / kMHz;
      break;
  }
  return j;
}

Segment segment_from_json(const nlohmann::json& j) {
  double duration = j.at("duration_ns").get<double>() * 1e-9;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "beamsplitter") {
    PumpParams p;
    p.g = j.at("g_mhz").get<double>() * kMHz;
    p.varphi = j.value("varphi_rad", 0.0);
    p.delta = j.at("delta_mhz").get<double>() * kMHz;
    p.chi_f = j.at("chi_f_mhz").get<double>() * kMHz;
    p.chi_e = j.value("chi_e_mhz", 0.0) * kMHz;
    return Segment::beamsplitter(p, duration);
  }
  if (kind == "ancilla_rotation") {
    RotationAxis axis =
        j.at("axis").get<std::string>() == "x" ? RotationAxis::X : RotationAxis::Y;
    Segment s = Segment::rotation(axis, j.at("angle_rad").get<double>(), duration);
    if (j.contains("drive_strength_mhz")) {
      double eps = j["drive_strength_mhz"].get<double>() * kMHz;
      if (std::abs(s.angle - 2.0 * eps * duration) > 1e-9 * std::max(1.0, std::abs(s.angle)))
        throw std::invalid_argument("timeline: angle != 2 * drive_strength * duration");
    }
    return s;
  }
  if (kind == "delay")
    return Segment::delay(duration, j.at("chi_f_mhz").get<double>() * kMHz,
                          j.value("chi_e_mhz", 0.0) * kMHz);
  throw std::invalid_argument("timeline: unknown segment kind '" + kind + "'");
}

}  // namespace

nlohmann::json to_timeline(const Schedule& schedule) {
  nlohmann::json j;
  j["mode_a"] = schedule.mode_a;
  j["mode_b"] = schedule.mode_b;
  j["frame_phi_a"] = schedule.frame_phi_a;
  j["frame_phi_b"] = schedule.frame_phi_b;
  j["segments"] = nlohmann::json::array();
  for (const auto& s : schedule.segments) j["segments"].push_back(segment_to_json(s));
  return j;
}

Schedule from_timeline(const nlohmann::json& timeline) {
  Schedule sched;
  sched.mode_a = timeline.value("mode_a", 0);
  sched.mode_b = timeline.value("mode_b", 1);
  sched.frame_phi_a = timeline.value("frame_phi_a", 0.0);
  sched.frame_phi_b = timeline.value("frame_phi_b", 0.0);
  for (const auto& js : timeline.at("segments")) sched.segments.push_back(segment_from_json(js));
  return sched;
}

std::vector<bloch::TrajectorySample> schedule_trajectory(const Schedule& schedule,
                                                         bloch::AncillaBranch branch,
                                                         int nsteps) {
  if (nsteps < 2) throw std::invalid_argument("schedule_trajectory: nsteps must be >= 2");
  double total = schedule.total_duration();
  std::vector<bloch::TrajectorySample> out;
  out.reserve(nsteps);

  Eigen::Matrix2cd acc = Eigen::Matrix2cd::Identity();
  std::size_t seg = 0;
  double seg_start = 0.0;
  bloch::AncillaBranch cur = branch;

  auto segment_su2 = [&](const Segment& s, bloch::AncillaBranch br, double t) {
    double delta_eff = bloch::branch_detuning(s.pump, br);
    double g = s.kind == Segment::Kind::Beamsplitter ? s.pump.g : 0.0;
    if (g == 0.0 && delta_eff == 0.0) return Eigen::Matrix2cd::Identity().eval();
    return bloch::mode_transform(g, s.pump.varphi, delta_eff, t).su2;
  };

  for (int k = 0; k < nsteps; ++k) {
    double t = total * k / (nsteps - 1);
    while (seg < schedule.segments.size() &&
           t > seg_start + schedule.segments[seg].duration + 1e-18) {
      const Segment& s = schedule.segments[seg];
      if (s.kind == Segment::Kind::AncillaRotation) {
        double turns = std::abs(s.angle) / kPi;
        if (std::abs(turns - std::round(turns)) > 1e-9)
          throw std::invalid_argument(
              "schedule_trajectory: ancilla left in superposition by a non-pi rotation");
        if (static_cast<long>(std::llround(turns)) % 2 == 1)
          cur = cur == bloch::AncillaBranch::G ? bloch::AncillaBranch::F
                                               : bloch::AncillaBranch::G;
      } else {
        acc = (segment_su2(s, cur, s.duration) * acc).eval();
      }
      seg_start += s.duration;
      ++seg;
    }
    Eigen::Matrix2cd m = acc;
    if (seg < schedule.segments.size() &&
        schedule.segments[seg].kind != Segment::Kind::AncillaRotation)
      m = (segment_su2(schedule.segments[seg], cur, t - seg_start) * acc).eval();
    out.push_back({t, bloch::bloch_point(m)});
  }
  return out;
}

}  // namespace dbsim::circuits
