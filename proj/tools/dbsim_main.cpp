// Command-line front end: pump-solve, gate-sim, sweep, closure, bloch-traj.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dbsim/bloch.hpp"
#include "dbsim/circuits.hpp"
#include "dbsim/closure.hpp"
#include "dbsim/config.hpp"
#include "dbsim/dynamics.hpp"
#include "dbsim/metrics.hpp"
#include "dbsim/serialize.hpp"

namespace {

using namespace dbsim;

constexpr double kMHz = 2.0 * kPi * 1e6;

struct TargetSpec {
  bloch::PumpTarget target;
  const char* name;
};

constexpr TargetSpec kTargets[] = {
    {bloch::PumpTarget::CzzN1, "czz1"},        {bloch::PumpTarget::CzzN2Fast, "czz2-fast"},
    {bloch::PumpTarget::CzzN2Slow, "czz2-slow"}, {bloch::PumpTarget::Cswap, "cswap"},
    {bloch::PumpTarget::CswapAlt, "cswap-alt"},  {bloch::PumpTarget::Bs5050, "bs5050"},
    {bloch::PumpTarget::Uswap, "uswap"},
};

bloch::PumpTarget target_from_name(const std::string& name) {
  for (const auto& t : kTargets)
    if (name == t.name) return t.target;
  throw CLI::ValidationError("unknown target '" + name + "'");
}

void ensure_parent_dir(const std::string& path) {
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

int cmd_pump_solve(const std::string& target_name, double chi_mhz, int alt_orbits,
                   double g_mhz) {
  bloch::PumpTarget target = target_from_name(target_name);
  bloch::PumpSolveOptions opts;
  opts.alt_orbits = alt_orbits;
  opts.g = g_mhz * kMHz;
  auto sol = bloch::solve_pump(target, chi_mhz * kMHz, 0.5 * chi_mhz * kMHz, opts);
  auto [mg, mf] = bloch::conditional_transforms(sol.params, sol.duration);
  std::printf("target          %s\n", target_name.c_str());
  std::printf("chi_f/2pi       %.6g MHz\n", chi_mhz);
  std::printf("g/2pi           %.9g MHz\n", sol.params.g / kMHz);
  std::printf("Delta/2pi       %.9g MHz\n", sol.params.delta / kMHz);
  std::printf("duration        %.9g us\n", sol.duration * 1e6);
  std::printf("|g> branch su2 off-diagonal |u01| = %.9g\n", std::abs(mg.su2(0, 1)));
  std::printf("|f> branch su2 off-diagonal |u01| = %.9g\n", std::abs(mf.su2(0, 1)));
  return 0;
}

int cmd_bloch_traj(const std::string& target_name, double chi_mhz, double g_mhz,
                   const std::string& branch_name, int nsteps, const std::string& out) {
  bloch::AncillaBranch branch =
      branch_name == "f" ? bloch::AncillaBranch::F : bloch::AncillaBranch::G;
  double chi = chi_mhz * kMHz;
  circuits::Schedule schedule;
  if (target_name == "uswap") {
    schedule = circuits::schedule_uswap(g_mhz * kMHz, chi, 0.5 * chi);
  } else if (target_name == "bs5050") {
    schedule = circuits::schedule_bs5050(g_mhz * kMHz, chi, 0.5 * chi);
  } else if (target_name == "cswap") {
    schedule = circuits::schedule_cswap(chi, 0.5 * chi);
  } else if (target_name == "czz1") {
    schedule = circuits::schedule_czz(1, chi, 0.5 * chi);
  } else if (target_name == "czz2-fast") {
    schedule = circuits::schedule_czz(2, chi, 0.5 * chi);
  } else if (target_name == "czz2-slow") {
    schedule = circuits::schedule_czz(2, chi, 0.5 * chi, circuits::CzzVariant::Slow);
  } else {
    throw CLI::ValidationError("bloch-traj: unsupported target '" + target_name + "'");
  }
  auto samples = circuits::schedule_trajectory(schedule, branch, nsteps);
  serialize::CsvWriter csv({"t", "x", "y", "z", "branch"});
  for (const auto& s : samples)
    csv.add_row_mixed({serialize::CsvWriter::format_double(s.t),
                       serialize::CsvWriter::format_double(s.point.x()),
                       serialize::CsvWriter::format_double(s.point.y()),
                       serialize::CsvWriter::format_double(s.point.z()), branch_name});
  ensure_parent_dir(out);
  csv.save(out);
  std::printf("wrote %zu samples to %s\n", samples.size(), out.c_str());
  return 0;
}

int cmd_gate_sim(const std::string& config_path) {
  auto cfg = config::load_config(config_path);
  circuits::GadgetOptions gopts{cfg.rot_duration, cfg.over_rotation};
  auto gate = metrics::make_zz_gate(cfg.code, cfg.theta, cfg.chi_f, cfg.chi_e, gopts,
                                    cfg.mode_dim, cfg.czz_variant);
  auto noise = cfg.noise_model(gate.layout.num_modes());
  const NonlinearParams* nl = cfg.nonlinearity.any() ? &cfg.nonlinearity : nullptr;
  auto point = metrics::error_detected_infidelity(gate, noise, cfg.readout_model(),
                                                  cfg.integrator_options(), nl,
                                                  cfg.effective_workers());

  serialize::CsvWriter csv({"tau_gate", "failure_prob", "ed_infidelity",
                            "ancilla_failure_prob", "syndrome_pass_prob"});
  csv.add_row({point.tau_gate, point.failure_prob, point.ed_infidelity,
               point.ancilla_failure_prob, point.syndrome_pass_prob});
  ensure_parent_dir(cfg.out_prefix + "_gate.csv");
  csv.save(cfg.out_prefix + "_gate.csv");

  nlohmann::json summary;
  summary["config"] = cfg.to_json();
  summary["tau_gate_us"] = point.tau_gate * 1e6;
  summary["failure_prob"] = point.failure_prob;
  summary["ed_infidelity"] = point.ed_infidelity;
  summary["ancilla_failure_prob"] = point.ancilla_failure_prob;
  summary["syndrome_pass_prob"] = point.syndrome_pass_prob;
  serialize::write_text_file(cfg.out_prefix + "_gate.json", summary.dump(2) + "\n");
  std::printf("tau_gate = %.6g us, failure = %.6g, ed_infidelity = %.6g\n",
              point.tau_gate * 1e6, point.failure_prob, point.ed_infidelity);
  return 0;
}

int cmd_sweep(const std::string& config_path) {
  auto cfg = config::load_config(config_path);
  if (!cfg.sweep_channel_set)
    throw CLI::ValidationError("sweep: config must set sweep_channel");
  circuits::GadgetOptions gopts{cfg.rot_duration, cfg.over_rotation};
  auto gate = metrics::make_zz_gate(cfg.code, cfg.theta, cfg.chi_f, cfg.chi_e, gopts,
                                    cfg.mode_dim, cfg.czz_variant);
  auto points = metrics::coherence_sweep(gate, cfg.sweep_channel, cfg.sweep_ratios,
                                         cfg.readout_model(), cfg.integrator_options(),
                                         cfg.effective_workers());

  serialize::CsvWriter csv({"channel", "T_coh", "tau_gate", "failure", "infidelity"});
  for (const auto& p : points)
    csv.add_row_mixed({metrics::channel_name(cfg.sweep_channel),
                       serialize::CsvWriter::format_double(p.t_coh),
                       serialize::CsvWriter::format_double(p.tau_gate),
                       serialize::CsvWriter::format_double(p.failure_prob),
                       serialize::CsvWriter::format_double(p.ed_infidelity)});
  ensure_parent_dir(cfg.out_prefix + "_sweep.csv");
  csv.save(cfg.out_prefix + "_sweep.csv");

  auto fail_fit = metrics::fit_scaling(points, metrics::FitQuantity::Failure);
  auto inf_fit = metrics::fit_scaling(points, metrics::FitQuantity::Infidelity);
  nlohmann::json report;
  report["config"] = cfg.to_json();
  report["channel"] = metrics::channel_name(cfg.sweep_channel);
  report["failure_fit"] = {{"amplitude", fail_fit.amplitude},
                           {"exponent", fail_fit.exponent},
                           {"residual", fail_fit.residual}};
  report["infidelity_fit"] = {{"amplitude", inf_fit.amplitude},
                              {"exponent", inf_fit.exponent},
                              {"residual", inf_fit.residual}};
  serialize::write_text_file(cfg.out_prefix + "_fits.json", report.dump(2) + "\n");
  std::printf("failure: A = %.4g, n = %.4g; infidelity: A = %.4g, n = %.4g\n",
              fail_fit.amplitude, fail_fit.exponent, inf_fit.amplitude, inf_fit.exponent);
  return 0;
}

int cmd_closure(const std::string& out_md, const std::string& out_csv) {
  auto rows = closure::closure_table();
  std::string md = closure::closure_table_markdown(rows);
  std::cout << md;
  if (!out_md.empty()) {
    ensure_parent_dir(out_md);
    serialize::write_text_file(out_md, md);
  }
  if (!out_csv.empty()) {
    ensure_parent_dir(out_csv);
    serialize::write_text_file(out_csv, closure::closure_table_csv(rows));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"error-detectable bosonic two-qubit gate simulator"};
  app.require_subcommand(1);

  std::string target = "czz1", branch = "g", config_path, out = "trajectory.csv";
  std::string closure_md, closure_csv;
  double chi_mhz = -1.0, g_mhz = 0.0;
  int nsteps = 200, alt_orbits = 2;

  auto* pump = app.add_subcommand("pump-solve", "print pump conditions for a primitive");
  pump->add_option("--target", target, "czz1|czz2-fast|czz2-slow|cswap|cswap-alt|bs5050|uswap")
      ->required();
  pump->add_option("--chi-mhz", chi_mhz, "chi_f/2pi in MHz");
  pump->add_option("--n", alt_orbits, "orbit count for cswap-alt");
  pump->add_option("--g-mhz", g_mhz, "g/2pi in MHz for bs5050/uswap");

  auto* traj = app.add_subcommand("bloch-traj", "sample an operator Bloch-sphere trajectory");
  traj->add_option("--target", target)->required();
  traj->add_option("--chi-mhz", chi_mhz);
  traj->add_option("--g-mhz", g_mhz);
  traj->add_option("--branch", branch, "g or f");
  traj->add_option("--nsteps", nsteps);
  traj->add_option("--out", out);

  auto* sim = app.add_subcommand("gate-sim", "simulate one error-detected gate");
  sim->add_option("--config", config_path)->required()->check(CLI::ExistingFile);

  auto* sweep = app.add_subcommand("sweep", "coherence-time sweep with scaling fits");
  sweep->add_option("--config", config_path)->required()->check(CLI::ExistingFile);

  auto* clo = app.add_subcommand("closure", "error-closure report for candidate Hamiltonians");
  clo->add_option("--out-md", closure_md);
  clo->add_option("--out-csv", closure_csv);

  CLI11_PARSE(app, argc, argv);

  try {
    if (pump->parsed()) return cmd_pump_solve(target, chi_mhz, alt_orbits, g_mhz);
    if (traj->parsed()) return cmd_bloch_traj(target, chi_mhz, g_mhz, branch, nsteps, out);
    if (sim->parsed()) return cmd_gate_sim(config_path);
    if (sweep->parsed()) return cmd_sweep(config_path);
    if (clo->parsed()) return cmd_closure(closure_md, closure_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
