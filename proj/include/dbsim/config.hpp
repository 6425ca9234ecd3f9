#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dbsim/codes.hpp"
#include "dbsim/dynamics.hpp"
#include "dbsim/metrics.hpp"

namespace dbsim::config {

// Experiment configuration parsed from a `key = value` file. Frequencies are
// given as f = omega/2pi with an explicit unit (GHz/MHz/kHz/Hz) and stored in
// rad/s; times carry s/ms/us/ns; angles accept `pi` or `rad`. Unknown keys are
// rejected. The file must declare `config_version = 1`.
struct ExperimentConfig {
  int config_version = 1;
  codes::CodeKind code = codes::CodeKind::Binomial;
  std::string gate = "zz";
  double theta = kPi / 2;
  double chi_f = -2 * kPi * 1e6;
  double chi_e = -kPi * 1e6;
  int mode_dim = 0;  // 0 = code default
  double rot_duration = 50e-9;
  double over_rotation = 0.0;
  circuits::CzzVariant czz_variant = circuits::CzzVariant::Fast;

  double t1_transmon = 0.0;  // seconds; 0 = channel off
  double tphi_gf = 0.0;
  double t1_cavity = 0.0;

  bool readout_standard = false;
  double eta_ge = 0.01;
  double eta_gg_error = 1e-4;

  metrics::NoiseChannel sweep_channel = metrics::NoiseChannel::PhotonLoss;
  bool sweep_channel_set = false;
  std::vector<double> sweep_ratios = {30, 100, 300, 1000, 3000};

  std::vector<double> chi_grid;  // rad/s
  NonlinearParams nonlinearity;
  double chi_anchor = -2 * kPi * 1e6;

  unsigned workers = 0;  // 0 = hardware concurrency
  double integrator_rel_tol = 1e-9;
  int fixed_substeps = 0;
  std::string out_prefix = "out";

  dynamics::NoiseModel noise_model(int num_modes) const;
  dynamics::ReadoutModel readout_model() const;
  dynamics::IntegratorOptions integrator_options() const;
  unsigned effective_workers() const;

  nlohmann::json to_json() const;  // resolved values, embedded in summaries
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Unit-aware scalar parsing, exposed for tests: "-1 MHz" -> -2pi*1e6,
// "50 ns" -> 5e-8, "0.5 pi" -> pi/2.
double parse_frequency(const std::string& text);
double parse_time(const std::string& text);
double parse_angle(const std::string& text);

}  // namespace dbsim::config
