#include "dbsim/config.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dbsim/parallel.hpp"
#include "dbsim/serialize.hpp"

namespace dbsim::config {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::pair<double, std::string> split_value_unit(const std::string& text) {
  std::istringstream in(trim(text));
  double value;
  if (!(in >> value)) throw std::invalid_argument("cannot parse number from '" + text + "'");
  std::string unit;
  in >> unit;
  std::string rest;
  if (in >> rest) throw std::invalid_argument("trailing tokens in '" + text + "'");
  return {value, unit};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

double parse_frequency(const std::string& text) {
  auto [value, unit] = split_value_unit(text);
  double scale;
  if (unit == "GHz") scale = 1e9;
  else if (unit == "MHz") scale = 1e6;
  else if (unit == "kHz") scale = 1e3;
  else if (unit == "Hz") scale = 1.0;
  else throw std::invalid_argument("frequency needs a unit (GHz/MHz/kHz/Hz): '" + text + "'");
  return 2.0 * kPi * value * scale;
}

double parse_time(const std::string& text) {
  auto [value, unit] = split_value_unit(text);
  double scale;
  if (unit == "s") scale = 1.0;
  else if (unit == "ms") scale = 1e-3;
  else if (unit == "us" || unit == "\xc2\xb5s") scale = 1e-6;
  else if (unit == "ns") scale = 1e-9;
  else throw std::invalid_argument("time needs a unit (s/ms/us/ns): '" + text + "'");
  return value * scale;
}

double parse_angle(const std::string& text) {
  auto [value, unit] = split_value_unit(text);
  if (unit == "pi") return value * kPi;
  if (unit == "rad" || unit.empty()) return value;
  throw std::invalid_argument("angle unit must be pi or rad: '" + text + "'");
}

namespace {

double parse_plain(const std::string& text) {
  auto [value, unit] = split_value_unit(text);
  if (!unit.empty()) throw std::invalid_argument("unexpected unit in '" + text + "'");
  return value;
}

int parse_int(const std::string& text) {
  double v = parse_plain(text);
  if (v != std::floor(v)) throw std::invalid_argument("expected integer, got '" + text + "'");
  return static_cast<int>(v);
}

std::vector<double> parse_frequency_list(const std::string& text) {
  // unit may be given per entry or once on the last entry
  auto items = split_list(text);
  if (items.empty()) throw std::invalid_argument("empty list");
  std::string shared_unit;
  {
    auto [v, unit] = split_value_unit(items.back());
    (void)v;
    if (unit.empty())
      throw std::invalid_argument("frequency list needs a unit on the last entry");
    shared_unit = unit;
  }
  std::vector<double> out;
  for (const auto& item : items) {
    auto [v, unit] = split_value_unit(item);
    out.push_back(parse_frequency(std::to_string(v) + " " +
                                  (unit.empty() ? shared_unit : unit)));
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (kv.count(key))
      throw std::invalid_argument("config: duplicate key '" + key + "'");
    kv[key] = value;
  }

  if (!kv.count("config_version"))
    throw std::invalid_argument("config: missing config_version");

  ExperimentConfig cfg;
  for (const auto& [key, value] : kv) {
    if (key == "config_version") {
      cfg.config_version = parse_int(value);
      if (cfg.config_version != 1)
        throw std::invalid_argument("config: unsupported config_version " + value);
    } else if (key == "code") {
      cfg.code = codes::code_from_name(value);
    } else if (key == "gate") {
      if (value != "zz")
        throw std::invalid_argument(
            "config: only gate = zz is schedulable (eSWAP inners carry a per-mode frame)");
      cfg.gate = value;
    } else if (key == "theta") {
      cfg.theta = parse_angle(value);
    } else if (key == "chi_f") {
      cfg.chi_f = parse_frequency(value);
      if (cfg.chi_f == 0) throw std::invalid_argument("config: chi_f must be nonzero");
    } else if (key == "chi_e") {
      cfg.chi_e = parse_frequency(value);
    } else if (key == "mode_dim") {
      cfg.mode_dim = parse_int(value);
    } else if (key == "rot_duration") {
      cfg.rot_duration = parse_time(value);
    } else if (key == "over_rotation") {
      cfg.over_rotation = parse_angle(value);
    } else if (key == "czz_variant") {
      if (value == "fast") cfg.czz_variant = circuits::CzzVariant::Fast;
      else if (value == "slow") cfg.czz_variant = circuits::CzzVariant::Slow;
      else throw std::invalid_argument("config: czz_variant must be fast or slow");
    } else if (key == "t1_transmon") {
      cfg.t1_transmon = value == "0" ? 0.0 : parse_time(value);
    } else if (key == "tphi_gf") {
      cfg.tphi_gf = value == "0" ? 0.0 : parse_time(value);
    } else if (key == "t1_cavity") {
      cfg.t1_cavity = value == "0" ? 0.0 : parse_time(value);
    } else if (key == "readout") {
      if (value == "perfect") cfg.readout_standard = false;
      else if (value == "standard") cfg.readout_standard = true;
      else throw std::invalid_argument("config: readout must be perfect or standard");
    } else if (key == "eta_ge") {
      cfg.eta_ge = parse_plain(value);
    } else if (key == "eta_gg_error") {
      cfg.eta_gg_error = parse_plain(value);
    } else if (key == "sweep_channel") {
      cfg.sweep_channel = metrics::channel_from_name(value);
      cfg.sweep_channel_set = true;
    } else if (key == "sweep_ratios") {
      cfg.sweep_ratios.clear();
      for (const auto& item : split_list(value)) cfg.sweep_ratios.push_back(parse_plain(item));
    } else if (key == "chi_grid") {
      cfg.chi_grid = parse_frequency_list(value);
    } else if (key == "kerr_a") {
      cfg.nonlinearity.kerr_a = parse_frequency(value);
    } else if (key == "kerr_b") {
      cfg.nonlinearity.kerr_b = parse_frequency(value);
    } else if (key == "chi_f_prime") {
      cfg.nonlinearity.chi_f_prime = parse_frequency(value);
    } else if (key == "chi_e_prime") {
      cfg.nonlinearity.chi_e_prime = parse_frequency(value);
    } else if (key == "chi_ab") {
      cfg.nonlinearity.chi_ab = parse_frequency(value);
    } else if (key == "chi_anchor") {
      cfg.chi_anchor = parse_frequency(value);
    } else if (key == "workers") {
      cfg.workers = static_cast<unsigned>(parse_int(value));
    } else if (key == "integrator_rel_tol") {
      cfg.integrator_rel_tol = parse_plain(value);
    } else if (key == "fixed_substeps") {
      cfg.fixed_substeps = parse_int(value);
    } else if (key == "out_prefix") {
      cfg.out_prefix = value;
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  return parse_config_text(serialize::read_text_file(path));
}

dynamics::NoiseModel ExperimentConfig::noise_model(int num_modes) const {
  dynamics::NoiseModel noise;
  if (t1_transmon > 0) noise.gamma1_transmon = 1.0 / t1_transmon;
  if (tphi_gf > 0) noise.gammaphi_transmon = 0.5 / tphi_gf;
  if (t1_cavity > 0) noise.gamma1_cavity.assign(num_modes, 1.0 / t1_cavity);
  return noise;
}

dynamics::ReadoutModel ExperimentConfig::readout_model() const {
  return readout_standard ? dynamics::ReadoutModel::standard(eta_ge, eta_gg_error)
                          : dynamics::ReadoutModel::perfect();
}

dynamics::IntegratorOptions ExperimentConfig::integrator_options() const {
  dynamics::IntegratorOptions opts;
  opts.rel_tol = integrator_rel_tol;
  opts.fixed_substeps = fixed_substeps;
  return opts;
}

unsigned ExperimentConfig::effective_workers() const {
  return workers == 0 ? parallel::default_workers() : workers;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["config_version"] = config_version;
  j["code"] = codes::code_name(code);
  j["gate"] = gate;
  j["theta_rad"] = theta;
  j["chi_f_mhz"] = chi_f / (2 * kPi * 1e6);
  j["chi_e_mhz"] = chi_e / (2 * kPi * 1e6);
  j["mode_dim"] = mode_dim;
  j["rot_duration_ns"] = rot_duration * 1e9;
  j["over_rotation_rad"] = over_rotation;
  j["czz_variant"] = czz_variant == circuits::CzzVariant::Fast ? "fast" : "slow";
  j["t1_transmon_us"] = t1_transmon * 1e6;
  j["tphi_gf_us"] = tphi_gf * 1e6;
  j["t1_cavity_us"] = t1_cavity * 1e6;
  j["readout"] = readout_standard ? "standard" : "perfect";
  j["eta_ge"] = eta_ge;
  j["eta_gg_error"] = eta_gg_error;
  j["sweep_channel"] = metrics::channel_name(sweep_channel);
  j["sweep_ratios"] = sweep_ratios;
  std::vector<double> grid_mhz;
  for (double c : chi_grid) grid_mhz.push_back(c / (2 * kPi * 1e6));
  j["chi_grid_mhz"] = grid_mhz;
  j["kerr_a_khz"] = nonlinearity.kerr_a / (2 * kPi * 1e3);
  j["kerr_b_khz"] = nonlinearity.kerr_b / (2 * kPi * 1e3);
  j["chi_f_prime_khz"] = nonlinearity.chi_f_prime / (2 * kPi * 1e3);
  j["chi_e_prime_khz"] = nonlinearity.chi_e_prime / (2 * kPi * 1e3);
  j["chi_ab_hz"] = nonlinearity.chi_ab / (2 * kPi);
  j["chi_anchor_mhz"] = chi_anchor / (2 * kPi * 1e6);
  j["workers"] = workers;
  j["integrator_rel_tol"] = integrator_rel_tol;
  j["fixed_substeps"] = fixed_substeps;
  j["out_prefix"] = out_prefix;
  return j;
}

}  // namespace dbsim::config
