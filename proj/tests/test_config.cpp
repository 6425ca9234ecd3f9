#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "dbsim/config.hpp"
#include "dbsim/serialize.hpp"

using namespace dbsim;
using namespace dbsim::config;

TEST_SUITE_BEGIN("config");

TEST_CASE("unit parsing") {
  CHECK(parse_frequency("-1 MHz") == doctest::Approx(-2 * kPi * 1e6));
  CHECK(parse_frequency("2.5 kHz") == doctest::Approx(2 * kPi * 2.5e3));
  CHECK(parse_frequency("100 Hz") == doctest::Approx(2 * kPi * 100));
  CHECK_THROWS(parse_frequency("3"));
  CHECK_THROWS(parse_frequency("3 lightyears"));

  CHECK(parse_time("50 ns") == doctest::Approx(5e-8));
  CHECK(parse_time("100 us") == doctest::Approx(1e-4));
  CHECK(parse_time("1 ms") == doctest::Approx(1e-3));
  CHECK_THROWS(parse_time("10 MHz"));

  CHECK(parse_angle("0.5 pi") == doctest::Approx(kPi / 2));
  CHECK(parse_angle("1.25 rad") == doctest::Approx(1.25));
  CHECK(parse_angle("0.7") == doctest::Approx(0.7));
}

TEST_CASE("config parsing, defaults, and validation") {
  std::string text = R"(
# error-detected gate run
config_version = 1
code = binomial
gate = zz
theta = 0.5 pi
chi_f = -1 MHz
chi_e = -0.5 MHz
rot_duration = 50 ns
t1_cavity = 1 ms
readout = standard
eta_ge = 0.01
sweep_channel = loss
sweep_ratios = 30, 100, 300, 1000, 3000
workers = 2
)";
  auto cfg = parse_config_text(text);
  CHECK(cfg.code == codes::CodeKind::Binomial);
  CHECK(cfg.theta == doctest::Approx(kPi / 2));
  CHECK(cfg.chi_f == doctest::Approx(-2 * kPi * 1e6));
  CHECK(cfg.t1_cavity == doctest::Approx(1e-3));
  CHECK(cfg.readout_standard);
  CHECK(cfg.sweep_ratios.size() == 5);
  CHECK(cfg.effective_workers() == 2);

  auto noise = cfg.noise_model(2);
  CHECK(noise.gamma1_transmon == 0.0);
  REQUIRE(noise.gamma1_cavity.size() == 2);
  CHECK(noise.gamma1_cavity[0] == doctest::Approx(1e3));

  auto readout = cfg.readout_model();
  CHECK(readout.eta(0, 1) == doctest::Approx(0.01));

  nlohmann::json j = cfg.to_json();
  CHECK(j["chi_f_mhz"].get<double>() == doctest::Approx(-1.0));
  CHECK(j["code"] == "binomial");

  CHECK_THROWS(parse_config_text("config_version = 1\nunknown_knob = 3\n"));
  CHECK_THROWS(parse_config_text("code = binomial\n"));  // missing version
  CHECK_THROWS(parse_config_text("config_version = 2\n"));
  CHECK_THROWS(parse_config_text("config_version = 1\ngate = eswap\n"));
  CHECK_THROWS(parse_config_text("config_version = 1\nconfig_version = 1\n"));
  CHECK_THROWS(parse_config_text("config_version = 1\nchi_f = 0 MHz\n"));
}

TEST_CASE("frequency lists share a trailing unit") {
  auto cfg = parse_config_text(
      "config_version = 1\nchi_grid = -0.25, -0.5, -1, -2, -4 MHz\n");
  REQUIRE(cfg.chi_grid.size() == 5);
  CHECK(cfg.chi_grid[0] == doctest::Approx(-2 * kPi * 0.25e6));
  CHECK(cfg.chi_grid[4] == doctest::Approx(-2 * kPi * 4e6));
  CHECK_THROWS(parse_config_text("config_version = 1\nchi_grid = -1, -2\n"));
}

TEST_CASE("operator serialization round-trips") {
  HilbertLayout layout({3, 2});
  Operator op = embed(ladder(3), 1, layout);
  op.matrix(1, 2) = cplx(0.25, -1.75);

  nlohmann::json j = serialize::operator_to_json(op);
  Operator back = serialize::operator_from_json(j);
  CHECK(back.layout == op.layout);
  CHECK((back.matrix - op.matrix).norm() == 0.0);  // bit-exact payload

  auto path = std::filesystem::temp_directory_path() / "dbsim_op_test.json";
  serialize::save_operator(op, path.string());
  Operator loaded = serialize::load_operator(path.string());
  CHECK((loaded.matrix - op.matrix).norm() == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("base64 round-trip") {
  for (std::size_t len : {0u, 1u, 2u, 3u, 7u, 64u}) {
    std::vector<std::byte> data;
    for (std::size_t i = 0; i < len; ++i)
      data.push_back(std::byte((i * 37 + 11) & 0xff));
    auto text = serialize::base64_encode(data);
    auto back = serialize::base64_decode(text);
    CHECK(back == data);
  }
  CHECK_THROWS(serialize::base64_decode("not*valid"));
}

TEST_CASE("csv writer emits deterministic text") {
  auto make = [] {
    serialize::CsvWriter csv({"x", "y"});
    csv.add_row({1.0 / 3.0, 2.5e-17});
    csv.add_row({-0.0, 1e300});
    return csv.str();
  };
  std::string a = make(), b = make();
  CHECK(a == b);
  CHECK(a.find("x,y\n") == 0);
  CHECK(a.find("0.33333333333333331") != std::string::npos);
}

TEST_SUITE_END();
