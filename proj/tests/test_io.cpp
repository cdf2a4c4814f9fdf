#include "doctest.h"

#include "drivenqed/errors.hpp"
#include "drivenqed/io.hpp"

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

using namespace drivenqed;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("drivenqed_test_" + name)).string();
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

ProtocolConfig quick_cat1() {
  return parse_config(R"({"protocol": "cat1", "time": {"t_end": 1.0, "samples": 5}})");
}

}  // namespace

TEST_CASE("minimal document gets the defaults") {
  const auto c = parse_config(R"({"protocol": "cat1"})");
  const auto d = default_config(ProtocolKind::Cat1);
  CHECK(config_to_json(c) == config_to_json(d));
  CHECK(c.params.delta_atom == 0.0);
  CHECK(c.picture == Picture::Interaction);
  CHECK(c.level == HamiltonianLevel::Effective);
}

TEST_CASE("field-path diagnostics") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"protocol": "cat1", "cutoffs": [-4]})"),
                       doctest::Contains("cutoffs[0]"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"protocol": "two-mode-cat", "cutoffs": [20]})"),
                       doctest::Contains("cutoffs"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"protocol": "cat1", "colour": 1})"), doctest::Contains("colour: unknown key"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"protocol": "cat1", "params": {"omega": 1}})"),
                       doctest::Contains("params.omega: unknown key"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"protocol": "cat1", "params": {"g_a": "one"}})"),
                       doctest::Contains("params.g_a"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"protocol": "cat1", "params": {"g_b": 1}})"),
                       doctest::Contains("params.g_b"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"protocol": "cat1", "time": {"samples": 3, "sample_times": [1]}})"),
                       doctest::Contains("time"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"protocol": "cat1", "measurement": [{"basis": "bare", "outcome": "g"}]})"),
                       doctest::Contains("measurement[0].atom"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"level": "effective"})"), doctest::Contains("protocol"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"protocol": "cat1",)"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"([1, 2])"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"protocol": "cat1", "params": {"g_a": -1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"protocol": "cat1", "picture": "sideways"})"), ConfigError);
}

TEST_CASE("explicit values override the defaults") {
  const auto c = parse_config(R"({
    "protocol": "entangled-coherent",
    "level": "full-rotating",
    "params": {"g_a": 1.0, "g_b": 0.5, "omega_drive": 300, "delta_a": 0.2},
    "cutoffs": [16, 12],
    "time": {"t_end": 1.5, "dt": 0.001, "sample_times": [0, 0.5, 1.5]},
    "picture": "drive-rotating",
    "measurement": [{"atom": 0, "basis": "bare", "outcome": "e"}]
  })");
  CHECK(c.level == HamiltonianLevel::FullRotating);
  CHECK(*c.params.g_b == 0.5);
  CHECK(*c.params.delta_b == 0.2);
  CHECK_FALSE(c.detuning_follows_drive);
  CHECK(c.cutoffs == std::vector<int>{16, 12});
  CHECK(c.grid.dt == 0.001);
  CHECK(c.grid.sample_times == std::vector<double>{0.0, 0.5, 1.5});
  CHECK(c.picture == Picture::DriveRotating);
  REQUIRE(c.measurement.size() == 1);
  CHECK(c.measurement[0].outcome == "e");

  const auto jc = parse_config(R"({"protocol": "jc-rabi", "params": {"omega_drive": 100}})");
  CHECK(jc.params.delta_a == 200.0);
  CHECK(jc.detuning_follows_drive);
}

TEST_CASE("config echo round trips") {
  for (const char* doc : {R"({"protocol": "triple-cat"})", R"({"protocol": "mode-bell", "level": "interaction"})",
                          R"({"protocol": "cat1", "params": {"lab_frequencies":
                              {"omega_atom": 1000, "omega_mode": 1000, "omega_laser": 1000}}, "picture": "lab"})"}) {
    const auto c = parse_config(doc);
    const Json echo = config_to_json(c);
    CHECK(config_to_json(parse_config(echo.dump())) == echo);
  }
}

TEST_CASE("ket JSON round trip is bit-identical") {
  const auto L = make_layout(1, {3, 2});
  std::mt19937_64 rng(3);
  std::normal_distribution<double> d;
  Vector v(L.dim());
  for (Index k = 0; k < L.dim(); ++k) v(k) = Complex(d(rng), d(rng)) / 7.0;
  const Ket psi(L, v);
  const Json j = ket_to_json(psi);
  CHECK(j["layout"][0]["kind"] == "qubit");
  CHECK(j["layout"][1]["cutoff"] == 3);
  CHECK(j["re"].size() == static_cast<std::size_t>(L.dim()));
  const Ket back = ket_from_json(Json::parse(j.dump()));
  CHECK(back.layout == L);
  for (Index k = 0; k < L.dim(); ++k) CHECK(back.amplitudes(k) == psi.amplitudes(k));

  Json bad = j;
  bad["re"].erase(0);
  CHECK_THROWS_AS(ket_from_json(bad), ConfigError);
  CHECK_THROWS_AS(layout_from_json(Json::parse(R"([{"kind": "spin"}])")), ConfigError);
}

TEST_CASE("result export and reload") {
  const auto r = run_protocol(quick_cat1());
  const std::string json_path = temp_path("result.json");
  export_result(r, ExportFormat::Json, json_path);
  const Json doc = Json::parse(read_text_file(json_path));
  CHECK(doc["tool_version"] == std::string(kToolVersion));
  CHECK(doc["states"].size() == 5);
  CHECK(doc["metrics"]["names"][0] == "fidelity");
  const Ket last = load_state(json_path);
  for (Index k = 0; k < last.amplitudes.size(); ++k) CHECK(last.amplitudes(k) == r.states.back().state.amplitudes(k));
  CHECK_THROWS_AS(load_state(json_path, StateSelector::PostMeasurement), ConfigError);

  const std::string csv_path = temp_path("result.csv");
  export_result(r, ExportFormat::Csv, csv_path);
  const std::string csv = read_text_file(csv_path);
  CHECK(csv.rfind("t,fidelity,norm,entropy,photons_a\n", 0) == 0);
  CHECK(count_lines(csv) == 5 + 1);
  std::filesystem::remove(json_path);
  std::filesystem::remove(csv_path);
}

TEST_CASE("post-measurement state is stored and reloadable") {
  const auto c = parse_config(R"({"protocol": "triple-cat", "time": {"samples": 2}})");
  const auto r = run_protocol(c);
  const std::string path = temp_path("triple.json");
  export_result(r, ExportFormat::Json, path);
  const Ket post = load_state(path, StateSelector::PostMeasurement);
  CHECK(post.layout.n_atoms() == 0);
  CHECK(post.layout.n_modes() == 1);
  CHECK(std::abs(post.norm() - 1.0) < 1e-12);
  std::filesystem::remove(path);
}

TEST_CASE("metrics CSV") {
  MetricTable empty;
  CHECK(metrics_csv(empty) == "t\n");
  MetricTable names_only;
  names_only.names = {"fidelity"};
  CHECK(metrics_csv(names_only) == "t,fidelity\n");
  MetricTable one;
  one.names = {"x"};
  one.times = {0.5};
  one.rows = {{0.25}};
  CHECK(metrics_csv(one) == "t,x\n0.5,0.25\n");
}

TEST_CASE("JSON output is deterministic") {
  const auto c = quick_cat1();
  CHECK(result_to_json(run_protocol(c)).dump() == result_to_json(run_protocol(c)).dump());
}

TEST_CASE("grid spec") {
  const auto a = parse_grid_spec("-4:4:0.1");
  CHECK(a.lo == -4.0);
  CHECK(a.hi == 4.0);
  CHECK(a.step == 0.1);
  CHECK_THROWS_AS(parse_grid_spec("-4:4:0"), ConfigError);
  CHECK_THROWS_AS(parse_grid_spec("-4:4"), ConfigError);
  CHECK_THROWS_AS(parse_grid_spec("a:4:0.1"), ConfigError);
  CHECK_THROWS_AS(parse_grid_spec("4:-4:0.1"), ConfigError);
}

TEST_CASE("CSV writers") {
  WignerGrid w;
  w.x = {-1.0, 1.0};
  w.p = {0.0};
  w.values = Eigen::MatrixXd::Constant(1, 2, 0.5);
  CHECK(wigner_csv(w) == "p\\x,-1,1\n0,0.5,0.5\n");

  const std::vector<SweepRow> rows{{50.0, 1e-4}, {500.0, 1e-6}};
  CHECK(sweep_csv(rows, SweepMetric::Infidelity).rfind("omega_over_g,infidelity\n50,", 0) == 0);
  CHECK(count_lines(sweep_csv(rows, SweepMetric::StateDistance)) == 3);

  const auto L = make_layout(0, {1});
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = Complex(0.5, -1.0);
  CHECK(operator_csv(Operator(L, m)) == "row,col,re,im\n1,0,0.5,-1\n");
}

TEST_CASE("I/O failures carry the path") {
  CHECK_THROWS_WITH_AS(read_text_file("/nonexistent/drivenqed/config.json"),
                       doctest::Contains("/nonexistent/drivenqed/config.json"), IoError);
  CHECK_THROWS_WITH_AS(write_text_file("/nonexistent/drivenqed/out.csv", "x"),
                       doctest::Contains("/nonexistent/drivenqed/out.csv"), IoError);
  try {
    load_config("/nonexistent/drivenqed/config.json");
  } catch (const IoError& e) {
    CHECK(e.path() == "/nonexistent/drivenqed/config.json");
  }
}
