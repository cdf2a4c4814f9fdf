// drivenqed: command-line front end for protocols, sweeps, Wigner grids and
// Hamiltonian dumps.

#include "drivenqed/errors.hpp"
#include "drivenqed/io.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

namespace dq = drivenqed;

constexpr double kBoundaryTolerance = 1e-4;

namespace {

std::vector<double> parse_omega_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw dq::ConfigError("omega: cannot parse '" + item + "'");
    }
  }
  return out;
}

int cmd_protocol(const std::string& config_path, const std::string& out, const std::string& format) {
  const auto fmt = dq::format_from_string(format);
  const auto config = dq::load_config(config_path);
  const auto result = dq::run_protocol(config);
  dq::export_result(result, fmt, out);
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& omegas, const std::string& metric,
              const std::string& out) {
  dq::SweepMetric m;
  if (metric == "infidelity") {
    m = dq::SweepMetric::Infidelity;
  } else if (metric == "distance") {
    m = dq::SweepMetric::StateDistance;
  } else {
    throw dq::ConfigError("metric: expected infidelity or distance, got '" + metric + "'");
  }
  const auto config = dq::load_config(config_path);
  const auto values = parse_omega_list(omegas);
  const auto rows = dq::rwa_sweep(config, values, m);
  dq::write_text_file(out, dq::sweep_csv(rows, m));
  return 0;
}

int cmd_wigner(const std::string& in, int mode, const std::string& grid, const std::string& which,
               const std::string& out) {
  dq::StateSelector sel;
  if (which == "final") {
    sel = dq::StateSelector::Final;
  } else if (which == "post") {
    sel = dq::StateSelector::PostMeasurement;
  } else {
    throw dq::ConfigError("state: expected final or post, got '" + which + "'");
  }
  const auto axis = dq::parse_grid_spec(grid);
  const dq::Ket psi = dq::load_state(in, sel);
  if (mode < 0 || mode >= psi.layout.n_modes()) {
    throw dq::ConfigError("mode: index " + std::to_string(mode) + " out of range for the stored state");
  }
  const std::size_t keep[] = {psi.layout.mode_subsystem(mode)};
  const auto rho = dq::partial_trace(psi, keep);
  const auto w = dq::wigner(rho, axis, axis);
  dq::write_text_file(out, dq::wigner_csv(w));

  dq::Json meta = dq::Json::object();
  meta["source"] = in;
  meta["mode"] = mode;
  meta["grid"] = {{"lo", axis.lo}, {"hi", axis.hi}, {"step", axis.step}};
  meta["integral"] = w.integral();
  meta["min"] = w.min();
  meta["max"] = w.max();
  meta["boundary_max"] = w.boundary_max();
  dq::Json warnings = dq::Json::array();
  if (w.boundary_max() >= kBoundaryTolerance) {
    warnings.push_back("grid too narrow: boundary values reach " + std::to_string(w.boundary_max()));
  }
  meta["warnings"] = warnings;
  for (const auto& msg : warnings) std::cerr << "warning: " << msg.get<std::string>() << "\n";
  dq::write_text_file(out + ".meta.json", meta.dump(1) + "\n");
  return 0;
}

int cmd_ham_dump(const std::string& config_path, const std::string& level, double t, const std::string& out) {
  const auto config = dq::load_config(config_path);
  dq::Operator h = level == "lab" ? dq::lab_hamiltonian_at(config, t)
                                  : dq::hamiltonian_at(config, dq::level_from_string(level), t);
  dq::write_text_file(out, dq::operator_csv(h));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong-driving cavity QED entanglement simulator"};
  app.set_version_flag("--version", std::string(dq::kToolVersion));
  app.require_subcommand(1);

  std::string config, out, format = "json";
  auto* protocol = app.add_subcommand("protocol", "Run a named protocol");
  protocol->add_option("--config", config, "Configuration JSON")->required();
  protocol->add_option("--out", out, "Output file")->required();
  protocol->add_option("--format", format, "json or csv");

  std::string omegas, metric = "infidelity";
  auto* sweep = app.add_subcommand("sweep", "Compare full and approximate dynamics over Omega/g");
  sweep->add_option("--config", config, "Configuration JSON")->required();
  sweep->add_option("--omega", omegas, "Comma-separated Omega/g values")->required();
  sweep->add_option("--metric", metric, "infidelity or distance");
  sweep->add_option("--out", out, "Output CSV")->required();

  std::string in, grid = "-4:4:0.1", which = "final";
  int mode = 0;
  auto* wig = app.add_subcommand("wigner", "Wigner function of one mode on a square grid");
  wig->add_option("--in", in, "State or protocol result JSON")->required();
  wig->add_option("--mode", mode, "Mode index");
  wig->add_option("--grid", grid, "lo:hi:step");
  wig->add_option("--state", which, "final or post");
  wig->add_option("--out", out, "Output CSV")->required();

  std::string level = "effective";
  double t = 0.0;
  auto* ham = app.add_subcommand("ham-dump", "Write a Hamiltonian matrix as CSV");
  ham->add_option("--config", config, "Configuration JSON")->required();
  ham->add_option("--level", level, "full-rotating, interaction, effective, dressed-jc, dressed-ajc or lab");
  ham->add_option("--time", t, "Evaluation time");
  ham->add_option("--out", out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*protocol) return cmd_protocol(config, out, format);
    if (*sweep) return cmd_sweep(config, omegas, metric, out);
    if (*wig) return cmd_wigner(in, mode, grid, which, out);
    if (*ham) return cmd_ham_dump(config, level, t, out);
  } catch (const dq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dq::GuardError& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return 3;
  } catch (const dq::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
