#pragma once

// Named end-to-end recipes: prepare, evolve at a chosen Hamiltonian level,
// compare against the closed-form prediction, optionally post-select.

#include "drivenqed/analysis.hpp"
#include "drivenqed/evolution.hpp"
#include "drivenqed/hamiltonians.hpp"
#include "drivenqed/states.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drivenqed {

inline constexpr std::string_view kToolVersion = "drivenqed 0.1.0";

enum class ProtocolKind { Cat1, Cat2, TripleCat, JcRabi, AjcRabi, TwoModeCat, EntangledCoherent, ModeBell };
enum class HamiltonianLevel { FullRotating, Interaction, Effective, DressedJc, DressedAjc };

std::string_view to_string(ProtocolKind p);
std::string_view to_string(HamiltonianLevel l);
std::string_view to_string(MeasurementBasis b);
// Throw ConfigError on unknown names.
ProtocolKind protocol_from_string(std::string_view name);
HamiltonianLevel level_from_string(std::string_view name);
MeasurementBasis basis_from_string(std::string_view name);

bool is_two_mode(ProtocolKind p);
int atom_count(ProtocolKind p);
// Level the protocol's closed form is derived from (effective or dressed).
HamiltonianLevel approximate_level(ProtocolKind p);
bool level_allowed(ProtocolKind p, HamiltonianLevel l);
// gt = 2 for the cat family, 2 pi for the Rabi protocols, sqrt2 pi / 4 for mode-bell.
double canonical_stop_time(ProtocolKind p, double g);
// Detuning the dressed protocols need: +2 Omega (JC, mode-bell), -2 Omega (anti-JC), else 0.
double resonant_detuning(ProtocolKind p, double omega_drive);

struct MeasurementStep {
  std::size_t atom = 0;  // atom number, 0-based
  MeasurementBasis basis = MeasurementBasis::Bare;
  std::string outcome = "g";  // "g"/"e" or "+"/"-"
};

struct ProtocolConfig {
  ProtocolKind protocol = ProtocolKind::Cat1;
  DriveParams params;
  std::vector<int> cutoffs;
  HamiltonianLevel level = HamiltonianLevel::Effective;
  TimeGrid grid;
  Picture picture = Picture::Interaction;
  std::vector<MeasurementStep> measurement;
  // When set, sweeps over Omega keep delta at resonant_detuning(protocol, Omega).
  bool detuning_follows_drive = false;

  HilbertLayout layout() const;
  // Structural and regime checks; throws ConfigError.
  void validate() const;
};

// Canonical defaults: g = 1, Omega = 200, protocol cutoffs and stop time,
// 21 samples, dt = min(0.01, 0.01 / omega_max) and the protocol's default
// post-selection.
ProtocolConfig default_config(ProtocolKind p);
// Default dt for a level, respecting the stepping rule.
double default_step(const ProtocolConfig& config);
std::vector<MeasurementStep> default_measurement(ProtocolKind p);

struct MetricTable {
  std::vector<std::string> names;
  std::vector<double> times;
  std::vector<std::vector<double>> rows;  // rows[i][k] = metric k at times[i]
};

struct MeasurementRecord {
  std::vector<std::string> outcomes;
  Picture picture = Picture::DriveRotating;
  double probability = 0.0;
  std::optional<double> fidelity_to_target;
  std::optional<Ket> state;  // unmeasured subsystems after post-selection
};

struct FinalSummary {
  double t = 0.0;
  double fidelity = 0.0;
  double entropy = 0.0;
  std::vector<double> photons;
  std::optional<MeasurementRecord> measurement;
};

struct ProtocolResult {
  ProtocolConfig config;
  std::vector<TimedKet> states;  // in config.picture
  MetricTable metrics;
  FinalSummary final_state;
  std::string tool_version{kToolVersion};
};

// Initial state |g..g, 0..> (cat family), |+,0(,0)> (JC, mode-bell) or |-,0> (anti-JC).
Ket initial_state(const ProtocolConfig& config);
// Interaction-picture closed form at time t.
Ket trajectory_target(const ProtocolConfig& config, double t);
// Interaction-picture states at every sample time under `level`.
std::vector<TimedKet> evolve(const ProtocolConfig& config, HamiltonianLevel level);
// Applies the measurement steps to an interaction-picture state at time t.
MeasurementRecord post_select(const ProtocolConfig& config, const Ket& interaction_state, double t);

ProtocolResult run_protocol(const ProtocolConfig& config);

// Matrix the configured level produces at time t. `lab` selects the lab frame.
Operator hamiltonian_at(const ProtocolConfig& config, HamiltonianLevel level, double t);
Operator lab_hamiltonian_at(const ProtocolConfig& config, double t);

enum class SweepMetric { Infidelity, StateDistance };

struct SweepRow {
  double omega_over_g = 0.0;
  double value = 0.0;
};

// For each Omega: evolve to grid.t_end under `reference` and under the
// protocol's approximate level, compare in the interaction picture.
std::vector<SweepRow> rwa_sweep(const ProtocolConfig& config, std::span<const double> omega_over_g,
                                SweepMetric metric = SweepMetric::Infidelity,
                                HamiltonianLevel reference = HamiltonianLevel::FullRotating);
// Same, with both levels chosen explicitly.
std::vector<SweepRow> rwa_sweep(const ProtocolConfig& config, std::span<const double> omega_over_g,
                                SweepMetric metric, HamiltonianLevel reference, HamiltonianLevel approximate);

inline constexpr double kMaxSweepOmegaOverG = 1000.0;

}  // namespace drivenqed
