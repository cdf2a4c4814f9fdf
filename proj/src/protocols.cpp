#include "drivenqed/protocols.hpp"

#include "drivenqed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace drivenqed {

namespace {

struct ProtocolName {
  ProtocolKind kind;
  std::string_view name;
};

constexpr ProtocolName kProtocolNames[] = {
    {ProtocolKind::Cat1, "cat1"},
    {ProtocolKind::Cat2, "cat2"},
    {ProtocolKind::TripleCat, "triple-cat"},
    {ProtocolKind::JcRabi, "jc-rabi"},
    {ProtocolKind::AjcRabi, "ajc-rabi"},
    {ProtocolKind::TwoModeCat, "two-mode-cat"},
    {ProtocolKind::EntangledCoherent, "entangled-coherent"},
    {ProtocolKind::ModeBell, "mode-bell"},
};

struct LevelName {
  HamiltonianLevel level;
  std::string_view name;
};

constexpr LevelName kLevelNames[] = {
    {HamiltonianLevel::FullRotating, "full-rotating"}, {HamiltonianLevel::Interaction, "interaction"},
    {HamiltonianLevel::Effective, "effective"},        {HamiltonianLevel::DressedJc, "dressed-jc"},
    {HamiltonianLevel::DressedAjc, "dressed-ajc"},
};

bool is_cat_family(ProtocolKind p) {
  return p == ProtocolKind::Cat1 || p == ProtocolKind::Cat2 || p == ProtocolKind::TripleCat ||
         p == ProtocolKind::TwoModeCat || p == ProtocolKind::EntangledCoherent;
}

bool is_dressed_family(ProtocolKind p) { return !is_cat_family(p); }

std::string config_error(const std::string& path, const std::string& what) { return path + ": " + what; }

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

// Dressed-basis relabel |-> -> -|->, i.e. sigma_x on the atom. Maps the
// printed anti-JC Hamiltonian onto the delta = -2 Omega limit of the full model.
Ket relabel_minus(const Ket& psi) { return qubit_ops(psi.layout, 0).sigma_x.apply(psi); }

void check_truncation(const Ket& psi, double t) {
  const HilbertLayout& layout = psi.layout;
  for (std::size_t s = 0; s < layout.size(); ++s) {
    if (!layout[s].is_mode()) continue;
    double top = 0.0;
    for (Index flat = 0; flat < layout.dim(); ++flat) {
      if (layout.digit(flat, s) == layout[s].cutoff) top += std::norm(psi.amplitudes(flat));
    }
    if (top > 1e-8) {
      std::ostringstream msg;
      msg << "truncation guard: population " << top << " in the top Fock level of subsystem " << s << " at t = " << t;
      throw GuardError(msg.str());
    }
  }
}

std::vector<std::size_t> atom_indices(const HilbertLayout& layout) {
  std::vector<std::size_t> out;
  for (int j = 0; j < layout.n_atoms(); ++j) out.push_back(layout.atom_subsystem(j));
  return out;
}

}  // namespace

std::string_view to_string(ProtocolKind p) {
  for (const auto& e : kProtocolNames) {
    if (e.kind == p) return e.name;
  }
  return "?";
}

std::string_view to_string(HamiltonianLevel l) {
  for (const auto& e : kLevelNames) {
    if (e.level == l) return e.name;
  }
  return "?";
}

std::string_view to_string(MeasurementBasis b) { return b == MeasurementBasis::Bare ? "bare" : "dressed"; }

ProtocolKind protocol_from_string(std::string_view name) {
  for (const auto& e : kProtocolNames) {
    if (e.name == name) return e.kind;
  }
  throw ConfigError("unknown protocol '" + std::string(name) + "'");
}

HamiltonianLevel level_from_string(std::string_view name) {
  for (const auto& e : kLevelNames) {
    if (e.name == name) return e.level;
  }
  throw ConfigError("unknown hamiltonian level '" + std::string(name) + "'");
}

MeasurementBasis basis_from_string(std::string_view name) {
  if (name == "bare") return MeasurementBasis::Bare;
  if (name == "dressed") return MeasurementBasis::Dressed;
  throw ConfigError("unknown measurement basis '" + std::string(name) + "'");
}

bool is_two_mode(ProtocolKind p) {
  return p == ProtocolKind::TwoModeCat || p == ProtocolKind::EntangledCoherent || p == ProtocolKind::ModeBell;
}

int atom_count(ProtocolKind p) { return (p == ProtocolKind::Cat2 || p == ProtocolKind::TripleCat) ? 2 : 1; }

HamiltonianLevel approximate_level(ProtocolKind p) {
  switch (p) {
    case ProtocolKind::JcRabi:
    case ProtocolKind::ModeBell:
      return HamiltonianLevel::DressedJc;
    case ProtocolKind::AjcRabi:
      return HamiltonianLevel::DressedAjc;
    default:
      return HamiltonianLevel::Effective;
  }
}

bool level_allowed(ProtocolKind p, HamiltonianLevel l) {
  return l == HamiltonianLevel::FullRotating || l == HamiltonianLevel::Interaction || l == approximate_level(p);
}

double canonical_stop_time(ProtocolKind p, double g) {
  switch (p) {
    case ProtocolKind::JcRabi:
    case ProtocolKind::AjcRabi:
      return 2.0 * std::numbers::pi / g;
    case ProtocolKind::ModeBell:
      return std::numbers::sqrt2 * std::numbers::pi / (4.0 * g);
    default:
      return 2.0 / g;
  }
}

double resonant_detuning(ProtocolKind p, double omega_drive) {
  switch (p) {
    case ProtocolKind::JcRabi:
    case ProtocolKind::ModeBell:
      return 2.0 * omega_drive;
    case ProtocolKind::AjcRabi:
      return -2.0 * omega_drive;
    default:
      return 0.0;
  }
}

HilbertLayout ProtocolConfig::layout() const {
  return make_layout(params.n_atoms, std::span<const int>(cutoffs));
}

void ProtocolConfig::validate() const {
  const std::string pname(to_string(protocol));
  const std::size_t want_modes = is_two_mode(protocol) ? 2 : 1;
  if (cutoffs.size() != want_modes) {
    throw ConfigError(config_error("cutoffs", "protocol " + pname + " needs " + std::to_string(want_modes) +
                                                  " cutoff(s), got " + std::to_string(cutoffs.size())));
  }
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] < 1) {
      throw ConfigError(config_error("cutoffs[" + std::to_string(i) + "]", "must be >= 1, got " +
                                                                             std::to_string(cutoffs[i])));
    }
  }
  if (params.n_atoms != atom_count(protocol)) {
    throw ConfigError(config_error("params.n_atoms", "protocol " + pname + " needs " +
                                                         std::to_string(atom_count(protocol)) + " atom(s)"));
  }
  const HilbertLayout lay = layout();
  try {
    params.validate(lay);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(config_error("params", e.what()));
  }
  if (!level_allowed(protocol, level)) {
    throw ConfigError(config_error("level", std::string(to_string(level)) + " is not available for " + pname));
  }
  if (params.delta_atom != 0.0) throw ConfigError(config_error("params.delta_atom", "protocols require 0"));
  if ((protocol == ProtocolKind::Cat2 || protocol == ProtocolKind::TripleCat) && params.delta_a != 0.0) {
    throw ConfigError(config_error("params.delta_a", "protocol " + pname + " requires delta = 0"));
  }
  if (protocol == ProtocolKind::ModeBell && params.g_a != *params.g_b) {
    throw ConfigError(config_error("params.g_b", "mode-bell requires g_a == g_b"));
  }
  if (is_dressed_family(protocol) &&
      (level == HamiltonianLevel::FullRotating || level == HamiltonianLevel::Interaction)) {
    const double want = resonant_detuning(protocol, params.omega_drive);
    if (!near(params.delta_a, want) || (params.delta_b && !near(*params.delta_b, want))) {
      std::ostringstream msg;
      msg << "protocol " << pname << " at level " << to_string(level) << " needs delta = " << want;
      throw ConfigError(config_error("params.delta_a", msg.str()));
    }
  }
  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(config_error("time", e.what()));
  }
  if (grid.t_start != 0.0) throw ConfigError(config_error("time.t_start", "protocols start at t = 0"));
  if (picture == Picture::Lab && !params.lab) {
    throw ConfigError(config_error("picture", "lab picture needs params.lab_frequencies"));
  }
  for (std::size_t i = 0; i < measurement.size(); ++i) {
    const auto& m = measurement[i];
    const std::string path = "measurement[" + std::to_string(i) + "]";
    if (m.atom >= static_cast<std::size_t>(params.n_atoms)) throw ConfigError(config_error(path + ".atom", "out of range"));
    const bool bare = m.basis == MeasurementBasis::Bare;
    const bool ok = bare ? (m.outcome == "g" || m.outcome == "e") : (m.outcome == "+" || m.outcome == "-");
    if (!ok) throw ConfigError(config_error(path + ".outcome", "'" + m.outcome + "' is not an outcome of this basis"));
    for (std::size_t j = 0; j < i; ++j) {
      if (measurement[j].atom == m.atom) throw ConfigError(config_error(path + ".atom", "atom measured twice"));
    }
  }
}

std::vector<MeasurementStep> default_measurement(ProtocolKind p) {
  switch (p) {
    case ProtocolKind::TripleCat:
      return {{0, MeasurementBasis::Bare, "g"}, {1, MeasurementBasis::Bare, "g"}};
    case ProtocolKind::EntangledCoherent:
      return {{0, MeasurementBasis::Bare, "g"}};
    case ProtocolKind::ModeBell:
      return {{0, MeasurementBasis::Dressed, "-"}};
    default:
      return {};
  }
}

double default_step(const ProtocolConfig& config) {
  const double dmax = std::max(std::abs(config.params.delta_a),
                               config.params.delta_b ? std::abs(*config.params.delta_b) : 0.0);
  double wmax = 0.0;
  if (config.level == HamiltonianLevel::Interaction) {
    wmax = 2.0 * config.params.omega_drive + dmax;
  } else if (config.level == HamiltonianLevel::Effective) {
    wmax = dmax;
  }
  return wmax > 0.0 ? std::min(0.01, 0.01 / wmax) : 0.01;
}

ProtocolConfig default_config(ProtocolKind p) {
  ProtocolConfig c;
  c.protocol = p;
  c.params.n_atoms = atom_count(p);
  c.params.g_a = 1.0;
  c.params.omega_drive = 200.0;
  c.params.delta_a = resonant_detuning(p, c.params.omega_drive);
  if (is_two_mode(p)) {
    c.params.g_b = c.params.g_a;
    c.params.delta_b = c.params.delta_a;
    c.cutoffs = {20, 20};
  } else if (p == ProtocolKind::Cat2 || p == ProtocolKind::TripleCat) {
    c.cutoffs = {60};
  } else {
    c.cutoffs = {40};
  }
  c.detuning_follows_drive = is_dressed_family(p);
  c.level = approximate_level(p);
  c.measurement = default_measurement(p);
  c.grid = TimeGrid::uniform(0.0, canonical_stop_time(p, c.params.g_a), 0.01, 21);
  c.grid.dt = default_step(c);
  return c;
}

Ket initial_state(const ProtocolConfig& config) {
  const HilbertLayout layout = config.layout();
  std::vector<Vector> factors;
  Vector atom = local::ground();
  if (config.protocol == ProtocolKind::JcRabi || config.protocol == ProtocolKind::ModeBell) atom = local::plus();
  if (config.protocol == ProtocolKind::AjcRabi) atom = local::minus();
  for (std::size_t s = 0; s < layout.size(); ++s) {
    factors.push_back(layout[s].is_qubit() ? atom : local::fock(layout[s].cutoff, 0));
  }
  return product_state(layout, factors);
}

Ket trajectory_target(const ProtocolConfig& config, double t) {
  const HilbertLayout layout = config.layout();
  const auto& p = config.params;
  const bool full_model =
      config.level == HamiltonianLevel::FullRotating || config.level == HamiltonianLevel::Interaction;
  switch (config.protocol) {
    case ProtocolKind::Cat1:
      return target_cat1(p, layout, t);
    case ProtocolKind::Cat2:
    case ProtocolKind::TripleCat:
      return target_cat2(p, layout, t);
    case ProtocolKind::TwoModeCat:
    case ProtocolKind::EntangledCoherent:
      return target_two_mode_cat(p, layout, t);
    case ProtocolKind::JcRabi:
      return target_dressed_rabi(layout, p.g_a, t, +1);
    case ProtocolKind::AjcRabi:
      return target_dressed_rabi(layout, full_model ? -p.g_a : p.g_a, t, -1);
    case ProtocolKind::ModeBell:
      return target_two_mode_rabi(layout, p.g_a, t);
  }
  throw std::logic_error("unhandled protocol");
}

std::vector<TimedKet> evolve(const ProtocolConfig& config, HamiltonianLevel level) {
  const HilbertLayout layout = config.layout();
  const Ket psi0 = initial_state(config);
  const bool two = is_two_mode(config.protocol);
  const auto& p = config.params;
  std::vector<TimedKet> out;

  auto run_static = [&](const Operator& h, bool rotating_frame) {
    const StaticPropagator prop(h);
    for (double ts : config.grid.sample_times) {
      Ket psi = prop.apply(psi0, ts - config.grid.t_start);
      if (rotating_frame) psi = change_picture(psi, ts, Picture::DriveRotating, Picture::Interaction, p);
      out.push_back({ts, std::move(psi)});
    }
  };

  switch (level) {
    case HamiltonianLevel::FullRotating:
      run_static(two ? build_two_mode_rotating(p, layout) : build_rotating_frame(p, layout), true);
      break;
    case HamiltonianLevel::Interaction:
      out = propagate_timedep(two ? build_two_mode_interaction(p, layout) : build_interaction_picture(p, layout),
                              psi0, config.grid);
      break;
    case HamiltonianLevel::Effective:
      out = propagate_timedep(two ? build_two_mode_effective(p, layout) : build_effective(p, layout), psi0,
                              config.grid);
      break;
    case HamiltonianLevel::DressedJc:
    case HamiltonianLevel::DressedAjc: {
      const int sign = level == HamiltonianLevel::DressedJc ? 1 : -1;
      run_static(two ? build_two_mode_dressed_jc(p, layout, sign) : build_dressed_jc(p, layout, sign), false);
      break;
    }
  }
  return out;
}

namespace {

std::optional<Ket> post_target(const ProtocolConfig& config, const std::vector<std::string>& outcomes,
                               const HilbertLayout& field, double t, Picture picture) {
  const auto& p = config.params;
  const auto& m = config.measurement;
  const bool bare = !m.empty() && std::all_of(m.begin(), m.end(), [](const MeasurementStep& s) {
    return s.basis == MeasurementBasis::Bare;
  });
  const bool all_atoms = static_cast<int>(m.size()) == p.n_atoms;
  if (!all_atoms) return std::nullopt;
  switch (config.protocol) {
    case ProtocolKind::Cat1:
      if (bare) return target_cat1_conditional(p, field, t, outcomes[0] == "e", picture);
      return std::nullopt;
    case ProtocolKind::Cat2:
    case ProtocolKind::TripleCat:
      if (bare && outcomes[0] == "g" && outcomes[1] == "g") return target_triple_cat(p, field, t, picture);
      return std::nullopt;
    case ProtocolKind::TwoModeCat:
    case ProtocolKind::EntangledCoherent:
      if (bare) return target_entangled_coherent(p, field, t, outcomes[0] == "g" ? 1 : -1, picture);
      return std::nullopt;
    case ProtocolKind::ModeBell:
      if (!bare && outcomes[0] == "-") return target_mode_bell(field);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

}  // namespace

MeasurementRecord post_select(const ProtocolConfig& config, const Ket& interaction_state, double t) {
  MeasurementRecord rec;
  rec.picture = config.picture == Picture::Lab ? Picture::Lab : Picture::DriveRotating;
  Ket current = change_picture(interaction_state, t, Picture::Interaction, rec.picture, config.params);
  rec.probability = 1.0;
  std::vector<std::size_t> removed;
  for (const auto& step : config.measurement) {
    const auto shift = static_cast<std::size_t>(
        std::count_if(removed.begin(), removed.end(), [&](std::size_t r) { return r < step.atom; }));
    const auto outcomes = measure_qubit(current, step.atom - shift, step.basis);
    const auto& hit = outcomes[0].label == step.outcome ? outcomes[0] : outcomes[1];
    rec.outcomes.push_back(step.outcome);
    rec.probability *= hit.probability;
    if (!hit.remainder) {
      rec.probability = 0.0;
      return rec;
    }
    current = *hit.remainder;
    removed.push_back(step.atom);
  }
  rec.state = current;
  if (current.layout.n_atoms() == 0) {
    if (auto target = post_target(config, rec.outcomes, current.layout, t, rec.picture)) {
      rec.fidelity_to_target = fidelity(*target, current);
    }
  }
  return rec;
}

ProtocolResult run_protocol(const ProtocolConfig& config) {
  config.validate();
  ProtocolResult result;
  result.config = config;
  const HilbertLayout layout = config.layout();
  const auto atoms = atom_indices(layout);

  result.metrics.names = {"fidelity", "norm", "entropy"};
  const std::vector<std::string> mode_names = {"photons_a", "photons_b"};
  for (int k = 0; k < layout.n_modes(); ++k) result.metrics.names.push_back(mode_names[static_cast<std::size_t>(k)]);

  const auto trajectory = evolve(config, config.level);
  for (const auto& [t, psi] : trajectory) {
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > 1e-8) {
      std::ostringstream msg;
      msg << "norm drifted to " << norm << " at t = " << t;
      throw GuardError(msg.str());
    }
    check_truncation(psi, t);
    const Ket target = trajectory_target(config, t);
    std::vector<double> row = {fidelity(target, psi), norm, entropy(partial_trace(psi, atoms))};
    for (int k = 0; k < layout.n_modes(); ++k) row.push_back(mean_photon_number(psi, layout.mode_subsystem(k)));
    result.metrics.times.push_back(t);
    result.metrics.rows.push_back(std::move(row));
    result.states.push_back({t, change_picture(psi, t, Picture::Interaction, config.picture, config.params)});
  }

  const auto& last = trajectory.back();
  const auto& last_row = result.metrics.rows.back();
  result.final_state.t = last.t;
  result.final_state.fidelity = last_row[0];
  result.final_state.entropy = last_row[2];
  result.final_state.photons.assign(last_row.begin() + 3, last_row.end());
  if (!config.measurement.empty()) result.final_state.measurement = post_select(config, last.state, last.t);
  return result;
}

Operator hamiltonian_at(const ProtocolConfig& config, HamiltonianLevel level, double t) {
  const HilbertLayout layout = config.layout();
  const bool two = is_two_mode(config.protocol);
  const auto& p = config.params;
  switch (level) {
    case HamiltonianLevel::FullRotating:
      return two ? build_two_mode_rotating(p, layout) : build_rotating_frame(p, layout);
    case HamiltonianLevel::Interaction:
      return (two ? build_two_mode_interaction(p, layout) : build_interaction_picture(p, layout)).evaluate(t);
    case HamiltonianLevel::Effective:
      return (two ? build_two_mode_effective(p, layout) : build_effective(p, layout)).evaluate(t);
    case HamiltonianLevel::DressedJc:
    case HamiltonianLevel::DressedAjc: {
      const int sign = level == HamiltonianLevel::DressedJc ? 1 : -1;
      return two ? build_two_mode_dressed_jc(p, layout, sign) : build_dressed_jc(p, layout, sign);
    }
  }
  throw std::logic_error("unhandled level");
}

Operator lab_hamiltonian_at(const ProtocolConfig& config, double t) {
  return build_lab_frame(config.params, config.layout()).evaluate(t);
}

std::vector<SweepRow> rwa_sweep(const ProtocolConfig& config, std::span<const double> omega_over_g,
                                SweepMetric metric, HamiltonianLevel reference) {
  return rwa_sweep(config, omega_over_g, metric, reference, approximate_level(config.protocol));
}

std::vector<SweepRow> rwa_sweep(const ProtocolConfig& config, std::span<const double> omega_over_g,
                                SweepMetric metric, HamiltonianLevel reference, HamiltonianLevel approximate) {
  if (omega_over_g.empty()) throw ConfigError("omega: sweep needs at least two values, got none");
  if (omega_over_g.size() < 2) throw ConfigError("omega: sweep needs at least two values");
  std::vector<SweepRow> rows;
  rows.reserve(omega_over_g.size());
  for (double ratio : omega_over_g) {
    if (!(ratio > 0.0) || ratio > kMaxSweepOmegaOverG) {
      std::ostringstream msg;
      msg << "omega: Omega/g = " << ratio << " outside (0, " << kMaxSweepOmegaOverG << "]";
      throw ConfigError(msg.str());
    }
    auto at_level = [&](HamiltonianLevel level) {
      ProtocolConfig c = config;
      c.params.omega_drive = ratio * config.params.g_a;
      if (c.detuning_follows_drive) {
        c.params.delta_a = resonant_detuning(c.protocol, c.params.omega_drive);
        if (c.params.delta_b) c.params.delta_b = c.params.delta_a;
      }
      c.level = level;
      c.grid.sample_times = {c.grid.t_end};
      c.grid.dt = std::min(config.grid.dt, default_step(c));
      c.validate();
      Ket psi = evolve(c, level).back().state;
      if (c.protocol == ProtocolKind::AjcRabi && level == HamiltonianLevel::DressedAjc) psi = relabel_minus(psi);
      return psi;
    };
    const Ket ref = at_level(reference);
    const Ket approx = at_level(approximate);
    const double overlap = std::abs(ref.amplitudes.dot(approx.amplitudes));
    const double value = metric == SweepMetric::Infidelity ? 1.0 - overlap * overlap
                                                           : std::sqrt(std::max(0.0, 2.0 * (1.0 - overlap)));
    rows.push_back({ratio, value});
  }
  return rows;
}

}  // namespace drivenqed
