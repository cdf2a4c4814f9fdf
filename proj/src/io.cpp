#include "drivenqed/io.hpp"

#include "drivenqed/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace drivenqed {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// Field access with path-qualified diagnostics.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  void allow(std::initializer_list<std::string_view> keys) const {
    std::set<std::string_view> allowed(keys);
    for (const auto& [k, v] : j_.items()) {
      if (!allowed.contains(k)) throw ConfigError(field(k) + ": unknown key");
    }
  }

  bool has(std::string_view key) const { return j_.contains(key); }
  const Json& raw(std::string_view key) const { return j_.at(key); }
  std::string field(std::string_view key) const { return path_.empty() ? std::string(key) : path_ + "." + std::string(key); }

  std::optional<double> number(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    const Json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(field(key) + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(field(key) + ": must be finite");
    return d;
  }

  std::optional<long long> integer(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    const Json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(field(key) + ": expected an integer");
    return v.get<long long>();
  }

  std::optional<std::string> string(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    const Json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(field(key) + ": expected a string");
    return v.get<std::string>();
  }

  std::optional<bool> boolean(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    const Json& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError(field(key) + ": expected true or false");
    return v.get<bool>();
  }

 private:
  std::string where() const { return path_.empty() ? "<document>" : path_; }

  const Json& j_;
  std::string path_;
};

template <typename F>
auto as_config_error(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::vector<double> number_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(path + "[" + std::to_string(i) + "]: expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

}  // namespace

ProtocolConfig parse_config(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("<document>: ") + e.what());
  }
  const Reader root(doc, "");
  root.allow({"protocol", "level", "params", "cutoffs", "time", "picture", "measurement", "detuning_follows_drive"});
  const auto name = root.string("protocol");
  if (!name) throw ConfigError("protocol: required");
  const ProtocolKind kind = as_config_error("protocol", [&] { return protocol_from_string(*name); });
  ProtocolConfig c = default_config(kind);

  bool delta_given = false;
  if (root.has("params")) {
    const Reader p(root.raw("params"), "params");
    p.allow({"n_atoms", "g_a", "g_b", "omega_drive", "delta_atom", "delta_a", "delta_b", "lab_frequencies"});
    if (auto v = p.integer("n_atoms")) c.params.n_atoms = static_cast<int>(*v);
    if (auto v = p.number("g_a")) c.params.g_a = *v;
    if (auto v = p.number("omega_drive")) c.params.omega_drive = *v;
    if (auto v = p.number("delta_atom")) c.params.delta_atom = *v;
    if (auto v = p.number("delta_a")) {
      c.params.delta_a = *v;
      delta_given = true;
    } else {
      c.params.delta_a = resonant_detuning(kind, c.params.omega_drive);
    }
    const bool two = is_two_mode(kind);
    if (!two && (p.has("g_b") || p.has("delta_b"))) {
      throw ConfigError(p.field(p.has("g_b") ? "g_b" : "delta_b") + ": only valid for two-mode protocols");
    }
    if (two) {
      c.params.g_b = p.number("g_b").value_or(c.params.g_a);
      if (auto v = p.number("delta_b")) {
        c.params.delta_b = *v;
        delta_given = true;
      } else {
        c.params.delta_b = c.params.delta_a;
      }
    }
    if (p.has("lab_frequencies")) {
      const Reader lab(p.raw("lab_frequencies"), "params.lab_frequencies");
      lab.allow({"omega_atom", "omega_mode", "omega_laser"});
      LabFrequencies f;
      auto need = [&](std::string_view key) {
        auto v = lab.number(key);
        if (!v) throw ConfigError(lab.field(key) + ": required");
        return *v;
      };
      f.omega_atom = need("omega_atom");
      f.omega_mode = need("omega_mode");
      f.omega_laser = need("omega_laser");
      c.params.lab = f;
    }
  }
  c.detuning_follows_drive = root.boolean("detuning_follows_drive").value_or(!delta_given && c.detuning_follows_drive);

  if (root.has("cutoffs")) {
    const Json& arr = root.raw("cutoffs");
    if (!arr.is_array()) throw ConfigError("cutoffs: expected an array");
    c.cutoffs.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "cutoffs[" + std::to_string(i) + "]";
      if (!arr[i].is_number_integer()) throw ConfigError(path + ": expected an integer");
      const auto v = arr[i].get<long long>();
      if (v < 1) throw ConfigError(path + ": must be >= 1, got " + std::to_string(v));
      c.cutoffs.push_back(static_cast<int>(v));
    }
  }
  if (auto v = root.string("level")) c.level = level_from_string(*v);
  if (auto v = root.string("picture")) c.picture = as_config_error("picture", [&] { return picture_from_string(*v); });

  {
    const double t_start = 0.0;
    double t_end = canonical_stop_time(kind, c.params.g_a);
    std::optional<double> dt;
    std::optional<long long> samples;
    std::optional<std::vector<double>> sample_times;
    double start = t_start;
    if (root.has("time")) {
      const Reader t(root.raw("time"), "time");
      t.allow({"t_start", "t_end", "dt", "samples", "sample_times"});
      start = t.number("t_start").value_or(t_start);
      t_end = t.number("t_end").value_or(t_end);
      dt = t.number("dt");
      samples = t.integer("samples");
      if (t.has("sample_times")) sample_times = number_array(t.raw("sample_times"), "time.sample_times");
      if (samples && sample_times) throw ConfigError("time: give either samples or sample_times, not both");
      if (samples && *samples < 1) throw ConfigError("time.samples: must be >= 1");
    }
    c.grid = as_config_error("time", [&] {
      TimeGrid g;
      if (sample_times) {
        g = TimeGrid{start, t_end, 0.01, *sample_times};
        g.validate();
      } else {
        g = TimeGrid::uniform(start, t_end, 0.01, static_cast<int>(samples.value_or(21)));
      }
      return g;
    });
    c.grid.dt = dt ? *dt : default_step(c);
    if (!(c.grid.dt > 0.0)) throw ConfigError("time.dt: must be positive");
  }

  if (root.has("measurement")) {
    const Json& arr = root.raw("measurement");
    if (!arr.is_array()) throw ConfigError("measurement: expected an array");
    c.measurement.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "measurement[" + std::to_string(i) + "]";
      const Reader m(arr[i], path);
      m.allow({"atom", "basis", "outcome"});
      MeasurementStep step;
      const auto atom = m.integer("atom");
      if (!atom) throw ConfigError(path + ".atom: required");
      if (*atom < 0) throw ConfigError(path + ".atom: must be >= 0");
      step.atom = static_cast<std::size_t>(*atom);
      if (auto b = m.string("basis")) step.basis = basis_from_string(*b);
      const auto outcome = m.string("outcome");
      if (!outcome) throw ConfigError(path + ".outcome: required");
      step.outcome = *outcome;
      c.measurement.push_back(step);
    }
  }

  c.validate();
  return c;
}

ProtocolConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

Json config_to_json(const ProtocolConfig& c) {
  Json params = Json::object();
  params["n_atoms"] = c.params.n_atoms;
  params["g_a"] = c.params.g_a;
  if (c.params.g_b) params["g_b"] = *c.params.g_b;
  params["omega_drive"] = c.params.omega_drive;
  params["delta_atom"] = c.params.delta_atom;
  params["delta_a"] = c.params.delta_a;
  if (c.params.delta_b) params["delta_b"] = *c.params.delta_b;
  if (c.params.lab) {
    params["lab_frequencies"] = {{"omega_atom", c.params.lab->omega_atom},
                                 {"omega_mode", c.params.lab->omega_mode},
                                 {"omega_laser", c.params.lab->omega_laser}};
  }
  Json measurement = Json::array();
  for (const auto& m : c.measurement) {
    measurement.push_back({{"atom", m.atom}, {"basis", std::string(to_string(m.basis))}, {"outcome", m.outcome}});
  }
  Json j = Json::object();
  j["protocol"] = std::string(to_string(c.protocol));
  j["level"] = std::string(to_string(c.level));
  j["params"] = std::move(params);
  j["cutoffs"] = c.cutoffs;
  j["time"] = {{"t_start", c.grid.t_start},
               {"t_end", c.grid.t_end},
               {"dt", c.grid.dt},
               {"sample_times", c.grid.sample_times}};
  j["picture"] = std::string(to_string(c.picture));
  j["measurement"] = std::move(measurement);
  j["detuning_follows_drive"] = c.detuning_follows_drive;
  return j;
}

Json layout_to_json(const HilbertLayout& layout) {
  Json arr = Json::array();
  for (const auto& s : layout.subsystems()) {
    if (s.is_qubit()) {
      arr.push_back({{"kind", "qubit"}});
    } else {
      arr.push_back({{"kind", "mode"}, {"cutoff", s.cutoff}});
    }
  }
  return arr;
}

HilbertLayout layout_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("layout: expected an array");
  std::vector<Subsystem> subs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "layout[" + std::to_string(i) + "]";
    const Reader r(j[i], path);
    r.allow({"kind", "cutoff"});
    const auto kind = r.string("kind");
    if (kind == "qubit") {
      subs.push_back(Subsystem::qubit());
    } else if (kind == "mode") {
      const auto cutoff = r.integer("cutoff");
      if (!cutoff || *cutoff < 1) throw ConfigError(path + ".cutoff: must be an integer >= 1");
      subs.push_back(Subsystem::mode(static_cast<int>(*cutoff)));
    } else {
      throw ConfigError(path + ".kind: expected 'qubit' or 'mode'");
    }
  }
  return as_config_error("layout", [&] { return HilbertLayout(std::move(subs)); });
}

Json ket_to_json(const Ket& psi) {
  Json re = Json::array();
  Json im = Json::array();
  for (Index k = 0; k < psi.amplitudes.size(); ++k) {
    re.push_back(psi.amplitudes(k).real());
    im.push_back(psi.amplitudes(k).imag());
  }
  Json j = Json::object();
  j["layout"] = layout_to_json(psi.layout);
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

Ket ket_from_json(const Json& j) {
  const Reader r(j, "state");
  r.allow({"layout", "re", "im"});
  if (!r.has("layout") || !r.has("re") || !r.has("im")) throw ConfigError("state: needs layout, re and im");
  const HilbertLayout layout = layout_from_json(r.raw("layout"));
  const auto re = number_array(r.raw("re"), "state.re");
  const auto im = number_array(r.raw("im"), "state.im");
  if (re.size() != im.size() || static_cast<Index>(re.size()) != layout.dim()) {
    throw ConfigError("state: amplitude arrays must both have length " + std::to_string(layout.dim()));
  }
  Vector v(layout.dim());
  for (Index k = 0; k < layout.dim(); ++k) v(k) = Complex(re[static_cast<std::size_t>(k)], im[static_cast<std::size_t>(k)]);
  return Ket(layout, std::move(v));
}

Json result_to_json(const ProtocolResult& result) {
  Json metrics = Json::object();
  metrics["names"] = result.metrics.names;
  metrics["t"] = result.metrics.times;
  Json values = Json::array();
  for (const auto& row : result.metrics.rows) {
    Json r = Json::array();
    for (double v : row) r.push_back(finite_or_null(v));
    values.push_back(std::move(r));
  }
  metrics["values"] = std::move(values);

  const auto& f = result.final_state;
  Json fin = Json::object();
  fin["t"] = f.t;
  fin["fidelity"] = finite_or_null(f.fidelity);
  fin["entropy"] = finite_or_null(f.entropy);
  fin["photons"] = f.photons;
  if (f.measurement) {
    const auto& m = *f.measurement;
    Json mj = Json::object();
    mj["outcomes"] = m.outcomes;
    mj["picture"] = std::string(to_string(m.picture));
    mj["probability"] = m.probability;
    if (m.fidelity_to_target) mj["fidelity_to_target"] = finite_or_null(*m.fidelity_to_target);
    if (m.state) mj["state"] = ket_to_json(*m.state);
    fin["measurement"] = std::move(mj);
  }

  Json states = Json::array();
  for (const auto& s : result.states) states.push_back({{"t", s.t}, {"state", ket_to_json(s.state)}});

  Json j = Json::object();
  j["tool_version"] = result.tool_version;
  j["config"] = config_to_json(result.config);
  j["metrics"] = std::move(metrics);
  j["final"] = std::move(fin);
  j["states"] = std::move(states);
  return j;
}

ExportFormat format_from_string(std::string_view name) {
  if (name == "json") return ExportFormat::Json;
  if (name == "csv") return ExportFormat::Csv;
  throw ConfigError("format: expected json or csv, got '" + std::string(name) + "'");
}

std::string metrics_csv(const MetricTable& metrics) {
  std::string out = "t";
  for (const auto& n : metrics.names) out += "," + n;
  out += "\n";
  for (std::size_t i = 0; i < metrics.rows.size(); ++i) {
    out += fmt_double(metrics.times[i]);
    for (double v : metrics.rows[i]) out += "," + fmt_double(v);
    out += "\n";
  }
  return out;
}

void export_result(const ProtocolResult& result, ExportFormat format, const std::string& path) {
  if (format == ExportFormat::Json) {
    write_text_file(path, result_to_json(result).dump(1) + "\n");
  } else {
    write_text_file(path, metrics_csv(result.metrics));
  }
}

Ket load_state(const std::string& path, StateSelector which) {
  Json doc;
  try {
    doc = Json::parse(read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (doc.is_object() && doc.contains("re")) return ket_from_json(doc);
  if (!doc.is_object() || !doc.contains("states")) throw ConfigError(path + ": neither a state nor a protocol result");
  if (which == StateSelector::PostMeasurement) {
    const Json* m = nullptr;
    if (doc.contains("final") && doc["final"].contains("measurement")) m = &doc["final"]["measurement"];
    if (m == nullptr || !m->contains("state")) throw ConfigError(path + ": result has no post-measurement state");
    return ket_from_json((*m)["state"]);
  }
  const Json& states = doc["states"];
  if (!states.is_array() || states.empty()) throw ConfigError(path + ": result has no states");
  return ket_from_json(states.back().at("state"));
}

GridAxis parse_grid_spec(std::string_view spec) {
  std::vector<double> parts;
  std::string s(spec);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError("grid: cannot parse '" + item + "' in '" + s + "'");
    }
  }
  if (parts.size() != 3) throw ConfigError("grid: expected lo:hi:step, got '" + s + "'");
  GridAxis axis{parts[0], parts[1], parts[2]};
  if (!(axis.step > 0.0)) throw ConfigError("grid: step must be positive in '" + s + "'");
  if (!(axis.hi >= axis.lo)) throw ConfigError("grid: hi must be >= lo in '" + s + "'");
  return axis;
}

std::string wigner_csv(const WignerGrid& grid) {
  std::string out = "p\\x";
  for (double x : grid.x) out += "," + fmt_double(x);
  out += "\n";
  for (std::size_t i = 0; i < grid.p.size(); ++i) {
    out += fmt_double(grid.p[i]);
    for (std::size_t j = 0; j < grid.x.size(); ++j) {
      out += "," + fmt_double(grid.values(static_cast<Index>(i), static_cast<Index>(j)));
    }
    out += "\n";
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, SweepMetric metric) {
  std::string out = metric == SweepMetric::Infidelity ? "omega_over_g,infidelity\n" : "omega_over_g,state_distance\n";
  for (const auto& r : rows) out += fmt_double(r.omega_over_g) + "," + fmt_double(r.value) + "\n";
  return out;
}

std::string operator_csv(const Operator& op) {
  std::string out = "row,col,re,im\n";
  for (Index c = 0; c < op.matrix.cols(); ++c) {
    for (Index r = 0; r < op.matrix.rows(); ++r) {
      const Complex v = op.matrix(r, c);
      if (v == Complex(0.0)) continue;
      out += std::to_string(r) + "," + std::to_string(c) + "," + fmt_double(v.real()) + "," + fmt_double(v.imag()) + "\n";
    }
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError(path, "read failed");
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace drivenqed
