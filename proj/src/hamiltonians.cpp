#include "drivenqed/hamiltonians.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace drivenqed {

namespace {

bool finite(double x) { return std::isfinite(x); }

void require_single_mode(const HilbertLayout& layout, const char* what) {
  if (layout.n_modes() != 1) throw std::invalid_argument(std::string(what) + " needs a single-mode layout");
}

void require_two_mode(const HilbertLayout& layout, const char* what) {
  if (layout.n_modes() != 2) throw std::invalid_argument(std::string(what) + " needs a two-mode layout");
}

void require_zero_atom_detuning(const DriveParams& p, const char* what) {
  if (p.delta_atom != 0.0) {
    throw std::invalid_argument(std::string(what) + " is only defined for delta_atom = 0");
  }
}

// sum_j local_j over all atoms.
Matrix sum_over_atoms(const HilbertLayout& layout, const Matrix& local_qubit) {
  Matrix out = Matrix::Zero(layout.dim(), layout.dim());
  for (int j = 0; j < layout.n_atoms(); ++j) out += embed(layout, layout.atom_subsystem(j), local_qubit).matrix;
  return out;
}

// sum_j local_j (x) mode_op on mode subsystem `mode`.
Matrix sum_atom_mode(const HilbertLayout& layout, const Matrix& local_qubit, std::size_t mode,
                     const Matrix& mode_op) {
  Matrix out = Matrix::Zero(layout.dim(), layout.dim());
  for (int j = 0; j < layout.n_atoms(); ++j) {
    out += embed(layout, {LocalFactor{layout.atom_subsystem(j), local_qubit}, LocalFactor{mode, mode_op}}).matrix;
  }
  return out;
}

Matrix number_op(const HilbertLayout& layout, std::size_t mode) {
  const Matrix a = local::annihilation(layout[mode].cutoff);
  return embed(layout, mode, a.adjoint() * a).matrix;
}

// g sum_j (sigma^dag_j a + sigma_j a^dag) on one mode.
Matrix jc_coupling(const HilbertLayout& layout, std::size_t mode, double g) {
  const Matrix a = local::annihilation(layout[mode].cutoff);
  return g * (sum_atom_mode(layout, local::sigma_plus(), mode, a) +
              sum_atom_mode(layout, local::sigma_minus(), mode, a.adjoint()));
}

// Harmonics of e^{iH_o t} g sum_j (sigma^dag_j a + h.c.) e^{-iH_o t} for one mode.
void append_interaction_harmonics(const HilbertLayout& layout, std::size_t mode, double g, double delta,
                                  double omega, std::vector<Harmonic>& out) {
  const Matrix a = local::annihilation(layout[mode].cutoff);
  out.push_back({0.5 * g * sum_atom_mode(layout, local::sigma_x(), mode, a), delta});
  out.push_back({0.5 * g * sum_atom_mode(layout, local::dyad_plus_minus(), mode, a), delta - 2.0 * omega});
  out.push_back({-0.5 * g * sum_atom_mode(layout, local::dyad_minus_plus(), mode, a), delta + 2.0 * omega});
}

void append_effective_harmonic(const HilbertLayout& layout, std::size_t mode, double g, double delta,
                               std::vector<Harmonic>& out) {
  const Matrix a = local::annihilation(layout[mode].cutoff);
  out.push_back({0.5 * g * sum_atom_mode(layout, local::sigma_x(), mode, a), delta});
}

Matrix dressed_jc_on_mode(const HilbertLayout& layout, std::size_t mode, double g, int sign) {
  const Matrix a = local::annihilation(layout[mode].cutoff);
  const Matrix lower = sign > 0 ? local::dyad_plus_minus() : local::dyad_minus_plus();
  const Matrix raise = sign > 0 ? local::dyad_minus_plus() : local::dyad_plus_minus();
  return 0.5 * g * (sum_atom_mode(layout, lower, mode, a) + sum_atom_mode(layout, raise, mode, a.adjoint()));
}

void require_sign(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1, got " + std::to_string(sign));
}

}  // namespace

void DriveParams::validate(const HilbertLayout& layout) const {
  if (n_atoms != layout.n_atoms()) {
    throw std::invalid_argument("n_atoms = " + std::to_string(n_atoms) + " but layout has " +
                                std::to_string(layout.n_atoms()) + " atoms");
  }
  const int modes = layout.n_modes();
  if (modes < 1 || modes > 2) throw std::invalid_argument("layout must have one or two modes");
  if (g_b.has_value() != (modes == 2)) throw std::invalid_argument("g_b must be given iff the layout has two modes");
  if (delta_b.has_value() != g_b.has_value()) throw std::invalid_argument("delta_b must be given iff g_b is");
  if (!finite(g_a) || g_a < 0.0) throw std::invalid_argument("g_a must be finite and >= 0");
  if (g_b && (!finite(*g_b) || *g_b < 0.0)) throw std::invalid_argument("g_b must be finite and >= 0");
  if (!finite(omega_drive) || omega_drive < 0.0) throw std::invalid_argument("omega_drive must be finite and >= 0");
  if (!finite(delta_atom) || !finite(delta_a) || (delta_b && !finite(*delta_b))) {
    throw std::invalid_argument("detunings must be finite");
  }
  if (lab && (!finite(lab->omega_atom) || !finite(lab->omega_mode) || !finite(lab->omega_laser))) {
    throw std::invalid_argument("lab frequencies must be finite");
  }
}

TimeDependentOperator::TimeDependentOperator(HilbertLayout layout, Matrix constant, std::vector<Harmonic> harmonics)
    : layout_(std::move(layout)), constant_(std::move(constant)) {
  if (constant_.rows() != layout_.dim() || constant_.cols() != layout_.dim()) {
    throw std::invalid_argument("constant part does not match layout");
  }
  for (auto& h : harmonics) {
    if (h.coefficient.rows() != layout_.dim() || h.coefficient.cols() != layout_.dim()) {
      throw std::invalid_argument("harmonic does not match layout");
    }
    if (h.frequency == 0.0) {
      constant_ += h.coefficient + h.coefficient.adjoint();
      continue;
    }
    bool merged = false;
    for (auto& existing : harmonics_) {
      if (existing.frequency == h.frequency) {
        existing.coefficient += h.coefficient;
        merged = true;
        break;
      }
    }
    if (!merged) harmonics_.push_back(std::move(h));
  }
  for (const auto& h : harmonics_) max_frequency_ = std::max(max_frequency_, std::abs(h.frequency));
}

Operator TimeDependentOperator::evaluate(double t) const {
  Matrix m = constant_;
  for (const auto& h : harmonics_) {
    const Complex phase = std::exp(Complex(0.0, -h.frequency * t));
    m += phase * h.coefficient;
    m += std::conj(phase) * h.coefficient.adjoint();
  }
  return {layout_, std::move(m)};
}

TimeDependentOperator build_lab_frame(const DriveParams& params, const HilbertLayout& layout) {
  require_single_mode(layout, "build_lab_frame");
  if (!params.lab) throw std::invalid_argument("build_lab_frame needs lab frequencies");
  params.validate(layout);
  const auto& f = *params.lab;
  const std::size_t mode = layout.mode_subsystem(0);
  Matrix constant = f.omega_atom * sum_over_atoms(layout, local::sigma_plus() * local::sigma_minus()) +
                    f.omega_mode * number_op(layout, mode) + jc_coupling(layout, mode, params.g_a);
  std::vector<Harmonic> drive{{params.omega_drive * sum_over_atoms(layout, local::sigma_plus()), f.omega_laser}};
  return TimeDependentOperator(layout, std::move(constant), std::move(drive));
}

Operator build_rotating_frame(const DriveParams& params, const HilbertLayout& layout) {
  require_single_mode(layout, "build_rotating_frame");
  params.validate(layout);
  const std::size_t mode = layout.mode_subsystem(0);
  Matrix h = params.delta_atom * sum_over_atoms(layout, local::sigma_plus() * local::sigma_minus()) +
             params.delta_a * number_op(layout, mode) + params.omega_drive * sum_over_atoms(layout, local::sigma_x()) +
             jc_coupling(layout, mode, params.g_a);
  return {layout, std::move(h)};
}

TimeDependentOperator build_interaction_picture(const DriveParams& params, const HilbertLayout& layout) {
  require_single_mode(layout, "build_interaction_picture");
  require_zero_atom_detuning(params, "build_interaction_picture");
  params.validate(layout);
  std::vector<Harmonic> terms;
  append_interaction_harmonics(layout, layout.mode_subsystem(0), params.g_a, params.delta_a, params.omega_drive,
                               terms);
  return TimeDependentOperator(layout, Matrix::Zero(layout.dim(), layout.dim()), std::move(terms));
}

TimeDependentOperator build_effective(const DriveParams& params, const HilbertLayout& layout) {
  require_single_mode(layout, "build_effective");
  params.validate(layout);
  std::vector<Harmonic> terms;
  append_effective_harmonic(layout, layout.mode_subsystem(0), params.g_a, params.delta_a, terms);
  return TimeDependentOperator(layout, Matrix::Zero(layout.dim(), layout.dim()), std::move(terms));
}

Operator build_dressed_jc(const DriveParams& params, const HilbertLayout& layout, int sign) {
  require_sign(sign);
  require_single_mode(layout, "build_dressed_jc");
  params.validate(layout);
  return {layout, dressed_jc_on_mode(layout, layout.mode_subsystem(0), params.g_a, sign)};
}

Operator build_two_mode_rotating(const DriveParams& params, const HilbertLayout& layout) {
  require_two_mode(layout, "build_two_mode_rotating");
  require_zero_atom_detuning(params, "build_two_mode_rotating");
  params.validate(layout);
  const std::size_t ma = layout.mode_subsystem(0);
  const std::size_t mb = layout.mode_subsystem(1);
  Matrix h = params.delta_a * number_op(layout, ma) + *params.delta_b * number_op(layout, mb) +
             params.omega_drive * sum_over_atoms(layout, local::sigma_x()) + jc_coupling(layout, ma, params.g_a) +
             jc_coupling(layout, mb, *params.g_b);
  return {layout, std::move(h)};
}

TimeDependentOperator build_two_mode_interaction(const DriveParams& params, const HilbertLayout& layout) {
  require_two_mode(layout, "build_two_mode_interaction");
  require_zero_atom_detuning(params, "build_two_mode_interaction");
  params.validate(layout);
  std::vector<Harmonic> terms;
  append_interaction_harmonics(layout, layout.mode_subsystem(0), params.g_a, params.delta_a, params.omega_drive,
                               terms);
  append_interaction_harmonics(layout, layout.mode_subsystem(1), *params.g_b, *params.delta_b, params.omega_drive,
                               terms);
  return TimeDependentOperator(layout, Matrix::Zero(layout.dim(), layout.dim()), std::move(terms));
}

TimeDependentOperator build_two_mode_effective(const DriveParams& params, const HilbertLayout& layout) {
  require_two_mode(layout, "build_two_mode_effective");
  params.validate(layout);
  std::vector<Harmonic> terms;
  append_effective_harmonic(layout, layout.mode_subsystem(0), params.g_a, params.delta_a, terms);
  append_effective_harmonic(layout, layout.mode_subsystem(1), *params.g_b, *params.delta_b, terms);
  return TimeDependentOperator(layout, Matrix::Zero(layout.dim(), layout.dim()), std::move(terms));
}

Operator build_two_mode_dressed_jc(const DriveParams& params, const HilbertLayout& layout, int sign) {
  require_sign(sign);
  require_two_mode(layout, "build_two_mode_dressed_jc");
  params.validate(layout);
  if (params.g_a != *params.g_b) throw std::invalid_argument("two-mode dressed JC needs g_a == g_b");
  Matrix h = dressed_jc_on_mode(layout, layout.mode_subsystem(0), params.g_a, sign) +
             dressed_jc_on_mode(layout, layout.mode_subsystem(1), params.g_a, sign);
  return {layout, std::move(h)};
}

Operator build_free_part(const DriveParams& params, const HilbertLayout& layout) {
  params.validate(layout);
  Matrix h = params.omega_drive * sum_over_atoms(layout, local::sigma_x()) +
             params.delta_a * number_op(layout, layout.mode_subsystem(0));
  if (layout.n_modes() == 2) h += *params.delta_b * number_op(layout, layout.mode_subsystem(1));
  return {layout, std::move(h)};
}

Eigen::VectorXd free_part_spectrum(const DriveParams& params, const HilbertLayout& layout) {
  params.validate(layout);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(layout.dim());
  for (Index flat = 0; flat < layout.dim(); ++flat) {
    double energy = 0.0;
    int mode_seen = 0;
    for (std::size_t s = 0; s < layout.size(); ++s) {
      const Index level = layout.digit(flat, s);
      if (layout[s].is_qubit()) {
        energy += level == 0 ? params.omega_drive : -params.omega_drive;
      } else {
        const double delta = mode_seen++ == 0 ? params.delta_a : *params.delta_b;
        energy += delta * static_cast<double>(level);
      }
    }
    e(flat) = energy;
  }
  return e;
}

}  // namespace drivenqed
