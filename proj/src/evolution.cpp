#include "drivenqed/evolution.hpp"

#include "drivenqed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace drivenqed {

TimeGrid TimeGrid::uniform(double t_start, double t_end, double dt, int n_samples) {
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
  TimeGrid g{t_start, t_end, dt, {}};
  if (n_samples == 1) {
    g.sample_times = {t_end};
  } else {
    for (int k = 0; k < n_samples; ++k) {
      g.sample_times.push_back(k == n_samples - 1 ? t_end
                                                  : t_start + (t_end - t_start) * k / (n_samples - 1));
    }
  }
  g.validate();
  return g;
}

void TimeGrid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(t_end >= t_start)) throw std::invalid_argument("t_end must be >= t_start");
  if (sample_times.empty()) throw std::invalid_argument("sample_times must be non-empty");
  if (!std::is_sorted(sample_times.begin(), sample_times.end())) {
    throw std::invalid_argument("sample_times must be sorted");
  }
  if (sample_times.front() < t_start || sample_times.back() > t_end) {
    throw std::invalid_argument("sample_times must lie inside [t_start, t_end]");
  }
}

void TimeGrid::check_step(double max_frequency) const {
  if (max_frequency > 0.0 && dt > 0.01 / max_frequency * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds 0.01/omega_max = " << 0.01 / max_frequency;
    throw GuardError(msg.str());
  }
}

StaticPropagator::StaticPropagator(const Operator& hamiltonian) : layout_(hamiltonian.layout) {
  if (!hamiltonian.is_hermitian(1e-12)) throw std::invalid_argument("propagator needs a Hermitian operator");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian.matrix);
  if (solver.info() != Eigen::Success) throw GuardError("eigendecomposition failed");
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Ket StaticPropagator::apply(const Ket& psi, double t) const {
  if (!(psi.layout == layout_)) throw std::invalid_argument("ket layout does not match propagator");
  Vector coeffs = vectors_.adjoint() * psi.amplitudes;
  for (Index k = 0; k < coeffs.size(); ++k) coeffs(k) *= std::exp(Complex(0.0, -energies_(k) * t));
  return Ket(layout_, vectors_ * coeffs);
}

Matrix StaticPropagator::unitary(double t) const {
  Vector phases(energies_.size());
  for (Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(Complex(0.0, -energies_(k) * t));
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

Ket propagate_static(const Operator& hamiltonian, const Ket& psi0, double t) {
  return StaticPropagator(hamiltonian).apply(psi0, t);
}

Vector expm_action(const Matrix& hamiltonian, double h, const Vector& v) {
  const double scale = hamiltonian.cwiseAbs().colwise().sum().maxCoeff() * std::abs(h);
  const int substeps = std::max(1, static_cast<int>(std::ceil(scale / 0.5)));
  const Complex factor(0.0, -h / substeps);
  Vector out = v;
  for (int s = 0; s < substeps; ++s) {
    Vector term = out;
    Vector sum = out;
    const double ref = out.norm();
    for (int k = 1; k <= 60; ++k) {
      term = (factor / static_cast<double>(k)) * (hamiltonian * term);
      sum += term;
      if (term.norm() <= 1e-17 * ref) break;
    }
    out = std::move(sum);
  }
  return out;
}

std::vector<TimedKet> propagate_timedep(const TimeDependentOperator& hamiltonian, const Ket& psi0,
                                        const TimeGrid& grid) {
  grid.validate();
  if (!(psi0.layout == hamiltonian.layout())) throw std::invalid_argument("ket layout does not match operator");
  grid.check_step(hamiltonian.max_frequency());

  std::vector<TimedKet> out;
  out.reserve(grid.sample_times.size());
  if (hamiltonian.is_constant()) {
    const StaticPropagator prop(hamiltonian.evaluate(0.0));
    for (double ts : grid.sample_times) out.push_back({ts, prop.apply(psi0, ts - grid.t_start)});
    return out;
  }

  Vector psi = psi0.amplitudes;
  double t = grid.t_start;
  for (double ts : grid.sample_times) {
    const double span = ts - t;
    if (span > 0.0) {
      const auto steps = static_cast<long>(std::ceil(span / grid.dt * (1.0 - 1e-12)));
      const double h = span / static_cast<double>(steps);
      for (long k = 0; k < steps; ++k) {
        const double mid = t + (static_cast<double>(k) + 0.5) * h;
        psi = expm_action(hamiltonian.evaluate(mid).matrix, h, psi);
      }
      t = ts;
    }
    out.push_back({ts, Ket(psi0.layout, psi)});
  }
  return out;
}

std::string_view to_string(Picture p) {
  switch (p) {
    case Picture::Interaction:
      return "interaction";
    case Picture::DriveRotating:
      return "drive-rotating";
    case Picture::Lab:
      return "lab";
  }
  return "?";
}

Picture picture_from_string(std::string_view name) {
  if (name == "interaction") return Picture::Interaction;
  if (name == "drive-rotating") return Picture::DriveRotating;
  if (name == "lab") return Picture::Lab;
  throw std::invalid_argument("unknown picture '" + std::string(name) + "'");
}

Vector to_dressed_coordinates(const HilbertLayout& layout, const Vector& v) {
  const double r = 1.0 / std::sqrt(2.0);
  Vector out = v;
  for (std::size_t s = 0; s < layout.size(); ++s) {
    if (!layout[s].is_qubit()) continue;
    const Index stride = layout.stride(s);
    for (Index outer = 0; outer < layout.dim(); outer += 2 * stride) {
      for (Index inner = 0; inner < stride; ++inner) {
        const Index i0 = outer + inner;
        const Index i1 = i0 + stride;
        const Complex x0 = out(i0);
        const Complex x1 = out(i1);
        out(i0) = r * (x0 + x1);
        out(i1) = r * (x0 - x1);
      }
    }
  }
  return out;
}

namespace {

// e^{sign * i H_o t} psi with H_o diagonal in dressed (x) Fock coordinates.
Vector rotate_free_part(const Ket& psi, double t, double sign, const DriveParams& params) {
  if (params.delta_atom != 0.0) {
    throw std::invalid_argument("interaction picture is only defined for delta_atom = 0");
  }
  const Eigen::VectorXd energies = free_part_spectrum(params, psi.layout);
  Vector d = to_dressed_coordinates(psi.layout, psi.amplitudes);
  for (Index k = 0; k < d.size(); ++k) d(k) *= std::exp(Complex(0.0, sign * energies(k) * t));
  return to_dressed_coordinates(psi.layout, d);
}

// e^{sign * i omega_L t (sum sigma^dag sigma + sum n)} psi, diagonal in the bare basis.
Vector rotate_laser_frame(const Ket& psi, double t, double sign, const DriveParams& params) {
  if (!params.lab) throw std::invalid_argument("lab picture needs lab frequencies");
  const double wl = params.lab->omega_laser;
  const HilbertLayout& layout = psi.layout;
  Vector out = psi.amplitudes;
  for (Index flat = 0; flat < layout.dim(); ++flat) {
    double quanta = 0.0;
    for (std::size_t s = 0; s < layout.size(); ++s) quanta += static_cast<double>(layout.digit(flat, s));
    out(flat) *= std::exp(Complex(0.0, sign * wl * quanta * t));
  }
  return out;
}

}  // namespace

Ket change_picture(const Ket& psi, double t, Picture from, Picture to, const DriveParams& params) {
  if (from == to) return psi;
  Ket current = psi;
  // Route through the drive-rotating frame.
  if (from == Picture::Interaction) {
    current = Ket(psi.layout, rotate_free_part(current, t, -1.0, params));
  } else if (from == Picture::Lab) {
    current = Ket(psi.layout, rotate_laser_frame(current, t, +1.0, params));
  }
  if (to == Picture::Interaction) {
    current = Ket(psi.layout, rotate_free_part(current, t, +1.0, params));
  } else if (to == Picture::Lab) {
    current = Ket(psi.layout, rotate_laser_frame(current, t, -1.0, params));
  }
  return current;
}

}  // namespace drivenqed
