#pragma once

// Exact and stepped time evolution, and changes of picture.

#include "drivenqed/hamiltonians.hpp"
#include "drivenqed/hilbert.hpp"

#include <string_view>
#include <vector>

namespace drivenqed {

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  double dt = 0.01;
  std::vector<double> sample_times;

  // n_samples evenly spaced points including both ends (n_samples >= 1).
  static TimeGrid uniform(double t_start, double t_end, double dt, int n_samples);
  // Structural checks (dt > 0, sorted non-empty samples inside the window).
  void validate() const;
  // Step-size rule dt <= 0.01 / max_frequency; throws GuardError.
  void check_step(double max_frequency) const;
};

struct TimedKet {
  double t = 0.0;
  Ket state;
};

// Diagonalizes a Hermitian operator once; applies e^{-iHt} for any t.
class StaticPropagator {
 public:
  explicit StaticPropagator(const Operator& hamiltonian);

  Ket apply(const Ket& psi, double t) const;
  Matrix unitary(double t) const;
  const Eigen::VectorXd& energies() const { return energies_; }

 private:
  HilbertLayout layout_;
  Eigen::VectorXd energies_;
  Matrix vectors_;
};

// e^{-iHt}|psi0> by Hermitian eigendecomposition. Throws std::invalid_argument
// for a non-Hermitian H.
Ket propagate_static(const Operator& hamiltonian, const Ket& psi0, double t);

// Midpoint-exponential stepping, psi <- exp(-i H(t + h/2) h) psi, landing
// exactly on every sample time. Returns one state per sample time.
std::vector<TimedKet> propagate_timedep(const TimeDependentOperator& hamiltonian, const Ket& psi0,
                                        const TimeGrid& grid);

// exp(-i H h) v by a Taylor series summed to machine precision.
Vector expm_action(const Matrix& hamiltonian, double h, const Vector& v);

enum class Picture { Interaction, DriveRotating, Lab };

std::string_view to_string(Picture p);
// Throws std::invalid_argument for unknown names.
Picture picture_from_string(std::string_view name);

// Interaction <-> drive-rotating uses the free part delta n + Omega sum sigma_x
// (requires delta_atom = 0); drive-rotating <-> lab rotates by
// omega_laser (sum sigma^dag sigma + sum n) and needs lab frequencies.
Ket change_picture(const Ket& psi, double t, Picture from, Picture to, const DriveParams& params);

// Applies the single-qubit Hadamard to every qubit (bare <-> dressed coordinates).
Vector to_dressed_coordinates(const HilbertLayout& layout, const Vector& v);

}  // namespace drivenqed
