#pragma once

// Reduced states, entanglement measures, phase-space functions and
// projective measurement.
//
// Quadratures: x = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2), so that a
// coherent amplitude beta sits at (x, p) = sqrt2 (Re beta, Im beta).

#include "drivenqed/hilbert.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace drivenqed {

struct DensityMatrix {
  HilbertLayout layout;
  Matrix entries;

  DensityMatrix() = default;
  DensityMatrix(HilbertLayout layout, Matrix entries);
  static DensityMatrix from_ket(const Ket& psi);

  double trace() const { return entries.trace().real(); }
  double purity() const { return (entries * entries).trace().real(); }
  // Hermitian, unit trace, eigenvalues >= -tol.
  bool is_valid(double tol = 1e-10) const;
};

// |<psi|phi>|^2.
double fidelity(const Ket& psi, const Ket& phi);

DensityMatrix partial_trace(const Ket& psi, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
inline DensityMatrix partial_trace(const Ket& psi, std::initializer_list<std::size_t> keep) {
  std::vector<std::size_t> k(keep);
  return partial_trace(psi, std::span<const std::size_t>(k));
}
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
  std::vector<std::size_t> k(keep);
  return partial_trace(rho, std::span<const std::size_t>(k));
}

// von Neumann entropy in nats; eigenvalues in [-1e-10, 1e-12) count as zero.
double entropy(const DensityMatrix& rho);

// (||rho^{T_B}||_1 - 1)/2 with B = `part_b`, A = the remaining subsystems.
double negativity(const DensityMatrix& rho, std::span<const std::size_t> part_b);
inline double negativity(const DensityMatrix& rho, std::initializer_list<std::size_t> part_b) {
  std::vector<std::size_t> b(part_b);
  return negativity(rho, std::span<const std::size_t>(b));
}

struct GridAxis {
  double lo = -4.0;
  double hi = 4.0;
  double step = 0.1;

  // Throws std::invalid_argument for a non-positive step or hi < lo.
  std::vector<double> points() const;
};

struct WignerGrid {
  std::vector<double> x;
  std::vector<double> p;
  Eigen::MatrixXd values;  // values(i, j) = W(x[j], p[i])

  // Sum of W over the grid with the phase-space measure d^2 beta = dx dp / 2.
  double integral() const;
  // Position-quadrature density integral W dp / 2 at each x.
  std::vector<double> x_marginal() const;
  double min() const { return values.minCoeff(); }
  double max() const { return values.maxCoeff(); }
  // Largest |W| on the grid boundary.
  double boundary_max() const;
};

// W(beta) = (2/pi) Tr[rho D(beta) Pi D(beta)^dag] for a single-mode rho.
double wigner_at(const DensityMatrix& rho, Complex beta);
WignerGrid wigner(const DensityMatrix& rho, const GridAxis& x_axis, const GridAxis& p_axis);

enum class MeasurementBasis { Bare, Dressed };

struct MeasurementOutcome {
  std::string label;  // "g"/"e" or "+"/"-"
  double probability = 0.0;
  std::optional<Ket> post_state;  // full layout, normalized; empty if probability is zero
  std::optional<Ket> remainder;   // the other subsystems after the projection
};

// Both outcomes of a projective measurement of one qubit.
std::array<MeasurementOutcome, 2> measure_qubit(const Ket& psi, std::size_t atom_subsystem, MeasurementBasis basis);
// Draws an outcome index with the given seed.
std::size_t sample_outcome(const std::array<MeasurementOutcome, 2>& outcomes, std::uint64_t seed);

std::vector<double> photon_distribution(const DensityMatrix& rho);
double mean_photon_number(const Ket& psi, std::size_t mode_subsystem);

}  // namespace drivenqed
