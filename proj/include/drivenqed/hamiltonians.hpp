#pragma once

// Hamiltonians of N driven two-level atoms coupled to one or two cavity
// modes. hbar = 1; all energies and times are dimensionless (units of g).

#include "drivenqed/hilbert.hpp"

#include <optional>
#include <vector>

namespace drivenqed {

struct LabFrequencies {
  double omega_atom = 0.0;   // atomic transition
  double omega_mode = 0.0;   // cavity mode
  double omega_laser = 0.0;  // classical drive
};

struct DriveParams {
  int n_atoms = 1;
  double g_a = 1.0;  // vacuum Rabi coupling of mode a (the only mode in single-mode use)
  std::optional<double> g_b;
  double omega_drive = 0.0;  // classical drive coupling
  double delta_atom = 0.0;   // atom - laser detuning
  double delta_a = 0.0;      // mode a - laser detuning
  std::optional<double> delta_b;
  std::optional<LabFrequencies> lab;

  bool two_mode() const { return g_b.has_value(); }
  // Throws std::invalid_argument if inconsistent with `layout`.
  void validate(const HilbertLayout& layout) const;
};

// H(t) = constant + sum_k (coefficient_k e^{-i f_k t} + h.c.).
struct Harmonic {
  Matrix coefficient;
  double frequency = 0.0;
};

class TimeDependentOperator {
 public:
  TimeDependentOperator(HilbertLayout layout, Matrix constant, std::vector<Harmonic> harmonics = {});

  const HilbertLayout& layout() const { return layout_; }
  Operator evaluate(double t) const;
  // Largest |f_k| among the harmonics; 0 for a constant operator.
  double max_frequency() const { return max_frequency_; }
  bool is_constant() const { return harmonics_.empty(); }

 private:
  HilbertLayout layout_;
  Matrix constant_;
  std::vector<Harmonic> harmonics_;
  double max_frequency_ = 0.0;
};

// Lab frame; needs params.lab and one mode.
TimeDependentOperator build_lab_frame(const DriveParams& params, const HilbertLayout& layout);
// Frame rotating at the laser frequency (time independent).
Operator build_rotating_frame(const DriveParams& params, const HilbertLayout& layout);
// Interaction picture with respect to delta a^dag a + Omega sum sigma_x; requires delta_atom = 0.
TimeDependentOperator build_interaction_picture(const DriveParams& params, const HilbertLayout& layout);
// Strong-driving limit: (g/2) sum_j (sigma_x)_j (a e^{-i delta t} + h.c.).
TimeDependentOperator build_effective(const DriveParams& params, const HilbertLayout& layout);
// Dressed-basis JC (sign = +1) or anti-JC (sign = -1) interaction.
Operator build_dressed_jc(const DriveParams& params, const HilbertLayout& layout, int sign);

Operator build_two_mode_rotating(const DriveParams& params, const HilbertLayout& layout);
TimeDependentOperator build_two_mode_interaction(const DriveParams& params, const HilbertLayout& layout);
TimeDependentOperator build_two_mode_effective(const DriveParams& params, const HilbertLayout& layout);
// Requires g_a == g_b.
Operator build_two_mode_dressed_jc(const DriveParams& params, const HilbertLayout& layout, int sign);

// The free part delta_a n_a (+ delta_b n_b) + Omega sum sigma_x that defines the
// interaction picture. It is diagonal in the dressed (x) Fock basis.
Operator build_free_part(const DriveParams& params, const HilbertLayout& layout);
// Eigenvalues of build_free_part ordered like the flat index of the
// dressed (x) Fock basis (qubit digit 0 = |+>, 1 = |->).
Eigen::VectorXd free_part_spectrum(const DriveParams& params, const HilbertLayout& layout);

}  // namespace drivenqed
