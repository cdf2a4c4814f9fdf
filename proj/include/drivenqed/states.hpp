#pragma once

// Initial states and the closed-form states the strong-driving protocols
// predict. Interaction-picture targets unless stated otherwise.

#include "drivenqed/evolution.hpp"
#include "drivenqed/hamiltonians.hpp"
#include "drivenqed/hilbert.hpp"

#include <optional>
#include <vector>

namespace drivenqed {

// |alpha|^2 + 6|alpha| + 10 <= cutoff.
bool tail_guard_ok(Complex alpha, int cutoff);

// Fock amplitudes e^{-|a|^2/2} a^n / sqrt(n!) for n <= cutoff, renormalized.
// Throws GuardError when the tail guard fails.
Vector coherent_amplitudes(int cutoff, Complex alpha);

enum class Parity { Even, Odd };

// N(|alpha> +- |-alpha>). Throws std::invalid_argument for an odd cat at alpha = 0.
Vector cat_amplitudes(int cutoff, Complex alpha, Parity parity);

// The listed mode carries the state; every other subsystem is in |g> or |0>.
Ket coherent(const HilbertLayout& layout, std::size_t mode_subsystem, Complex alpha);
Ket cat_state(const HilbertLayout& layout, std::size_t mode_subsystem, Complex alpha, Parity parity);

// Displacement generated by (g/2)(a e^{-i delta t} + h.c.) from the vacuum:
// -g (e^{i delta t} - 1) / (2 delta), which tends to -i g t / 2 as delta -> 0.
Complex drive_displacement(double g, double delta, double t);

// (|+>|alpha> + |->|-alpha>)/sqrt(2); N = 1, one mode.
Ket target_cat1(const DriveParams& params, const HilbertLayout& layout, double t);

// Field left after measuring the atom of target_cat1 in the bare basis, in a
// Schroedinger picture (drive-rotating or lab):
//   N(e^{-i Omega t}|alpha_S> +- e^{i Omega t}|-alpha_S>), + for |g>, - for |e>.
Ket target_cat1_conditional(const DriveParams& params, const HilbertLayout& field_layout, double t, bool excited,
                            Picture picture = Picture::DriveRotating);

struct AtomicEigenstate {
  Vector state;  // two-qubit vector in the (|g>, |e>)^{(x)2} basis
  double eigenvalue = 0.0;
};

// Eigenstates of sigma_x (x) I + I (x) sigma_x in the order
// |++> (+2), |--> (-2), |+-> (0), |-+> (0).
std::vector<AtomicEigenstate> two_atom_sx_eigenstates();

// (1/2)[|phi1>|2a> + |phi2>|-2a> + (|phi3> + |phi4>)|0>]; N = 2, one mode, delta = 0.
Ket target_cat2(const DriveParams& params, const HilbertLayout& layout, double t);

// N(e^{-2i Omega t}|2a_S> + e^{2i Omega t}|-2a_S> + 2|0>) on a single-mode field layout.
Ket target_triple_cat(const DriveParams& params, const HilbertLayout& field_layout, double t,
                      Picture picture = Picture::DriveRotating);

// (|+>|a>|b> + |->|-a>|-b>)/sqrt(2); N = 1, two modes.
Ket target_two_mode_cat(const DriveParams& params, const HilbertLayout& layout, double t);

// N(e^{-i Omega t}|a_S>|b_S> +- e^{i Omega t}|-a_S>|-b_S>) on a two-mode field
// layout. Empty when the branches cancel (sign = -1 with a = b = 0).
std::optional<Ket> target_entangled_coherent(const DriveParams& params, const HilbertLayout& field_layout, double t,
                                             int sign, Picture picture = Picture::DriveRotating);

// (|0,1> + |1,0>)/sqrt(2) on a two-mode field layout.
Ket target_mode_bell(const HilbertLayout& field_layout);

// Rabi oscillation of a dressed JC (sign = +1, |+,0> -> |-,1>) or anti-JC
// (sign = -1, |-,0> -> |+,1>) with coupling constant `coupling`:
//   cos(c t/2)|initial> - i sin(c t/2)|final>.
Ket target_dressed_rabi(const HilbertLayout& layout, double coupling, double t, int sign);

// Two-mode dressed JC from |+,0,0>:
//   cos(g t/sqrt2)|+,0,0> - i sin(g t/sqrt2)|->(|0,1> + |1,0>)/sqrt2.
Ket target_two_mode_rabi(const HilbertLayout& layout, double g, double t);

}  // namespace drivenqed
