#include "drivenqed/states.hpp"

#include "drivenqed/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace drivenqed {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

const Subsystem& single_mode_of(const HilbertLayout& layout) { return layout[layout.mode_subsystem(0)]; }

Vector superpose(const Vector& a, Complex ca, const Vector& b, Complex cb) { return ca * a + cb * b; }

// Schroedinger-picture displacement of a branch: a e^{-i delta t}, and an
// extra e^{-i omega_L t} in the lab frame.
Complex schroedinger_amplitude(Complex alpha, double delta, double t, const DriveParams& params, Picture picture) {
  if (picture == Picture::Interaction) throw std::invalid_argument("measured targets live in a Schroedinger picture");
  Complex out = alpha * std::exp(Complex(0.0, -delta * t));
  if (picture == Picture::Lab) {
    if (!params.lab) throw std::invalid_argument("lab picture needs lab frequencies");
    out *= std::exp(Complex(0.0, -params.lab->omega_laser * t));
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

bool tail_guard_ok(Complex alpha, int cutoff) {
  const double r = std::abs(alpha);
  return r * r + 6.0 * r + 10.0 <= static_cast<double>(cutoff);
}

Vector coherent_amplitudes(int cutoff, Complex alpha) {
  if (!tail_guard_ok(alpha, cutoff)) {
    std::ostringstream msg;
    msg << "cutoff " << cutoff << " too small for |alpha| = " << std::abs(alpha) << " (need |alpha|^2 + 6|alpha| + 10 <= cutoff)";
    throw GuardError(msg.str());
  }
  Vector c(cutoff + 1);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return c / c.norm();
}

Vector cat_amplitudes(int cutoff, Complex alpha, Parity parity) {
  if (parity == Parity::Odd && alpha == Complex(0.0)) throw std::invalid_argument("odd cat at alpha = 0 is the zero vector");
  const Vector plus = coherent_amplitudes(cutoff, alpha);
  const Vector minus = coherent_amplitudes(cutoff, -alpha);
  Vector v = parity == Parity::Even ? Vector(plus + minus) : Vector(plus - minus);
  return v / v.norm();
}

namespace {

Ket embed_mode_state(const HilbertLayout& layout, std::size_t mode_subsystem, const Vector& mode_state) {
  if (!layout[mode_subsystem].is_mode()) throw std::invalid_argument("subsystem is not a mode");
  std::vector<Vector> factors;
  for (std::size_t s = 0; s < layout.size(); ++s) {
    if (s == mode_subsystem) {
      factors.push_back(mode_state);
    } else {
      factors.push_back(layout[s].is_qubit() ? local::ground() : local::fock(layout[s].cutoff, 0));
    }
  }
  return product_state(layout, factors);
}

}  // namespace

Ket coherent(const HilbertLayout& layout, std::size_t mode_subsystem, Complex alpha) {
  return embed_mode_state(layout, mode_subsystem, coherent_amplitudes(layout[mode_subsystem].cutoff, alpha));
}

Ket cat_state(const HilbertLayout& layout, std::size_t mode_subsystem, Complex alpha, Parity parity) {
  return embed_mode_state(layout, mode_subsystem, cat_amplitudes(layout[mode_subsystem].cutoff, alpha, parity));
}

Complex drive_displacement(double g, double delta, double t) {
  if (std::abs(delta * t) < 1e-8) {
    // Series of -g (e^{ix} - 1)/(2 delta) with x = delta t.
    const double x = delta * t;
    return -0.5 * g * t * Complex(-0.5 * x, 1.0 - x * x / 6.0);
  }
  return -g * (std::exp(Complex(0.0, delta * t)) - 1.0) / (2.0 * delta);
}

Ket target_cat1(const DriveParams& params, const HilbertLayout& layout, double t) {
  require(layout.n_atoms() == 1 && layout.n_modes() == 1, "target_cat1 needs one atom and one mode");
  const int cutoff = single_mode_of(layout).cutoff;
  const Complex alpha = drive_displacement(params.g_a, params.delta_a, t);
  const Vector v = superpose(kron(local::plus(), coherent_amplitudes(cutoff, alpha)), 1.0,
                             kron(local::minus(), coherent_amplitudes(cutoff, -alpha)), 1.0);
  return Ket(layout, v / v.norm());
}

Ket target_cat1_conditional(const DriveParams& params, const HilbertLayout& field_layout, double t, bool excited,
                            Picture picture) {
  require(field_layout.size() == 1 && field_layout[0].is_mode(), "conditional cat lives on a single-mode field");
  const int cutoff = field_layout[0].cutoff;
  const Complex alpha = schroedinger_amplitude(drive_displacement(params.g_a, params.delta_a, t), params.delta_a, t,
                                               params, picture);
  const Complex phase = std::exp(Complex(0.0, -params.omega_drive * t));
  const Vector v = superpose(coherent_amplitudes(cutoff, alpha), phase, coherent_amplitudes(cutoff, -alpha),
                             excited ? -std::conj(phase) : std::conj(phase));
  const double n = v.norm();
  if (!(n > 1e-10)) throw GuardError("conditional cat branches cancel");
  return Ket(field_layout, v / n);
}

std::vector<AtomicEigenstate> two_atom_sx_eigenstates() {
  const Vector p = local::plus();
  const Vector m = local::minus();
  return {{kron(p, p), 2.0}, {kron(m, m), -2.0}, {kron(p, m), 0.0}, {kron(m, p), 0.0}};
}

Ket target_cat2(const DriveParams& params, const HilbertLayout& layout, double t) {
  require(layout.n_atoms() == 2 && layout.n_modes() == 1, "target_cat2 needs two atoms and one mode");
  require(params.delta_a == 0.0, "target_cat2 needs delta = 0");
  const int cutoff = single_mode_of(layout).cutoff;
  const Complex alpha = drive_displacement(params.g_a, 0.0, t);
  const auto phi = two_atom_sx_eigenstates();
  const Vector v = 0.5 * (kron(phi[0].state, coherent_amplitudes(cutoff, 2.0 * alpha)) +
                          kron(phi[1].state, coherent_amplitudes(cutoff, -2.0 * alpha)) +
                          kron(phi[2].state + phi[3].state, local::fock(cutoff, 0)));
  return Ket(layout, v / v.norm());
}

Ket target_triple_cat(const DriveParams& params, const HilbertLayout& field_layout, double t, Picture picture) {
  require(field_layout.size() == 1 && field_layout[0].is_mode(), "triple cat lives on a single-mode field");
  require(params.n_atoms == 2, "triple cat needs two atoms");
  require(params.delta_a == 0.0, "triple cat needs delta = 0");
  const int cutoff = field_layout[0].cutoff;
  const Complex alpha = schroedinger_amplitude(drive_displacement(params.g_a, 0.0, t), 0.0, t, params, picture);
  const Complex phase = std::exp(Complex(0.0, -2.0 * params.omega_drive * t));
  const Vector v = phase * coherent_amplitudes(cutoff, 2.0 * alpha) +
                   std::conj(phase) * coherent_amplitudes(cutoff, -2.0 * alpha) + 2.0 * local::fock(cutoff, 0);
  return Ket(field_layout, v / v.norm());
}

Ket target_two_mode_cat(const DriveParams& params, const HilbertLayout& layout, double t) {
  require(layout.n_atoms() == 1 && layout.n_modes() == 2, "target_two_mode_cat needs one atom and two modes");
  require(params.g_b && params.delta_b, "target_two_mode_cat needs g_b and delta_b");
  const int ca = layout[layout.mode_subsystem(0)].cutoff;
  const int cb = layout[layout.mode_subsystem(1)].cutoff;
  const Complex alpha = drive_displacement(params.g_a, params.delta_a, t);
  const Complex beta = drive_displacement(*params.g_b, *params.delta_b, t);
  const Vector v = kron(local::plus(), kron(coherent_amplitudes(ca, alpha), coherent_amplitudes(cb, beta))) +
                   kron(local::minus(), kron(coherent_amplitudes(ca, -alpha), coherent_amplitudes(cb, -beta)));
  return Ket(layout, v / v.norm());
}

std::optional<Ket> target_entangled_coherent(const DriveParams& params, const HilbertLayout& field_layout, double t,
                                             int sign, Picture picture) {
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  require(field_layout.size() == 2 && field_layout[0].is_mode() && field_layout[1].is_mode(),
          "entangled coherent state lives on a two-mode field");
  require(params.g_b && params.delta_b, "entangled coherent state needs g_b and delta_b");
  const int ca = field_layout[0].cutoff;
  const int cb = field_layout[1].cutoff;
  const Complex alpha = schroedinger_amplitude(drive_displacement(params.g_a, params.delta_a, t), params.delta_a, t,
                                               params, picture);
  const Complex beta = schroedinger_amplitude(drive_displacement(*params.g_b, *params.delta_b, t), *params.delta_b,
                                              t, params, picture);
  const Complex phase = std::exp(Complex(0.0, -params.omega_drive * t));
  const Vector v = phase * kron(coherent_amplitudes(ca, alpha), coherent_amplitudes(cb, beta)) +
                   static_cast<double>(sign) * std::conj(phase) *
                       kron(coherent_amplitudes(ca, -alpha), coherent_amplitudes(cb, -beta));
  const double n = v.norm();
  if (!(n > 1e-10)) return std::nullopt;
  return Ket(field_layout, v / n);
}

Ket target_mode_bell(const HilbertLayout& field_layout) {
  require(field_layout.size() == 2 && field_layout[0].is_mode() && field_layout[1].is_mode(),
          "Bell state lives on a two-mode field");
  const int ca = field_layout[0].cutoff;
  const int cb = field_layout[1].cutoff;
  const Vector v = kron(local::fock(ca, 0), local::fock(cb, 1)) + kron(local::fock(ca, 1), local::fock(cb, 0));
  return Ket(field_layout, v / v.norm());
}

Ket target_dressed_rabi(const HilbertLayout& layout, double coupling, double t, int sign) {
  require(layout.n_atoms() == 1 && layout.n_modes() == 1, "dressed Rabi target needs one atom and one mode");
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  const int cutoff = single_mode_of(layout).cutoff;
  const Vector initial_atom = sign > 0 ? local::plus() : local::minus();
  const Vector final_atom = sign > 0 ? local::minus() : local::plus();
  const double x = 0.5 * coupling * t;
  const Vector v = std::cos(x) * kron(initial_atom, local::fock(cutoff, 0)) +
                   Complex(0.0, -std::sin(x)) * kron(final_atom, local::fock(cutoff, 1));
  return Ket(layout, v);
}

Ket target_two_mode_rabi(const HilbertLayout& layout, double g, double t) {
  require(layout.n_atoms() == 1 && layout.n_modes() == 2, "two-mode Rabi target needs one atom and two modes");
  const int ca = layout[layout.mode_subsystem(0)].cutoff;
  const int cb = layout[layout.mode_subsystem(1)].cutoff;
  const Vector vac = kron(local::fock(ca, 0), local::fock(cb, 0));
  const Vector bell = target_mode_bell(layout.field_only()).amplitudes;
  const double x = g * t / std::sqrt(2.0);
  const Vector v = std::cos(x) * kron(local::plus(), vac) + Complex(0.0, -std::sin(x)) * kron(local::minus(), bell);
  return Ket(layout, v);
}

}  // namespace drivenqed
