// Acceptance suite: one PASS/FAIL line per criterion, with the measured values.

#include "drivenqed/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace drivenqed;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = seconds_since(t0);
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.str().c_str(), secs);
  std::fflush(stdout);
}

ProtocolConfig at_times(ProtocolConfig c, std::vector<double> times) {
  c.grid.sample_times = std::move(times);
  c.grid.t_end = c.grid.sample_times.back();
  return c;
}

Vector branch(const Ket& psi, const Vector& atom) {
  const Index field = psi.layout.field_only().dim();
  return std::conj(atom(0)) * psi.amplitudes.head(field) + std::conj(atom(1)) * psi.amplitudes.segment(field, field);
}

double population(const Ket& psi, const Ket& basis_state) { return fidelity(psi, basis_state); }

double phase_aligned_distance(const Ket& a, const Ket& b) {
  const Complex o = b.amplitudes.dot(a.amplitudes);
  const Complex ph = std::abs(o) > 0 ? o / std::abs(o) : Complex(1.0);
  return (a.amplitudes - ph * b.amplitudes).norm();
}

}  // namespace

int main() {
  criterion(1, "cat generation", [](Outcome& o) {
    const auto t0 = Clock::now();
    const auto r = run_protocol(default_config(ProtocolKind::Cat1));
    const double secs = seconds_since(t0);
    double worst = 1.0;
    for (const auto& row : r.metrics.rows) worst = std::min(worst, row[0]);
    o.require(1.0 - r.final_state.fidelity <= 1e-8, "1-F(gt=2) = " + fmt(1.0 - r.final_state.fidelity));
    o.require(1.0 - worst <= 1e-8, "max 1-F over trajectory = " + fmt(1.0 - worst));
    o.require(secs < 5.0, "runtime " + fmt(secs) + " s < 5 s");
  });

  criterion(2, "delta = 0 displacement", [](Outcome& o) {
    const double gt = 2.0;
    const auto c = at_times(default_config(ProtocolKind::Cat1), {gt});
    const auto r = run_protocol(c);
    const Ket& psi = r.states.back().state;
    const Vector plus = branch(psi, local::plus());
    const Matrix a = local::annihilation(c.cutoffs[0]);
    const Complex alpha = plus.dot(a * plus) / plus.squaredNorm();
    const Complex expected(0.0, -gt / 2.0);
    o.require(std::abs(alpha - expected) <= 1e-8,
              "alpha = " + fmt(alpha.real()) + " + " + fmt(alpha.imag()) + "i, |alpha + i gt/2| = " +
                  fmt(std::abs(alpha - expected)));
    const double n = r.final_state.photons[0];
    o.require(std::abs(n - gt * gt / 4.0) <= 1e-6, "<n> = " + fmt(n));
  });

  criterion(3, "RWA convergence", [](Outcome& o) {
    const auto t0 = Clock::now();
    const auto c = at_times(default_config(ProtocolKind::Cat1), {1.0});
    const double omegas[] = {50.0, 500.0};
    const auto inf = rwa_sweep(c, omegas, SweepMetric::Infidelity);
    const double secs = seconds_since(t0);
    const double ratio = inf[0].value / inf[1].value;
    o.require(ratio >= 3.0 && ratio <= 30.0, "infidelity " + fmt(inf[0].value) + " -> " + fmt(inf[1].value) +
                                                 ", ratio " + fmt(ratio) + " in [3, 30]");
    o.require(secs < 60.0, "runtime " + fmt(secs) + " s < 60 s");
    const auto dist = rwa_sweep(c, omegas, SweepMetric::StateDistance);
    o.detail << "; info: state-distance ratio " << fmt(dist[0].value / dist[1].value);
  });

  criterion(4, "JC / anti-JC switching", [](Outcome& o) {
    const auto L = make_layout(1, {20});
    DriveParams p;
    double worst = 0.0;
    for (int sign : {+1, -1}) {
      const Ket psi0 = product_state(L, {sign > 0 ? local::plus() : local::minus(), local::fock(20, 0)});
      const Ket goal = product_state(L, {sign > 0 ? local::minus() : local::plus(), local::fock(20, 1)});
      const StaticPropagator prop(build_dressed_jc(p, L, sign));
      for (double gt : {std::numbers::pi / 2, std::numbers::pi, 2 * std::numbers::pi}) {
        const double s = std::sin(gt / 2.0);
        worst = std::max(worst, std::abs(population(prop.apply(psi0, gt), goal) - s * s));
      }
    }
    o.require(worst <= 1e-9, "max |P - sin^2(gt/2)| = " + fmt(worst));
    for (ProtocolKind k : {ProtocolKind::JcRabi, ProtocolKind::AjcRabi}) {
      auto c = at_times(default_config(k), {std::numbers::pi});
      c.level = HamiltonianLevel::FullRotating;
      const auto r = run_protocol(c);
      const Ket& psi = r.states.back().state;
      const bool jc = k == ProtocolKind::JcRabi;
      const Ket goal = product_state(psi.layout, {jc ? local::minus() : local::plus(), local::fock(40, 1)});
      const double transfer = population(psi, goal);
      o.require(transfer >= 0.9, std::string(to_string(k)) + " full-model transfer at gt=pi = " + fmt(transfer));
    }
  });

  criterion(5, "mode-mode Bell state", [](Outcome& o) {
    const auto r = run_protocol(default_config(ProtocolKind::ModeBell));
    const auto& m = *r.final_state.measurement;
    o.require(1.0 - *m.fidelity_to_target <= 1e-8, "1-F = " + fmt(1.0 - *m.fidelity_to_target));
    const double n = negativity(DensityMatrix::from_ket(*m.state), {1});
    o.require(std::abs(n - 0.5) <= 1e-6, "negativity = " + fmt(n));
  });

  criterion(6, "two-atom triple cat", [](Outcome& o) {
    auto c = default_config(ProtocolKind::TripleCat);
    const auto r = run_protocol(c);
    const auto& m = *r.final_state.measurement;
    o.require(1.0 - *m.fidelity_to_target <= 1e-6, "1-F(gg) = " + fmt(1.0 - *m.fidelity_to_target));
    double total = 0.0;
    for (const char* a : {"g", "e"})
      for (const char* b : {"g", "e"}) {
        c.measurement = {{0, MeasurementBasis::Bare, a}, {1, MeasurementBasis::Bare, b}};
        total += post_select(c, evolve(c, c.level).back().state, c.grid.t_end).probability;
      }
    o.require(std::abs(total - 1.0) <= 1e-10, "sum of outcome probabilities - 1 = " + fmt(total - 1.0));
  });

  criterion(7, "entangled coherent states", [](Outcome& o) {
    auto c = default_config(ProtocolKind::TwoModeCat);
    const Ket final_state = evolve(c, c.level).back().state;
    for (const char* outcome : {"g", "e"}) {
      c.measurement = {{0, MeasurementBasis::Bare, outcome}};
      const auto m = post_select(c, final_state, c.grid.t_end);
      o.require(m.fidelity_to_target && 1.0 - *m.fidelity_to_target <= 1e-6,
                std::string(outcome) + ": 1-F = " + fmt(1.0 - m.fidelity_to_target.value_or(0.0)));
    }
  });

  criterion(8, "entanglement metrics", [](Outcome& o) {
    const auto r = run_protocol(at_times(default_config(ProtocolKind::Cat1), {3.0}));
    const double s = std::exp(-4.5);
    const double p = (1.0 + s) / 2.0;
    const double expected = -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
    o.require(std::abs(r.final_state.entropy - expected) <= 1e-6,
              "S(cat1, alpha=-1.5i) - H2 = " + fmt(r.final_state.entropy - expected));
    const auto bell = run_protocol(default_config(ProtocolKind::ModeBell));
    const double sb = entropy(partial_trace(*bell.final_state.measurement->state, {0}));
    o.require(std::abs(sb - std::log(2.0)) <= 1e-8, "S(Bell half) - ln2 = " + fmt(sb - std::log(2.0)));
  });

  criterion(9, "Wigner sanity", [](Outcome& o) {
    const auto t0 = Clock::now();
    const GridAxis ax{-4.0, 4.0, 0.1};
    const auto M = make_layout(0, {40});
    const auto vac = wigner(DensityMatrix::from_ket(product_state(M, {local::fock(40, 0)})), ax, ax);
    const double w00 = vac.values(40, 40);
    o.require(std::abs(w00 - 2.0 / std::numbers::pi) <= 1e-3, "vacuum W(0,0) = " + fmt(w00));
    o.require(vac.integral() >= 0.98 && vac.integral() <= 1.02, "vacuum integral = " + fmt(vac.integral()));
    const auto cat = DensityMatrix::from_ket(cat_state(M, 0, Complex(2.0), Parity::Even));
    const auto narrow = wigner(cat, ax, ax);
    o.require(narrow.min() < -0.05, "cat min on [-4,4]^2 = " + fmt(narrow.min()));
    const GridAxis wide{-6.0, 6.0, 0.15};
    const auto full = wigner(cat, wide, wide);
    o.require(full.integral() >= 0.98 && full.integral() <= 1.02,
              "cat integral on [-6,6]^2 (81x81) = " + fmt(full.integral()));
    const double secs = seconds_since(t0);
    o.require(secs < 30.0, "runtime " + fmt(secs) + " s < 30 s");
  });

  criterion(10, "numerical hygiene", [](Outcome& o) {
    const ProtocolKind all[] = {ProtocolKind::Cat1,       ProtocolKind::Cat2,         ProtocolKind::TripleCat,
                                ProtocolKind::JcRabi,     ProtocolKind::AjcRabi,      ProtocolKind::TwoModeCat,
                                ProtocolKind::EntangledCoherent, ProtocolKind::ModeBell};
    bool hermitian = true;
    double norm_dev = 0.0;
    for (ProtocolKind k : all) {
      auto c = default_config(k);
      c.params.lab = LabFrequencies{1000.0, 1000.0 + c.params.delta_a, 1000.0};
      for (double t : {0.0, 0.37, 1.9}) {
        for (auto l : {HamiltonianLevel::FullRotating, HamiltonianLevel::Interaction, approximate_level(k)}) {
          hermitian = hermitian && hamiltonian_at(c, l, t).is_hermitian(1e-12);
        }
        if (!is_two_mode(k)) hermitian = hermitian && lab_hamiltonian_at(c, t).is_hermitian(1e-12);
      }
      c.params.lab.reset();
      const auto r = run_protocol(c);
      for (const auto& s : r.states) norm_dev = std::max(norm_dev, std::abs(s.state.norm() - 1.0));
    }
    o.require(hermitian, "builders Hermitian at 1e-12");
    o.require(norm_dev <= 1e-8, "max norm deviation = " + fmt(norm_dev));

    const auto L = make_layout(1, {10});
    std::mt19937_64 rng(17);
    std::normal_distribution<double> d;
    Matrix h(L.dim(), L.dim());
    for (Index i = 0; i < L.dim(); ++i)
      for (Index j = 0; j < L.dim(); ++j) h(i, j) = Complex(d(rng), d(rng));
    h = (h + h.adjoint()).eval() / 2.0;
    const Matrix u = StaticPropagator(Operator(L, h)).unitary(3.3);
    const double unitarity = (u.adjoint() * u - Matrix::Identity(L.dim(), L.dim())).cwiseAbs().maxCoeff();
    o.require(unitarity <= 1e-9, "unitarity defect = " + fmt(unitarity));

    auto c = at_times(default_config(ProtocolKind::Cat1), {1.0});
    c.cutoffs = {12};
    c.params.omega_drive = 2.0;
    c.params.delta_a = 0.5;
    c.level = HamiltonianLevel::Interaction;
    const Ket exact = evolve(c, HamiltonianLevel::FullRotating).back().state;
    c.grid.dt = 0.002;
    const double d1 = phase_aligned_distance(evolve(c, c.level).back().state, exact);
    c.grid.dt = 0.001;
    const double d2 = phase_aligned_distance(evolve(c, c.level).back().state, exact);
    o.require(d1 / d2 >= 3.0, "defect " + fmt(d1) + " -> " + fmt(d2) + " on halving dt, ratio " + fmt(d1 / d2));

    const auto cfg = default_config(ProtocolKind::TripleCat);
    const std::string j1 = result_to_json(run_protocol(cfg)).dump();
    const std::string j2 = result_to_json(run_protocol(cfg)).dump();
    o.require(j1 == j2, "repeated JSON byte-identical");
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
