#include "doctest.h"

#include "drivenqed/analysis.hpp"
#include "drivenqed/states.hpp"

#include <cmath>
#include <random>

using namespace drivenqed;

namespace {

double binary_entropy(double p) { return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p); }

Ket random_ket(const HilbertLayout& L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  Vector v(L.dim());
  for (Index k = 0; k < L.dim(); ++k) v(k) = Complex(d(rng), d(rng));
  return Ket(L, v / v.norm());
}

DensityMatrix single_mode(const Vector& field) {
  const auto L = HilbertLayout({Subsystem::mode(static_cast<int>(field.size()) - 1)});
  return DensityMatrix::from_ket(Ket(L, field));
}

// Normalized harmonic-oscillator eigenfunction in the x quadrature.
double hermite_function(unsigned n, double x) {
  const double log_norm = -0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0) + 0.5 * std::log(M_PI));
  return std::exp(log_norm - 0.5 * x * x) * std::hermite(n, x);
}

}  // namespace

TEST_CASE("fidelity") {
  const auto L = make_layout(1, {3});
  const Ket a = product_state(L, {local::plus(), local::fock(3, 1)});
  const Ket b = product_state(L, {local::minus(), local::fock(3, 1)});
  CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fidelity(a, b) < 1e-30);
  const auto M = make_layout(0, {40});
  const Ket p = coherent(M, 0, Complex(1.0));
  const Ket m = coherent(M, 0, Complex(-1.0));
  CHECK(std::abs(fidelity(p, m) - std::exp(-4.0)) < 1e-12);
  CHECK_THROWS_AS(fidelity(a, p), std::invalid_argument);
}

TEST_CASE("partial trace") {
  const auto L = make_layout(1, {4});
  const Ket prod = product_state(L, {local::plus(), local::fock(4, 2)});
  const auto rho_a = partial_trace(prod, {0});
  CHECK(std::abs(rho_a.purity() - 1.0) < 1e-12);
  CHECK(rho_a.is_valid());

  const auto Q = make_layout(2, {1});
  Vector bell = Vector::Zero(Q.dim());
  bell(0 * 4 + 1 * 2 + 0) = bell(1 * 4 + 0 * 2 + 0) = 1.0 / std::sqrt(2.0);
  const auto r = partial_trace(Ket(Q, bell), {0});
  CHECK((r.entries - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(partial_trace(Ket(Q, bell), {}), std::invalid_argument);

  const auto rho = DensityMatrix::from_ket(random_ket(make_layout(2, {2}), 4));
  const auto two_step = partial_trace(partial_trace(rho, {0, 2}), {0});
  const auto direct = partial_trace(rho, {0});
  CHECK((two_step.entries - direct.entries).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("one-atom cat: atomic reduced state and entropy") {
  const auto L = make_layout(1, {40});
  DriveParams p;
  const Ket cat = target_cat1(p, L, 3.0);  // alpha = -1.5 i
  const auto rho = partial_trace(cat, {0});
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries);
  const double s = std::exp(-4.5);
  CHECK(std::abs(es.eigenvalues()(0) - (1.0 - s) / 2.0) < 1e-10);
  CHECK(std::abs(es.eigenvalues()(1) - (1.0 + s) / 2.0) < 1e-10);
  CHECK(std::abs(entropy(rho) - binary_entropy((1.0 + s) / 2.0)) < 1e-6);
}

TEST_CASE("entropy") {
  const auto L = make_layout(1, {3});
  CHECK(std::abs(entropy(DensityMatrix::from_ket(random_ket(L, 2)))) < 1e-9);
  const auto Q = HilbertLayout({Subsystem::qubit()});
  CHECK(std::abs(entropy(DensityMatrix(Q, 0.5 * Matrix::Identity(2, 2))) - std::log(2.0)) < 1e-12);
  Matrix tiny_negative = Matrix::Zero(2, 2);
  tiny_negative(0, 0) = 1.0 + 1e-11;
  tiny_negative(1, 1) = -1e-11;
  CHECK(std::abs(entropy(DensityMatrix(Q, tiny_negative))) < 1e-9);
}

TEST_CASE("entropy of complementary reductions agree") {
  const auto L = make_layout(2, {3, 2});
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const Ket psi = random_ket(L, seed);
    CHECK(std::abs(entropy(partial_trace(psi, {0, 2})) - entropy(partial_trace(psi, {1, 3}))) < 1e-8);
    CHECK(std::abs(entropy(partial_trace(psi, {0})) - entropy(partial_trace(psi, {1, 2, 3}))) < 1e-8);
  }
}

TEST_CASE("negativity") {
  const auto F = make_layout(0, {3, 3});
  const Ket prod = product_state(F, {local::fock(3, 0), local::fock(3, 1)});
  CHECK(std::abs(negativity(DensityMatrix::from_ket(prod), {1})) < 1e-10);
  const Ket bell = target_mode_bell(F);
  CHECK(std::abs(negativity(DensityMatrix::from_ket(bell), {1}) - 0.5) < 1e-12);

  const auto L = make_layout(1, {3, 3});
  const Ket p3 = product_state(L, {local::plus(), local::fock(3, 2), local::fock(3, 1)});
  const auto rho3 = DensityMatrix::from_ket(p3);
  CHECK(std::abs(negativity(rho3, {0})) < 1e-10);
  CHECK(std::abs(negativity(rho3, {1, 2})) < 1e-10);
  CHECK_THROWS_AS(negativity(rho3, {0, 1, 2}), std::invalid_argument);
}

TEST_CASE("negativity of an even entangled coherent state against a Gram-basis oracle") {
  const int c = 20;
  const auto F = make_layout(0, {c, c});
  const Vector a = coherent_amplitudes(c, Complex(1.0));
  const Vector m = coherent_amplitudes(c, Complex(-1.0));
  Vector v(F.dim());
  for (Index i = 0; i <= c; ++i)
    for (Index j = 0; j <= c; ++j) v(i * (c + 1) + j) = a(i) * a(j) + m(i) * m(j);
  const Ket ecs(F, v / v.norm());
  // |+-alpha> = c0|u0> +- c1|u1> in the orthonormal even/odd basis.
  const double s = std::exp(-2.0);
  const double c0sq = (1.0 + s) / 2.0, c1sq = (1.0 - s) / 2.0;
  const double l0 = c0sq * c0sq / (c0sq * c0sq + c1sq * c1sq);
  const double expected = std::sqrt(l0 * (1.0 - l0));
  const double n = negativity(DensityMatrix::from_ket(ecs), {1});
  CHECK(n > 0.0);
  CHECK(std::abs(n - expected) < 1e-9);
}

TEST_CASE("grid axis") {
  const auto pts = GridAxis{-1.0, 1.0, 0.5}.points();
  CHECK(pts.size() == 5);
  CHECK(pts.back() == doctest::Approx(1.0));
  CHECK_THROWS_AS(GridAxis({0.0, 1.0, 0.0}).points(), std::invalid_argument);
  CHECK_THROWS_AS(GridAxis({1.0, 0.0, 0.1}).points(), std::invalid_argument);
}

TEST_CASE("Wigner function of Fock states") {
  const int c = 12;
  for (unsigned n : {0u, 1u, 3u}) {
    const auto rho = single_mode(local::fock(c, static_cast<int>(n)));
    for (Complex beta : {Complex(0.0), Complex(0.4, -0.2), Complex(-1.1, 0.7)}) {
      const double r2 = std::norm(beta);
      const double sign = n % 2 ? -1.0 : 1.0;
      const double expected = 2.0 / M_PI * sign * std::exp(-2.0 * r2) * std::laguerre(n, 4.0 * r2);
      CHECK(std::abs(wigner_at(rho, beta) - expected) < 1e-12);
    }
  }
  CHECK(std::abs(wigner_at(single_mode(local::fock(c, 0)), Complex(0.0)) - 2.0 / M_PI) < 1e-12);
}

TEST_CASE("Wigner function of a coherent state is a translated vacuum") {
  const auto rho = single_mode(coherent_amplitudes(30, Complex(1.0)));
  const auto grid = wigner(rho, GridAxis{-1.0, 3.0, 0.05}, GridAxis{-2.0, 2.0, 0.05});
  Index r, cidx;
  grid.values.maxCoeff(&r, &cidx);
  CHECK(std::abs(grid.x[static_cast<std::size_t>(cidx)] - std::sqrt(2.0)) <= 0.05);
  CHECK(std::abs(grid.p[static_cast<std::size_t>(r)]) < 1e-12);
  CHECK(std::abs(wigner_at(rho, Complex(1.0)) - 2.0 / M_PI) < 1e-10);
}

TEST_CASE("Wigner function of an even cat") {
  const auto rho = single_mode(cat_amplitudes(40, Complex(2.0), Parity::Even));
  const GridAxis narrow{-4.0, 4.0, 0.1};
  const auto grid = wigner(rho, narrow, narrow);
  CHECK(grid.x.size() == 81);
  CHECK(grid.min() < -0.05);
  // The lobes sit at x = +-2 sqrt2, so this grid clips them.
  CHECK(grid.boundary_max() > 1e-4);

  const GridAxis wide{-6.0, 6.0, 0.15};
  const auto full = wigner(rho, wide, wide);
  CHECK(full.x.size() == 81);
  CHECK(full.boundary_max() < 1e-4);
  CHECK(full.min() < -0.05);
  CHECK(full.integral() >= 0.98);
  CHECK(full.integral() <= 1.02);
}

TEST_CASE("Wigner x marginal matches the position distribution") {
  const int c = 30;
  const Complex alpha(0.5, 0.3);
  const Vector psi = coherent_amplitudes(c, alpha);
  const auto rho = single_mode(psi);
  const GridAxis ax{-5.0, 5.0, 0.05};
  const auto grid = wigner(rho, ax, ax);
  const auto marginal = grid.x_marginal();
  for (std::size_t j = 0; j < grid.x.size(); j += 10) {
    Complex amp(0.0);
    for (int n = 0; n <= c; ++n) amp += psi(n) * hermite_function(static_cast<unsigned>(n), grid.x[j]);
    CHECK(std::abs(marginal[j] - std::norm(amp)) < 2e-3);
  }
}

TEST_CASE("Wigner requires a single mode") {
  const auto L = make_layout(1, {3});
  CHECK_THROWS_AS(wigner_at(DensityMatrix::from_ket(random_ket(L, 1)), Complex(0.0)), std::invalid_argument);
}

TEST_CASE("bare measurement of a basis state") {
  const auto L = make_layout(1, {3});
  const Ket g0 = product_state(L, {local::ground(), local::fock(3, 0)});
  const auto out = measure_qubit(g0, 0, MeasurementBasis::Bare);
  CHECK(out[0].label == "g");
  CHECK(out[1].label == "e");
  CHECK(out[0].probability == doctest::Approx(1.0));
  CHECK(out[1].probability < 1e-30);
  CHECK_FALSE(out[1].post_state.has_value());
  REQUIRE(out[0].remainder.has_value());
  CHECK(std::abs(out[0].remainder->amplitudes(0)) == doctest::Approx(1.0));
}

TEST_CASE("dressed measurement of the one-atom cat") {
  const auto L = make_layout(1, {40});
  DriveParams p;
  const Ket cat = target_cat1(p, L, 2.0);
  const auto out = measure_qubit(cat, 0, MeasurementBasis::Dressed);
  CHECK(out[0].label == "+");
  CHECK(out[1].label == "-");
  const Vector ap = coherent_amplitudes(40, Complex(0.0, -1.0));
  const Vector am = coherent_amplitudes(40, Complex(0.0, 1.0));
  for (int k = 0; k < 2; ++k) {
    CHECK(std::abs(out[k].probability - 0.5) < 1e-12);
    REQUIRE(out[k].remainder.has_value());
    CHECK(std::norm(out[k].remainder->amplitudes.dot(k == 0 ? ap : am)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("bare measurement in the drive-rotating picture yields even and odd cats") {
  const auto L = make_layout(1, {40});
  DriveParams p;
  p.omega_drive = 20.0;
  const double t = 2.0;
  const Ket s = change_picture(target_cat1(p, L, t), t, Picture::Interaction, Picture::DriveRotating, p);
  const auto out = measure_qubit(s, 0, MeasurementBasis::Bare);
  for (int k = 0; k < 2; ++k) {
    const Vector a = coherent_amplitudes(40, Complex(0.0, -1.0));
    const Vector b = coherent_amplitudes(40, Complex(0.0, 1.0));
    const Complex ph = std::exp(Complex(0.0, -20.0 * t));
    Vector direct = ph * a + (k == 0 ? 1.0 : -1.0) * std::conj(ph) * b;
    direct /= direct.norm();
    CHECK(std::norm(out[k].remainder->amplitudes.dot(direct)) >= 1.0 - 1e-8);
  }
}

TEST_CASE("measurement completeness") {
  const auto L = make_layout(2, {2});
  for (std::uint64_t seed : {3u, 8u}) {
    const Ket psi = random_ket(L, seed);
    for (auto basis : {MeasurementBasis::Bare, MeasurementBasis::Dressed}) {
      for (std::size_t atom : {0u, 1u}) {
        const auto out = measure_qubit(psi, atom, basis);
        CHECK(out[0].probability + out[1].probability == doctest::Approx(1.0).epsilon(1e-12));
        std::vector<std::size_t> rest;
        for (std::size_t s = 0; s < L.size(); ++s)
          if (s != atom) rest.push_back(s);
        const auto reduced = partial_trace(psi, rest);
        Matrix sum = Matrix::Zero(reduced.entries.rows(), reduced.entries.cols());
        for (const auto& o : out) {
          if (o.remainder) sum += o.probability * o.remainder->amplitudes * o.remainder->amplitudes.adjoint();
        }
        CHECK((sum - reduced.entries).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }
}

TEST_CASE("outcome sampling is seeded") {
  const auto L = make_layout(1, {1});
  const auto out = measure_qubit(random_ket(L, 5), 0, MeasurementBasis::Bare);
  CHECK(sample_outcome(out, 42) == sample_outcome(out, 42));
  int ones = 0;
  for (std::uint64_t s = 0; s < 200; ++s) ones += static_cast<int>(sample_outcome(out, s));
  CHECK(ones > 0);
  CHECK(ones < 200);
}

TEST_CASE("photon statistics") {
  const auto vac = photon_distribution(single_mode(local::fock(10, 0)));
  CHECK(vac[0] == doctest::Approx(1.0));
  for (std::size_t n = 1; n < vac.size(); ++n) CHECK(vac[n] == 0.0);

  const auto pois = photon_distribution(single_mode(coherent_amplitudes(40, Complex(1.0))));
  double fact = 1.0;
  for (std::size_t n = 0; n < 15; ++n) {
    if (n > 0) fact *= static_cast<double>(n);
    CHECK(std::abs(pois[n] - std::exp(-1.0) / fact) < 1e-8);
  }
  const auto even = photon_distribution(single_mode(cat_amplitudes(40, Complex(2.0), Parity::Even)));
  for (std::size_t n = 1; n < even.size(); n += 2) CHECK(std::abs(even[n]) < 1e-12);

  const auto L = make_layout(1, {40});
  CHECK(std::abs(mean_photon_number(coherent(L, 1, Complex(1.5)), 1) - 2.25) < 1e-8);
}
