#include "drivenqed/analysis.hpp"

#include "drivenqed/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace drivenqed {

namespace {

// Flat-index contribution of the subsystems selected by `mask`, re-encoded
// in the restricted layout's strides.
struct SplitIndex {
  std::vector<Index> kept;  // index in the kept layout
  std::vector<Index> rest;  // index in the complement layout
  Index kept_dim = 1;
  Index rest_dim = 1;
};

SplitIndex split(const HilbertLayout& layout, const std::vector<bool>& keep_mask) {
  SplitIndex s;
  std::vector<Index> kept_stride(layout.size(), 0);
  std::vector<Index> rest_stride(layout.size(), 0);
  for (std::size_t i = layout.size(); i-- > 0;) {
    if (keep_mask[i]) {
      kept_stride[i] = s.kept_dim;
      s.kept_dim *= layout.local_dim(i);
    } else {
      rest_stride[i] = s.rest_dim;
      s.rest_dim *= layout.local_dim(i);
    }
  }
  s.kept.resize(static_cast<std::size_t>(layout.dim()));
  s.rest.resize(static_cast<std::size_t>(layout.dim()));
  for (Index flat = 0; flat < layout.dim(); ++flat) {
    Index k = 0;
    Index r = 0;
    for (std::size_t i = 0; i < layout.size(); ++i) {
      const Index d = layout.digit(flat, i);
      if (keep_mask[i]) {
        k += d * kept_stride[i];
      } else {
        r += d * rest_stride[i];
      }
    }
    s.kept[static_cast<std::size_t>(flat)] = k;
    s.rest[static_cast<std::size_t>(flat)] = r;
  }
  return s;
}

std::vector<bool> mask_of(const HilbertLayout& layout, std::span<const std::size_t> keep) {
  if (keep.empty()) throw std::invalid_argument("keep set must be non-empty");
  std::vector<bool> mask(layout.size(), false);
  for (auto k : keep) {
    if (k >= layout.size()) throw std::invalid_argument("subsystem index " + std::to_string(k) + " out of range");
    mask[k] = true;
  }
  return mask;
}

std::vector<std::size_t> indices_of(const std::vector<bool>& mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(i);
  }
  return out;
}

void require_single_mode(const DensityMatrix& rho, const char* what) {
  if (rho.layout.size() != 1 || !rho.layout[0].is_mode()) {
    throw std::invalid_argument(std::string(what) + " needs a single-mode state");
  }
}

}  // namespace

DensityMatrix::DensityMatrix(HilbertLayout layout_, Matrix entries_)
    : layout(std::move(layout_)), entries(std::move(entries_)) {
  if (entries.rows() != layout.dim() || entries.cols() != layout.dim()) {
    throw std::invalid_argument("density matrix shape does not match layout");
  }
}

DensityMatrix DensityMatrix::from_ket(const Ket& psi) {
  return {psi.layout, psi.amplitudes * psi.amplitudes.adjoint()};
}

bool DensityMatrix::is_valid(double tol) const {
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(trace() - 1.0) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

double fidelity(const Ket& psi, const Ket& phi) {
  if (!(psi.layout == phi.layout)) throw std::invalid_argument("fidelity: layouts differ");
  return std::norm(psi.amplitudes.dot(phi.amplitudes));
}

DensityMatrix partial_trace(const Ket& psi, std::span<const std::size_t> keep) {
  const auto mask = mask_of(psi.layout, keep);
  const auto s = split(psi.layout, mask);
  Matrix m = Matrix::Zero(s.kept_dim, s.rest_dim);
  for (Index flat = 0; flat < psi.layout.dim(); ++flat) {
    m(s.kept[static_cast<std::size_t>(flat)], s.rest[static_cast<std::size_t>(flat)]) = psi.amplitudes(flat);
  }
  const auto kept = indices_of(mask);
  return {psi.layout.restricted(kept), m * m.adjoint()};
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const auto mask = mask_of(rho.layout, keep);
  const auto s = split(rho.layout, mask);
  // flat index of (kept, rest)
  std::vector<Index> flat_of(static_cast<std::size_t>(s.kept_dim * s.rest_dim));
  for (Index flat = 0; flat < rho.layout.dim(); ++flat) {
    const auto f = static_cast<std::size_t>(flat);
    flat_of[static_cast<std::size_t>(s.kept[f] * s.rest_dim + s.rest[f])] = flat;
  }
  Matrix out = Matrix::Zero(s.kept_dim, s.kept_dim);
  for (Index i = 0; i < s.kept_dim; ++i) {
    for (Index j = 0; j < s.kept_dim; ++j) {
      Complex acc = 0.0;
      for (Index r = 0; r < s.rest_dim; ++r) {
        acc += rho.entries(flat_of[static_cast<std::size_t>(i * s.rest_dim + r)],
                           flat_of[static_cast<std::size_t>(j * s.rest_dim + r)]);
      }
      out(i, j) = acc;
    }
  }
  const auto kept = indices_of(mask);
  return {rho.layout.restricted(kept), std::move(out)};
}

double entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.entries, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Index k = 0; k < solver.eigenvalues().size(); ++k) {
    double lambda = solver.eigenvalues()(k);
    if (lambda < 0.0 && lambda >= -1e-10) lambda = 0.0;
    if (lambda < 1e-12) continue;
    s -= lambda * std::log(lambda);
  }
  return s;
}

double negativity(const DensityMatrix& rho, std::span<const std::size_t> part_b) {
  const auto mask_b = mask_of(rho.layout, part_b);
  std::size_t count_b = 0;
  for (bool b : mask_b) count_b += b ? 1 : 0;
  if (count_b == rho.layout.size()) throw std::invalid_argument("bipartition leaves part A empty");

  // flat = a_part + b_part with each part a sum of digit * stride.
  const Index dim = rho.layout.dim();
  std::vector<Index> a_part(static_cast<std::size_t>(dim), 0);
  std::vector<Index> b_part(static_cast<std::size_t>(dim), 0);
  for (Index flat = 0; flat < dim; ++flat) {
    for (std::size_t i = 0; i < rho.layout.size(); ++i) {
      const Index contrib = rho.layout.digit(flat, i) * rho.layout.stride(i);
      (mask_b[i] ? b_part : a_part)[static_cast<std::size_t>(flat)] += contrib;
    }
  }
  Matrix pt(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      const auto ru = static_cast<std::size_t>(r);
      const auto cu = static_cast<std::size_t>(c);
      pt(r, c) = rho.entries(a_part[ru] + b_part[cu], a_part[cu] + b_part[ru]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(pt, Eigen::EigenvaluesOnly);
  const double trace_norm = solver.eigenvalues().cwiseAbs().sum();
  return std::max(0.0, 0.5 * (trace_norm - 1.0));
}

std::vector<double> GridAxis::points() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("grid step must be positive");
  if (!(hi >= lo)) throw std::invalid_argument("grid upper bound must be >= lower bound");
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) out.push_back(lo + static_cast<double>(k) * step);
  return out;
}

double WignerGrid::integral() const {
  if (x.size() < 2 || p.size() < 2) return 0.0;
  const double dx = x[1] - x[0];
  const double dp = p[1] - p[0];
  return values.sum() * dx * dp / 2.0;
}

std::vector<double> WignerGrid::x_marginal() const {
  std::vector<double> out(x.size(), 0.0);
  if (p.size() < 2) return out;
  const double dp = p[1] - p[0];
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = values.col(static_cast<Index>(j)).sum() * dp / 2.0;
  return out;
}

double WignerGrid::boundary_max() const {
  const Index r = values.rows();
  const Index c = values.cols();
  if (r == 0 || c == 0) return 0.0;
  double m = 0.0;
  m = std::max(m, values.row(0).cwiseAbs().maxCoeff());
  m = std::max(m, values.row(r - 1).cwiseAbs().maxCoeff());
  m = std::max(m, values.col(0).cwiseAbs().maxCoeff());
  m = std::max(m, values.col(c - 1).cwiseAbs().maxCoeff());
  return m;
}

double wigner_at(const DensityMatrix& rho, Complex beta) {
  require_single_mode(rho, "wigner");
  const Index dim = rho.layout.dim();
  // D(beta) Pi D(beta)^dag = D(2 beta) Pi; columns v_m = D(2 beta)|m> built from
  // D|m> = (a^dag - gamma*) D|m-1> / sqrt(m), exact in the truncated space.
  const Complex gamma = 2.0 * beta;
  Matrix columns(dim, dim);
  columns(0, 0) = std::exp(-0.5 * std::norm(gamma));
  for (Index n = 1; n < dim; ++n) columns(n, 0) = columns(n - 1, 0) * gamma / std::sqrt(static_cast<double>(n));
  for (Index m = 1; m < dim; ++m) {
    const double inv = 1.0 / std::sqrt(static_cast<double>(m));
    for (Index n = 0; n < dim; ++n) {
      const Complex raised = n > 0 ? std::sqrt(static_cast<double>(n)) * columns(n - 1, m - 1) : Complex(0.0);
      columns(n, m) = inv * (raised - std::conj(gamma) * columns(n, m - 1));
    }
  }
  Complex acc = 0.0;
  for (Index m = 0; m < dim; ++m) {
    Complex col = 0.0;
    for (Index n = 0; n < dim; ++n) col += rho.entries(m, n) * columns(n, m);
    acc += (m % 2 == 0 ? 1.0 : -1.0) * col;
  }
  return 2.0 / std::numbers::pi * acc.real();
}

WignerGrid wigner(const DensityMatrix& rho, const GridAxis& x_axis, const GridAxis& p_axis) {
  require_single_mode(rho, "wigner");
  WignerGrid grid;
  grid.x = x_axis.points();
  grid.p = p_axis.points();
  grid.values.resize(static_cast<Index>(grid.p.size()), static_cast<Index>(grid.x.size()));
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < grid.p.size(); ++i) {
    for (std::size_t j = 0; j < grid.x.size(); ++j) {
      grid.values(static_cast<Index>(i), static_cast<Index>(j)) = wigner_at(rho, Complex(r * grid.x[j], r * grid.p[i]));
    }
  }
  return grid;
}

std::array<MeasurementOutcome, 2> measure_qubit(const Ket& psi, std::size_t atom_subsystem, MeasurementBasis basis) {
  const HilbertLayout& layout = psi.layout;
  if (atom_subsystem >= layout.size() || !layout[atom_subsystem].is_qubit()) {
    throw std::invalid_argument("measure_qubit: subsystem " + std::to_string(atom_subsystem) + " is not a qubit");
  }
  const bool dressed = basis == MeasurementBasis::Dressed;
  const std::array<Vector, 2> projectors = dressed ? std::array<Vector, 2>{local::plus(), local::minus()}
                                                   : std::array<Vector, 2>{local::ground(), local::excited()};
  const std::array<std::string, 2> labels = dressed ? std::array<std::string, 2>{"+", "-"}
                                                    : std::array<std::string, 2>{"g", "e"};

  std::vector<bool> rest_mask(layout.size(), true);
  rest_mask[atom_subsystem] = false;
  const bool has_rest = layout.size() > 1;
  const auto s = split(layout, rest_mask);
  std::optional<HilbertLayout> rest_layout;
  if (has_rest) rest_layout = layout.restricted(indices_of(rest_mask));

  std::array<MeasurementOutcome, 2> out;
  for (std::size_t k = 0; k < 2; ++k) {
    const Vector& u = projectors[k];
    Vector reduced = Vector::Zero(s.kept_dim);  // kept = complement of the measured qubit
    for (Index flat = 0; flat < layout.dim(); ++flat) {
      const Index d = layout.digit(flat, atom_subsystem);
      reduced(s.kept[static_cast<std::size_t>(flat)]) += std::conj(u(d)) * psi.amplitudes(flat);
    }
    out[k].label = labels[k];
    out[k].probability = reduced.squaredNorm();
    if (out[k].probability < 1e-14) continue;
    const Vector rem = reduced / std::sqrt(out[k].probability);
    Vector post(layout.dim());
    for (Index flat = 0; flat < layout.dim(); ++flat) {
      post(flat) = u(layout.digit(flat, atom_subsystem)) * rem(s.kept[static_cast<std::size_t>(flat)]);
    }
    out[k].post_state = Ket(layout, std::move(post));
    if (rest_layout) out[k].remainder = Ket(*rest_layout, rem);
  }
  return out;
}

std::size_t sample_outcome(const std::array<MeasurementOutcome, 2>& outcomes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> dist({outcomes[0].probability, outcomes[1].probability});
  return dist(rng);
}

std::vector<double> photon_distribution(const DensityMatrix& rho) {
  require_single_mode(rho, "photon_distribution");
  std::vector<double> out(static_cast<std::size_t>(rho.layout.dim()));
  for (Index n = 0; n < rho.layout.dim(); ++n) out[static_cast<std::size_t>(n)] = rho.entries(n, n).real();
  return out;
}

double mean_photon_number(const Ket& psi, std::size_t mode_subsystem) {
  if (!psi.layout[mode_subsystem].is_mode()) throw std::invalid_argument("subsystem is not a mode");
  double n = 0.0;
  for (Index flat = 0; flat < psi.layout.dim(); ++flat) {
    n += std::norm(psi.amplitudes(flat)) * static_cast<double>(psi.layout.digit(flat, mode_subsystem));
  }
  return n;
}

}  // namespace drivenqed
