#include "drivenqed/hilbert.hpp"

#include "drivenqed/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace drivenqed {

HilbertLayout::HilbertLayout(std::vector<Subsystem> subsystems) : subsystems_(std::move(subsystems)) {
  if (subsystems_.empty()) throw std::invalid_argument("layout needs at least one subsystem");
  for (const auto& s : subsystems_) {
    if (s.is_mode() && s.cutoff < 1) {
      throw std::invalid_argument("mode cutoff must be >= 1, got " + std::to_string(s.cutoff));
    }
  }
  strides_.assign(subsystems_.size(), 1);
  dim_ = 1;
  for (std::size_t i = subsystems_.size(); i-- > 0;) {
    strides_[i] = dim_;
    dim_ *= subsystems_[i].dim();
  }
}

int HilbertLayout::n_atoms() const {
  int n = 0;
  for (const auto& s : subsystems_) n += s.is_qubit() ? 1 : 0;
  return n;
}

int HilbertLayout::n_modes() const { return static_cast<int>(subsystems_.size()) - n_atoms(); }

std::size_t HilbertLayout::mode_subsystem(int k) const {
  int seen = 0;
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (subsystems_[i].is_mode() && seen++ == k) return i;
  }
  throw std::invalid_argument("layout has no mode #" + std::to_string(k));
}

std::size_t HilbertLayout::atom_subsystem(int k) const {
  int seen = 0;
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (subsystems_[i].is_qubit() && seen++ == k) return i;
  }
  throw std::invalid_argument("layout has no atom #" + std::to_string(k));
}

HilbertLayout HilbertLayout::restricted(std::span<const std::size_t> keep) const {
  std::vector<Subsystem> out;
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    for (auto k : keep) {
      if (k == i) {
        out.push_back(subsystems_[i]);
        break;
      }
    }
  }
  return HilbertLayout(std::move(out));
}

HilbertLayout HilbertLayout::field_only() const {
  std::vector<Subsystem> out;
  for (const auto& s : subsystems_) {
    if (s.is_mode()) out.push_back(s);
  }
  return HilbertLayout(std::move(out));
}

HilbertLayout make_layout(int n_atoms, std::span<const int> mode_cutoffs) {
  if (n_atoms < 0) throw std::invalid_argument("n_atoms must be >= 0");
  std::vector<Subsystem> subs(static_cast<std::size_t>(n_atoms), Subsystem::qubit());
  for (int c : mode_cutoffs) subs.push_back(Subsystem::mode(c));
  return HilbertLayout(std::move(subs));
}

Ket::Ket(HilbertLayout layout_, Vector amplitudes_)
    : layout(std::move(layout_)), amplitudes(std::move(amplitudes_)) {
  if (amplitudes.size() != layout.dim()) {
    throw std::invalid_argument("ket length " + std::to_string(amplitudes.size()) + " != layout dim " +
                                std::to_string(layout.dim()));
  }
  normalized = std::abs(amplitudes.norm() - 1.0) < 1e-9;
}

Ket Ket::normalized_copy() const {
  const double n = amplitudes.norm();
  if (!(n > 1e-300)) throw GuardError("cannot normalize a zero vector");
  return Ket(layout, amplitudes / n);
}

Operator::Operator(HilbertLayout layout_, Matrix matrix_) : layout(std::move(layout_)), matrix(std::move(matrix_)) {
  if (matrix.rows() != layout.dim() || matrix.cols() != layout.dim()) {
    throw std::invalid_argument("operator shape does not match layout dim " + std::to_string(layout.dim()));
  }
}

Operator Operator::zero(const HilbertLayout& layout) { return {layout, Matrix::Zero(layout.dim(), layout.dim())}; }

Operator Operator::identity(const HilbertLayout& layout) {
  return {layout, Matrix::Identity(layout.dim(), layout.dim())};
}

bool Operator::is_hermitian(double rel_tol) const {
  const double scale = matrix.cwiseAbs().maxCoeff();
  const double defect = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  return defect <= rel_tol * (scale > 0 ? scale : 1.0);
}

Ket Operator::apply(const Ket& psi) const {
  if (!(psi.layout == layout)) throw std::invalid_argument("operator and ket layouts differ");
  return Ket(layout, matrix * psi.amplitudes);
}

Operator& Operator::operator+=(const Operator& o) {
  if (!(o.layout == layout)) throw std::invalid_argument("operator layouts differ");
  matrix += o.matrix;
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  if (!(o.layout == layout)) throw std::invalid_argument("operator layouts differ");
  matrix -= o.matrix;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  matrix *= s;
  return *this;
}

Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
Operator operator*(Complex s, Operator op) { return op *= s; }

Operator operator*(const Operator& lhs, const Operator& rhs) {
  if (!(lhs.layout == rhs.layout)) throw std::invalid_argument("operator layouts differ");
  return {lhs.layout, lhs.matrix * rhs.matrix};
}

Operator commutator(const Operator& lhs, const Operator& rhs) { return lhs * rhs - rhs * lhs; }

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

}  // namespace

Operator embed(const HilbertLayout& layout, std::span<const LocalFactor> factors) {
  std::vector<const Matrix*> slot(layout.size(), nullptr);
  for (const auto& f : factors) {
    if (f.subsystem >= layout.size()) throw std::invalid_argument("subsystem index out of range");
    if (slot[f.subsystem] != nullptr) throw std::invalid_argument("two factors on one subsystem");
    const Index d = layout.local_dim(f.subsystem);
    if (f.matrix.rows() != d || f.matrix.cols() != d) {
      throw std::invalid_argument("local operator dimension does not match subsystem " +
                                  std::to_string(f.subsystem));
    }
    slot[f.subsystem] = &f.matrix;
  }
  Matrix out = Matrix::Identity(1, 1);
  Index pending_identity = 1;
  auto flush = [&] {
    if (pending_identity > 1) out = kron(out, Matrix::Identity(pending_identity, pending_identity));
    pending_identity = 1;
  };
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (slot[i] == nullptr) {
      pending_identity *= layout.local_dim(i);
      continue;
    }
    flush();
    out = kron(out, *slot[i]);
  }
  flush();
  return {layout, std::move(out)};
}

Operator embed(const HilbertLayout& layout, std::size_t which, const Matrix& local) {
  return embed(layout, {LocalFactor{which, local}});
}

BosonOps boson_ops(const HilbertLayout& layout, std::size_t subsystem) {
  const auto& s = layout[subsystem];
  if (!s.is_mode()) throw std::invalid_argument("subsystem " + std::to_string(subsystem) + " is a qubit, not a mode");
  const Matrix a = local::annihilation(s.cutoff);
  return {embed(layout, subsystem, a), embed(layout, subsystem, a.adjoint())};
}

QubitOps qubit_ops(const HilbertLayout& layout, std::size_t subsystem) {
  if (!layout[subsystem].is_qubit()) {
    throw std::invalid_argument("subsystem " + std::to_string(subsystem) + " is a mode, not a qubit");
  }
  return {embed(layout, subsystem, local::sigma_minus()), embed(layout, subsystem, local::sigma_plus()),
          embed(layout, subsystem, local::sigma_x())};
}

Ket product_state(const HilbertLayout& layout, std::span<const Vector> factors) {
  if (factors.size() != layout.size()) {
    throw std::invalid_argument("expected " + std::to_string(layout.size()) + " factors, got " +
                                std::to_string(factors.size()));
  }
  Vector out = Vector::Ones(1);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Vector& f = factors[i];
    if (f.size() != layout.local_dim(i)) {
      throw std::invalid_argument("factor " + std::to_string(i) + " has dimension " + std::to_string(f.size()) +
                                  ", expected " + std::to_string(layout.local_dim(i)));
    }
    const double n = f.norm();
    if (!(n > 1e-300)) throw std::invalid_argument("factor " + std::to_string(i) + " has zero norm");
    Vector next(out.size() * f.size());
    for (Index j = 0; j < out.size(); ++j) next.segment(j * f.size(), f.size()) = out(j) * f / n;
    out = std::move(next);
  }
  return Ket(layout, std::move(out));
}

namespace local {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

Vector ground() { return Vector::Unit(2, 0); }
Vector excited() { return Vector::Unit(2, 1); }
Vector plus() { return Vector::Constant(2, kInvSqrt2); }

Vector minus() {
  Vector v(2);
  v << kInvSqrt2, -kInvSqrt2;
  return v;
}

Vector fock(int cutoff, int n) {
  if (n < 0 || n > cutoff) throw std::invalid_argument("Fock level " + std::to_string(n) + " outside truncation");
  return Vector::Unit(cutoff + 1, n);
}

Matrix sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Matrix sigma_plus() { return sigma_minus().adjoint(); }
Matrix sigma_x() { return sigma_minus() + sigma_plus(); }
Matrix dyad_plus_minus() { return plus() * minus().adjoint(); }
Matrix dyad_minus_plus() { return minus() * plus().adjoint(); }

Matrix annihilation(int cutoff) {
  Matrix a = Matrix::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

}  // namespace local

}  // namespace drivenqed
