#pragma once

// Composite Hilbert spaces of qubits and truncated boson modes.
//
// Indexing: subsystem 0 is the most significant digit of the flat index.
// Qubit basis is (|g>, |e>); mode basis is Fock |0> .. |cutoff>.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace drivenqed {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

struct Subsystem {
  enum class Kind { Qubit, Mode };

  Kind kind = Kind::Qubit;
  int cutoff = 0;  // n_max for modes; unused for qubits

  static Subsystem qubit() { return {Kind::Qubit, 0}; }
  static Subsystem mode(int cutoff) { return {Kind::Mode, cutoff}; }

  bool is_qubit() const { return kind == Kind::Qubit; }
  bool is_mode() const { return kind == Kind::Mode; }
  Index dim() const { return is_qubit() ? 2 : cutoff + 1; }

  bool operator==(const Subsystem&) const = default;
};

class HilbertLayout {
 public:
  HilbertLayout() = default;
  explicit HilbertLayout(std::vector<Subsystem> subsystems);

  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  const Subsystem& operator[](std::size_t i) const { return subsystems_.at(i); }
  std::size_t size() const { return subsystems_.size(); }
  Index dim() const { return dim_; }
  Index local_dim(std::size_t i) const { return subsystems_.at(i).dim(); }
  // Flat-index step for subsystem i.
  Index stride(std::size_t i) const { return strides_.at(i); }

  int n_atoms() const;
  int n_modes() const;
  // Subsystem index of the k-th mode / k-th qubit.
  std::size_t mode_subsystem(int k) const;
  std::size_t atom_subsystem(int k) const;

  // Layout with the listed subsystems kept, in original order.
  HilbertLayout restricted(std::span<const std::size_t> keep) const;
  // Layout with all qubits removed.
  HilbertLayout field_only() const;

  // Local level of subsystem i encoded in flat index `flat`.
  Index digit(Index flat, std::size_t i) const { return (flat / strides_[i]) % subsystems_[i].dim(); }

  bool operator==(const HilbertLayout& o) const { return subsystems_ == o.subsystems_; }

 private:
  std::vector<Subsystem> subsystems_;
  std::vector<Index> strides_;
  Index dim_ = 0;
};

// Atoms occupy subsystems 0..n_atoms-1, modes follow in the given order.
HilbertLayout make_layout(int n_atoms, std::span<const int> mode_cutoffs);
inline HilbertLayout make_layout(int n_atoms, std::initializer_list<int> mode_cutoffs) {
  std::vector<int> c(mode_cutoffs);
  return make_layout(n_atoms, std::span<const int>(c));
}

struct Ket {
  HilbertLayout layout;
  Vector amplitudes;
  bool normalized = false;

  Ket() = default;
  Ket(HilbertLayout layout, Vector amplitudes);

  double norm() const { return amplitudes.norm(); }
  // Returns a copy scaled to unit norm; throws GuardError on a zero vector.
  Ket normalized_copy() const;
};

struct Operator {
  HilbertLayout layout;
  Matrix matrix;

  Operator() = default;
  Operator(HilbertLayout layout, Matrix matrix);

  static Operator zero(const HilbertLayout& layout);
  static Operator identity(const HilbertLayout& layout);

  Operator adjoint() const { return {layout, matrix.adjoint()}; }
  // max|H - H^dagger| <= rel_tol * max|H| (absolute for the zero matrix).
  bool is_hermitian(double rel_tol = 1e-12) const;
  Ket apply(const Ket& psi) const;

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(Complex s);
};

Operator operator+(Operator lhs, const Operator& rhs);
Operator operator-(Operator lhs, const Operator& rhs);
Operator operator*(const Operator& lhs, const Operator& rhs);
Operator operator*(Complex s, Operator op);
Operator commutator(const Operator& lhs, const Operator& rhs);

// I (x) .. (x) local (x) .. (x) I with `local` acting on subsystem `which`.
Operator embed(const HilbertLayout& layout, std::size_t which, const Matrix& local);

struct LocalFactor {
  std::size_t subsystem;
  Matrix matrix;
};
// Tensor product of local factors on distinct subsystems, identity elsewhere.
Operator embed(const HilbertLayout& layout, std::span<const LocalFactor> factors);
inline Operator embed(const HilbertLayout& layout, std::initializer_list<LocalFactor> factors) {
  std::vector<LocalFactor> f(factors);
  return embed(layout, std::span<const LocalFactor>(f));
}

struct BosonOps {
  Operator a;
  Operator a_dagger;
};

struct QubitOps {
  Operator sigma_minus;  // |g><e|
  Operator sigma_plus;   // |e><g|
  Operator sigma_x;
};

// a|n> = sqrt(n)|n-1>; a^dagger|cutoff> = 0.
BosonOps boson_ops(const HilbertLayout& layout, std::size_t subsystem);
QubitOps qubit_ops(const HilbertLayout& layout, std::size_t subsystem);

Ket product_state(const HilbertLayout& layout, std::span<const Vector> factors);
inline Ket product_state(const HilbertLayout& layout, std::initializer_list<Vector> factors) {
  std::vector<Vector> f(factors);
  return product_state(layout, std::span<const Vector>(f));
}

namespace local {

Vector ground();
Vector excited();
Vector plus();   // (|g> + |e>)/sqrt(2)
Vector minus();  // (|g> - |e>)/sqrt(2)
Vector fock(int cutoff, int n);

// Single-qubit matrices in the (|g>, |e>) basis.
Matrix sigma_minus();
Matrix sigma_plus();
Matrix sigma_x();
// Dressed-basis dyads |s><s'| with s, s' in {+, -}, written in the bare basis.
Matrix dyad_plus_minus();
Matrix dyad_minus_plus();
Matrix annihilation(int cutoff);

}  // namespace local

}  // namespace drivenqed
