#pragma once

// Dense complex linear algebra for exact simulation: states, Hermitian and
// unitary operators, eigendecompositions, the almost-centered QFT and the
// principal logarithm of a unitary.
//
// Conventions:
//   * qubit 0 is the least significant bit of a basis-state index;
//   * U = exp(+i * scale * H) (positive exponent);
//   * the centered QFT uses labels x, q in [-2^{m-1}, 2^{m-1} - 1], stored at
//     index y = x mod 2^m.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

namespace wqpe {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr std::size_t kDefaultAmplitudeCap = std::size_t{1} << 26;

// Maximum number of dense complex entries any state or operator may hold.
// Defaults to 2^26; WQPE_MAX_AMPLITUDES overrides it.
std::size_t amplitude_cap();

// Throws CapacityError when `count` exceeds amplitude_cap().
void check_capacity(std::size_t count, std::string_view what);

// Almost-centered relabeling between storage index y in [0, 2^m) and the
// signed label x in [-2^{m-1}, 2^{m-1} - 1].
constexpr std::int64_t centered_label(std::uint64_t index, int m) {
  const std::int64_t dim = std::int64_t{1} << m;
  const auto y = static_cast<std::int64_t>(index);
  return y < dim / 2 ? y : y - dim;
}

constexpr std::uint64_t storage_index(std::int64_t label, int m) {
  const std::int64_t dim = std::int64_t{1} << m;
  return static_cast<std::uint64_t>(label < 0 ? label + dim : label);
}

class QuantumState {
 public:
  // |0...0> on n qubits.
  explicit QuantumState(int n_qubits);
  // Takes the amplitudes as given; length must be 2^n_qubits.
  QuantumState(int n_qubits, CVector amplitudes);

  static QuantumState basis(int n_qubits, std::uint64_t index);
  // Infers the qubit count from the vector length (must be a power of two).
  static QuantumState from_amplitudes(CVector amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amplitudes_.norm(); }
  void normalize();
  QuantumState normalized() const;

  // <this|other>
  Complex inner(const QuantumState& other) const;

 private:
  int n_qubits_;
  CVector amplitudes_;
};

class HermitianOperator {
 public:
  // Validates squareness and A == A^dagger within `tol` (relative to max(1, max|A_ij|)).
  explicit HermitianOperator(CMatrix entries, double tol = 1e-12);

  // Builds (A + A^dagger)/2 without checking; for matrices that are Hermitian
  // up to rounding by construction.
  static HermitianOperator symmetrized(const CMatrix& entries);
  static HermitianOperator zero(Eigen::Index dim);
  static HermitianOperator identity(Eigen::Index dim);

  Eigen::Index dim() const { return entries_.rows(); }
  const CMatrix& matrix() const { return entries_; }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator scaled(double factor) const;
  HermitianOperator shifted(double offset) const;  // A + offset * I

  double expectation(const QuantumState& state) const;

 private:
  struct Unchecked {};
  HermitianOperator(CMatrix entries, Unchecked) : entries_(std::move(entries)) {}
  CMatrix entries_;
};

class UnitaryOperator {
 public:
  // Validates U U^dagger == I within `tol` in spectral norm.
  explicit UnitaryOperator(CMatrix entries, double tol = 1e-10);

  static UnitaryOperator identity(Eigen::Index dim);

  Eigen::Index dim() const { return entries_.rows(); }
  const CMatrix& matrix() const { return entries_; }

  UnitaryOperator adjoint() const;
  UnitaryOperator operator*(const UnitaryOperator& rhs) const;

 private:
  struct Unchecked {};
  UnitaryOperator(CMatrix entries, Unchecked) : entries_(std::move(entries)) {}
  CMatrix entries_;
};

struct EigenDecomposition {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // column i pairs with eigenvalues[i]

  CMatrix reconstruct() const;
};

// Spectral decomposition of a unitary: U = V diag(exp(i * phases)) V^dagger,
// phases in (-pi, pi].
struct UnitarySpectrum {
  RVector phases;
  CMatrix eigenvectors;

  // U^power via the spectrum.
  CMatrix power(std::int64_t exponent) const;
};

QuantumState apply_unitary(const QuantumState& state, const UnitaryOperator& u);

EigenDecomposition eig_hermitian(const HermitianOperator& h);
UnitarySpectrum eig_unitary(const UnitaryOperator& u);

// Dense centered QFT on m qubits, m in [1, 14]. Forward entries are
// exp(-2 pi i x q / 2^m) / sqrt(2^m) (row q, column x); inverse flips the sign.
UnitaryOperator centered_qft(int m, bool inverse = false);

// Hermitian L with exp(iL) = u and spectrum in (-pi, pi). Throws BranchCutError
// if an eigenphase lies within `cut_tol` of -pi.
HermitianOperator principal_log_unitary(const UnitaryOperator& u, double cut_tol = 1e-9);

// exp(i * scale * h).
UnitaryOperator expi_hermitian(const HermitianOperator& h, double scale);
UnitaryOperator expi_hermitian(const EigenDecomposition& eig, double scale);

double spectral_norm(const CMatrix& a);

// min over alpha of || |a> - e^{i alpha} |b> ||, both assumed normalized.
double phase_aligned_distance(const QuantumState& a, const QuantumState& b);
double fidelity(const QuantumState& a, const QuantumState& b);

}  // namespace wqpe
