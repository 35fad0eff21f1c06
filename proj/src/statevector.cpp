#include "wqpe/statevector.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include <Eigen/Eigenvalues>

#include "wqpe/errors.hpp"

namespace wqpe {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
  int bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  return bits;
}

double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected square");
  }
}

}  // namespace

std::size_t amplitude_cap() {
  if (const char* env = std::getenv("WQPE_MAX_AMPLITUDES"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return kDefaultAmplitudeCap;
}

void check_capacity(std::size_t count, std::string_view what) {
  const std::size_t cap = amplitude_cap();
  if (count > cap) {
    throw CapacityError(std::string(what) + " needs " + std::to_string(count) +
                        " dense amplitudes, cap is " + std::to_string(cap) +
                        " (set WQPE_MAX_AMPLITUDES to raise it)");
  }
}

// ---------------------------------------------------------------------------
// QuantumState

QuantumState::QuantumState(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 62) throw DimensionError("QuantumState: invalid qubit count");
  const std::size_t dim = std::size_t{1} << n_qubits;
  check_capacity(dim, "QuantumState");
  amplitudes_ = CVector::Zero(static_cast<Eigen::Index>(dim));
  amplitudes_[0] = 1.0;
}

QuantumState::QuantumState(int n_qubits, CVector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (n_qubits < 0 || n_qubits > 62) throw DimensionError("QuantumState: invalid qubit count");
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (static_cast<std::size_t>(amplitudes_.size()) != dim) {
    throw DimensionError("QuantumState: " + std::to_string(amplitudes_.size()) +
                         " amplitudes for " + std::to_string(n_qubits) + " qubits");
  }
  check_capacity(dim, "QuantumState");
}

QuantumState QuantumState::basis(int n_qubits, std::uint64_t index) {
  QuantumState s(n_qubits);
  if (index >= s.dim()) throw DimensionError("QuantumState::basis: index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

QuantumState QuantumState::from_amplitudes(CVector amplitudes) {
  const auto n = static_cast<std::size_t>(amplitudes.size());
  if (!is_power_of_two(n)) {
    throw DimensionError("QuantumState: length " + std::to_string(n) + " is not a power of two");
  }
  return QuantumState(log2_exact(n), std::move(amplitudes));
}

void QuantumState::normalize() {
  const double n = amplitudes_.norm();
  if (n == 0.0) throw DimensionError("QuantumState::normalize: zero vector");
  amplitudes_ /= n;
}

QuantumState QuantumState::normalized() const {
  QuantumState copy = *this;
  copy.normalize();
  return copy;
}

Complex QuantumState::inner(const QuantumState& other) const {
  if (other.dim() != dim()) throw DimensionError("QuantumState::inner: dimension mismatch");
  return amplitudes_.dot(other.amplitudes_);
}

// ---------------------------------------------------------------------------
// HermitianOperator

HermitianOperator::HermitianOperator(CMatrix entries, double tol) : entries_(std::move(entries)) {
  require_square(entries_, "HermitianOperator");
  check_capacity(static_cast<std::size_t>(entries_.size()), "HermitianOperator");
  const double scale = std::max(1.0, max_abs(entries_));
  const double asym = max_abs(entries_ - entries_.adjoint());
  if (asym > tol * scale) {
    throw NotHermitianError("HermitianOperator: max |A - A^dagger| = " + std::to_string(asym));
  }
}

HermitianOperator HermitianOperator::symmetrized(const CMatrix& entries) {
  require_square(entries, "HermitianOperator");
  CMatrix h = 0.5 * (entries + entries.adjoint());
  return HermitianOperator(std::move(h), Unchecked{});
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
  return HermitianOperator(CMatrix::Zero(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
  return HermitianOperator(CMatrix::Identity(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (other.dim() != dim()) throw DimensionError("HermitianOperator: dimension mismatch");
  return HermitianOperator(entries_ + other.entries_, Unchecked{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (other.dim() != dim()) throw DimensionError("HermitianOperator: dimension mismatch");
  return HermitianOperator(entries_ - other.entries_, Unchecked{});
}

HermitianOperator HermitianOperator::scaled(double factor) const {
  return HermitianOperator(entries_ * factor, Unchecked{});
}

HermitianOperator HermitianOperator::shifted(double offset) const {
  CMatrix shifted = entries_;
  shifted.diagonal().array() += offset;
  return HermitianOperator(std::move(shifted), Unchecked{});
}

double HermitianOperator::expectation(const QuantumState& state) const {
  if (static_cast<std::size_t>(dim()) != state.dim()) {
    throw DimensionError("HermitianOperator::expectation: dimension mismatch");
  }
  return state.amplitudes().dot(entries_ * state.amplitudes()).real();
}

// ---------------------------------------------------------------------------
// UnitaryOperator

UnitaryOperator::UnitaryOperator(CMatrix entries, double tol) : entries_(std::move(entries)) {
  require_square(entries_, "UnitaryOperator");
  check_capacity(static_cast<std::size_t>(entries_.size()), "UnitaryOperator");
  CMatrix deviation = entries_ * entries_.adjoint();
  deviation.diagonal().array() -= 1.0;
  // Frobenius norm bounds the spectral norm from above; only fall back to the
  // exact value when the cheap check is inconclusive.
  if (deviation.norm() > tol) {
    const double exact = spectral_norm(deviation);
    if (exact > tol) {
      throw NotUnitaryError("UnitaryOperator: ||U U^dagger - I||_2 = " + std::to_string(exact));
    }
  }
}

UnitaryOperator UnitaryOperator::identity(Eigen::Index dim) {
  return UnitaryOperator(CMatrix::Identity(dim, dim), Unchecked{});
}

UnitaryOperator UnitaryOperator::adjoint() const {
  return UnitaryOperator(entries_.adjoint(), Unchecked{});
}

UnitaryOperator UnitaryOperator::operator*(const UnitaryOperator& rhs) const {
  if (rhs.dim() != dim()) throw DimensionError("UnitaryOperator: dimension mismatch");
  return UnitaryOperator(entries_ * rhs.entries_, Unchecked{});
}

// ---------------------------------------------------------------------------
// Decompositions

CMatrix EigenDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

CMatrix UnitarySpectrum::power(std::int64_t exponent) const {
  CVector diag(phases.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    diag[i] = std::polar(1.0, static_cast<double>(exponent) * phases[i]);
  }
  return eigenvectors * diag.asDiagonal() * eigenvectors.adjoint();
}

QuantumState apply_unitary(const QuantumState& state, const UnitaryOperator& u) {
  if (static_cast<std::size_t>(u.dim()) != state.dim()) {
    throw DimensionError("apply_unitary: operator dim " + std::to_string(u.dim()) +
                         " vs state dim " + std::to_string(state.dim()));
  }
  return QuantumState(state.n_qubits(), u.matrix() * state.amplitudes());
}

EigenDecomposition eig_hermitian(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw Error("eig_hermitian: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

UnitarySpectrum eig_unitary(const UnitaryOperator& u) {
  // A unitary is normal, so its complex Schur form is diagonal up to rounding.
  Eigen::ComplexSchur<CMatrix> schur(u.matrix());
  if (schur.info() != Eigen::Success) throw Error("eig_unitary: Schur decomposition failed");
  const CMatrix& t = schur.matrixT();
  UnitarySpectrum out;
  out.phases.resize(t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i) out.phases[i] = std::arg(t(i, i));
  out.eigenvectors = schur.matrixU();
  return out;
}

UnitaryOperator centered_qft(int m, bool inverse) {
  if (m < 1 || m > 14) throw RangeError("centered_qft: m must lie in [1, 14], got " + std::to_string(m));
  const std::int64_t dim = std::int64_t{1} << m;
  check_capacity(static_cast<std::size_t>(dim * dim), "centered_qft");
  const double sign = inverse ? 1.0 : -1.0;
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  CMatrix f(dim, dim);
  for (std::int64_t row = 0; row < dim; ++row) {
    const std::int64_t q = centered_label(static_cast<std::uint64_t>(row), m);
    for (std::int64_t col = 0; col < dim; ++col) {
      const std::int64_t x = centered_label(static_cast<std::uint64_t>(col), m);
      // Reduce x*q mod 2^m before converting to an angle to keep the phase exact.
      const std::int64_t k = ((x * q) % dim + dim) % dim;
      f(row, col) = std::polar(norm, sign * 2.0 * kPi * static_cast<double>(k) / static_cast<double>(dim));
    }
  }
  return UnitaryOperator(std::move(f), 1e-10);
}

HermitianOperator principal_log_unitary(const UnitaryOperator& u, double cut_tol) {
  const UnitarySpectrum spec = eig_unitary(u);
  for (Eigen::Index i = 0; i < spec.phases.size(); ++i) {
    if (kPi - std::abs(spec.phases[i]) < cut_tol) {
      throw BranchCutError("principal_log_unitary: eigenphase " + std::to_string(spec.phases[i]) +
                           " lies on the -pi branch cut");
    }
  }
  const CMatrix l =
      spec.eigenvectors * spec.phases.cast<Complex>().asDiagonal() * spec.eigenvectors.adjoint();
  return HermitianOperator::symmetrized(l);
}

UnitaryOperator expi_hermitian(const EigenDecomposition& eig, double scale) {
  CVector diag(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < diag.size(); ++i) diag[i] = std::polar(1.0, scale * eig.eigenvalues[i]);
  return UnitaryOperator(eig.eigenvectors * diag.asDiagonal() * eig.eigenvectors.adjoint(), 1e-10);
}

UnitaryOperator expi_hermitian(const HermitianOperator& h, double scale) {
  return expi_hermitian(eig_hermitian(h), scale);
}

double spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == a.cols() && max_abs(a - a.adjoint()) == 0.0) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<CMatrix> svd(a);
  return svd.singularValues()[0];
}

double phase_aligned_distance(const QuantumState& a, const QuantumState& b) {
  const Complex overlap = b.inner(a);  // <b|a>
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
  return (a.amplitudes() - phase * b.amplitudes()).norm();
}

double fidelity(const QuantumState& a, const QuantumState& b) { return std::norm(a.inner(b)); }

}  // namespace wqpe
