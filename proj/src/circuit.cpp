#include "wqpe/circuit.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "wqpe/errors.hpp"

namespace wqpe {

Register::Register(const QuantumState& system, int ancilla_qubits)
    : system_qubits_(system.n_qubits()),
      ancilla_qubits_(ancilla_qubits),
      system_dim_(static_cast<Eigen::Index>(system.dim())),
      ancilla_dim_(Eigen::Index{1} << ancilla_qubits) {
  if (ancilla_qubits < 1 || ancilla_qubits > 30) {
    throw RangeError("Register: ancilla qubit count " + std::to_string(ancilla_qubits) + " out of range");
  }
  check_capacity(static_cast<std::size_t>(system_dim_) * static_cast<std::size_t>(ancilla_dim_),
                 "Register");
  amplitudes_ = CVector::Zero(system_dim_ * ancilla_dim_);
  amplitudes_.head(system_dim_) = system.amplitudes();
}

Eigen::Map<CMatrix> Register::columns() {
  return Eigen::Map<CMatrix>(amplitudes_.data(), system_dim_, ancilla_dim_);
}

Eigen::Map<const CMatrix> Register::columns() const {
  return Eigen::Map<const CMatrix>(amplitudes_.data(), system_dim_, ancilla_dim_);
}

void Register::check_ancilla(int q) const {
  if (q < 0 || q >= ancilla_qubits_) {
    throw RangeError("Register: ancilla qubit " + std::to_string(q) + " out of range");
  }
}

void Register::hadamard(int ancilla) {
  check_ancilla(ancilla);
  auto cols = columns();
  const Eigen::Index bit = Eigen::Index{1} << ancilla;
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index y = 0; y < ancilla_dim_; ++y) {
    if (y & bit) continue;
    const CVector a = cols.col(y);
    const CVector b = cols.col(y | bit);
    cols.col(y) = s * (a + b);
    cols.col(y | bit) = s * (a - b);
  }
}

void Register::phase(int ancilla, double angle) {
  check_ancilla(ancilla);
  auto cols = columns();
  const Eigen::Index bit = Eigen::Index{1} << ancilla;
  const Complex w = std::polar(1.0, angle);
  for (Eigen::Index y = 0; y < ancilla_dim_; ++y) {
    if (y & bit) cols.col(y) *= w;
  }
}

void Register::controlled_phase(int control, int target, double angle) {
  check_ancilla(control);
  check_ancilla(target);
  auto cols = columns();
  const Eigen::Index mask = (Eigen::Index{1} << control) | (Eigen::Index{1} << target);
  const Complex w = std::polar(1.0, angle);
  for (Eigen::Index y = 0; y < ancilla_dim_; ++y) {
    if ((y & mask) == mask) cols.col(y) *= w;
  }
}

void Register::swap(int a, int b) {
  check_ancilla(a);
  check_ancilla(b);
  if (a == b) return;
  auto cols = columns();
  const Eigen::Index ba = Eigen::Index{1} << a;
  const Eigen::Index bb = Eigen::Index{1} << b;
  for (Eigen::Index y = 0; y < ancilla_dim_; ++y) {
    if ((y & ba) && !(y & bb)) cols.col(y).swap(cols.col((y & ~ba) | bb));
  }
}

void Register::controlled_repeat(int control, const CMatrix& u, std::int64_t repetitions) {
  check_ancilla(control);
  if (u.rows() != system_dim_ || u.cols() != system_dim_) {
    throw DimensionError("Register::controlled_repeat: operator does not match system register");
  }
  auto cols = columns();
  const Eigen::Index bit = Eigen::Index{1} << control;
  std::vector<Eigen::Index> selected;
  selected.reserve(static_cast<std::size_t>(ancilla_dim_ / 2));
  for (Eigen::Index y = 0; y < ancilla_dim_; ++y) {
    if (y & bit) selected.push_back(y);
  }
  CMatrix block(system_dim_, static_cast<Eigen::Index>(selected.size()));
  for (std::size_t k = 0; k < selected.size(); ++k) block.col(static_cast<Eigen::Index>(k)) = cols.col(selected[k]);
  CMatrix next(block.rows(), block.cols());
  for (std::int64_t r = 0; r < repetitions; ++r) {
    next.noalias() = u * block;
    block.swap(next);
  }
  for (std::size_t k = 0; k < selected.size(); ++k) cols.col(selected[k]) = block.col(static_cast<Eigen::Index>(k));
}

void Register::controlled_apply(int control, const CMatrix& u_power) {
  controlled_repeat(control, u_power, 1);
}

void Register::ancilla_qft(bool inverse) {
  const int m = ancilla_qubits_;
  if (inverse) {
    // |y> -> sum_k e^{+2 pi i y k / 2^m} |k> / sqrt(2^m)
    for (int j = m - 1; j >= 0; --j) {
      hadamard(j);
      for (int k = j - 1; k >= 0; --k) controlled_phase(k, j, 2.0 * kPi / std::ldexp(1.0, j - k + 1));
    }
    for (int i = 0; i < m / 2; ++i) swap(i, m - 1 - i);
  } else {
    // Adjoint of the sequence above, in reverse order.
    for (int i = 0; i < m / 2; ++i) swap(i, m - 1 - i);
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < j; ++k) controlled_phase(k, j, -2.0 * kPi / std::ldexp(1.0, j - k + 1));
      hadamard(j);
    }
  }
}

RVector Register::ancilla_marginal() const {
  return columns().colwise().squaredNorm().transpose();
}

QuantumState Register::postselect(std::uint64_t ancilla_index, double& probability) const {
  if (static_cast<Eigen::Index>(ancilla_index) >= ancilla_dim_) {
    throw RangeError("Register::postselect: ancilla index out of range");
  }
  CVector branch = columns().col(static_cast<Eigen::Index>(ancilla_index));
  probability = branch.squaredNorm();
  if (probability < 1e-300) {
    throw FilteredToNothingError("Register::postselect: outcome has zero probability");
  }
  branch /= std::sqrt(probability);
  return QuantumState(system_qubits_, std::move(branch));
}

}  // namespace wqpe
