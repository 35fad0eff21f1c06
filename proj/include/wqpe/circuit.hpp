#pragma once

// Gate-level simulation of a joint (ancilla ⊗ system) register.
//
// Layout: the system register occupies qubits [0, n_sys), the ancilla
// register qubits [n_sys, n_sys + m). Ancilla qubit j is therefore global
// qubit n_sys + j, and the joint amplitude for ancilla index y and system
// index s lives at y * 2^n_sys + s.

#include <cstdint>

#include "wqpe/statevector.hpp"

namespace wqpe {

class Register {
 public:
  // |0>_a ⊗ |system>.
  Register(const QuantumState& system, int ancilla_qubits);

  int system_qubits() const { return system_qubits_; }
  int ancilla_qubits() const { return ancilla_qubits_; }
  const CVector& amplitudes() const { return amplitudes_; }

  // Ancilla-relative gates (0 = least significant ancilla qubit).
  void hadamard(int ancilla);
  void phase(int ancilla, double angle);  // R_phi = diag(1, e^{i angle})
  void controlled_phase(int control, int target, double angle);
  void swap(int a, int b);

  // Applies `u` to the system register `repetitions` times, controlled on
  // ancilla qubit `control`. Mirrors the circuit cost of a controlled U^k.
  void controlled_repeat(int control, const CMatrix& u, std::int64_t repetitions);
  // Applies a precomputed power of U, controlled on ancilla qubit `control`.
  void controlled_apply(int control, const CMatrix& u_power);

  // Almost-centered QFT (or its inverse) on the ancilla register built from
  // Hadamards, controlled phases and swaps.
  void ancilla_qft(bool inverse);

  // Probability of each ancilla index (storage order).
  RVector ancilla_marginal() const;

  // Normalized system state conditioned on ancilla index `ancilla_index`, and
  // the probability of that outcome.
  QuantumState postselect(std::uint64_t ancilla_index, double& probability) const;

 private:
  void check_ancilla(int q) const;
  Eigen::Map<CMatrix> columns();
  Eigen::Map<const CMatrix> columns() const;

  int system_qubits_;
  int ancilla_qubits_;
  Eigen::Index system_dim_;
  Eigen::Index ancilla_dim_;
  CVector amplitudes_;
};

}  // namespace wqpe
