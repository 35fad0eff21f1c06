#pragma once

// Windowed phase estimation: analytic outcome distributions, a gate-level
// circuit simulation to validate them, tail error rates and qubit counts.

#include <cstdint>
#include <vector>

#include "wqpe/spectral_windows.hpp"
#include "wqpe/statevector.hpp"

namespace wqpe {

struct QpeConfig {
  int t = 1;  // precision qubits
  int p = 0;  // extra qubits
  WindowKind window = WindowKind::Rectangular;
  double lambda = 1.0;  // phase turns per unit energy
  double shift = 0.0;   // energy offset applied before scaling

  int m() const { return t + p; }
  // t >= 1, p >= 0, 1 <= m <= 14.
  void validate() const;
};

// Outcome probabilities indexed by the centered label q, ascending.
struct OutcomeDistribution {
  int m = 1;
  RVector probabilities;

  double at(std::int64_t label) const;
  double total() const { return probabilities.sum(); }
};

// Nearest grid point of a phase: theta * 2^m = z + delta2m, delta2m in [-1/2, 1/2).
struct PhaseDecomposition {
  std::int64_t z = 0;
  double delta2m = 0.0;
};
PhaseDecomposition decompose_phase(double theta, int m);

// Wraps a phase (in turns) into [-1/2, 1/2).
double wrap_phase(double theta);

// Pr(q) = |filter(q - 2^m theta)|^2 for a single eigenphase theta (turns).
OutcomeDistribution analytic_distribution(double theta, const QpeConfig& cfg);

// Sum_i weights_i * analytic_distribution(thetas_i).
OutcomeDistribution analytic_mixture(const RVector& weights, const RVector& thetas, const QpeConfig& cfg);

// Full ancilla circuit: window preparation, controlled U^{2^l} (U^{-2^{m-1}} on
// the top qubit), centered QFT, then the ancilla marginal. Powers are applied
// by repeating U.
OutcomeDistribution run_qpe_circuit(const QuantumState& input, const UnitaryOperator& u, const QpeConfig& cfg);
// Same circuit with controlled powers taken from the spectrum of U.
OutcomeDistribution run_qpe_circuit(const QuantumState& input, const UnitarySpectrum& u, const QpeConfig& cfg);

// Probability mass outside the 2k bins [-k, k), k = 2^{p-1}, when the true
// phase sits delta2m bins away from the nearest grid point. Needs p >= 1 and
// t + p <= 24.
double error_rate(int t, int p, double delta2m, WindowKind window);

// Smallest p whose window-specific bound guarantees error rate <= e_target.
int min_extra_qubits(double e_target, WindowKind window);

struct TailBoundCheck {
  int t = 0;
  int p = 0;
  double empirical = 0.0;  // max of the cosine error rate over the delta grid
  double worst_delta2m = 0.0;
  double bound = 0.0;  // pi^2 / (48 (k - 2)^3)
  bool holds() const { return empirical < bound; }
};

// Cosine-window tail bound against the exact error rate on an evenly spaced
// grid of `grid_points` offsets in [-1/2, 1/2]. Requires 2^{p-1} >= 3.
TailBoundCheck verify_tail_bound(int t, int p, int grid_points = 101);

// Mean angular cost (1/2pi) sum_z int Pr(z|theta) sin^2((theta - 2 pi z/2^m)/2)
// by the periodic trapezoid rule on `nodes` points. Requires m <= 12.
double cbar_metric(const QpeConfig& cfg, int nodes = 4096);

}  // namespace wqpe
