#pragma once

// Iterative projective ground-state preparation: a phase-estimation circuit
// centred on an energy estimate, post-selected on the all-zero ancilla, and
// repeated r times.

#include <optional>
#include <vector>

#include "wqpe/spectral_windows.hpp"
#include "wqpe/statevector.hpp"

namespace wqpe {

struct PrepConfig {
  int m = 6;
  WindowKind window = WindowKind::Cosine;
  int r = 1;
  double theta0_est = 0.0;  // estimate of the ground phase, in turns
  double xi = 0.0;          // precision of theta0_est, in turns
  double lambda = 1.0;
  double shift = 0.0;

  // 1 <= m <= 14, r >= 0, lambda > 0.
  void validate() const;
  // Distance every scaled eigenphase must keep from +-1/2.
  double aliasing_margin() const;
};

// Energy scaling so that lambda (E + shift) spans [-1/4, 1/4].
struct Scaling {
  double lambda = 1.0;
  double shift = 0.0;
};
Scaling default_scaling(double e_min, double e_max);

// gamma_i = filter(2^m (theta0_est - theta_i)), rectangular -> G, cosine -> F+.
// Throws AliasingError when a phase leaves the non-aliasing range.
CVector filter_coefficients(const RVector& eigphases, const PrepConfig& cfg);

// Scaled phases lambda (E_i + shift).
RVector scaled_phases(const RVector& energies, const PrepConfig& cfg);

struct FilterOutcome {
  QuantumState state;
  double success_prob = 0.0;
};

// Applies the filter cfg.r times in the eigenbasis of the Hermitian operator.
// success_prob is the product over rounds.
FilterOutcome apply_filter_eigen(const QuantumState& state, const EigenDecomposition& h_eig, const PrepConfig& cfg);

// Simulates the ancilla circuit once per round with u = exp(2 pi i lambda (H + shift));
// powers by repetition of u.
FilterOutcome apply_filter_circuit(const QuantumState& state, const UnitaryOperator& u, const PrepConfig& cfg);
// Same, with controlled powers taken from the spectrum of u.
FilterOutcome apply_filter_circuit(const QuantumState& state, const UnitarySpectrum& u, const PrepConfig& cfg);

struct PrepRow {
  int r = 0;
  double success_prob = 0.0;  // this round
  double cum_pr = 0.0;        // P_r
  double rho = 0.0;           // 1 - P_r / |phi_0|^2
  double epsilon = 0.0;       // phase-aligned distance to the ground state
  double ratio = 0.0;         // excited-state weight ratio of the filtered state
  QuantumState state{0};
  CVector coefficients;  // state in the eigenbasis of the Hamiltonian
};

struct PrepReport {
  double overlap = 0.0;  // |phi_0|
  double ground_energy = 0.0;
  double ground_phase = 0.0;
  std::vector<PrepRow> rows;  // r = 1 .. cfg.r

  const QuantumState& final_state() const { return rows.back().state; }
};

// Filters `initial` cfg.r times in the eigenbasis of h and records each round.
// Throws ZeroOverlapError when the initial state misses the ground state and
// DegenerateGroundStateError when the ground state is not unique.
PrepReport run_preparation(const QuantumState& initial, const HermitianOperator& h, const PrepConfig& cfg);
PrepReport run_preparation(const QuantumState& initial, const EigenDecomposition& h_eig, const PrepConfig& cfg);

// max_{i != 0} |gamma_i|^r, with gamma_0 the ground-state coefficient.
double residual_norm(const CVector& gammas, int r);

// Iteration count r at which the residual reaches epsilon, with unit constants.
// gap is the scaled spectral gap. Throws GapTooSmallError when the filter does
// not suppress the first excited state.
double iteration_bound(double epsilon, double phi0, double rho, int m, double gap, WindowKind window);

// Largest energy error xi compatible with iteration_bound and rho, with unit
// constants and parabola coefficient 1 (rectangular) or 1/4 (cosine).
double precision_bound(double epsilon, double phi0, double rho, int m, double gap, WindowKind window);

// Coefficient of the parabola 1 - a (2^m xi)^2 bounding |gamma_0|^2.
double parabola_coefficient(WindowKind window);

struct ScanPoint {
  double theta = 0.0;
  double success_prob = 0.0;
};

struct ScanResult {
  double estimate = 0.0;
  double threshold = 0.0;
  std::vector<ScanPoint> trace;  // every point visited, the accepted one last
};

// Raises theta0_est from -1/2 in steps of xi_step, one filter round each, and
// returns the first estimate whose success probability exceeds the threshold
// (default |phi_0|^2 / 2). Throws ScanFailedError if none does.
ScanResult ground_energy_scan(const QuantumState& initial, const HermitianOperator& h, const PrepConfig& templ,
                              double xi_step, std::optional<double> threshold = std::nullopt);

struct PerturbationCheck {
  double bound = 0.0;     // ||h_eff - h|| / (E_1 - E_0)
  double distance = 0.0;  // phase-aligned distance of the two ground states
  bool holds() const { return distance <= bound; }
};

// lambda cancels between the scaled norm and the scaled gap; it only has to be
// positive.
PerturbationCheck perturbation_error_bound(const HermitianOperator& h, const HermitianOperator& h_eff, double lambda);

struct SuccessRelations {
  double success = 0.0;        // P_r
  double rho = 0.0;            // 1 - P_r / |phi_0|^2
  double epsilon_sq = 0.0;     // excited weight of the filtered state
  double peak_power = 0.0;     // |gamma_0|^{2r}
  bool below_overlap = false;  // P_r <= |phi_0|^2
  bool peak_bounded = false;   // |gamma_0|^{2r} <= (1 - rho)(1 + 10 eps^2)
};

// gammas and phi share the eigen-index; index 0 is the ground state.
SuccessRelations success_rate_relations_check(const CVector& gammas, const CVector& phi, int r);

}  // namespace wqpe
