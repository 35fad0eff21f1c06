#include "wqpe/stateprep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "wqpe/circuit.hpp"
#include "wqpe/errors.hpp"

namespace wqpe {

namespace {

constexpr double kDegenerateTol = 1e-10;
constexpr double kZeroOverlap = 1e-24;

using ControlledPower = std::function<void(Register&, int qubit, std::int64_t exponent)>;

FilterOutcome circuit_rounds(const QuantumState& state, const PrepConfig& cfg, const ControlledPower& power) {
  cfg.validate();
  const int m = cfg.m;
  QuantumState current = state;
  double success = 1.0;
  for (int round = 0; round < cfg.r; ++round) {
    Register reg(current, m);
    if (cfg.window == WindowKind::Rectangular) {
      for (int q = 0; q < m; ++q) reg.hadamard(q);
    } else {
      reg.hadamard(0);
      reg.ancilla_qft(true);
    }
    // Shifts the filter peak to theta0_est.
    reg.phase(m - 1, 2.0 * kPi * std::ldexp(cfg.theta0_est, m - 1));
    for (int q = 0; q < m - 1; ++q) reg.phase(q, -2.0 * kPi * std::ldexp(cfg.theta0_est, q));
    for (int q = 0; q < m - 1; ++q) power(reg, q, std::int64_t{1} << q);
    power(reg, m - 1, -(std::int64_t{1} << (m - 1)));
    reg.ancilla_qft(false);
    if (cfg.window == WindowKind::Cosine) reg.hadamard(0);
    double prob = 0.0;
    current = reg.postselect(0, prob);
    success *= prob;
  }
  return {current, success};
}

void check_bound_args(double epsilon, double phi0, double rho, int m, double gap) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw RangeError("bound: epsilon must lie in (0, 1)");
  if (!(phi0 > 0.0 && phi0 <= 1.0)) throw RangeError("bound: phi0 must lie in (0, 1]");
  if (!(rho >= 0.0 && rho < 1.0)) throw RangeError("bound: rho must lie in [0, 1)");
  if (m < 1 || m > 60) throw RangeError("bound: m out of range");
  if (!(gap > 0.0)) throw RangeError("bound: gap must be positive");
}

void check_nondegenerate(const RVector& energies) {
  if (energies.size() < 2) return;
  const double scale = std::max(1.0, energies.cwiseAbs().maxCoeff());
  if (energies[1] - energies[0] <= kDegenerateTol * scale) {
    throw DegenerateGroundStateError("ground state is degenerate (gap " + std::to_string(energies[1] - energies[0]) +
                                     ")");
  }
}

}  // namespace

void PrepConfig::validate() const {
  if (m < 1 || m > 14) throw RangeError("PrepConfig: m must lie in [1, 14]");
  if (r < 0) throw RangeError("PrepConfig: r must be >= 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw RangeError("PrepConfig: lambda must be positive");
  if (!std::isfinite(theta0_est)) throw RangeError("PrepConfig: theta0_est must be finite");
}

double PrepConfig::aliasing_margin() const { return std::ldexp(1.0, -(m + 1)); }

Scaling default_scaling(double e_min, double e_max) {
  if (!(e_max >= e_min)) throw RangeError("default_scaling: e_max < e_min");
  const double spread = e_max - e_min;
  if (spread == 0.0) return {1.0, -e_min};
  return {1.0 / (2.0 * spread), -0.5 * (e_max + e_min)};
}

RVector scaled_phases(const RVector& energies, const PrepConfig& cfg) {
  return (energies.array() + cfg.shift).matrix() * cfg.lambda;
}

CVector filter_coefficients(const RVector& eigphases, const PrepConfig& cfg) {
  cfg.validate();
  const double limit = 0.5 - cfg.aliasing_margin();
  const double dim = std::ldexp(1.0, cfg.m);
  CVector gamma(eigphases.size());
  for (Eigen::Index i = 0; i < eigphases.size(); ++i) {
    if (!(std::abs(eigphases[i]) <= limit)) {
      throw AliasingError("filter_coefficients: phase " + std::to_string(eigphases[i]) +
                          " outside the non-aliasing range");
    }
    gamma[i] = projection_filter(cfg.window, dim * (cfg.theta0_est - eigphases[i]), cfg.m);
  }
  return gamma;
}

FilterOutcome apply_filter_eigen(const QuantumState& state, const EigenDecomposition& h_eig, const PrepConfig& cfg) {
  if (static_cast<std::size_t>(h_eig.eigenvectors.rows()) != state.dim()) {
    throw DimensionError("apply_filter_eigen: dimension mismatch");
  }
  const CVector gamma = filter_coefficients(scaled_phases(h_eig.eigenvalues, cfg), cfg);
  CVector coeffs = h_eig.eigenvectors.adjoint() * state.amplitudes();
  for (int round = 0; round < cfg.r; ++round) coeffs = coeffs.cwiseProduct(gamma);
  const double success = coeffs.squaredNorm();
  if (success < 1e-300) throw FilteredToNothingError("apply_filter_eigen: success probability vanished");
  CVector out = h_eig.eigenvectors * (coeffs / std::sqrt(success));
  return {QuantumState(state.n_qubits(), std::move(out)), success};
}

FilterOutcome apply_filter_circuit(const QuantumState& state, const UnitaryOperator& u, const PrepConfig& cfg) {
  if (static_cast<std::size_t>(u.dim()) != state.dim()) throw DimensionError("apply_filter_circuit: dimension mismatch");
  const CMatrix forward = u.matrix();
  const CMatrix backward = u.matrix().adjoint();
  return circuit_rounds(state, cfg, [&](Register& reg, int qubit, std::int64_t exponent) {
    reg.controlled_repeat(qubit, exponent >= 0 ? forward : backward, exponent >= 0 ? exponent : -exponent);
  });
}

FilterOutcome apply_filter_circuit(const QuantumState& state, const UnitarySpectrum& u, const PrepConfig& cfg) {
  if (static_cast<std::size_t>(u.eigenvectors.rows()) != state.dim()) {
    throw DimensionError("apply_filter_circuit: dimension mismatch");
  }
  return circuit_rounds(state, cfg, [&](Register& reg, int qubit, std::int64_t exponent) {
    reg.controlled_apply(qubit, u.power(exponent));
  });
}

PrepReport run_preparation(const QuantumState& initial, const HermitianOperator& h, const PrepConfig& cfg) {
  return run_preparation(initial, eig_hermitian(h), cfg);
}

PrepReport run_preparation(const QuantumState& initial, const EigenDecomposition& h_eig, const PrepConfig& cfg) {
  cfg.validate();
  if (static_cast<std::size_t>(h_eig.eigenvectors.rows()) != initial.dim()) {
    throw DimensionError("run_preparation: dimension mismatch");
  }
  check_nondegenerate(h_eig.eigenvalues);
  const CVector gamma = filter_coefficients(scaled_phases(h_eig.eigenvalues, cfg), cfg);

  CVector coeffs = h_eig.eigenvectors.adjoint() * initial.amplitudes();
  const double total = coeffs.squaredNorm();
  const double overlap_sq = std::norm(coeffs[0]) / total;
  if (overlap_sq < kZeroOverlap) throw ZeroOverlapError("run_preparation: initial state misses the ground state");
  coeffs /= std::sqrt(total);

  PrepReport report;
  report.overlap = std::sqrt(overlap_sq);
  report.ground_energy = h_eig.eigenvalues[0];
  report.ground_phase = cfg.lambda * (h_eig.eigenvalues[0] + cfg.shift);
  double cumulative = 1.0;
  for (int r = 1; r <= cfg.r; ++r) {
    coeffs = coeffs.cwiseProduct(gamma);
    const double round = coeffs.squaredNorm();
    if (round < 1e-300) throw FilteredToNothingError("run_preparation: success probability vanished");
    coeffs /= std::sqrt(round);
    cumulative *= round;

    PrepRow row;
    row.r = r;
    row.success_prob = round;
    row.cum_pr = cumulative;
    row.rho = 1.0 - cumulative / overlap_sq;
    const double peak = std::abs(coeffs[0]);
    const double rest = coeffs.tail(coeffs.size() - 1).squaredNorm();
    // |1 - |c0|| = rest / (1 + |c0|) avoids cancellation near convergence.
    const double gap = rest / (1.0 + peak);
    row.epsilon = std::sqrt(gap * gap + rest);
    row.ratio = std::sqrt(rest);
    row.state = QuantumState(initial.n_qubits(), h_eig.eigenvectors * coeffs);
    row.coefficients = coeffs;
    report.rows.push_back(std::move(row));
  }
  return report;
}

double residual_norm(const CVector& gammas, int r) {
  if (r < 0) throw RangeError("residual_norm: r must be >= 0");
  if (gammas.size() < 2) return 0.0;
  return std::pow(gammas.tail(gammas.size() - 1).cwiseAbs().maxCoeff(), r);
}

double iteration_bound(double epsilon, double phi0, double rho, int m, double gap, WindowKind window) {
  check_bound_args(epsilon, phi0, rho, m, gap);
  double arg = 0.0;
  if (window == WindowKind::Rectangular) {
    arg = std::ldexp(gap, m + 1);
  } else {
    const double bin = std::ldexp(1.0, -m);
    arg = std::ldexp(gap, 3 * m + 3) * (gap + bin) * (gap - bin) / (kPi * kPi);
  }
  if (!(arg > 1.0)) throw GapTooSmallError("iteration_bound: filter does not suppress the first excited state");
  return std::log(1.0 / (epsilon * phi0 * std::sqrt(1.0 - rho))) / std::log(arg);
}

double parabola_coefficient(WindowKind window) { return window == WindowKind::Rectangular ? 1.0 : 0.25; }

double precision_bound(double epsilon, double phi0, double rho, int m, double gap, WindowKind window) {
  const double r = iteration_bound(epsilon, phi0, rho, m, gap, window);
  const double a = parabola_coefficient(window);
  return std::ldexp(std::sqrt(std::log(1.0 / (1.0 - rho)) / (a * r)), -m);
}

ScanResult ground_energy_scan(const QuantumState& initial, const HermitianOperator& h, const PrepConfig& templ,
                              double xi_step, std::optional<double> threshold) {
  if (!(xi_step > 0.0)) throw RangeError("ground_energy_scan: xi_step must be positive");
  const EigenDecomposition eig = eig_hermitian(h);
  if (static_cast<std::size_t>(eig.eigenvectors.rows()) != initial.dim()) {
    throw DimensionError("ground_energy_scan: dimension mismatch");
  }
  const CVector coeffs = eig.eigenvectors.adjoint() * initial.normalized().amplitudes();
  const RVector weights = coeffs.cwiseAbs2();
  const RVector phases = scaled_phases(eig.eigenvalues, templ);

  ScanResult out;
  out.threshold = threshold.value_or(weights[0] / 2.0);
  PrepConfig cfg = templ;
  cfg.r = 1;
  for (long j = 0;; ++j) {
    cfg.theta0_est = -0.5 + static_cast<double>(j) * xi_step;
    if (cfg.theta0_est >= 0.5) break;
    const CVector gamma = filter_coefficients(phases, cfg);
    const double success = weights.dot(gamma.cwiseAbs2());
    out.trace.push_back({cfg.theta0_est, success});
    if (success > out.threshold) {
      out.estimate = cfg.theta0_est;
      return out;
    }
  }
  throw ScanFailedError("ground_energy_scan: no estimate passed the success threshold");
}

PerturbationCheck perturbation_error_bound(const HermitianOperator& h, const HermitianOperator& h_eff, double lambda) {
  if (h.dim() != h_eff.dim()) throw DimensionError("perturbation_error_bound: dimension mismatch");
  if (!(lambda > 0.0)) throw RangeError("perturbation_error_bound: lambda must be positive");
  const EigenDecomposition exact = eig_hermitian(h);
  check_nondegenerate(exact.eigenvalues);
  const EigenDecomposition approx = eig_hermitian(h_eff);
  const double scaled_gap = lambda * (exact.eigenvalues[1] - exact.eigenvalues[0]);
  PerturbationCheck out;
  out.bound = lambda * spectral_norm(h_eff.matrix() - h.matrix()) / scaled_gap;
  out.distance = phase_aligned_distance(QuantumState::from_amplitudes(exact.eigenvectors.col(0)),
                                        QuantumState::from_amplitudes(approx.eigenvectors.col(0)));
  return out;
}

SuccessRelations success_rate_relations_check(const CVector& gammas, const CVector& phi, int r) {
  if (gammas.size() != phi.size() || phi.size() == 0) {
    throw DimensionError("success_rate_relations_check: size mismatch");
  }
  if (r < 0) throw RangeError("success_rate_relations_check: r must be >= 0");
  const double overlap_sq = std::norm(phi[0]);
  if (overlap_sq < kZeroOverlap) throw ZeroOverlapError("success_rate_relations_check: phi_0 vanishes");
  RVector weights(phi.size());
  for (Eigen::Index i = 0; i < phi.size(); ++i) weights[i] = std::norm(phi[i]) * std::pow(std::norm(gammas[i]), r);
  SuccessRelations out;
  out.success = weights.sum();
  out.rho = 1.0 - out.success / overlap_sq;
  out.epsilon_sq = out.success > 0.0 ? weights.tail(weights.size() - 1).sum() / out.success : 0.0;
  out.peak_power = std::pow(std::norm(gammas[0]), r);
  out.below_overlap = out.success <= overlap_sq + 1e-12;
  out.peak_bounded = out.peak_power <= (1.0 - out.rho) * (1.0 + 10.0 * out.epsilon_sq) + 1e-12;
  return out;
}

}  // namespace wqpe
