#include "wqpe/qpe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "wqpe/circuit.hpp"
#include "wqpe/errors.hpp"

namespace wqpe {

namespace {

double filter_power(WindowKind kind, double q, int m) { return std::norm(measurement_filter(kind, q, m)); }

// Offset q - 2^m theta reduced into [-2^{m-1}, 2^{m-1}).
double reduced_offset(std::int64_t q, double scaled_theta, double dim) {
  double x = static_cast<double>(q) - scaled_theta;
  x -= dim * std::floor(x / dim + 0.5);
  return x;
}

using ControlledPower = std::function<void(Register&, int qubit, std::int64_t exponent)>;

OutcomeDistribution simulate(const QuantumState& input, const QpeConfig& cfg, const ControlledPower& power) {
  cfg.validate();
  const int m = cfg.m();
  const double dim = std::ldexp(1.0, m);
  Register reg(input, m);
  if (cfg.window == WindowKind::Rectangular) {
    for (int q = 0; q < m; ++q) reg.hadamard(q);
  } else {
    reg.hadamard(0);
    reg.ancilla_qft(true);
    // Removes the e^{i pi x / 2^m} tilt left by the inverse transform.
    reg.phase(m - 1, kPi * std::ldexp(1.0, m - 1) / dim);
    for (int q = 0; q < m - 1; ++q) reg.phase(q, -kPi * std::ldexp(1.0, q) / dim);
  }
  for (int q = 0; q < m - 1; ++q) power(reg, q, std::int64_t{1} << q);
  power(reg, m - 1, -(std::int64_t{1} << (m - 1)));
  reg.ancilla_qft(false);

  const RVector marginal = reg.ancilla_marginal();
  OutcomeDistribution out{m, RVector(marginal.size())};
  for (Eigen::Index y = 0; y < marginal.size(); ++y) {
    const std::int64_t label = centered_label(static_cast<std::uint64_t>(y), m);
    out.probabilities[label + (std::int64_t{1} << (m - 1))] = marginal[y];
  }
  return out;
}

}  // namespace

void QpeConfig::validate() const {
  if (t < 1) throw RangeError("QpeConfig: t must be >= 1");
  if (p < 0) throw RangeError("QpeConfig: p must be >= 0");
  if (m() > 14) throw RangeError("QpeConfig: m = t + p must be <= 14");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw RangeError("QpeConfig: lambda must be positive");
}

double OutcomeDistribution::at(std::int64_t label) const {
  const std::int64_t half = std::int64_t{1} << (m - 1);
  if (label < -half || label >= half) throw RangeError("OutcomeDistribution: label out of range");
  return probabilities[label + half];
}

double wrap_phase(double theta) { return theta - std::floor(theta + 0.5); }

PhaseDecomposition decompose_phase(double theta, int m) {
  const double scaled = wrap_phase(theta) * std::ldexp(1.0, m);
  // Ties go up, so the offset lands in [-1/2, 1/2).
  const double z = std::floor(scaled + 0.5);
  const double half = std::ldexp(1.0, m - 1);
  PhaseDecomposition out;
  out.delta2m = scaled - z;
  out.z = static_cast<std::int64_t>(z >= half ? z - 2 * half : z);
  return out;
}

OutcomeDistribution analytic_distribution(double theta, const QpeConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(theta)) throw RangeError("analytic_distribution: theta must be finite");
  const int m = cfg.m();
  const double dim = std::ldexp(1.0, m);
  const double scaled = wrap_phase(theta) * dim;
  const std::int64_t half = std::int64_t{1} << (m - 1);
  OutcomeDistribution out{m, RVector(2 * half)};
  for (std::int64_t q = -half; q < half; ++q) {
    out.probabilities[q + half] = filter_power(cfg.window, reduced_offset(q, scaled, dim), m);
  }
  return out;
}

OutcomeDistribution analytic_mixture(const RVector& weights, const RVector& thetas, const QpeConfig& cfg) {
  if (weights.size() != thetas.size()) throw DimensionError("analytic_mixture: weights and phases differ in length");
  cfg.validate();
  OutcomeDistribution out{cfg.m(), RVector::Zero(Eigen::Index{1} << cfg.m())};
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0.0) continue;
    out.probabilities += weights[i] * analytic_distribution(thetas[i], cfg).probabilities;
  }
  return out;
}

OutcomeDistribution run_qpe_circuit(const QuantumState& input, const UnitaryOperator& u, const QpeConfig& cfg) {
  if (static_cast<std::size_t>(u.dim()) != input.dim()) throw DimensionError("run_qpe_circuit: dimension mismatch");
  const CMatrix forward = u.matrix();
  const CMatrix backward = u.matrix().adjoint();
  return simulate(input, cfg, [&](Register& reg, int qubit, std::int64_t exponent) {
    reg.controlled_repeat(qubit, exponent >= 0 ? forward : backward, exponent >= 0 ? exponent : -exponent);
  });
}

OutcomeDistribution run_qpe_circuit(const QuantumState& input, const UnitarySpectrum& u, const QpeConfig& cfg) {
  if (static_cast<std::size_t>(u.eigenvectors.rows()) != input.dim()) {
    throw DimensionError("run_qpe_circuit: dimension mismatch");
  }
  return simulate(input, cfg, [&](Register& reg, int qubit, std::int64_t exponent) {
    reg.controlled_apply(qubit, u.power(exponent));
  });
}

double error_rate(int t, int p, double delta2m, WindowKind window) {
  if (t < 1) throw RangeError("error_rate: t must be >= 1");
  if (p < 1) throw RangeError("error_rate: p must be >= 1");
  if (t + p > 24) throw RangeError("error_rate: t + p must be <= 24");
  if (!(std::abs(delta2m) <= 0.5)) throw RangeError("error_rate: |delta2m| must be <= 1/2");
  const int m = t + p;
  const std::int64_t half = std::int64_t{1} << (m - 1);
  const std::int64_t k = std::int64_t{1} << (p - 1);
  // Outermost terms first: they are the smallest.
  double upper = 0.0;
  for (std::int64_t l = half - 1; l >= k; --l) upper += filter_power(window, static_cast<double>(l) - delta2m, m);
  double lower = 0.0;
  for (std::int64_t l = -half; l < -k; ++l) lower += filter_power(window, static_cast<double>(l) - delta2m, m);
  return upper + lower;
}

int min_extra_qubits(double e_target, WindowKind window) {
  if (!(e_target > 0.0 && e_target < 1.0)) throw RangeError("min_extra_qubits: target must lie in (0, 1)");
  double arg = 0.0;
  if (window == WindowKind::Rectangular) {
    arg = 1.0 / (2.0 * e_target) + 0.5;
  } else {
    arg = std::pow(kPi, 2.0 / 3.0) / (std::cbrt(48.0) * std::cbrt(e_target)) + 2.0;
  }
  return static_cast<int>(std::ceil(std::log2(arg)));
}

TailBoundCheck verify_tail_bound(int t, int p, int grid_points) {
  if (p < 1 || (std::int64_t{1} << (p - 1)) <= 2) throw RangeError("verify_tail_bound: requires 2^{p-1} >= 3");
  if (grid_points < 2) throw RangeError("verify_tail_bound: need at least two grid points");
  const double k = std::ldexp(1.0, p - 1);
  TailBoundCheck out{t, p, 0.0, 0.0, kPi * kPi / (48.0 * std::pow(k - 2.0, 3))};
  for (int i = 0; i < grid_points; ++i) {
    const double delta = -0.5 + static_cast<double>(i) / (grid_points - 1);
    const double e = error_rate(t, p, delta, WindowKind::Cosine);
    if (e > out.empirical) {
      out.empirical = e;
      out.worst_delta2m = delta;
    }
  }
  return out;
}

double cbar_metric(const QpeConfig& cfg, int nodes) {
  cfg.validate();
  const int m = cfg.m();
  if (m > 12) throw RangeError("cbar_metric: m must be <= 12");
  if (nodes < 2) throw RangeError("cbar_metric: need at least two nodes");
  const double dim = std::ldexp(1.0, m);
  const std::int64_t half = std::int64_t{1} << (m - 1);
  double total = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double turns = static_cast<double>(j) / nodes;  // theta / 2 pi
    const double scaled = turns * dim;
    for (std::int64_t z = -half; z < half; ++z) {
      const double pr = filter_power(cfg.window, reduced_offset(z, scaled, dim), m);
      const double s = detail::sinpi(turns - static_cast<double>(z) / dim);
      total += pr * s * s;
    }
  }
  return total / nodes;
}

}  // namespace wqpe
