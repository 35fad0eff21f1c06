#include "wqpe/thirring.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <memory>
#include <random>
#include <string>

#include "wqpe/errors.hpp"

namespace wqpe {

namespace {

constexpr int kRestarts = 5;
constexpr int kMaxIterations = 4000;
constexpr double kInitialStep = 0.25;
constexpr double kSizeTol = 1e-9;

// Spin-up occupation (S^z + 1/2) of site n in basis state `index`.
double up(std::uint64_t index, int n) { return ((index >> n) & 1U) == 0 ? 1.0 : 0.0; }

HermitianOperator hopping(int sites, int first_bond) {
  const Eigen::Index dim = Eigen::Index{1} << sites;
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int n = first_bond; n + 1 < sites; n += 2) {
    const std::uint64_t mask = (std::uint64_t{1} << n) | (std::uint64_t{1} << (n + 1));
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dim); ++i) {
      const bool a = (i >> n) & 1U;
      const bool b = (i >> (n + 1)) & 1U;
      // S+_n S-_{n+1} + S-_n S+_{n+1} swaps antiparallel neighbours.
      if (a != b) h(static_cast<Eigen::Index>(i ^ mask), static_cast<Eigen::Index>(i)) += -0.5;
    }
  }
  return HermitianOperator(std::move(h));
}

struct GslMinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* s) const { gsl_multimin_fminimizer_free(s); }
};
struct GslVectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
using GslVector = std::unique_ptr<gsl_vector, GslVectorDeleter>;

struct Objective {
  const Ansatz* ansatz;
  int layers;
  int evaluations = 0;
};

AnsatzParams unpack(const gsl_vector* x, int layers) {
  AnsatzParams params;
  for (int j = 0; j < layers; ++j) {
    params.alpha.push_back(gsl_vector_get(x, 3 * j));
    params.beta.push_back(gsl_vector_get(x, 3 * j + 1));
    params.gamma.push_back(gsl_vector_get(x, 3 * j + 2));
  }
  return params;
}

double objective(const gsl_vector* x, void* data) {
  auto* obj = static_cast<Objective*>(data);
  ++obj->evaluations;
  return obj->ansatz->energy(unpack(x, obj->layers));
}

}  // namespace

void ThirringParams::validate() const {
  if (sites < 2 || sites > 12 || sites % 2 != 0) {
    throw RangeError("ThirringParams: sites must be even and in [2, 12], got " + std::to_string(sites));
  }
  if (!std::isfinite(mass) || !std::isfinite(coupling)) throw RangeError("ThirringParams: non-finite parameter");
}

ThirringTerms build_terms(const ThirringParams& params, double shift) {
  params.validate();
  const int n_sites = params.sites;
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  check_capacity(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), "build_terms");
  CMatrix diag = CMatrix::Zero(dim, dim);
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dim); ++i) {
    double e = shift;
    for (int n = 0; n < n_sites; ++n) e += params.mass * (n % 2 == 0 ? 1.0 : -1.0) * up(i, n);
    for (int n = 0; n + 1 < n_sites; ++n) e += params.coupling * up(i, n) * up(i, n + 1);
    diag(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = e;
  }
  return {hopping(n_sites, 0), hopping(n_sites, 1), HermitianOperator(std::move(diag))};
}

HermitianOperator build_hamiltonian(const ThirringParams& params) { return build_terms(params).total(); }

double TrotterConfig::dt() const { return 2.0 * kPi * lambda / d; }

void TrotterConfig::validate() const {
  if (d < 1) throw RangeError("TrotterConfig: d must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw RangeError("TrotterConfig: lambda must be positive");
}

UnitaryOperator suzuki2_step(const ThirringTerms& terms, double dt) {
  const UnitaryOperator a = expi_hermitian(terms.alpha, dt / 2.0);
  const UnitaryOperator b = expi_hermitian(terms.beta, dt / 2.0);
  const UnitaryOperator c = expi_hermitian(terms.gamma, dt);
  return a * b * c * b * a;
}

UnitaryOperator suzuki2_step(const ThirringTerms& terms, const TrotterConfig& cfg) {
  cfg.validate();
  return suzuki2_step(terms, cfg.dt());
}

HermitianOperator effective_hamiltonian(const UnitaryOperator& u_step, int d, double lambda) {
  if (d < 1) throw RangeError("effective_hamiltonian: d must be >= 1");
  if (!(lambda > 0.0)) throw RangeError("effective_hamiltonian: lambda must be positive");
  return principal_log_unitary(u_step).scaled(d / (2.0 * kPi * lambda));
}

HermitianOperator chiral_condensate(int sites) {
  if (sites < 1 || sites > 30) throw RangeError("chiral_condensate: sites out of range");
  const Eigen::Index dim = Eigen::Index{1} << sites;
  check_capacity(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), "chiral_condensate");
  CMatrix chi = CMatrix::Zero(dim, dim);
  for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(dim); ++idx) {
    double v = 0.0;
    for (int i = 0; i < sites; ++i) {
      const double z = ((idx >> i) & 1U) == 0 ? 1.0 : -1.0;
      v += (i % 2 == 0 ? -1.0 : 1.0) * z;
    }
    chi(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) = v / sites;
  }
  return HermitianOperator(std::move(chi));
}

SigmaChi sigma_chi(const QuantumState& state, const UnitaryOperator& u_step, int n_samples) {
  if (n_samples < 2) throw RangeError("sigma_chi: n_samples must be >= 2");
  if (static_cast<std::size_t>(u_step.dim()) != state.dim()) throw DimensionError("sigma_chi: dimension mismatch");
  // chi is diagonal, so only its diagonal is needed.
  const RVector chi = chiral_condensate(state.n_qubits()).matrix().diagonal().real();
  RVector samples(n_samples);
  CVector psi = state.amplitudes();
  for (int k = 0; k < n_samples; ++k) {
    psi = u_step.matrix() * psi;
    samples[k] = psi.cwiseAbs2().dot(chi);
  }
  SigmaChi out;
  out.mean = samples.mean();
  out.sigma = std::sqrt((samples.array() - out.mean).square().mean());
  return out;
}

SigmaChi sigma_chi_spectral(const CVector& coeffs, const EigenDecomposition& generator, double dt, int n_samples) {
  if (n_samples < 2) throw RangeError("sigma_chi_spectral: n_samples must be >= 2");
  const Eigen::Index dim = generator.eigenvectors.rows();
  if (coeffs.size() != dim) throw DimensionError("sigma_chi_spectral: dimension mismatch");
  const int sites = static_cast<int>(std::log2(static_cast<double>(dim)));
  const RVector chi = chiral_condensate(sites).matrix().diagonal().real();
  const CMatrix& v = generator.eigenvectors;
  CMatrix x = v.adjoint() * chi.asDiagonal() * v;
  const RVector x_diag = x.diagonal().real();
  x.diagonal().setZero();

  const double constant = coeffs.cwiseAbs2().dot(x_diag);
  RVector oscillating(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    CVector b(dim);
    for (Eigen::Index i = 0; i < dim; ++i) b[i] = coeffs[i] * std::polar(1.0, (k + 1) * dt * generator.eigenvalues[i]);
    oscillating[k] = b.dot(x * b).real();
  }
  SigmaChi out;
  const double shift = oscillating.mean();
  out.mean = constant + shift;
  out.sigma = std::sqrt((oscillating.array() - shift).square().mean());
  return out;
}

void AnsatzParams::validate() const {
  if (beta.size() != alpha.size() || gamma.size() != alpha.size()) {
    throw DimensionError("AnsatzParams: angle vectors differ in length");
  }
}

QuantumState reference_state(const ThirringTerms& terms) {
  const RVector diag = terms.gamma.matrix().diagonal().real();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < diag.size(); ++i) {
    if (diag[i] < diag[best]) best = i;
  }
  const int n = static_cast<int>(std::log2(static_cast<double>(diag.size())));
  return QuantumState::basis(n, static_cast<std::uint64_t>(best));
}

Ansatz::Ansatz(const ThirringTerms& terms, QuantumState reference)
    : alpha_(eig_hermitian(terms.alpha)),
      beta_(eig_hermitian(terms.beta)),
      gamma_(eig_hermitian(terms.gamma)),
      hamiltonian_(terms.total().matrix()),
      reference_(std::move(reference)) {
  if (reference_.dim() != static_cast<std::size_t>(hamiltonian_.rows())) {
    throw DimensionError("Ansatz: reference state does not match the model");
  }
}

void Ansatz::evolve(CVector& amps, const EigenDecomposition& eig, double angle) const {
  if (angle == 0.0) return;
  CVector coeffs = eig.eigenvectors.adjoint() * amps;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs[i] *= std::polar(1.0, -angle * eig.eigenvalues[i]);
  amps = eig.eigenvectors * coeffs;
}

QuantumState Ansatz::state(const AnsatzParams& params) const {
  params.validate();
  CVector amps = reference_.amplitudes();
  for (int j = 0; j < params.layers(); ++j) {
    evolve(amps, alpha_, params.alpha[j]);
    evolve(amps, beta_, params.beta[j]);
    evolve(amps, gamma_, params.gamma[j]);
  }
  return QuantumState(reference_.n_qubits(), std::move(amps)).normalized();
}

double Ansatz::energy(const AnsatzParams& params) const {
  const QuantumState s = state(params);
  return s.amplitudes().dot(hamiltonian_ * s.amplitudes()).real();
}

QuantumState variational_state(const AnsatzParams& params, const ThirringTerms& terms, const QuantumState& reference) {
  return Ansatz(terms, reference).state(params);
}

OptimizeResult optimize_overlap(const ThirringTerms& terms, int layers, const QuantumState& reference,
                                std::uint64_t seed) {
  if (layers < 1) throw RangeError("optimize_overlap: layers must be >= 1");
  gsl_set_error_handler_off();
  const Ansatz ansatz(terms, reference);
  const std::size_t n = static_cast<std::size_t>(3 * layers);

  OptimizeResult out;
  out.params.alpha.assign(layers, 0.0);
  out.params.beta.assign(layers, 0.0);
  out.params.gamma.assign(layers, 0.0);
  out.reference_energy = ansatz.energy(out.params);
  out.energy = out.reference_energy;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> start(-kPi / 2.0, kPi / 2.0);
  Objective obj{&ansatz, layers};
  gsl_multimin_function fn{&objective, n, &obj};
  for (int restart = 0; restart < kRestarts; ++restart) {
    GslVector x(gsl_vector_alloc(n));
    GslVector step(gsl_vector_alloc(n));
    for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x.get(), i, start(rng));
    gsl_vector_set_all(step.get(), kInitialStep);
    std::unique_ptr<gsl_multimin_fminimizer, GslMinimizerDeleter> solver(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
    gsl_multimin_fminimizer_set(solver.get(), &fn, x.get(), step.get());
    for (int it = 0; it < kMaxIterations; ++it) {
      if (gsl_multimin_fminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver.get()), kSizeTol) == GSL_SUCCESS) break;
    }
    const double value = gsl_multimin_fminimizer_minimum(solver.get());
    if (value < out.energy) {
      out.energy = value;
      out.params = unpack(gsl_multimin_fminimizer_x(solver.get()), layers);
    }
  }
  out.evaluations = obj.evaluations;
  return out;
}

}  // namespace wqpe
