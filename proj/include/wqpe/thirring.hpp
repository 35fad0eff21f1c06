#pragma once

// Open-boundary lattice Thirring model in spin form, its Suzuki-2 Trotter step,
// the effective Hamiltonian of that step, the chiral condensate and a layered
// variational warm start.
//
// Site n is qubit n; bit value 0 is spin up (Z = +1).

#include <cstdint>
#include <vector>

#include "wqpe/statevector.hpp"

namespace wqpe {

struct ThirringParams {
  int sites = 4;
  double mass = 1.0;      // lattice mass
  double coupling = 0.5;  // interaction strength

  // sites even, 2 <= sites <= 12.
  void validate() const;
};

// H = alpha + beta + gamma: even-bond hopping, odd-bond hopping, and the
// diagonal mass + interaction part (which also carries any energy shift).
struct ThirringTerms {
  HermitianOperator alpha;
  HermitianOperator beta;
  HermitianOperator gamma;

  HermitianOperator total() const { return alpha + beta + gamma; }
};

// `shift` is added to the diagonal part as shift * I.
ThirringTerms build_terms(const ThirringParams& params, double shift = 0.0);
HermitianOperator build_hamiltonian(const ThirringParams& params);

struct TrotterConfig {
  int d = 1;
  double lambda = 1.0;

  double dt() const;  // 2 pi lambda / d
  void validate() const;
};

// e^{i dt/2 alpha} e^{i dt/2 beta} e^{i dt gamma} e^{i dt/2 beta} e^{i dt/2 alpha}.
UnitaryOperator suzuki2_step(const ThirringTerms& terms, double dt);
UnitaryOperator suzuki2_step(const ThirringTerms& terms, const TrotterConfig& cfg);

// d / (2 pi lambda) * log(u_step).
HermitianOperator effective_hamiltonian(const UnitaryOperator& u_step, int d, double lambda);

// (1/n) sum_i (-1)^{i+1} Z_i.
HermitianOperator chiral_condensate(int sites);

struct SigmaChi {
  double mean = 0.0;
  double sigma = 0.0;  // population standard deviation
};

// Statistics of <state| U^{-k} chi U^k |state> for k = 1 .. n_samples.
SigmaChi sigma_chi(const QuantumState& state, const UnitaryOperator& u_step, int n_samples = 50);

// Same statistics for a state given by its coefficients in the eigenbasis of
// a generator H with U_step = e^{i dt H}. Only the off-diagonal (oscillating)
// terms are summed for the spread, so a small excited-state admixture keeps
// full relative precision instead of drowning in rounding of the O(1) mean.
SigmaChi sigma_chi_spectral(const CVector& coeffs, const EigenDecomposition& generator, double dt,
                            int n_samples = 50);

struct AnsatzParams {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> gamma;

  int layers() const { return static_cast<int>(alpha.size()); }
  void validate() const;
};

// Computational-basis state with the lowest diagonal energy of the gamma term.
QuantumState reference_state(const ThirringTerms& terms);

// Evaluates prod_j e^{-i gamma_j H_gamma} e^{-i beta_j H_beta} e^{-i alpha_j H_alpha} |reference>
// with the three term spectra computed once.
class Ansatz {
 public:
  Ansatz(const ThirringTerms& terms, QuantumState reference);

  QuantumState state(const AnsatzParams& params) const;
  double energy(const AnsatzParams& params) const;
  const QuantumState& reference() const { return reference_; }

 private:
  void evolve(CVector& amps, const EigenDecomposition& eig, double angle) const;

  EigenDecomposition alpha_;
  EigenDecomposition beta_;
  EigenDecomposition gamma_;
  CMatrix hamiltonian_;
  QuantumState reference_;
};

QuantumState variational_state(const AnsatzParams& params, const ThirringTerms& terms, const QuantumState& reference);

inline constexpr std::uint64_t kDefaultOptimizerSeed = 20240607;

struct OptimizeResult {
  AnsatzParams params;
  double energy = 0.0;
  double reference_energy = 0.0;
  int evaluations = 0;
};

// Nelder-Mead simplex over the 3 * layers angles from 5 seeded starting points.
// Keeps the reference (all angles zero) unless a restart lowers the energy.
OptimizeResult optimize_overlap(const ThirringTerms& terms, int layers, const QuantumState& reference,
                                std::uint64_t seed = kDefaultOptimizerSeed);

}  // namespace wqpe
