#pragma once

// End-to-end Thirring pipelines shared by the CLI, the Python module and the
// acceptance checks: scaling, Trotterized effective Hamiltonian, variational
// warm start and repeated filtering with contamination tracking.

#include <cstdint>
#include <vector>

#include "wqpe/spectral_windows.hpp"
#include "wqpe/stateprep.hpp"
#include "wqpe/thirring.hpp"

namespace wqpe {

struct ThirringSetup {
  ThirringParams params;
  HermitianOperator hamiltonian;
  EigenDecomposition spectrum;
  Scaling scaling;
  ThirringTerms shifted_terms;  // gamma carries scaling.shift
};

ThirringSetup setup_thirring(const ThirringParams& params);

struct TrotterModel {
  int d = 1;
  double dt = 0.0;
  UnitaryOperator step;
  HermitianOperator effective;  // generator of `step`, approximates H + shift
  EigenDecomposition effective_spectrum;
};

TrotterModel trotterize(const ThirringSetup& setup, int d);

// ||H_eff - shift - H||_2.
double trotter_error(const ThirringSetup& setup, const TrotterModel& model);

struct ContaminationSettings {
  int d = 1;
  int m = 8;
  int r_max = 6;
  int layers = 2;
  std::uint64_t seed = kDefaultOptimizerSeed;
  double xi_bins = 0.25;  // |theta0_est - theta_0| in units of 2^-m
  int n_samples = 50;
  std::vector<WindowKind> windows{WindowKind::Rectangular, WindowKind::Cosine};
};

struct ContaminationRow {
  int r = 0;
  WindowKind window = WindowKind::Rectangular;
  double success_prob = 0.0;
  double cum_pr = 0.0;
  double epsilon = 0.0;
  double ratio = 0.0;
  double sigma_chi = 0.0;
};

struct ContaminationResult {
  std::vector<ContaminationRow> rows;
  double overlap = 0.0;           // |phi_0| of the warm start against the H_eff ground state
  double reference_overlap = 0.0;  // same for the unoptimized reference state
  double variational_energy = 0.0;
  double reference_energy = 0.0;
  double ground_phase = 0.0;
  double lambda = 0.0;
  double shift = 0.0;
};

// Filters the variational warm start r = 1 .. r_max times around the H_eff
// ground phase, offset by +xi for the first window and -xi for the second.
ContaminationResult contamination_sweep(const ThirringParams& params, const ContaminationSettings& settings);

}  // namespace wqpe
