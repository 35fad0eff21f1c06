#include "wqpe/experiments.hpp"

#include <cmath>

#include "wqpe/errors.hpp"

namespace wqpe {

ThirringSetup setup_thirring(const ThirringParams& params) {
  HermitianOperator h = build_hamiltonian(params);
  EigenDecomposition spectrum = eig_hermitian(h);
  const Scaling scaling = default_scaling(spectrum.eigenvalues.minCoeff(), spectrum.eigenvalues.maxCoeff());
  ThirringTerms shifted = build_terms(params, scaling.shift);
  return {params, std::move(h), std::move(spectrum), scaling, std::move(shifted)};
}

TrotterModel trotterize(const ThirringSetup& setup, int d) {
  const TrotterConfig cfg{d, setup.scaling.lambda};
  UnitaryOperator step = suzuki2_step(setup.shifted_terms, cfg);
  HermitianOperator effective = effective_hamiltonian(step, d, setup.scaling.lambda);
  EigenDecomposition spectrum = eig_hermitian(effective);
  return {d, cfg.dt(), std::move(step), std::move(effective), std::move(spectrum)};
}

double trotter_error(const ThirringSetup& setup, const TrotterModel& model) {
  return spectral_norm(model.effective.shifted(-setup.scaling.shift).matrix() - setup.hamiltonian.matrix());
}

ContaminationResult contamination_sweep(const ThirringParams& params, const ContaminationSettings& settings) {
  if (settings.r_max < 1) throw RangeError("contamination_sweep: r_max must be >= 1");
  const ThirringSetup setup = setup_thirring(params);
  const TrotterModel model = trotterize(setup, settings.d);

  const ThirringTerms terms = build_terms(params);
  const QuantumState reference = reference_state(terms);
  const OptimizeResult opt = optimize_overlap(terms, settings.layers, reference, settings.seed);
  const QuantumState initial = variational_state(opt.params, terms, reference);

  ContaminationResult out;
  const CVector ground = model.effective_spectrum.eigenvectors.col(0);
  out.overlap = std::abs(ground.dot(initial.amplitudes()));
  out.reference_overlap = std::abs(ground.dot(reference.amplitudes()));
  out.variational_energy = opt.energy;
  out.reference_energy = opt.reference_energy;
  out.lambda = setup.scaling.lambda;
  out.shift = setup.scaling.shift;
  out.ground_phase = setup.scaling.lambda * model.effective_spectrum.eigenvalues[0];

  const double xi = std::ldexp(settings.xi_bins, -settings.m);
  for (std::size_t run = 0; run < settings.windows.size(); ++run) {
    PrepConfig cfg;
    cfg.m = settings.m;
    cfg.window = settings.windows[run];
    cfg.r = settings.r_max;
    cfg.xi = xi;
    cfg.lambda = setup.scaling.lambda;
    cfg.shift = 0.0;  // the effective Hamiltonian already carries the shift
    cfg.theta0_est = out.ground_phase + (run % 2 == 0 ? xi : -xi);
    const PrepReport report = run_preparation(initial, model.effective_spectrum, cfg);
    for (const PrepRow& row : report.rows) {
      const SigmaChi s = sigma_chi_spectral(row.coefficients, model.effective_spectrum, model.dt, settings.n_samples);
      out.rows.push_back({row.r, cfg.window, row.success_prob, row.cum_pr, row.epsilon, row.ratio, s.sigma});
    }
  }
  return out;
}

}  // namespace wqpe
