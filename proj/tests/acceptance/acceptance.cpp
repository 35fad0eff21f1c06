// One line per acceptance criterion: PASS/FAIL, the measured quantities, and
// the wall time against its budget. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "wqpe/experiments.hpp"
#include "wqpe/qpe.hpp"
#include "wqpe/spectral_windows.hpp"
#include "wqpe/stateprep.hpp"
#include "wqpe/thirring.hpp"

using namespace wqpe;

namespace {

constexpr std::uint64_t kSeed = 20240607;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> body;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c, d);
  return buf;
}

QpeConfig qpe_config(int t, int p, WindowKind w, double lambda = 1.0, double shift = 0.0) {
  QpeConfig cfg;
  cfg.t = t;
  cfg.p = p;
  cfg.window = w;
  cfg.lambda = lambda;
  cfg.shift = shift;
  return cfg;
}

CMatrix gaussian_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex(n(rng), n(rng));
  return (a + a.adjoint()) / 2.0;
}

CVector gaussian_state(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = Complex(n(rng), n(rng));
  return v / v.norm();
}

// (1/M) sum_x w(x) w0 e^{-2 pi i x q / M} in long double.
long double brute_filter(WindowKind kind, long double q, int m) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const long long dim = 1LL << m;
  long double re = 0, im = 0;
  for (long long x = -dim / 2; x < dim / 2; ++x) {
    long double w = 1.0L / dim;
    if (kind == WindowKind::Cosine) w *= std::sqrt(2.0L) * std::cos(pi * x / dim);
    re += w * std::cos(-2 * pi * x * q / dim);
    im += w * std::sin(-2 * pi * x * q / dim);
  }
  return std::abs(im) < 1e-15L ? re : std::sqrt(re * re + im * im);
}

long double brute_cosine_plus(long double q, int m) {
  return (brute_filter(WindowKind::Cosine, q - 0.5L, m) + brute_filter(WindowKind::Cosine, q + 0.5L, m)) /
         std::sqrt(2.0L);
}

Outcome cosine_worst_case() {
  const int m = 10;
  const std::int64_t z = 37;
  double worst = 1.0, edge_lo = 0.0, edge_hi = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double delta = -0.5 + i / 200.0;
    const OutcomeDistribution d = analytic_distribution((z + delta) / std::ldexp(1.0, m), qpe_config(m, 0, WindowKind::Cosine));
    // z is a nearest integer for every delta in [-1/2, 1/2].
    const double pr = d.at(z);
    worst = std::min(worst, pr);
    if (i == 0) edge_lo = pr;
    if (i == 200) edge_hi = pr;
  }
  const bool pass = worst >= 0.5 - 1e-12 && std::abs(edge_lo - 0.5) <= 1e-12 && std::abs(edge_hi - 0.5) <= 1e-12;
  return {pass, fmt("min Pr = %.15f, Pr(-1/2) = %.15f, Pr(+1/2) = %.15f", worst, edge_lo, edge_hi)};
}

Outcome rect_worst_case() {
  const int m = 10;
  const double lo = 4.0 / (kPi * kPi);
  bool pass = true;
  double seen = 0.0;
  for (double delta : {-0.5, 0.5}) {
    const OutcomeDistribution d = analytic_distribution((37 + delta) / std::ldexp(1.0, m), qpe_config(m, 0, WindowKind::Rectangular));
    const double pr = d.at(37);
    seen = pr;
    pass = pass && pr >= lo && pr <= lo + 1e-3;
  }
  return {pass, fmt("Pr(z) = %.12f in [%.12f, %.12f]", seen, lo, lo + 1e-3)};
}

Outcome error_rate_curves() {
  const int t = 10;
  bool order = true, zeros = true;
  double max_rect0 = 0.0, max_cos_half = 0.0;
  for (double delta : {0.0, -0.1, -0.2, -0.3, -0.4, -0.5}) {
    for (int p = 1; p <= 8; ++p) {
      const double er = error_rate(t, p, delta, WindowKind::Rectangular);
      const double ec = error_rate(t, p, delta, WindowKind::Cosine);
      if (delta != 0.0 && p >= 2 && !(ec < er)) order = false;
      if (delta == 0.0) max_rect0 = std::max(max_rect0, er);
      if (delta == -0.5) max_cos_half = std::max(max_cos_half, ec);
    }
  }
  zeros = max_rect0 <= 1e-25 && max_cos_half <= 1e-25;
  return {order && zeros, std::string(order ? "cos < rect for p in 2..8 at all nonzero offsets" : "ordering violated") +
                              fmt(", max e_rect(0) = %.3g, max e_cos(-1/2) = %.3g", max_rect0, max_cos_half)};
}

Outcome tail_bound() {
  bool pass = true;
  std::string detail;
  for (int p = 3; p <= 5; ++p) {
    const TailBoundCheck c = verify_tail_bound(8, p);
    pass = pass && c.empirical < c.bound;
    detail += fmt("p=%.0f: %.3e < %.3e; ", p, c.empirical, c.bound);
  }
  return {pass, detail};
}

Outcome qubit_calculators() {
  const int a = min_extra_qubits(0.1, WindowKind::Rectangular);
  const int b = min_extra_qubits(0.001, WindowKind::Rectangular);
  const int c = min_extra_qubits(0.001, WindowKind::Cosine);
  return {a == 3 && b == 9 && c == 3, fmt("rect(0.1) = %.0f, rect(0.001) = %.0f, cos(0.001) = %.0f", a, b, c)};
}

Outcome circuit_equivalence() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> pick(0, 7);
  double worst = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    const HermitianOperator h(gaussian_hermitian(rng, 8));
    const EigenDecomposition e = eig_hermitian(h);
    const Scaling s = default_scaling(e.eigenvalues.minCoeff(), e.eigenvalues.maxCoeff());
    const UnitaryOperator u = expi_hermitian(h.shifted(s.shift), 2.0 * kPi * s.lambda);
    const int k = pick(rng);
    const QuantumState psi = QuantumState::from_amplitudes(e.eigenvectors.col(k));
    for (int m = 3; m <= 6; ++m) {
      for (WindowKind w : {WindowKind::Rectangular, WindowKind::Cosine}) {
        const QpeConfig cfg = qpe_config(m, 0, w, s.lambda, s.shift);
        const RVector sim = run_qpe_circuit(psi, u, cfg).probabilities;
        const RVector ref = analytic_distribution(s.lambda * (e.eigenvalues[k] + s.shift), cfg).probabilities;
        worst = std::max(worst, 0.5 * (sim - ref).cwiseAbs().sum());
      }
    }
  }
  return {worst < 1e-10, fmt("max TV distance = %.3e", worst)};
}

Outcome filter_path_equivalence() {
  std::mt19937_64 rng(kSeed + 1);
  std::uniform_real_distribution<double> offset(-0.5, 0.5);
  double worst_fid = 0.0, worst_pr = 0.0;
  for (int inst = 0; inst < 10; ++inst) {
    const HermitianOperator h(gaussian_hermitian(rng, 4));
    const EigenDecomposition e = eig_hermitian(h);
    const Scaling s = default_scaling(e.eigenvalues.minCoeff(), e.eigenvalues.maxCoeff());
    const UnitaryOperator u = expi_hermitian(h.shifted(s.shift), 2.0 * kPi * s.lambda);
    const QuantumState psi = QuantumState::from_amplitudes(gaussian_state(rng, 4));
    for (WindowKind w : {WindowKind::Rectangular, WindowKind::Cosine}) {
      PrepConfig cfg;
      cfg.m = 5;
      cfg.window = w;
      cfg.r = 2;
      cfg.lambda = s.lambda;
      cfg.shift = s.shift;
      cfg.theta0_est = s.lambda * (e.eigenvalues[0] + s.shift) + offset(rng) / 32.0;
      const FilterOutcome a = apply_filter_circuit(psi, u, cfg);
      const FilterOutcome b = apply_filter_eigen(psi, e, cfg);
      worst_fid = std::max(worst_fid, 1.0 - fidelity(a.state, b.state));
      worst_pr = std::max(worst_pr, std::abs(a.success_prob - b.success_prob));
    }
  }
  return {worst_fid < 1e-10 && worst_pr < 1e-10, fmt("max 1 - fidelity = %.3e, max |dP| = %.3e", worst_fid, worst_pr)};
}

Outcome filter_closed_forms() {
  const int m = 6;
  double worst = 0.0;
  auto track = [&](double got, long double want, long double brute) {
    worst = std::max({worst, std::abs(got - static_cast<double>(want)), std::abs(got - static_cast<double>(brute))});
  };
  for (double s : {-0.5, 0.5}) {
    const long double b = brute_filter(WindowKind::Cosine, s, m);
    track(std::norm(filter_cosine(s, m)), 0.5L, b * b);
  }
  track(filter_cosine_plus(0.0, m).real(), 1.0L, brute_cosine_plus(0.0L, m));
  for (double q : {-1.0, 1.0}) track(filter_cosine_plus(q, m).real(), 0.5L, brute_cosine_plus(q, m));
  for (int q = 2; q < 32; ++q) {
    track(filter_cosine_plus(q, m).real(), 0.0L, brute_cosine_plus(q, m));
    track(filter_cosine_plus(-q, m).real(), 0.0L, brute_cosine_plus(-q, m));
  }
  return {worst <= 1e-12, fmt("max deviation = %.3e", worst)};
}

Outcome sigma_chi_decay() {
  ContaminationSettings settings;  // d = 1, m = 8, r = 1..6, both windows
  const ContaminationResult res = contamination_sweep({4, 1.0, 0.5}, settings);
  std::vector<double> rect(7), cos(7);
  for (const ContaminationRow& row : res.rows) (row.window == WindowKind::Rectangular ? rect : cos)[row.r] = row.sigma_chi;

  auto fit = [](const std::vector<double>& s) {
    // log sigma against r by least squares.
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double n = 6;
    for (int r = 1; r <= 6; ++r) {
      const double y = std::log(s[r]);
      sx += r;
      sy += y;
      sxx += r * r;
      sxy += r * y;
      syy += y * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double corr = (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
    return std::pair<double, double>{slope, corr * corr};
  };
  const auto [sr, r2r] = fit(rect);
  const auto [sc, r2c] = fit(cos);
  bool ordered = true;
  for (int r = 2; r <= 6; ++r) ordered = ordered && cos[r] <= rect[r];
  const bool pass = sr < 0 && sc < 0 && r2r > 0.9 && r2c > 0.9 && ordered;
  return {pass, fmt("rect slope %.3f R2 %.4f; cos slope %.3f R2 %.4f", sr, r2r, sc, r2c) +
                    (ordered ? "; cos <= rect for r >= 2" : "; ordering violated")};
}

Outcome trotter_scaling() {
  const ThirringSetup setup = setup_thirring({4, 1.0, 0.5});
  std::vector<double> err;
  for (int d : {1, 2, 4, 8}) err.push_back(trotter_error(setup, trotterize(setup, d)));
  bool pass = true;
  std::string detail = "ratios";
  for (std::size_t i = 0; i + 1 < err.size(); ++i) {
    const double ratio = err[i] / err[i + 1];
    pass = pass && ratio >= 3.0 && ratio <= 5.0;
    detail += fmt(" %.3f", ratio);
  }
  return {pass, detail};
}

Outcome perturbation_bound() {
  const ThirringSetup setup = setup_thirring({4, 1.0, 0.5});
  bool pass = true;
  std::string detail;
  for (int d = 1; d <= 3; ++d) {
    const TrotterModel model = trotterize(setup, d);
    const PerturbationCheck c =
        perturbation_error_bound(setup.hamiltonian, model.effective.shifted(-setup.scaling.shift), setup.scaling.lambda);
    pass = pass && c.holds();
    detail += fmt("d=%.0f: %.4f <= %.4f; ", d, c.distance, c.bound);
  }
  return {pass, detail};
}

Outcome two_site_anchor() {
  const EigenDecomposition e = eig_hermitian(build_hamiltonian({2, 1.0, 0.0}));
  // Flip sector [[-1, -1/2], [-1/2, 1]]: -sqrt(1 + 1/4).
  const double expect = -std::sqrt(5.0) / 2.0;
  const double err = std::abs(e.eigenvalues[0] - expect);
  return {err <= 1e-12, fmt("E0 = %.15f, |E0 + sqrt(5)/2| = %.2e", e.eigenvalues[0], err)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"cosine worst-case success >= 1/2 (m=10)", 1.0, cosine_worst_case},
      {"rectangular worst case in [4/pi^2, 4/pi^2 + 1e-3] (m=10)", 1.0, rect_worst_case},
      {"error rate vs extra qubits (t=10)", 10.0, error_rate_curves},
      {"cosine tail bound (t=8, p=3..5)", 10.0, tail_bound},
      {"qubit calculators", 1e-3, qubit_calculators},
      {"circuit vs analytic outcome distribution", 60.0, circuit_equivalence},
      {"filter circuit vs eigenbasis filter", 60.0, filter_path_equivalence},
      {"filter closed forms vs brute-force DFT (m=6)", 1.0, filter_closed_forms},
      {"sigma_chi exponential decay (N=4, d=1, m=8)", 300.0, sigma_chi_decay},
      {"Trotter error second-order scaling (N=4)", 30.0, trotter_scaling},
      {"ground-state perturbation bound (N=4, d=1..3)", 30.0, perturbation_bound},
      {"two-site ground energy -sqrt(5)/2", 1e-3, two_site_anchor},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && elapsed < c.budget_s;
    failures += pass ? 0 : 1;
    std::printf("%s  %s: %s [%.4f s / %.4g s]\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), elapsed,
                c.budget_s);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
