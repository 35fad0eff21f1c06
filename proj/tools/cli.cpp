#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "wqpe/errors.hpp"
#include "wqpe/experiments.hpp"
#include "wqpe/qpe.hpp"
#include "wqpe/spectral_windows.hpp"
#include "wqpe/stateprep.hpp"
#include "wqpe/thirring.hpp"

#ifndef WQPE_VERSION
#define WQPE_VERSION "0.0.0"
#endif

namespace wqpe::cli {

namespace {

// Input problems that are the caller's fault; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kNumericallyZero = 1e-25;

std::vector<WindowKind> windows_for(const std::string& choice) {
  if (choice == "both") return {WindowKind::Rectangular, WindowKind::Cosine};
  return {parse_window_kind(choice)};
}

const std::vector<std::string> kWindowChoices{"rect", "rectangular", "cos", "cosine", "both"};

struct ModelOptions {
  std::string path;
  int sites = 4;
  double mass = 1.0;
  double coupling = 0.5;

  void attach(CLI::App* app) {
    app->add_option("--model", path, "JSON model file");
    app->add_option("--sites", sites, "Lattice sites (even)")->check(CLI::Range(2, 12));
    app->add_option("--mass", mass, "Lattice mass");
    app->add_option("--coupling", coupling, "Interaction strength");
  }

  ThirringParams resolve() const {
    ThirringParams params{sites, mass, coupling};
    if (!path.empty()) {
      const ModelFile model = load_model(path);
      if (model.kind != "thirring") throw UsageError("model '" + path + "' is not a thirring model");
      params = model.thirring;
    }
    try {
      params.validate();
    } catch (const RangeError& e) {
      throw UsageError(e.what());
    }
    return params;
  }

  void describe(Manifest& manifest, const ThirringParams& p) const {
    if (!path.empty()) manifest.parameters.emplace_back("model", path);
    manifest.parameters.emplace_back("sites", std::to_string(p.sites));
    manifest.parameters.emplace_back("mass", format_number(p.mass));
    manifest.parameters.emplace_back("coupling", format_number(p.coupling));
  }
};

struct Output {
  std::string path;
  void attach(CLI::App* app) { app->add_option("--out", path, "Output CSV (default stdout)"); }
};

void emit(const Output& target, Manifest manifest, const Table& table, std::ostream& out) {
  manifest.output = target.path.empty() ? "-" : target.path;
  const std::string text = render_csv(manifest, table);
  if (target.path.empty()) {
    out << text;
  } else {
    write_atomically(target.path, text);
  }
}

Table windows_dump(int m, WindowKind kind, int oversample) {
  const WindowSpec spec{m, kind};
  const CenteredSeries window = window_amplitudes(spec);
  Table table{{"series", "index", "re_value", "im_value", "abs2"}, {}};
  for (std::size_t i = 0; i < window.values.size(); ++i) {
    const Complex v = window.values[i];
    table.rows.push_back({"window", std::to_string(window.label(i)), format_number(v.real()),
                          format_number(v.imag()), format_number(std::norm(v))});
  }
  const std::int64_t half = std::int64_t{1} << (m - 1);
  for (std::int64_t j = -half * oversample; j < half * oversample; ++j) {
    const double q = static_cast<double>(j) / oversample;
    const Complex v = measurement_filter(kind, q, m);
    table.rows.push_back({"filter", format_number(q), format_number(v.real()), format_number(v.imag()),
                          format_number(std::norm(v))});
  }
  return table;
}

QuantumState initial_for(const std::string& choice, const ThirringParams& params, const HermitianOperator& h,
                         std::uint64_t seed, int layers) {
  const ThirringTerms terms = build_terms(params);
  const QuantumState reference = reference_state(terms);
  if (choice == "reference") return reference;
  if (choice == "ground") return QuantumState::from_amplitudes(eig_hermitian(h).eigenvectors.col(0));
  const OptimizeResult opt = optimize_overlap(terms, layers, reference, seed);
  return variational_state(opt.params, terms, reference);
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string render_csv(const Manifest& manifest, const Table& table) {
  std::ostringstream os;
  os << "# command: " << manifest.command << '\n';
  os << "# tool_version: " << WQPE_VERSION << '\n';
  os << "# seed: " << manifest.seed << '\n';
  os << "# output: " << manifest.output << '\n';
  for (const auto& [key, value] : manifest.parameters) os << "# param." << key << ": " << value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write '" + tmp.string() + "'");
    f << text;
    f.flush();
    if (!f) throw UsageError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw UsageError("cannot move output into '" + path + "': " + ec.message());
  }
}

ModelFile load_model(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read model file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed model file '" + path + "': " + e.what());
  }
  ModelFile model;
  try {
    model.kind = doc.at("model").get<std::string>();
    if (model.kind == "thirring") {
      model.thirring.sites = doc.at("sites").get<int>();
      model.thirring.mass = doc.value("mass", 1.0);
      model.thirring.coupling = doc.value("coupling", 0.5);
    } else if (model.kind == "matrix") {
      const auto re = doc.at("re").get<std::vector<std::vector<double>>>();
      const auto im = doc.contains("im") ? doc.at("im").get<std::vector<std::vector<double>>>()
                                         : std::vector<std::vector<double>>{};
      const auto n = static_cast<Eigen::Index>(re.size());
      model.matrix = CMatrix::Zero(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(re[i].size()) != n) throw UsageError("matrix model is not square");
        for (Eigen::Index j = 0; j < n; ++j) {
          const double imag = im.empty() ? 0.0 : im.at(i).at(j);
          model.matrix(i, j) = Complex(re[i][j], imag);
        }
      }
    } else {
      throw UsageError("unknown model kind '" + model.kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("model file '" + path + "': " + e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError("model file '" + path + "': malformed matrix");
  }
  return model;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Windowed phase estimation and projective ground-state preparation"};
  app.set_version_flag("--version", WQPE_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = kDefaultOptimizerSeed;
  app.add_option("--seed", seed, "Optimizer seed")->capture_default_str();

  // windows dump
  auto* windows = app.add_subcommand("windows", "Window and filter tables");
  windows->require_subcommand(1);
  auto* dump = windows->add_subcommand("dump", "Window amplitudes and filter values");
  int dump_m = 6;
  std::string dump_kind = "cos";
  int oversample = 1;
  Output dump_out;
  dump->add_option("--m", dump_m, "Ancilla qubits")->check(CLI::Range(1, 14));
  dump->add_option("--kind", dump_kind, "rect or cos")
      ->check(CLI::IsMember({"rect", "rectangular", "cos", "cosine"}));
  dump->add_option("--oversample", oversample, "Filter points per unit q")->check(CLI::Range(1, 64));
  dump_out.attach(dump);

  // qpe ...
  auto* qpe = app.add_subcommand("qpe", "Phase estimation");
  qpe->require_subcommand(1);
  auto* err_rate = qpe->add_subcommand("error-rate", "Tail error rate against extra qubits");
  int er_t = 10, er_pmin = 1, er_pmax = 8;
  double er_delta = -0.3;
  std::string er_window = "both";
  Output er_out;
  err_rate->add_option("--t", er_t, "Precision qubits")->check(CLI::Range(1, 20));
  err_rate->add_option("--p-min", er_pmin, "Smallest p")->check(CLI::Range(1, 20));
  err_rate->add_option("--p-max", er_pmax, "Largest p")->check(CLI::Range(1, 20));
  err_rate->add_option("--delta2m", er_delta, "Offset from the nearest grid point")->check(CLI::Range(-0.5, 0.5));
  err_rate->add_option("--window", er_window)->check(CLI::IsMember(kWindowChoices));
  er_out.attach(err_rate);

  auto* qubits = qpe->add_subcommand("qubits", "Extra qubits for a target error rate");
  double q_e = 0.01;
  int q_t = 0;
  std::string q_window = "both";
  Output q_out;
  qubits->add_option("--e", q_e, "Target error rate")->required();
  qubits->add_option("--t", q_t, "Precision qubits added to p for m")->check(CLI::Range(0, 30));
  qubits->add_option("--window", q_window)->check(CLI::IsMember(kWindowChoices));
  q_out.attach(qubits);

  auto* run = qpe->add_subcommand("run", "Outcome distribution for a model Hamiltonian");
  std::string run_model;
  int run_m = 6;
  std::string run_window = "cos", run_path = "analytic", run_state = "reference";
  int run_layers = 2;
  Output run_out;
  run->add_option("--model", run_model, "JSON model file")->required();
  run->add_option("--m", run_m, "Ancilla qubits")->check(CLI::Range(1, 14));
  run->add_option("--window", run_window)->check(CLI::IsMember({"rect", "rectangular", "cos", "cosine"}));
  run->add_option("--path", run_path, "analytic or circuit")->check(CLI::IsMember({"analytic", "circuit"}));
  run->add_option("--state", run_state, "reference, variational or ground (thirring only)")
      ->check(CLI::IsMember({"reference", "variational", "ground"}));
  run->add_option("--layers", run_layers)->check(CLI::Range(1, 8));
  run_out.attach(run);

  auto* cbar = qpe->add_subcommand("cbar", "Mean angular cost for both windows");
  int cb_min = 1, cb_max = 8;
  Output cb_out;
  cbar->add_option("--m-min", cb_min)->check(CLI::Range(1, 12));
  cbar->add_option("--m-max", cb_max)->check(CLI::Range(1, 12));
  cb_out.attach(cbar);

  // prepare
  auto* prepare = app.add_subcommand("prepare", "Iterative ground-state preparation on the Thirring model");
  ModelOptions prep_model;
  ContaminationSettings prep;
  std::string prep_window = "both";
  Output prep_out;
  prep_model.attach(prepare);
  prepare->add_option("--d", prep.d, "Trotter steps per evolution")->check(CLI::Range(1, 64));
  prepare->add_option("--m", prep.m, "Ancilla qubits")->check(CLI::Range(1, 14));
  prepare->add_option("--r-max", prep.r_max, "Filter rounds")->check(CLI::Range(1, 64));
  prepare->add_option("--window", prep_window)->check(CLI::IsMember(kWindowChoices));
  prepare->add_option("--layers", prep.layers, "Ansatz layers")->check(CLI::Range(1, 8));
  prepare->add_option("--xi-bins", prep.xi_bins, "Estimate offset in units of 2^-m")->check(CLI::Range(0.0, 8.0));
  prepare->add_option("--n-samples", prep.n_samples, "Trotter steps sampled for sigma_chi")
      ->check(CLI::Range(2, 100000));
  prep_out.attach(prepare);

  // varprep
  auto* varprep = app.add_subcommand("varprep", "Variational warm start");
  ModelOptions var_model;
  int var_layers = 2;
  Output var_out;
  var_model.attach(varprep);
  varprep->add_option("--layers", var_layers)->check(CLI::Range(1, 8));
  var_out.attach(varprep);

  // bounds check
  auto* bounds = app.add_subcommand("bounds", "Analytic bound audits");
  bounds->require_subcommand(1);
  auto* check = bounds->add_subcommand("check", "Tail bound and perturbation bound sweeps");
  int bc_t = 8, bc_pmin = 3, bc_pmax = 5, bc_dmax = 3;
  ModelOptions bc_model;
  Output bc_out;
  check->add_option("--t", bc_t)->check(CLI::Range(1, 16));
  check->add_option("--p-min", bc_pmin)->check(CLI::Range(3, 8));
  check->add_option("--p-max", bc_pmax)->check(CLI::Range(3, 8));
  check->add_option("--d-max", bc_dmax)->check(CLI::Range(1, 16));
  bc_model.attach(check);
  bc_out.attach(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Manifest manifest;
    manifest.seed = seed;
    if (dump->parsed()) {
      manifest.command = "windows dump";
      manifest.parameters = {{"m", std::to_string(dump_m)},
                             {"kind", std::string(to_string(parse_window_kind(dump_kind)))},
                             {"oversample", std::to_string(oversample)}};
      emit(dump_out, manifest, windows_dump(dump_m, parse_window_kind(dump_kind), oversample), out);
    } else if (err_rate->parsed()) {
      if (er_pmin > er_pmax) throw UsageError("--p-min exceeds --p-max");
      if (er_t + er_pmax > 24) throw UsageError("t + p-max must be <= 24");
      const auto kinds = windows_for(er_window);
      manifest.command = "qpe error-rate";
      manifest.parameters = {{"t", std::to_string(er_t)},
                             {"p_min", std::to_string(er_pmin)},
                             {"p_max", std::to_string(er_pmax)},
                             {"delta2m", format_number(er_delta)},
                             {"window", er_window},
                             {"numerically_zero_below", format_number(kNumericallyZero)}};
      Table table{{"p"}, {}};
      for (WindowKind k : kinds) table.columns.push_back(k == WindowKind::Rectangular ? "e_rect" : "e_cos");
      for (int p = er_pmin; p <= er_pmax; ++p) {
        std::vector<std::string> row{std::to_string(p)};
        for (WindowKind k : kinds) row.push_back(format_number(error_rate(er_t, p, er_delta, k)));
        table.rows.push_back(std::move(row));
      }
      emit(er_out, manifest, table, out);
    } else if (qubits->parsed()) {
      if (!(q_e > 0.0 && q_e < 1.0)) throw UsageError("--e must lie in (0, 1)");
      manifest.command = "qpe qubits";
      manifest.parameters = {{"e", format_number(q_e)}, {"t", std::to_string(q_t)}, {"window", q_window}};
      Table table{{"window", "p", "m"}, {}};
      for (WindowKind k : windows_for(q_window)) {
        const int p = min_extra_qubits(q_e, k);
        table.rows.push_back({std::string(to_string(k)), std::to_string(p), std::to_string(q_t + p)});
      }
      emit(q_out, manifest, table, out);
    } else if (run->parsed()) {
      const ModelFile model = load_model(run_model);
      HermitianOperator h = model.kind == "thirring" ? build_hamiltonian(model.thirring)
                                                     : HermitianOperator(model.matrix);
      const EigenDecomposition eig = eig_hermitian(h);
      const Scaling scaling = default_scaling(eig.eigenvalues.minCoeff(), eig.eigenvalues.maxCoeff());
      QuantumState state(0);
      if (model.kind == "thirring") {
        state = initial_for(run_state, model.thirring, h, seed, run_layers);
      } else {
        if (run_state != "ground" && run_state != "reference") throw UsageError("matrix models support ground or reference");
        state = run_state == "ground" ? QuantumState::from_amplitudes(eig.eigenvectors.col(0))
                                      : QuantumState::from_amplitudes(CVector::Unit(h.dim(), 0));
      }
      QpeConfig cfg;
      cfg.t = run_m;
      cfg.p = 0;
      cfg.window = parse_window_kind(run_window);
      cfg.lambda = scaling.lambda;
      cfg.shift = scaling.shift;
      OutcomeDistribution dist;
      if (run_path == "circuit") {
        dist = run_qpe_circuit(state, expi_hermitian(h.shifted(cfg.shift), 2.0 * kPi * cfg.lambda), cfg);
      } else {
        const CVector coeffs = eig.eigenvectors.adjoint() * state.amplitudes();
        const RVector phases = (eig.eigenvalues.array() + cfg.shift).matrix() * cfg.lambda;
        dist = analytic_mixture(coeffs.cwiseAbs2(), phases, cfg);
      }
      manifest.command = "qpe run";
      manifest.parameters = {{"model", run_model},         {"m", std::to_string(run_m)},
                             {"window", run_window},       {"path", run_path},
                             {"state", run_state},         {"lambda", format_number(cfg.lambda)},
                             {"shift", format_number(cfg.shift)}};
      Table table{{"q", "probability"}, {}};
      for (Eigen::Index i = 0; i < dist.probabilities.size(); ++i) {
        table.rows.push_back({std::to_string(i - (Eigen::Index{1} << (run_m - 1))),
                              format_number(dist.probabilities[i])});
      }
      emit(run_out, manifest, table, out);
    } else if (cbar->parsed()) {
      if (cb_min > cb_max) throw UsageError("--m-min exceeds --m-max");
      manifest.command = "qpe cbar";
      manifest.parameters = {{"m_min", std::to_string(cb_min)}, {"m_max", std::to_string(cb_max)},
                             {"nodes", "4096"}};
      Table table{{"m", "cbar_rect", "cbar_cos"}, {}};
      for (int m = cb_min; m <= cb_max; ++m) {
        QpeConfig cfg;
        cfg.t = m;
        cfg.window = WindowKind::Rectangular;
        const double rect = cbar_metric(cfg);
        cfg.window = WindowKind::Cosine;
        table.rows.push_back({std::to_string(m), format_number(rect), format_number(cbar_metric(cfg))});
      }
      emit(cb_out, manifest, table, out);
    } else if (prepare->parsed()) {
      const ThirringParams params = prep_model.resolve();
      prep.seed = seed;
      prep.windows = windows_for(prep_window);
      const ContaminationResult res = contamination_sweep(params, prep);
      manifest.command = "prepare";
      prep_model.describe(manifest, params);
      manifest.parameters.insert(manifest.parameters.end(),
                                 {{"d", std::to_string(prep.d)},
                                  {"m", std::to_string(prep.m)},
                                  {"r_max", std::to_string(prep.r_max)},
                                  {"window", prep_window},
                                  {"layers", std::to_string(prep.layers)},
                                  {"xi_bins", format_number(prep.xi_bins)},
                                  {"xi_sign", "+ for the first window, - for the second"},
                                  {"n_samples", std::to_string(prep.n_samples)},
                                  {"lambda", format_number(res.lambda)},
                                  {"shift", format_number(res.shift)},
                                  {"ground_phase", format_number(res.ground_phase)},
                                  {"overlap", format_number(res.overlap)},
                                  {"reference_overlap", format_number(res.reference_overlap)}});
      Table table{{"r", "window", "success_prob", "cum_Pr", "epsilon", "sigma_chi"}, {}};
      for (const auto& row : res.rows) {
        table.rows.push_back({std::to_string(row.r), std::string(to_string(row.window)),
                              format_number(row.success_prob), format_number(row.cum_pr),
                              format_number(row.epsilon), format_number(row.sigma_chi)});
      }
      emit(prep_out, manifest, table, out);
    } else if (varprep->parsed()) {
      const ThirringParams params = var_model.resolve();
      const ThirringTerms terms = build_terms(params);
      const QuantumState reference = reference_state(terms);
      const OptimizeResult opt = optimize_overlap(terms, var_layers, reference, seed);
      const QuantumState state = variational_state(opt.params, terms, reference);
      const EigenDecomposition eig = eig_hermitian(terms.total());
      const double overlap = std::abs(eig.eigenvectors.col(0).dot(state.amplitudes()));
      manifest.command = "varprep";
      var_model.describe(manifest, params);
      manifest.parameters.insert(manifest.parameters.end(),
                                 {{"layers", std::to_string(var_layers)},
                                  {"energy", format_number(opt.energy)},
                                  {"reference_energy", format_number(opt.reference_energy)},
                                  {"ground_energy", format_number(eig.eigenvalues[0])},
                                  {"overlap", format_number(overlap)}});
      Table table{{"layer", "alpha", "beta", "gamma"}, {}};
      for (int j = 0; j < opt.params.layers(); ++j) {
        table.rows.push_back({std::to_string(j + 1), format_number(opt.params.alpha[j]),
                              format_number(opt.params.beta[j]), format_number(opt.params.gamma[j])});
      }
      emit(var_out, manifest, table, out);
    } else if (check->parsed()) {
      if (bc_pmin > bc_pmax) throw UsageError("--p-min exceeds --p-max");
      const ThirringParams params = bc_model.resolve();
      manifest.command = "bounds check";
      manifest.parameters = {{"t", std::to_string(bc_t)},
                             {"p_min", std::to_string(bc_pmin)},
                             {"p_max", std::to_string(bc_pmax)},
                             {"d_max", std::to_string(bc_dmax)}};
      bc_model.describe(manifest, params);
      Table table{{"check", "parameter", "value", "bound", "holds"}, {}};
      for (int p = bc_pmin; p <= bc_pmax; ++p) {
        const TailBoundCheck tb = verify_tail_bound(bc_t, p);
        table.rows.push_back({"tail_bound", std::to_string(p), format_number(tb.empirical), format_number(tb.bound),
                              tb.holds() ? "1" : "0"});
      }
      const ThirringSetup setup = setup_thirring(params);
      for (int d = 1; d <= bc_dmax; ++d) {
        const TrotterModel model = trotterize(setup, d);
        const PerturbationCheck pc =
            perturbation_error_bound(setup.hamiltonian, model.effective.shifted(-setup.scaling.shift),
                                     setup.scaling.lambda);
        table.rows.push_back({"perturbation", std::to_string(d), format_number(pc.distance), format_number(pc.bound),
                              pc.holds() ? "1" : "0"});
      }
      emit(bc_out, manifest, table, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const wqpe::Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace wqpe::cli
