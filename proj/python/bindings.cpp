#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "wqpe/errors.hpp"
#include "wqpe/experiments.hpp"
#include "wqpe/qpe.hpp"
#include "wqpe/spectral_windows.hpp"
#include "wqpe/thirring.hpp"

namespace py = pybind11;

namespace {

wqpe::WindowKind window_arg(const std::string& name) { return wqpe::parse_window_kind(name); }

wqpe::QpeConfig qpe_config(int t, int p, const std::string& window) {
  wqpe::QpeConfig cfg;
  cfg.t = t;
  cfg.p = p;
  cfg.window = window_arg(window);
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Windowed phase estimation and filtered ground-state preparation";

  py::register_exception<wqpe::Error>(m, "WqpeError", PyExc_ValueError);

  m.def("filter_rect", &wqpe::filter_rect, py::arg("q"), py::arg("m"));
  m.def("filter_cosine", &wqpe::filter_cosine, py::arg("q"), py::arg("m"));
  m.def("filter_cosine_plus", &wqpe::filter_cosine_plus, py::arg("q"), py::arg("m"));

  m.def(
      "window_amplitudes",
      [](int bits, const std::string& window) {
        const wqpe::WindowSpec spec{bits, window_arg(window)};
        spec.validate();
        return wqpe::window_amplitudes(spec).values;
      },
      py::arg("m"), py::arg("window"));

  m.def(
      "error_rate",
      [](int t, int p, double delta2m, const std::string& window) {
        return wqpe::error_rate(t, p, delta2m, window_arg(window));
      },
      py::arg("t"), py::arg("p"), py::arg("delta2m"), py::arg("window"));

  m.def(
      "min_extra_qubits", [](double e, const std::string& window) { return wqpe::min_extra_qubits(e, window_arg(window)); },
      py::arg("e"), py::arg("window"));

  m.def(
      "tail_bound",
      [](int t, int p) {
        const wqpe::TailBoundCheck c = wqpe::verify_tail_bound(t, p);
        return py::dict(py::arg("empirical") = c.empirical, py::arg("bound") = c.bound,
                        py::arg("worst_delta2m") = c.worst_delta2m, py::arg("holds") = c.holds());
      },
      py::arg("t"), py::arg("p"));

  m.def(
      "analytic_distribution",
      [](double theta, int t, int p, const std::string& window) {
        return wqpe::analytic_distribution(theta, qpe_config(t, p, window)).probabilities;
      },
      py::arg("theta"), py::arg("t"), py::arg("p") = 0, py::arg("window") = "cos",
      "Outcome probabilities for centered labels -2^(m-1) .. 2^(m-1)-1.");

  m.def(
      "cbar",
      [](int bits, const std::string& window) { return wqpe::cbar_metric(qpe_config(bits, 0, window)); },
      py::arg("m"), py::arg("window"));

  m.def(
      "thirring_hamiltonian",
      [](int sites, double mass, double coupling) {
        const wqpe::ThirringParams params{sites, mass, coupling};
        params.validate();
        return wqpe::build_hamiltonian(params).matrix();
      },
      py::arg("sites") = 4, py::arg("mass") = 1.0, py::arg("coupling") = 0.5);

  m.def(
      "trotter_error",
      [](int sites, double mass, double coupling, int d) {
        const wqpe::ThirringSetup setup = wqpe::setup_thirring({sites, mass, coupling});
        return wqpe::trotter_error(setup, wqpe::trotterize(setup, d));
      },
      py::arg("sites"), py::arg("mass"), py::arg("coupling"), py::arg("d"));

  m.def(
      "contamination_sweep",
      [](int sites, double mass, double coupling, int d, int bits, int r_max, int layers, std::uint64_t seed) {
        wqpe::ContaminationSettings settings;
        settings.d = d;
        settings.m = bits;
        settings.r_max = r_max;
        settings.layers = layers;
        settings.seed = seed;
        const wqpe::ContaminationResult res = wqpe::contamination_sweep({sites, mass, coupling}, settings);
        py::list rows;
        for (const wqpe::ContaminationRow& row : res.rows) {
          rows.append(py::dict(py::arg("r") = row.r, py::arg("window") = std::string(wqpe::to_string(row.window)),
                               py::arg("success_prob") = row.success_prob, py::arg("cum_pr") = row.cum_pr,
                               py::arg("epsilon") = row.epsilon, py::arg("sigma_chi") = row.sigma_chi));
        }
        return py::dict(py::arg("rows") = rows, py::arg("overlap") = res.overlap, py::arg("lambda") = res.lambda,
                        py::arg("shift") = res.shift);
      },
      py::arg("sites") = 4, py::arg("mass") = 1.0, py::arg("coupling") = 0.5, py::arg("d") = 1, py::arg("m") = 8,
      py::arg("r_max") = 6, py::arg("layers") = 2, py::arg("seed") = wqpe::kDefaultOptimizerSeed);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"wqpe"};
        for (const std::string& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = wqpe::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");

  m.attr("__version__") = WQPE_VERSION;
}
