// Copyright 2026 The dcube Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dcube/config.hpp"
#include "dcube/flo.hpp"
#include "dcube/harness.hpp"
#include "dcube/iqp.hpp"

namespace py = pybind11;
using namespace dcube;

namespace {

ExperimentConfig config_from(const py::dict& settings) {
  ExperimentConfig cfg;
  for (const auto& item : settings) {
    const std::string key = py::str(item.first);
    py::handle v = item.second;
    std::string value;
    if (py::isinstance<py::bool_>(v)) {
      value = v.cast<bool>() ? "true" : "false";
    } else if (py::isinstance<py::list>(v) || py::isinstance<py::tuple>(v)) {
      for (const auto& x : v) {
        if (!value.empty()) value += ",";
        value += py::str(x).cast<std::string>();
      }
    } else if (py::isinstance<py::float_>(v)) {
      value = format_double(v.cast<double>());
    } else {
      value = py::str(v);
    }
    apply_setting(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

py::dict series_dict(const TimeSeries& ts) {
  py::dict d;
  d["time"] = ts.times;
  d["value"] = ts.values;
  d["std_error"] = ts.std_errors;
  return d;
}

template <typename Writer, typename T>
std::string to_csv(Writer w, const T& x) {
  std::ostringstream os;
  w(os, x);
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dissipative dynamics simulators: exact Lindblad, stochastic unitaries, decoupled ancillas.";

  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("dim_cap", &dim_cap);
  m.def("set_dim_cap", &set_dim_cap, py::arg("cap"));

  m.def(
      "parse_config",
      [](const std::string& text) {
        std::istringstream in(text);
        return to_config_text(parse_config(in, "<string>"));
      },
      py::arg("text"), "Parses config text and returns it in canonical form.");

  m.def(
      "simulate",
      [](const py::dict& settings) {
        const DensityResult r = run_density_experiment(config_from(settings));
        py::dict out;
        for (std::size_t i = 0; i < r.sites.size(); ++i) out[py::int_(r.sites[i])] = series_dict(r.series[i]);
        return py::make_tuple(out, to_csv(write_density_csv, r));
      },
      py::arg("settings"), "Site densities; returns ({site: series}, csv).");

  m.def(
      "green_function",
      [](const py::dict& settings) {
        const TimeSeries ts = run_gf_experiment(config_from(settings));
        return py::make_tuple(series_dict(ts), to_csv(write_gf_csv, ts));
      },
      py::arg("settings"));

  m.def(
      "ldos",
      [](const std::vector<double>& times, const std::vector<Complex>& values, const std::string& window) {
        TimeSeries ts;
        ts.times = times;
        ts.values = values;
        ts.std_errors.assign(times.size(), 0.0);
        const Spectrum s = ldos(ts, window == "hann" ? Window::kHann : Window::kNone);
        py::dict d;
        d["omega"] = s.omega;
        d["ldos"] = s.ldos;
        d["sum_rule"] = ldos_sum_rule(s);
        return d;
      },
      py::arg("times"), py::arg("values"), py::arg("window") = "none");

  m.def(
      "lehmann_poles",
      [](const py::dict& settings, int site, int spin) {
        std::vector<std::pair<double, double>> out;
        for (const Pole& p : lehmann_poles(config_from(settings).model, site, spin)) out.emplace_back(p.omega, p.weight);
        return out;
      },
      py::arg("settings"), py::arg("site") = 0, py::arg("spin") = 0);

  m.def(
      "gamma_distribution",
      [](const py::dict& settings) { return to_csv(write_gamma_csv, run_gamma_distribution(config_from(settings))); },
      py::arg("settings"), "CSV of exact and sampled ancilla outcome frequencies.");

  m.def(
      "gamma_exact",
      [](int L, int N, std::vector<double> g, std::vector<double> omega, double t) {
        IqpSpec spec;
        spec.L = L;
        spec.N = N;
        spec.g = std::move(g);
        spec.omega = std::move(omega);
        spec.t = t;
        return gamma_exact(spec).probs;
      },
      py::arg("L"), py::arg("N"), py::arg("g"), py::arg("omega") = std::vector<double>{1.0}, py::arg("t"));

  m.def(
      "truncation_sweep",
      [](const py::dict& settings, const std::vector<int>& n_b_list) {
        return to_csv(write_truncation_csv, boson_truncation_sweep(config_from(settings), n_b_list));
      },
      py::arg("settings"), py::arg("n_b_list"));

  m.def("fock_correlation", &fock_correlation, py::arg("modes"), py::arg("occupied"));
  m.def("evolve_correlation", &evolve_correlation, py::arg("c"), py::arg("h"), py::arg("tau"));
}
