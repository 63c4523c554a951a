// Copyright 2026 The IQEC Authors
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

#include "iqec/errors.h"
#include "iqec/experiments.h"
#include "iqec/gatefinder.h"
#include "iqec/metrology.h"

namespace py = pybind11;
using namespace iqec;

namespace {

std::vector<PauliSum> parse_all(const std::string &h, const std::vector<std::string> &noise,
                                const std::vector<std::string> &gates, PauliSum &h_out,
                                std::vector<PauliString> &gates_out) {
    std::vector<std::string> exprs{h};
    exprs.insert(exprs.end(), noise.begin(), noise.end());
    exprs.insert(exprs.end(), gates.begin(), gates.end());
    auto sums = parse_pauli_exprs(exprs);
    h_out = sums[0];
    for (size_t i = 1 + noise.size(); i < sums.size(); ++i) {
        auto w = sums[i].as_string();
        if (!w) {
            throw ParseError("gate '" + gates[i - 1 - noise.size()] + "' is not a single Pauli word");
        }
        gates_out.push_back(*w);
    }
    return {sums.begin() + 1, sums.begin() + 1 + static_cast<long>(noise.size())};
}

py::list clauses(const std::vector<ClauseResult> &report) {
    py::list out;
    for (const auto &c : report) {
        out.append(py::dict(py::arg("clause") = c.clause, py::arg("pass") = c.pass, py::arg("detail") = c.detail));
    }
    return out;
}

py::dict find_gates_py(const std::string &h, const std::vector<std::string> &noise, const std::string &mode) {
    if (mode != "iqec" && mode != "sniqec") {
        throw ConfigError("mode must be iqec or sniqec");
    }
    PauliSum hs;
    std::vector<PauliString> unused;
    const auto ns = parse_all(h, noise, {}, hs, unused);
    GenSetReport gens;
    const GateSearchResult r =
        find_gates_for_noise(ns, hs, mode == "sniqec" ? GateMode::kSniqec : GateMode::kIqec, &gens);
    std::vector<std::string> words, generators;
    for (const auto &g : r.gates) {
        words.push_back(g.word());
    }
    for (const auto &g : gens.generators) {
        generators.push_back(g.str());
    }
    return py::dict(py::arg("found") = r.found, py::arg("gates") = words, py::arg("gate_site") = r.gate_site,
                    py::arg("generators") = generators, py::arg("generator_kind") = gen_kind_name(gens.kind),
                    py::arg("certificate") = r.certificate, py::arg("report") = clauses(r.report));
}

py::dict check_py(const std::string &h, const std::vector<std::string> &noise, const std::vector<std::string> &gates,
                  const std::string &theorem) {
    const Theorem t = theorem == "t1"   ? Theorem::kT1
                      : theorem == "t2" ? Theorem::kT2
                      : theorem == "t3" ? Theorem::kT3
                                        : throw ConfigError("theorem must be t1, t2 or t3");
    PauliSum hs;
    std::vector<PauliString> gs;
    const auto ns = parse_all(h, noise, gates, hs, gs);
    const TheoremReport r = check_theorem(ns, hs, gs, t);
    return py::dict(py::arg("admissible") = r.pass, py::arg("hnls") = hnls_satisfied(hs, ns),
                    py::arg("report") = clauses(r.clauses));
}

py::list run_py(const std::string &config_json, int workers) {
    const ExperimentConfig cfg = parse_config(config_json);
    ExperimentResult res;
    {
        py::gil_scoped_release release;
        res = run_experiment(cfg, workers);
    }
    py::list out;
    for (size_t i = 0; i < res.scenarios.size(); ++i) {
        const QfiCurve &c = res.scenarios[i].curve;
        py::dict d(py::arg("scenario") = cfg.scenarios[i].name, py::arg("protocol") = c.protocol,
                   py::arg("times") = c.times, py::arg("qfi") = c.qfi, py::arg("success_prob") = c.success_prob);
        out.append(d);
    }
    return out;
}

std::vector<std::string> write_py(const std::string &config_json, const std::string &dir, int workers) {
    const ExperimentConfig cfg = parse_config(config_json);
    ExperimentResult res;
    {
        py::gil_scoped_release release;
        res = run_experiment(cfg, workers);
    }
    std::vector<std::string> paths;
    for (const auto &p : write_experiment(cfg, res, dir)) {
        paths.push_back(p.string());
    }
    return paths;
}

}  // namespace

PYBIND11_MODULE(_iqec, m) {
    m.doc() = "Native core of the iqec package";

    // Translators run newest first, so the subclasses are registered after their base.
    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    static py::exception<InputError> input_error(m, "InputError", error.ptr());
    static py::exception<PhysicsError> physics_error(m, "PhysicsError", error.ptr());
    static py::exception<NoSolution> no_solution(m, "NoSolution", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const InputError &e) {
            input_error(e.what());
        } catch (const PhysicsError &e) {
            physics_error(e.what());
        } catch (const NoSolution &e) {
            no_solution(e.what());
        } catch (const Error &e) {
            error(e.what());
        }
    });

    m.def("find_gates", &find_gates_py, py::arg("h"), py::arg("noise"), py::arg("mode") = "iqec");
    m.def("check_theorem", &check_py, py::arg("h"), py::arg("noise"), py::arg("gates"), py::arg("theorem") = "t1");
    m.def("qfi_pure", &qfi_pure, py::arg("psi"), py::arg("dpsi"));
    m.def("qfi_mixed", &qfi_mixed, py::arg("rho"), py::arg("drho"), py::arg("floor") = tol::kSldFloor);
    m.def("preset_dir", [] { return preset_dir().string(); });
    m.def("preset_names", &preset_names);
    m.def("preset_json", [](const std::string &name) { return dump_config(load_preset(name)); }, py::arg("name"));
    m.def("normalize_config", [](const std::string &text) { return dump_config(parse_config(text)); },
          py::arg("config_json"), "Validates a config and returns it with every default spelled out.");
    m.def("run_json", &run_py, py::arg("config_json"), py::arg("workers") = 0);
    m.def("write_json", &write_py, py::arg("config_json"), py::arg("out"), py::arg("workers") = 0);
}
