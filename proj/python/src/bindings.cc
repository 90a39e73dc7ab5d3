// Copyright 2026 The tpsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings. Modes are 0-based here, as in the C++ API; only the file
// formats number modes from 1.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tpsynth/cli.h"
#include "tpsynth/elements.h"
#include "tpsynth/errors.h"
#include "tpsynth/fock.h"
#include "tpsynth/harness.h"
#include "tpsynth/io.h"
#include "tpsynth/klm.h"
#include "tpsynth/synth3.h"
#include "tpsynth/synthn.h"

namespace py = pybind11;
using namespace tpsynth;

namespace {

SynthOptions make_options(bool optimize, bool permutations, bool robust) {
    SynthOptions o;
    o.optimize_bs3 = optimize;
    o.try_permutations = permutations;
    o.robust = robust;
    return o;
}

py::dict sweep_dict(const SweepResult &r) {
    py::list params, ps;
    for (const auto &p : r.points) {
        params.append(p.parameter);
        ps.append(p.p_success);
    }
    py::dict d;
    d["parameter"] = r.parameter_name;
    d["values"] = params;
    d["p_success"] = ps;
    return d;
}

}  // namespace

PYBIND11_MODULE(_tpsynth, m) {
    m.doc() = "Two-photon state synthesis with linear optics and post-selection";

    py::register_exception<DegenerateAmplitudes>(m, "DegenerateAmplitudes", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ValidationError &e) {
            py::set_error(PyExc_ValueError, e.what());
        }
    });

    py::class_<TwoPhotonState>(m, "TwoPhotonState")
        .def(py::init<size_t>(), py::arg("n"))
        .def(py::init<size_t, std::vector<Complex>>(), py::arg("n"), py::arg("amplitudes"))
        .def_static("basis", &TwoPhotonState::basis, py::arg("n"), py::arg("j"), py::arg("k"),
                    py::arg("amp") = Complex(1.0))
        .def_property_readonly("num_modes", &TwoPhotonState::num_modes)
        .def_property_readonly("amplitudes", &TwoPhotonState::amplitudes)
        .def("amplitude", &TwoPhotonState::amplitude, py::arg("j"), py::arg("k"))
        .def("set_amplitude", &TwoPhotonState::set_amplitude, py::arg("j"), py::arg("k"), py::arg("value"))
        .def("norm2", [](const TwoPhotonState &s) { return norm2(s); })
        .def("to_json", [](const TwoPhotonState &s) { return state_to_json(s); })
        .def_static("from_json", &state_from_json, py::arg("text"))
        .def("__repr__", [](const TwoPhotonState &s) {
            std::ostringstream o;
            o << "TwoPhotonState(n=" << s.num_modes() << ", norm2=" << norm2(s) << ")";
            return o.str();
        });

    m.def("prepare_initial", &prepare_initial, py::arg("n"));
    m.def("random_state", &random_state, py::arg("n"), py::arg("seed"));
    m.def("family_w", &family_w, py::arg("w"));
    m.def("family_g", &family_g, py::arg("g"));
    m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
    m.def("reachable_from_separable", &reachable_from_separable, py::arg("state"), py::arg("tol") = 1e-9);
    m.def(
        "coeff_singular_values",
        [](const TwoPhotonState &s) {
            Eigen::VectorXd v = coeff_singular_values(s);
            return std::vector<double>(v.data(), v.data() + v.size());
        },
        py::arg("state"));

    py::class_<SynthesisPlan>(m, "SynthesisPlan")
        .def_readonly("p_success", &SynthesisPlan::p_success)
        .def_readonly("fidelity", &SynthesisPlan::fidelity)
        .def_readonly("permutation", &SynthesisPlan::permutation)
        .def_readonly("target", &SynthesisPlan::target)
        .def_property_readonly("num_elements", [](const SynthesisPlan &p) { return p.circuit.elements.size(); })
        .def_property_readonly("num_cycles", [](const SynthesisPlan &p) { return p.cycles.size(); })
        .def_property_readonly("block_count", &plan_block_count)
        .def_property_readonly("physical", [](const SynthesisPlan &p) { return physicality_check(p.circuit); })
        .def("simulate", [](const SynthesisPlan &p) { return apply(p.circuit, prepare_initial(p.circuit.n)); })
        .def("to_json", &plan_to_json)
        .def("circuit_json", [](const SynthesisPlan &p) { return circuit_to_json(p.circuit); });

    m.def(
        "synthesize",
        [](const TwoPhotonState &t, bool optimize, bool permutations, bool robust) {
            return synthesize_n(t, make_options(optimize, permutations, robust));
        },
        py::arg("target"), py::arg("optimize") = true, py::arg("permutations") = true, py::arg("robust") = false,
        "Forward circuit from the uniform |2_j> superposition to `target`.");
    m.def(
        "simulate",
        [](const std::string &circuit_json, const TwoPhotonState &state) {
            return apply(circuit_from_json(circuit_json), state);
        },
        py::arg("circuit_json"), py::arg("state"));

    m.def("m_min", &m_min, py::arg("q"));
    m.def("lower_bounds", [] {
        LowerBounds b = lower_bounds();
        py::dict d;
        d["q2_sq_min"] = b.q2_sq_min;
        d["p_f2_min"] = b.p_f2_min;
        d["p_f1_min"] = b.p_f1_min;
        d["p_s_min"] = b.p_s_min;
        return d;
    });

    m.def("klm_tau_for_ratio", &klm_tau_for_ratio, py::arg("ratio"));
    m.def(
        "klm_params",
        [](double tau) {
            KlmParams k = klm_params(tau);
            py::dict d;
            d["tau"] = k.tau;
            d["theta"] = k.theta;
            d["alpha"] = k.alpha;
            d["beta"] = k.beta;
            d["p_success"] = k.p_success;
            d["bs_transmissivity"] = k.bs_transmissivity();
            return d;
        },
        py::arg("tau"));
    m.def(
        "klm_simulate",
        [](double tau) {
            KlmSimulation s = klm_simulate(tau);
            py::dict d;
            d["state"] = s.state;
            d["alpha"] = s.alpha;
            d["beta"] = s.beta;
            d["p_success"] = s.p_success;
            return d;
        },
        py::arg("tau"));

    m.def(
        "sweep_w",
        [](size_t steps, bool optimize, bool permutations, bool robust) {
            return sweep_dict(sweep_w(steps, make_options(optimize, permutations, robust)));
        },
        py::arg("steps") = 64, py::arg("optimize") = true, py::arg("permutations") = true, py::arg("robust") = false);
    m.def(
        "sweep_g",
        [](size_t steps, bool optimize, bool permutations, bool robust) {
            return sweep_dict(sweep_g(steps, make_options(optimize, permutations, robust)));
        },
        py::arg("steps") = 64, py::arg("optimize") = true, py::arg("permutations") = true, py::arg("robust") = false);
    m.def(
        "histogram",
        [](size_t samples, size_t bins, uint64_t seed, size_t modes, size_t threads) {
            HistogramResult h;
            {
                py::gil_scoped_release release;
                h = histogram(samples, bins, seed, {}, modes, threads);
            }
            py::dict d;
            d["samples"] = h.samples;
            d["seed"] = h.seed;
            d["modes"] = h.modes;
            d["edges"] = h.edges;
            d["counts"] = h.counts;
            d["min"] = h.min;
            d["mean"] = h.mean;
            d["p_values"] = h.p_values;
            return d;
        },
        py::arg("samples"), py::arg("bins") = 50, py::arg("seed") = 0, py::arg("modes") = 3, py::arg("threads") = 0);

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out, err;
            int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line in process; returns (exit_code, stdout, stderr).");
}
