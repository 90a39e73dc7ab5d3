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

#include "tpsynth/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

#include "json.hpp"
#include "tpsynth/errors.h"

namespace tpsynth {

using nlohmann::json;

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

json pair_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

Complex pair_from(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ValidationError("expected a [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

size_t mode_from(const json &j, size_t n) {
    if (!j.is_number_integer()) {
        throw ValidationError("mode index must be an integer");
    }
    auto m = j.get<long long>();
    if (m < 1 || static_cast<size_t>(m) > n) {
        throw ValidationError("mode index " + std::to_string(m) + " outside 1.." + std::to_string(n));
    }
    return static_cast<size_t>(m - 1);
}

size_t count_from(const json &doc) {
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
        throw ValidationError("missing integer field \"n\"");
    }
    auto n = doc["n"].get<long long>();
    if (n < 1 || n > 4096) {
        throw ValidationError("mode count out of range");
    }
    return static_cast<size_t>(n);
}

double number_from(const json &obj, const char *key) {
    if (!obj.contains(key) || !obj[key].is_number()) {
        throw ValidationError(std::string("missing numeric field \"") + key + "\"");
    }
    return obj[key].get<double>();
}

json state_json(const TwoPhotonState &state) {
    json amps = json::array();
    size_t n = state.num_modes();
    for (size_t j = 0; j < n; j++) {
        for (size_t k = j; k < n; k++) {
            Complex a = state.amplitude(j, k);
            if (a != Complex(0)) {
                amps.push_back({{"j", j + 1}, {"k", k + 1}, {"re", a.real()}, {"im", a.imag()}});
            }
        }
    }
    return {{"n", n}, {"amplitudes", amps}};
}

TwoPhotonState state_from(const json &doc) {
    size_t n = count_from(doc);
    TwoPhotonState s(n);
    if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array()) {
        throw ValidationError("missing array field \"amplitudes\"");
    }
    std::set<std::pair<size_t, size_t>> seen;
    for (const auto &a : doc["amplitudes"]) {
        if (!a.is_object() || !a.contains("j") || !a.contains("k")) {
            throw ValidationError("amplitude entries need \"j\" and \"k\"");
        }
        size_t j = mode_from(a["j"], n);
        size_t k = mode_from(a["k"], n);
        if (j > k) {
            std::swap(j, k);
        }
        if (!seen.insert({j, k}).second) {
            throw ValidationError("duplicate amplitude entry");
        }
        double im = a.contains("im") ? number_from(a, "im") : 0.0;
        Complex v(number_from(a, "re"), im);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ValidationError("non-finite amplitude");
        }
        s.set_amplitude(j, k, v);
    }
    return s;
}

json element_json(const Element &e) {
    return std::visit(
        Overloaded{
            [](const BeamSplitter &bs) -> json {
                return {{"kind", "bs"}, {"modes", {bs.a + 1, bs.b + 1}}, {"theta", bs.theta}};
            },
            [](const PhaseShifter &ps) -> json {
                return {{"kind", "ps"}, {"modes", {ps.mode + 1}}, {"phi", ps.phi}};
            },
            [](const Filter &f) -> json { return {{"kind", "filter"}, {"modes", {f.mode + 1}}, {"q", f.q}}; },
            [](const TwoModeMatrix &tm) -> json {
                json m = json::array();
                for (int r = 0; r < 2; r++) {
                    for (int c = 0; c < 2; c++) {
                        m.push_back(pair_json(tm.m(r, c)));
                    }
                }
                return {{"kind", "mat2"}, {"modes", {tm.a + 1, tm.b + 1}}, {"matrix", m}};
            },
        },
        e);
}

json circuit_json(const Circuit &c) {
    json elements = json::array();
    for (const auto &e : c.elements) {
        elements.push_back(element_json(e));
    }
    return {{"n", c.n}, {"elements", elements}};
}

Element element_from(const json &e, size_t n) {
    if (!e.is_object() || !e.contains("kind") || !e["kind"].is_string() || !e.contains("modes") ||
        !e["modes"].is_array()) {
        throw ValidationError("element needs \"kind\" and \"modes\"");
    }
    std::string kind = e["kind"].get<std::string>();
    const json &modes = e["modes"];
    bool two = kind == "bs" || kind == "mat2";
    if (modes.size() != (two ? 2u : 1u)) {
        throw ValidationError("element \"" + kind + "\" has the wrong number of modes");
    }
    if (kind == "bs") {
        return BeamSplitter{mode_from(modes[0], n), mode_from(modes[1], n), number_from(e, "theta")};
    }
    if (kind == "ps") {
        return PhaseShifter{mode_from(modes[0], n), number_from(e, "phi")};
    }
    if (kind == "filter") {
        return Filter{mode_from(modes[0], n), number_from(e, "q")};
    }
    if (kind == "mat2") {
        if (!e.contains("matrix") || !e["matrix"].is_array() || e["matrix"].size() != 4) {
            throw ValidationError("mat2 needs a 4-entry row-major \"matrix\"");
        }
        Eigen::Matrix2cd m;
        for (int i = 0; i < 4; i++) {
            m(i / 2, i % 2) = pair_from(e["matrix"][i]);
        }
        return TwoModeMatrix{mode_from(modes[0], n), mode_from(modes[1], n), m};
    }
    throw ValidationError("unknown element kind \"" + kind + "\"");
}

Circuit circuit_from(const json &doc) {
    const json &c = doc.contains("circuit") ? doc["circuit"] : doc;
    size_t n = count_from(c);
    if (!c.contains("elements") || !c["elements"].is_array()) {
        throw ValidationError("missing array field \"elements\"");
    }
    Circuit out{n, {}};
    for (const auto &e : c["elements"]) {
        Element el = element_from(e, n);
        auto ms = element_modes(el);
        if (ms.size() == 2 && ms[0] == ms[1]) {
            throw ValidationError("two-mode element on a single mode");
        }
        out.elements.push_back(el);
    }
    return out;
}

json parse(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

template <typename F>
auto guarded(F &&f) {
    try {
        return f();
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed document: ") + e.what());
    }
}

json modes_json(const std::vector<size_t> &modes) {
    json out = json::array();
    for (size_t m : modes) {
        out.push_back(m + 1);
    }
    return out;
}

json cycle_json(const CyclePlan &c) {
    json elim = json::array();
    for (const auto &e : c.eliminators) {
        elim.push_back(
            {{"keep_mode", e.keep_mode + 1}, {"clear_mode", e.clear_mode + 1}, {"phi", e.phi}, {"theta", e.theta}});
    }
    return {
        {"cycle_mode", c.cycle_mode + 1},
        {"optimizer", {{"modes", {c.optimizer_partner + 1, c.cycle_mode + 1}}, {"theta", c.optimizer_theta}}},
        {"eliminators", elim},
        {"filter",
         {{"modes", {c.cycle_mode + 1, c.filter_partner + 1}},
          {"q", c.filter_q},
          {"phase", c.filter_phase},
          {"ratio", c.filter_ratio}}},
        {"compensated_modes", modes_json(c.compensated_modes)},
        {"residual", c.residual},
    };
}

}  // namespace

std::string state_to_json(const TwoPhotonState &state) {
    return state_json(state).dump(2) + "\n";
}

TwoPhotonState state_from_json(const std::string &text) {
    json doc = parse(text);
    return guarded([&] { return state_from(doc); });
}

std::string circuit_to_json(const Circuit &circuit) {
    return circuit_json(circuit).dump(2) + "\n";
}

Circuit circuit_from_json(const std::string &text) {
    json doc = parse(text);
    return guarded([&] { return circuit_from(doc); });
}

std::string plan_to_json(const SynthesisPlan &plan) {
    const SynthParams &p = plan.params;
    json params = {
        {"phi1", p.phi1},
        {"phi2", p.phi2},
        {"phi3", p.phi3},
        {"phi4", p.phi4},
        {"theta1", p.theta1},
        {"theta2", p.theta2},
        {"theta3", p.theta3},
        {"q2", p.q2},
        {"f1_transmittances", p.f1_transmittances},
        {"f1_phases", p.f1_phases},
    };
    json cycles = json::array();
    for (const auto &c : plan.cycles) {
        cycles.push_back(cycle_json(c));
    }
    json doc = {
        {"n", plan.target.num_modes()},
        {"p_success", plan.p_success},
        {"fidelity", plan.fidelity},
        {"permutation", modes_json(plan.permutation)},
        {"params", params},
        {"cycles", cycles},
        {"target", state_json(plan.target)},
        {"circuit", circuit_json(plan.circuit)},
        {"diagnostics",
         {{"psi_prime", state_json(plan.psi_prime)},
          {"psi_double_prime", state_json(plan.psi_double_prime)},
          {"psi_triple_prime", state_json(plan.psi_triple_prime)}}},
    };
    return doc.dump(2) + "\n";
}

PlanRecord plan_from_json(const std::string &text) {
    json doc = parse(text);
    return guarded([&] {
        if (!doc.contains("circuit") || !doc.contains("target")) {
            throw ValidationError("plan needs \"circuit\" and \"target\"");
        }
        PlanRecord r{circuit_from(doc["circuit"]), state_from(doc["target"]), number_from(doc, "p_success")};
        if (r.circuit.n != r.target.num_modes()) {
            throw ValidationError("plan circuit and target disagree on the mode count");
        }
        return r;
    });
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string sweep_to_csv(const SweepResult &sweep) {
    std::string out = sweep.parameter_name + ",p_success\n";
    for (const auto &p : sweep.points) {
        out += format_double(p.parameter) + "," + format_double(p.p_success) + "\n";
    }
    return out;
}

std::string histogram_to_csv(const HistogramResult &h) {
    std::string out = "bin_lo,bin_hi,count\n";
    for (size_t b = 0; b < h.counts.size(); b++) {
        out += format_double(h.edges[b]) + "," + format_double(h.edges[b + 1]) + "," + std::to_string(h.counts[b]) +
               "\n";
    }
    return out;
}

std::string histogram_summary_json(const HistogramResult &h) {
    json doc = {
        {"min", h.min},
        {"mean", h.mean},
        {"samples", h.samples},
        {"seed", h.seed},
        {"modes", h.modes},
        {"fraction_above_0.15", h.fraction_above(0.15)},
    };
    return doc.dump() + "\n";
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + path);
    }
    out << contents;
    if (!out) {
        throw ValidationError("write failed for " + path);
    }
}

}  // namespace tpsynth
