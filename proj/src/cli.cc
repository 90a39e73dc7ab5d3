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

#include "tpsynth/cli.h"

#include <cmath>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tpsynth/errors.h"
#include "tpsynth/io.h"
#include "tpsynth/klm.h"
#include "tpsynth/synthn.h"

namespace tpsynth {

namespace {

struct Flags {
    std::string input;
    std::string output;
    std::string state;
    std::string summary;
    std::string family = "g";
    std::string format = "csv";
    uint64_t seed = 0;
    size_t samples = 1000;
    size_t steps = 64;
    size_t bins = 50;
    size_t modes = 3;
    size_t threads = 0;
    double tol = 1e-9;
    bool no_optimize = false;
    bool no_permutations = false;
    bool robust = false;

    SynthOptions options() const {
        SynthOptions o;
        o.optimize_bs3 = !no_optimize;
        o.try_permutations = !no_permutations;
        o.robust = robust;
        return o;
    }
};

void emit(const std::string &text, const std::string &path, std::ostream &out) {
    if (path.empty()) {
        out << text;
    } else {
        write_file(path, text);
    }
}

void add_synth_flags(CLI::App *sub, Flags &f) {
    sub->add_flag("--no-optimize", f.no_optimize, "Skip the optimizing beam splitters (identity instead)");
    sub->add_flag("--no-permutations", f.no_permutations, "Keep the input mode labels in the three-mode stage");
    sub->add_flag("--robust", f.robust, "Maximize the worst case over a small beam-splitter angle window");
}

int cmd_synth(const Flags &f, std::ostream &out, std::ostream &err) {
    TwoPhotonState target = state_from_json(read_file(f.input));
    SynthesisPlan plan = synthesize_n(target, f.options());
    emit(plan_to_json(plan), f.output, out);
    std::ostream &report = f.output.empty() ? err : out;
    report << "p_success: " << format_double(plan.p_success) << "\n";
    if (plan.fidelity < 1 - f.tol) {
        err << "fidelity " << format_double(plan.fidelity) << " below 1 - " << f.tol << "\n";
        return kExitVerificationFailed;
    }
    return kExitOk;
}

int cmd_simulate(const Flags &f, std::ostream &out, std::ostream &err) {
    Circuit c = circuit_from_json(read_file(f.input));
    TwoPhotonState input = f.state.empty() ? prepare_initial(c.n) : state_from_json(read_file(f.state));
    if (input.num_modes() != c.n) {
        throw ValidationError("state and circuit disagree on the mode count");
    }
    TwoPhotonState result = apply(c, input);
    emit(state_to_json(result), f.output, out);
    std::ostream &report = f.output.empty() ? err : out;
    report << "norm2: " << format_double(norm2(result)) << "\n";
    return kExitOk;
}

int cmd_check(const Flags &f, std::ostream &out, std::ostream &) {
    PlanRecord plan = plan_from_json(read_file(f.input));
    TwoPhotonState result = apply(plan.circuit, prepare_initial(plan.circuit.n));
    double p = norm2(result);
    double fid = p > 0 ? fidelity(result, plan.target) : 0.0;
    bool physical = physicality_check(plan.circuit);
    bool fid_ok = fid >= 1 - f.tol;
    bool p_ok = std::abs(p - plan.p_success) <= f.tol;
    out << "fidelity: " << format_double(fid) << "\n";
    out << "p_success: " << format_double(p) << " (recorded " << format_double(plan.p_success) << ")\n";
    out << "physical: " << (physical ? "true" : "false") << "\n";
    bool ok = fid_ok && p_ok && physical;
    out << (ok ? "ok" : "FAILED") << "\n";
    return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_sweep(const Flags &f, std::ostream &out, std::ostream &) {
    SweepResult r = f.family == "w" ? sweep_w(f.steps, f.options()) : sweep_g(f.steps, f.options());
    if (f.format == "json") {
        nlohmann::json points = nlohmann::json::array();
        for (const auto &p : r.points) {
            std::vector<size_t> perm;
            for (size_t m : p.permutation) {
                perm.push_back(m + 1);
            }
            points.push_back({{r.parameter_name, p.parameter},
                              {"p_success", p.p_success},
                              {"fidelity", p.fidelity},
                              {"theta3", p.theta3},
                              {"phi4", p.phi4},
                              {"q2", p.q2},
                              {"permutation", perm}});
        }
        emit(points.dump(2) + "\n", f.output, out);
    } else {
        emit(sweep_to_csv(r), f.output, out);
    }
    return kExitOk;
}

int cmd_histogram(const Flags &f, std::ostream &out, std::ostream &err) {
    HistogramResult h = histogram(f.samples, f.bins, f.seed, f.options(), f.modes, f.threads);
    std::string summary = histogram_summary_json(h);
    if (f.format == "json") {
        nlohmann::json doc = nlohmann::json::parse(summary);
        doc["edges"] = h.edges;
        doc["counts"] = h.counts;
        emit(doc.dump(2) + "\n", f.output, out);
    } else {
        emit(histogram_to_csv(h), f.output, out);
    }
    if (!f.summary.empty()) {
        write_file(f.summary, summary);
    }
    std::ostream &report = f.output.empty() ? err : out;
    report << summary;
    return kExitOk;
}

int cmd_klm(const Flags &f, std::ostream &out, std::ostream &) {
    if (f.steps < 2) {
        throw ValidationError("klm needs at least 2 steps");
    }
    std::string csv = "tau,alpha,beta,beta_sq,p_success,bs_transmissivity\n";
    nlohmann::json rows = nlohmann::json::array();
    for (size_t i = 0; i < f.steps; i++) {
        double tau = static_cast<double>(i) / static_cast<double>(f.steps - 1);
        KlmSimulation sim = klm_simulate(tau);
        double t = klm_params(tau).bs_transmissivity();
        csv += format_double(tau) + "," + format_double(sim.alpha) + "," + format_double(sim.beta) + "," +
               format_double(sim.beta * sim.beta) + "," + format_double(sim.p_success) + "," + format_double(t) +
               "\n";
        rows.push_back({{"tau", tau},
                        {"alpha", sim.alpha},
                        {"beta", sim.beta},
                        {"beta_sq", sim.beta * sim.beta},
                        {"p_success", sim.p_success},
                        {"bs_transmissivity", t}});
    }
    emit(f.format == "json" ? rows.dump(2) + "\n" : csv, f.output, out);
    return kExitOk;
}

int cmd_reachability(const Flags &f, std::ostream &out, std::ostream &) {
    TwoPhotonState s = state_from_json(read_file(f.input));
    bool reachable = reachable_from_separable(s, f.tol);
    Eigen::VectorXd sv = coeff_singular_values(s);
    out << (reachable ? "true" : "false") << "\n";
    out << "singular_values:";
    for (Eigen::Index i = 0; i < sv.size(); i++) {
        out << " " << format_double(sv[i]);
    }
    out << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Flags f;
    CLI::App app{"Linear-optics synthesis of two-photon states.", "tpsynth"};
    app.require_subcommand(1);

    auto *synth = app.add_subcommand("synth", "Synthesize a circuit for a target state (state JSON in, plan JSON out)");
    synth->add_option("input", f.input, "Target state JSON")->required();
    synth->add_option("-o,--output", f.output, "Plan JSON path (stdout if omitted)");
    synth->add_option("--tol", f.tol, "Allowed fidelity defect of the verified plan")->capture_default_str();
    add_synth_flags(synth, f);

    auto *simulate = app.add_subcommand("simulate", "Apply a circuit (or a plan's circuit) to a state");
    simulate->add_option("circuit", f.input, "Circuit or plan JSON")->required();
    simulate->add_option("--state", f.state, "Input state JSON (default: uniform |2_j> superposition)");
    simulate->add_option("-o,--output", f.output, "Output state JSON path (stdout if omitted)");

    auto *check = app.add_subcommand("check", "Re-verify a plan: fidelity, success probability, physicality");
    check->add_option("plan", f.input, "Plan JSON")->required();
    check->add_option("--tol", f.tol, "Allowed fidelity defect and success-probability mismatch")
        ->capture_default_str();

    auto *sweep = app.add_subcommand("sweep", "Success probability along the w or g state family (CSV)");
    sweep->add_option("--family", f.family, "State family")->check(CLI::IsMember({"w", "g"}))->capture_default_str();
    sweep->add_option("--steps", f.steps, "Grid points, endpoints included")->capture_default_str();
    sweep->add_option("-o,--output", f.output, "Output path (stdout if omitted)");
    sweep->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    add_synth_flags(sweep, f);

    auto *hist = app.add_subcommand("histogram", "Success-probability histogram over random targets (CSV)");
    hist->add_option("--samples", f.samples, "Number of random targets")->capture_default_str();
    hist->add_option("--bins", f.bins, "Uniform bins over [0, 1]")->capture_default_str();
    hist->add_option("--seed", f.seed, "Master seed")->capture_default_str();
    hist->add_option("--modes", f.modes, "Modes per random target")->capture_default_str();
    hist->add_option("--threads", f.threads, "Worker threads (0: hardware concurrency)")->capture_default_str();
    hist->add_option("-o,--output", f.output, "Output path (stdout if omitted)");
    hist->add_option("--summary", f.summary, "Also write the JSON summary to this path");
    hist->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    add_synth_flags(hist, f);

    auto *klm = app.add_subcommand("klm", "KLM-state scheme over a tau grid on [0, 1] (CSV)");
    klm->add_option("--steps", f.steps, "Grid points, endpoints included")->capture_default_str();
    klm->add_option("-o,--output", f.output, "Output path (stdout if omitted)");
    klm->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    auto *reach = app.add_subcommand("reachability", "Whether a state is reachable from a separable pair");
    reach->add_option("input", f.input, "State JSON")->required();
    reach->add_option("--tol", f.tol, "Relative singular-value threshold")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitMalformedInput;
    }

    try {
        if (*synth) return cmd_synth(f, out, err);
        if (*simulate) return cmd_simulate(f, out, err);
        if (*check) return cmd_check(f, out, err);
        if (*sweep) return cmd_sweep(f, out, err);
        if (*hist) return cmd_histogram(f, out, err);
        if (*klm) return cmd_klm(f, out, err);
        if (*reach) return cmd_reachability(f, out, err);
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformedInput;
    } catch (const DegenerateAmplitudes &e) {
        err << "degenerate: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformedInput;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitVerificationFailed;
    }
    return kExitMalformedInput;
}

}  // namespace tpsynth
