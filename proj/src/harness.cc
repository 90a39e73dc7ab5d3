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

#include "tpsynth/harness.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "tpsynth/errors.h"
#include "tpsynth/synthn.h"

namespace tpsynth {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

SweepPoint sweep_point(double parameter, const TwoPhotonState &target, const SynthOptions &options) {
    SynthesisPlan plan = synthesize_n(target, options);
    SweepPoint p;
    p.parameter = parameter;
    p.p_success = plan.p_success;
    p.fidelity = plan.fidelity;
    p.theta3 = plan.params.theta3;
    p.phi4 = plan.params.phi4;
    p.q2 = plan.params.q2;
    p.permutation = plan.permutation;
    return p;
}

std::vector<double> grid(size_t steps, double hi) {
    if (steps < 2) {
        throw ValidationError("a sweep needs at least 2 steps");
    }
    std::vector<double> out(steps);
    for (size_t i = 0; i < steps; i++) {
        out[i] = static_cast<double>(i) * hi / static_cast<double>(steps - 1);
    }
    return out;
}

}  // namespace

uint64_t sample_seed(uint64_t seed, uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

TwoPhotonState random_state(size_t n, uint64_t seed) {
    if (n < 2) {
        throw ValidationError("random_state: at least 2 modes required");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<Complex> amps(basis_size(n));
    for (auto &a : amps) {
        double re = normal(rng);
        double im = normal(rng);
        a = Complex(re, im);
    }
    return normalize(TwoPhotonState(n, std::move(amps)));
}

TwoPhotonState family_w(double w) {
    TwoPhotonState s(3);
    double d = std::cos(w) / std::sqrt(3.0);
    double o = std::sin(w) / std::sqrt(3.0);
    for (size_t j = 0; j < 3; j++) {
        for (size_t k = j; k < 3; k++) {
            s.set_amplitude(j, k, j == k ? d : o);
        }
    }
    return s;
}

TwoPhotonState family_g(double g) {
    TwoPhotonState s(3);
    double a = 1 / std::sqrt(6.0);
    Complex e = std::polar(a, g);
    s.set_amplitude(0, 0, a);
    s.set_amplitude(0, 2, a);
    s.set_amplitude(2, 2, a);
    s.set_amplitude(0, 1, e);
    s.set_amplitude(1, 1, e);
    s.set_amplitude(1, 2, e);
    return s;
}

SweepResult sweep_w(size_t steps, const SynthOptions &options) {
    SweepResult r{"w", {}};
    for (double w : grid(steps, std::numbers::pi / 2)) {
        r.points.push_back(sweep_point(w, family_w(w), options));
    }
    return r;
}

SweepResult sweep_g(size_t steps, const SynthOptions &options) {
    SweepResult r{"g", {}};
    for (double g : grid(steps, 2 * std::numbers::pi)) {
        r.points.push_back(sweep_point(g, family_g(g), options));
    }
    return r;
}

double HistogramResult::fraction_above(double threshold) const {
    if (p_values.empty()) {
        return 0;
    }
    auto count = std::count_if(p_values.begin(), p_values.end(), [&](double p) { return p > threshold; });
    return static_cast<double>(count) / static_cast<double>(p_values.size());
}

HistogramResult histogram(size_t samples, size_t bins, uint64_t seed, const SynthOptions &options, size_t modes,
                          size_t threads) {
    if (samples < 1) {
        throw ValidationError("histogram: at least one sample required");
    }
    if (bins < 1) {
        throw ValidationError("histogram: at least one bin required");
    }
    HistogramResult h;
    h.samples = samples;
    h.seed = seed;
    h.modes = modes;
    h.p_values.assign(samples, 0.0);

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, samples);
    auto work = [&](size_t first, size_t stride) {
        for (size_t i = first; i < samples; i += stride) {
            h.p_values[i] = synthesize_n(random_state(modes, sample_seed(seed, i)), options).p_success;
        }
    };
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        for (size_t t = 0; t < threads; t++) {
            pool.emplace_back([&, t] {
                try {
                    work(t, threads);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    h.edges.resize(bins + 1);
    for (size_t b = 0; b <= bins; b++) {
        h.edges[b] = static_cast<double>(b) / static_cast<double>(bins);
    }
    h.counts.assign(bins, 0);
    h.min = h.p_values[0];
    double total = 0;
    for (double p : h.p_values) {
        auto b = static_cast<size_t>(p * static_cast<double>(bins));
        h.counts[std::min(b, bins - 1)]++;
        h.min = std::min(h.min, p);
        total += p;
    }
    h.mean = total / static_cast<double>(samples);
    return h;
}

}  // namespace tpsynth
