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

#include "tpsynth/klm.h"

#include <cmath>
#include <numbers>

#include "tpsynth/errors.h"

namespace tpsynth {

namespace {

void check_tau(double tau) {
    if (!(tau >= 0 && tau <= 1)) {
        throw ValidationError("tau must lie in [0, 1]");
    }
}

}  // namespace

double KlmParams::bs_transmissivity() const {
    return std::cos(theta);
}

KlmParams klm_params(double tau) {
    check_tau(tau);
    KlmParams p;
    p.tau = tau;
    p.theta = std::atan(std::sqrt(tau));
    double norm = std::sqrt(1 + tau * tau);
    p.alpha = std::sqrt(tau) / norm;
    p.beta = (1 - tau) / norm;
    p.p_success = (1 + tau * tau) / 2;
    return p;
}

double klm_tau_for_ratio(double ratio) {
    if (std::isnan(ratio) || ratio < 0) {
        throw ValidationError("ratio must be non-negative");
    }
    if (std::isinf(ratio)) {
        return 0;
    }
    // sqrt(tau) is the positive root of s^2 + ratio s - 1 = 0.
    double s = 2 / (ratio + std::sqrt(ratio * ratio + 4));
    return s * s;
}

Circuit klm_circuit(double tau) {
    check_tau(tau);
    double theta = std::atan(std::sqrt(tau));
    return Circuit{4,
                   {
                       Filter{kH1, tau},
                       BeamSplitter{kH2, kH1, theta},
                       BeamSplitter{kV2, kV1, theta},
                       PhaseShifter{kV1, std::numbers::pi},
                   }};
}

TwoPhotonState klm_source_state() {
    TwoPhotonState s(4);
    s.set_amplitude(kH1, kV2, 1 / std::numbers::sqrt2);
    s.set_amplitude(kV1, kH2, 1 / std::numbers::sqrt2);
    return s;
}

KlmSimulation klm_simulate(double tau) {
    TwoPhotonState out = apply(klm_circuit(tau), klm_source_state());
    KlmSimulation sim;
    sim.p_success = norm2(out);
    sim.state = normalize(out);
    // Global phase fixed so that alpha + beta is real and non-negative.
    Complex ref = sim.state.amplitude(kH1, kV1) + sim.state.amplitude(kV1, kH2);
    if (std::abs(ref) > 0) {
        sim.state *= std::conj(ref) / std::abs(ref);
    }
    sim.alpha = sim.state.amplitude(kH1, kV1).real();
    sim.beta = sim.state.amplitude(kV1, kH2).real();
    return sim;
}

TwoPhotonState klm_state(double alpha, double beta) {
    TwoPhotonState s(4);
    s.set_amplitude(kH1, kV1, alpha);
    s.set_amplitude(kV1, kH2, beta);
    s.set_amplitude(kH2, kV2, alpha);
    return s;
}

}  // namespace tpsynth
