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

#ifndef TPSYNTH_KLM_H
#define TPSYNTH_KLM_H

#include "tpsynth/elements.h"
#include "tpsynth/fock.h"

namespace tpsynth {

/// Mode order of the flattened polarization encoding.
enum KlmMode : size_t { kH1 = 0, kV1 = 1, kH2 = 2, kV2 = 3 };

/// Closed-form parameters of the polarization scheme preparing
/// alpha|1100> + beta|0110> + alpha|0011>.
struct KlmParams {
    /// Transmittance of the horizontal-polarization filter.
    double tau = 1;
    /// Beam-splitter angle arctan(sqrt(tau)).
    double theta = 0;
    double alpha = 0;
    double beta = 0;
    double p_success = 0;
    /// Amplitude transmissivity cos(theta) = 1 / sqrt(1 + tau).
    double bs_transmissivity() const;
};

/// Throws ValidationError unless 0 <= tau <= 1.
KlmParams klm_params(double tau);

/// tau in [0, 1] with beta / alpha = (1 - tau) / sqrt(tau) = ratio; an
/// infinite ratio gives 0. Throws ValidationError for negative or NaN ratio.
double klm_tau_for_ratio(double ratio);

/// Polarization pipeline in the (H1, V1, H2, V2) encoding.
Circuit klm_circuit(double tau);

/// (|H1 V2> + |V1 H2>) / sqrt(2).
TwoPhotonState klm_source_state();

struct KlmSimulation {
    /// Normalized output state.
    TwoPhotonState state{4};
    double p_success = 0;
    /// Real parts of the |1100> and |0110> amplitudes of the normalized output.
    double alpha = 0;
    double beta = 0;
};

/// Propagates klm_source_state() through klm_circuit(tau).
KlmSimulation klm_simulate(double tau);

/// alpha|1100> + beta|0110> + alpha|0011> in the same encoding.
TwoPhotonState klm_state(double alpha, double beta);

}  // namespace tpsynth

#endif
