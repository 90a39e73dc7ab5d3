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

#ifndef TPSYNTH_PLAN_H
#define TPSYNTH_PLAN_H

#include <cstddef>
#include <vector>

#include "tpsynth/elements.h"
#include "tpsynth/fock.h"

namespace tpsynth {

/// Grid-plus-refinement settings for the success-probability optimizers.
struct OptimizerConfig {
    /// Grid over the optimizing beam-splitter angle, endpoints included.
    size_t theta_points = 200;
    /// Grid over the optimizing phase, [0, 2 pi) with the endpoint excluded.
    size_t phi_points = 64;
    /// Coordinate-wise golden-section refinement stops at this bracket width.
    double tolerance = 1e-10;
    /// Number of grid local maxima that get refined.
    size_t candidates = 4;
    /// Half-width of the beam-splitter angle window whose worst case the
    /// robust objective maximizes.
    double robust_width = 0.02;
};

struct SynthOptions {
    bool optimize_bs3 = true;
    bool try_permutations = true;
    bool robust = false;
    OptimizerConfig optimizer;
};

/// Solved parameters of the three-mode stage. Angles in radians; phases are the
/// ones applied while propagating the target backwards, the forward circuit
/// carries their negatives.
struct SynthParams {
    double phi1 = 0;
    double phi2 = 0;
    double phi3 = 0;
    double phi4 = 0;
    double theta1 = 0;
    double theta2 = 0;
    double theta3 = 0;
    double q2 = 1;
    /// Forward transmittances and phases of the initial filter layer, per mode.
    std::vector<double> f1_transmittances;
    std::vector<double> f1_phases;
};

struct EliminatorParams {
    /// Mode that keeps the weight (delta role) and mode whose cross term with
    /// the cycle mode is removed (epsilon role).
    size_t keep_mode = 0;
    size_t clear_mode = 0;
    double phi = 0;
    double theta = 0;
};

/// One cycle of the N-mode reduction: removes every |1_j 1_m> term for the
/// cycle mode m.
struct CyclePlan {
    size_t cycle_mode = 0;
    /// Optimizing beam splitter on (optimizer_partner, cycle_mode), applied
    /// first when propagating backwards. theta = 0 means identity.
    size_t optimizer_partner = 0;
    double optimizer_theta = 0;
    std::vector<EliminatorParams> eliminators;
    size_t filter_partner = 0;
    double filter_q = 1;
    double filter_phase = 0;
    double filter_ratio = 0;
    std::vector<size_t> compensated_modes;
    /// max_j |C_{j,m}| over j != m after the cycle.
    double residual = 0;
};

struct SynthesisPlan {
    TwoPhotonState target{3};
    /// Forward circuit taking prepare_initial(n) to p_success^(1/2) * target.
    Circuit circuit;
    double p_success = 0;
    double fidelity = 0;
    SynthParams params;
    /// Relabeling used by the three-mode stage: pipeline mode a is mode
    /// permutation[a] of the input.
    std::vector<size_t> permutation;
    /// Intermediate states of the backwards pipeline, in the relabeled frame.
    TwoPhotonState psi_prime{3};
    TwoPhotonState psi_double_prime{3};
    TwoPhotonState psi_triple_prime{3};
    std::vector<CyclePlan> cycles;
};

/// Post-selection probability of every non-unitary element of the circuit,
/// measured in forward order on the given input.
std::vector<double> filter_success_probabilities(const Circuit &c, const TwoPhotonState &input);

}  // namespace tpsynth

#endif
