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

#include "tpsynth/synthn.h"

#include <variant>

#include "pipeline.h"
#include "tpsynth/errors.h"
#include "tpsynth/synth3.h"

namespace tpsynth {

std::pair<CyclePlan, TwoPhotonState> cycle_eliminate(const TwoPhotonState &state, size_t m,
                                                      const SynthOptions &options) {
    size_t n = state.num_modes();
    if (m < 3 || m >= n) {
        throw ValidationError("cycle_eliminate: cycle mode must satisfy 3 <= m < n (0-based)");
    }
    detail::ReverseBuilder rb(to_coeff_matrix(state).c);
    CyclePlan plan = detail::run_cycle(rb, m, options);
    return {plan, from_coeff_matrix(CoeffMatrix{rb.state()})};
}

SynthesisPlan synthesize_n(const TwoPhotonState &target, const SynthOptions &options) {
    if (target.num_modes() < 3) {
        throw ValidationError("synthesize_n: at least 3 modes required");
    }
    if (target.num_modes() == 3) {
        return synthesize(target, options);
    }
    return detail::run_synthesis(target, options);
}

size_t op_count(size_t n) {
    if (n < 3) {
        throw ValidationError("op_count: at least 3 modes required");
    }
    return n * (n - 1) / 2;
}

size_t plan_block_count(const SynthesisPlan &plan) {
    size_t count = 0;
    for (const auto &e : plan.circuit.elements) {
        if (std::holds_alternative<BeamSplitter>(e) || std::holds_alternative<TwoModeMatrix>(e)) {
            count++;
        }
    }
    return count;
}

}  // namespace tpsynth
