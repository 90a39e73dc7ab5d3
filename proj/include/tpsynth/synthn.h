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

#ifndef TPSYNTH_SYNTHN_H
#define TPSYNTH_SYNTHN_H

#include <utility>

#include "tpsynth/fock.h"
#include "tpsynth/plan.h"

namespace tpsynth {

/// Runs one reduction cycle backwards on `state` for cycle mode m (0-based,
/// 3 <= m < n): optional optimizing beam splitter, eliminators on (j, j+1)
/// for j < m-1 clearing |1_j 1_m>, and a filter on (m-1, m) clearing
/// |1_{m-1} 1_m>. Returns the cycle and the (unnormalized) reduced state.
std::pair<CyclePlan, TwoPhotonState> cycle_eliminate(
    const TwoPhotonState &state, size_t m, const SynthOptions &options = {});

/// N-mode synthesis from prepare_initial(N). Delegates to synthesize() for
/// N == 3. Throws ValidationError for N < 3 or a non-normalized target.
SynthesisPlan synthesize_n(const TwoPhotonState &target, const SynthOptions &options = {});

/// Two-mode blocks (eliminators, filters and the two unitaries of the final
/// three-mode stage) in a full synthesis over n modes, without optimizers.
/// Throws ValidationError for n < 3.
size_t op_count(size_t n);

/// Two-mode blocks actually present in a plan, optimizing beam splitters
/// included.
size_t plan_block_count(const SynthesisPlan &plan);

}  // namespace tpsynth

#endif
