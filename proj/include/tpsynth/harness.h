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

#ifndef TPSYNTH_HARNESS_H
#define TPSYNTH_HARNESS_H

#include <cstdint>
#include <string>
#include <vector>

#include "tpsynth/fock.h"
#include "tpsynth/plan.h"

namespace tpsynth {

/// Independent standard complex Gaussian amplitudes, normalized: uniform on
/// the unit sphere of the n(n+1)/2 dimensional state space. Throws
/// ValidationError for n < 2.
TwoPhotonState random_state(size_t n, uint64_t seed);

/// Seed of sample `index` under master seed `seed`. Independent of thread
/// scheduling.
uint64_t sample_seed(uint64_t seed, uint64_t index);

/// cos(w) (|200> + |020> + |002>) + sin(w) (|110> + |101> + |011>), normalized.
TwoPhotonState family_w(double w);

/// |200> + |101> + |002> + e^{ig} (|110> + |020> + |011>), normalized.
TwoPhotonState family_g(double g);

struct SweepPoint {
    double parameter = 0;
    double p_success = 0;
    double fidelity = 0;
    double theta3 = 0;
    double phi4 = 0;
    double q2 = 1;
    std::vector<size_t> permutation;
};

struct SweepResult {
    /// "w" or "g".
    std::string parameter_name;
    std::vector<SweepPoint> points;
};

/// steps points over w in [0, pi/2], endpoints included. Throws
/// ValidationError for steps < 2.
SweepResult sweep_w(size_t steps, const SynthOptions &options = {});

/// steps points over g in [0, 2 pi], endpoints included.
SweepResult sweep_g(size_t steps, const SynthOptions &options = {});

struct HistogramResult {
    size_t samples = 0;
    uint64_t seed = 0;
    size_t modes = 3;
    /// bins + 1 uniform edges over [0, 1].
    std::vector<double> edges;
    /// counts[b] samples in [edges[b], edges[b+1]); p = 1 lands in the last bin.
    std::vector<size_t> counts;
    double min = 0;
    double mean = 0;
    /// Per-sample success probabilities in sample order.
    std::vector<double> p_values;

    double fraction_above(double threshold) const;
};

/// Synthesizes `samples` random targets with per-sample seeds and aggregates
/// their success probabilities. threads == 0 picks the hardware concurrency.
/// The result does not depend on the thread count.
HistogramResult histogram(size_t samples, size_t bins, uint64_t seed, const SynthOptions &options = {},
                          size_t modes = 3, size_t threads = 0);

}  // namespace tpsynth

#endif
