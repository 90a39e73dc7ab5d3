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

#ifndef TPSYNTH_SRC_PIPELINE_H
#define TPSYNTH_SRC_PIPELINE_H

#include <array>
#include <span>
#include <vector>

#include "tpsynth/elements.h"
#include "tpsynth/plan.h"
#include "tpsynth/synth3.h"

namespace tpsynth::detail {

/// Propagates a coefficient matrix backwards through the synthesis steps and
/// records the forward circuit. Pipeline mode a is circuit mode labels[a].
class ReverseBuilder {
   public:
    explicit ReverseBuilder(ModeMatrix c);

    const ModeMatrix &state() const {
        return c_;
    }
    const std::vector<size_t> &labels() const {
        return labels_;
    }
    size_t num_modes() const {
        return static_cast<size_t>(c_.rows());
    }

    /// Relabels the pipeline frame: new mode a is current mode perm[a].
    void relabel(std::span<const size_t> perm);
    /// Applies a unitary element backwards; its inverse joins the circuit.
    void unitary(const Element &e);
    /// Applies the reverse filter q (1 - c E) on (pivot, partner), q on the
    /// compensated modes and q^2 elsewhere; the forward filter joins the circuit.
    void filter(size_t pivot, size_t partner, const F2Solution &f, std::span<const size_t> compensated);
    /// Sets the initial filter layer of the forward circuit.
    void initial_layer(const F1Solution &f1);
    Circuit circuit() const;

   private:
    size_t label(size_t a) const;
    Element relabeled(Element e) const;

    ModeMatrix c_;
    std::vector<size_t> labels_;
    std::vector<Element> head_;
    std::vector<Element> tail_reversed_;
};

/// Closed-form figure of merit of the three-mode stage: the end-to-end
/// success probability times the number of modes, for a state whose modes
/// beyond the first three carry only |2_k> terms, max_k 2|C_kk|^2 = extra.
double stage3_merit(const Eigen::Matrix3cd &x, double extra, double theta3, double phi4);

struct Stage3Choice {
    std::array<size_t, 3> perm{0, 1, 2};
    double theta3 = 0;
    double phi4 = 0;
    double merit = 0;
};

/// Best (permutation, theta3, phi4) for the current state under the options.
/// merit == 0 means no admissible labeling.
Stage3Choice choose_stage3(const ModeMatrix &c, const SynthOptions &options);

/// Optimizes (theta3, phi4) for a fixed labeling.
Stage3Choice optimize_stage3(const Eigen::Matrix3cd &x, double extra, bool robust, const OptimizerConfig &config);

/// Full synthesis: cycles for modes n-1 .. 3, three-mode stage, initial layer
/// and forward verification.
SynthesisPlan run_synthesis(const TwoPhotonState &target, const SynthOptions &options);

/// One reduction cycle on the builder's state.
CyclePlan run_cycle(ReverseBuilder &rb, size_t m, const SynthOptions &options);

}  // namespace tpsynth::detail

#endif
