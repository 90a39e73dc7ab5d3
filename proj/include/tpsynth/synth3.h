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

#ifndef TPSYNTH_SYNTH3_H
#define TPSYNTH_SYNTH3_H

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "tpsynth/fock.h"
#include "tpsynth/plan.h"

namespace tpsynth {

/// Parameters of the unitary that removes |101> by interfering modes 2 and 3.
/// Backwards, a phase phi3 on mode 2 aligns delta with epsilon and a beam
/// splitter BeamSplitter{1, 2, theta2} cancels the epsilon term.
struct U101Solution {
    double phi3 = 0;
    double theta2 = 0;
    /// Amplitude transmittance cos(theta2) = 1 / sqrt(1 + |epsilon/delta|^2).
    double tau2() const;
};

/// delta, epsilon: amplitudes of |110> and |101>. Both zero gives identity;
/// delta == 0 with epsilon != 0 throws DegenerateAmplitudes.
U101Solution solve_u101(Complex delta, Complex epsilon);

/// Filter removing |110> from alpha'|200> + delta'|110> + ...
struct F2Solution {
    /// Amplitude transmittance, the negative root of q^2 - c q - 1 = 0, or 1
    /// when delta' == 0.
    double q2 = 1;
    /// Phase on mode 2 that makes delta'/alpha' real and positive.
    double phi2 = 0;
    /// c = |delta'| / (sqrt(2) |alpha'|).
    double ratio = 0;
    /// Transmittance of the compensating attenuation on the remaining mode.
    double compensation = 1;

    /// [[q2, -c q2], [0, q2]] on modes (1, 2): applied to the phase-corrected
    /// state it clears |110>.
    Eigen::Matrix2cd reverse_block() const;
    /// [[q2, c q2], [0, q2]]: the physical filter placed in the forward
    /// circuit. reverse_block() * forward_block() = q2^2 I.
    Eigen::Matrix2cd forward_block() const;
};

/// Throws DegenerateAmplitudes when alpha' == 0 and delta' != 0.
F2Solution solve_filter_f2(Complex alpha_p, Complex delta_p);

/// Smallest eigenvalue of M^dag M for the forward filter of transmittance q2,
/// restricted to states without |110> and |101>: a lower bound on the filter's
/// success probability. Throws ValidationError for |q2| > 1.
double m_min(double q2);

struct LowerBounds {
    double q2_sq_min = 0;
    double p_f2_min = 0;
    double p_f1_min = 0;
    double p_s_min = 0;
};

/// Worst-case constants: |delta'/alpha'| <= sqrt(11) bounds q2^2 from below,
/// m_min at that point bounds the second filter, 1/3 bounds the first.
LowerBounds lower_bounds();

/// Removes |011> with a phase phi1 on mode 2 followed by BeamSplitter{1, 2,
/// theta1}, both applied backwards. eta == 0 gives identity.
struct U011Solution {
    double phi1 = 0;
    double theta1 = 0;
};

U011Solution solve_u011(Complex beta_pp, Complex gamma_pp, Complex eta_pp);

/// Filter layer between prepare_initial(n) and a diagonal state sum_j c_j |2_j>.
struct F1Solution {
    /// Transmittances sqrt(c_min / |c_j|) that equalize the |2_j> magnitudes
    /// when applied to the diagonal state (0 for modes with c_j == 0).
    std::vector<double> equalizing;
    /// Transmittances sqrt(|c_j| / c_max) of the forward layer.
    std::vector<double> forward;
    /// Forward phase arg(c_j) / 2 per mode.
    std::vector<double> phases;
    /// Success probability of the forward layer on prepare_initial(n),
    /// sum_j |c_j|^2 / (n c_max^2) >= 1/n.
    double success = 0;
};

/// Throws ValidationError when every amplitude is zero.
F1Solution solve_f1(std::span<const Complex> diagonal);
/// Three-mode form over the |200>, |020>, |002> amplitudes.
F1Solution solve_f1(Complex alpha_t, Complex beta_t, Complex gamma_t);

enum class Bs3Mode { kGlobal, kRobust };

struct Bs3Solution {
    double theta3 = 0;
    double phi4 = 0;
    /// End-to-end success probability at (theta3, phi4).
    double p_success = 0;
    double tau3() const;
};

/// End-to-end success probability of the three-mode scheme for a normalized
/// target, with the optimizing beam splitter BeamSplitter{0, 1, theta3}
/// preceded (backwards) by a phase phi4 on mode 1, fixed mode labels.
/// Returns 0 for parameter points where a pivot amplitude vanishes.
double bs3_objective(const TwoPhotonState &target, double theta3, double phi4);

/// Grid search over (theta3, phi4); the best grid peaks are refined by a
/// simplex search and coordinate golden-section sweeps.
/// kRobust maximizes the worst case over theta3 +- config.robust_width instead
/// of the point value.
Bs3Solution optimize_bs3(const TwoPhotonState &target, Bs3Mode mode, const OptimizerConfig &config = {});

/// Full three-mode synthesis. Throws ValidationError unless target has three
/// modes and unit norm (within 1e-9), DegenerateAmplitudes if no labeling
/// admits a nonzero pivot.
SynthesisPlan synthesize(const TwoPhotonState &target, const SynthOptions &options = {});

}  // namespace tpsynth

#endif
