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

#include "tpsynth/synth3.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pipeline.h"
#include "tpsynth/elements.h"
#include "tpsynth/errors.h"

namespace tpsynth {

namespace {

bool is_zero(Complex z) {
    return z == Complex(0);
}

Eigen::Matrix3cd three_mode_block(const TwoPhotonState &target) {
    if (target.num_modes() != 3) {
        throw ValidationError("three-mode routine needs a 3-mode state");
    }
    ModeMatrix c = to_coeff_matrix(target).c;
    return c.topLeftCorner<3, 3>();
}

}  // namespace

double U101Solution::tau2() const {
    return std::cos(theta2);
}

U101Solution solve_u101(Complex delta, Complex epsilon) {
    if (is_zero(epsilon)) {
        return {};
    }
    if (is_zero(delta)) {
        throw DegenerateAmplitudes("|110> amplitude is zero while |101> is not");
    }
    U101Solution s;
    s.phi3 = std::arg(epsilon) - std::arg(delta);
    s.theta2 = -std::atan(std::abs(epsilon) / std::abs(delta));
    return s;
}

Eigen::Matrix2cd F2Solution::reverse_block() const {
    Eigen::Matrix2cd m;
    m << q2, -ratio * q2, 0, q2;
    return m;
}

Eigen::Matrix2cd F2Solution::forward_block() const {
    Eigen::Matrix2cd m;
    m << q2, ratio * q2, 0, q2;
    return m;
}

F2Solution solve_filter_f2(Complex alpha_p, Complex delta_p) {
    if (is_zero(delta_p)) {
        return {};
    }
    if (is_zero(alpha_p)) {
        throw DegenerateAmplitudes("|200> amplitude is zero while |110> is not");
    }
    Complex kappa = delta_p / (std::numbers::sqrt2 * alpha_p);
    F2Solution s;
    s.phi2 = -std::arg(kappa);
    s.ratio = std::abs(kappa);
    s.q2 = 0.5 * (s.ratio - std::sqrt(s.ratio * s.ratio + 4));
    s.compensation = s.q2;
    return s;
}

double m_min(double q2) {
    if (!(std::abs(q2) <= 1)) {
        throw ValidationError("m_min: |q2| must be at most 1");
    }
    double s = q2 * q2;
    double s2 = s * s;
    double lead = 0.5 * (s2 + (1 - s + s2) * (1 - s + s2));
    double spread = 0.5 * (1 - s) * (1 - s) * std::sqrt(1 + 6 * s2 + s2 * s2);
    return lead - spread;
}

LowerBounds lower_bounds() {
    // Worst case |delta'/alpha'| = sqrt(11).
    F2Solution worst = solve_filter_f2(1.0, std::sqrt(11.0));
    LowerBounds b;
    b.q2_sq_min = worst.q2 * worst.q2;
    b.p_f2_min = m_min(worst.q2);
    b.p_f1_min = 1.0 / 3.0;
    b.p_s_min = b.p_f2_min * b.p_f1_min;
    return b;
}

U011Solution solve_u011(Complex beta_pp, Complex gamma_pp, Complex eta_pp) {
    if (is_zero(eta_pp)) {
        return {};
    }
    Complex x = gamma_pp / eta_pp;
    Complex y = beta_pp / eta_pp;
    U011Solution s;
    s.phi1 = std::atan2((x - y).imag(), (x + y).real());
    Complex num = std::numbers::sqrt2 * eta_pp;
    Complex den = std::polar(1.0, -s.phi1) * gamma_pp - std::polar(1.0, s.phi1) * beta_pp;
    if (std::norm(den) == 0) {
        s.theta1 = std::numbers::pi / 4;
        return s;
    }
    Complex cross = num * std::conj(den);
    double scale = std::abs(num) * std::abs(den);
    if (std::abs(cross.imag()) > 1e-10 * std::max(scale, 1e-300)) {
        throw std::logic_error("solve_u011: rotation angle is not real");
    }
    s.theta1 = 0.5 * std::atan2(cross.real(), std::norm(den));
    return s;
}

F1Solution solve_f1(std::span<const Complex> diagonal) {
    double c_max = 0;
    double c_min = 0;
    for (Complex c : diagonal) {
        double a = std::abs(c);
        if (!std::isfinite(a)) {
            throw ValidationError("solve_f1: non-finite amplitude");
        }
        c_max = std::max(c_max, a);
        if (a > 0 && (c_min == 0 || a < c_min)) {
            c_min = a;
        }
    }
    if (c_max == 0) {
        throw ValidationError("solve_f1: all amplitudes are zero");
    }
    F1Solution s;
    double total = 0;
    for (Complex c : diagonal) {
        double a = std::abs(c);
        s.equalizing.push_back(a > 0 ? std::sqrt(c_min / a) : 0.0);
        s.forward.push_back(std::sqrt(a / c_max));
        s.phases.push_back(a > 0 ? std::arg(c) / 2 : 0.0);
        total += (a / c_max) * (a / c_max);
    }
    s.success = total / static_cast<double>(diagonal.size());
    return s;
}

F1Solution solve_f1(Complex alpha_t, Complex beta_t, Complex gamma_t) {
    std::array<Complex, 3> diagonal = {alpha_t, beta_t, gamma_t};
    return solve_f1(diagonal);
}

double Bs3Solution::tau3() const {
    return std::cos(theta3);
}

double bs3_objective(const TwoPhotonState &target, double theta3, double phi4) {
    return detail::stage3_merit(three_mode_block(target), 0, theta3, phi4) / 3;
}

Bs3Solution optimize_bs3(const TwoPhotonState &target, Bs3Mode mode, const OptimizerConfig &config) {
    Eigen::Matrix3cd x = three_mode_block(target);
    detail::Stage3Choice c = detail::optimize_stage3(x, 0, mode == Bs3Mode::kRobust, config);
    Bs3Solution s;
    s.theta3 = c.theta3;
    s.phi4 = c.phi4;
    s.p_success = detail::stage3_merit(x, 0, c.theta3, c.phi4) / 3;
    return s;
}

SynthesisPlan synthesize(const TwoPhotonState &target, const SynthOptions &options) {
    if (target.num_modes() != 3) {
        throw ValidationError("synthesize: target must have 3 modes");
    }
    return detail::run_synthesis(target, options);
}

std::vector<double> filter_success_probabilities(const Circuit &c, const TwoPhotonState &input) {
    std::vector<double> out;
    TwoPhotonState state = input;
    double before = norm2(state);
    for (const auto &e : c.elements) {
        state = apply(Circuit{c.n, {e}}, state);
        double after = norm2(state);
        if (!element_is_unitary(e)) {
            out.push_back(before > 0 ? after / before : 0.0);
        }
        before = after;
    }
    return out;
}

}  // namespace tpsynth
