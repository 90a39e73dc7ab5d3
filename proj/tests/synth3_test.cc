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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <numbers>
#include <random>

#include "brute_force.h"
#include "test_util.h"
#include "tpsynth/elements.h"
#include "tpsynth/harness.h"

using namespace tpsynth;
using tpsynth::testing::gaussian_state;

namespace {

constexpr double kPi = std::numbers::pi;

/// |101> amplitude after PS(phi) on mode 1 and BS(theta) on (1, 2).
Complex residual_101(Complex delta, Complex epsilon, const U101Solution &s) {
    TwoPhotonState psi(3);
    psi.set_amplitude(0, 1, delta);
    psi.set_amplitude(0, 2, epsilon);
    TwoPhotonState out = apply(Circuit{3, {PhaseShifter{1, s.phi3}, BeamSplitter{1, 2, s.theta2}}}, psi);
    return out.amplitude(0, 2);
}

Complex residual_011(Complex beta, Complex gamma, Complex eta, const U011Solution &s) {
    TwoPhotonState psi(3);
    psi.set_amplitude(1, 1, beta);
    psi.set_amplitude(2, 2, gamma);
    psi.set_amplitude(1, 2, eta);
    TwoPhotonState out = apply(Circuit{3, {PhaseShifter{1, s.phi1}, BeamSplitter{1, 2, s.theta1}}}, psi);
    return out.amplitude(1, 2);
}

/// Smallest eigenvalue of M^dag M for the two-photon lift of the forward
/// filter, restricted to states supported on |200>, |020>, |011>, |002>.
double filter_floor_oracle(double q) {
    ModeMatrix f = ModeMatrix::Zero(3, 3);
    f(0, 0) = q;
    f(0, 1) = q * q - 1;
    f(1, 1) = q;
    f(2, 2) = q;
    Eigen::MatrixXcd lift = tpsynth::testing::two_photon_lift(f);
    std::vector<size_t> support = {basis_index(0, 0, 3), basis_index(1, 1, 3), basis_index(1, 2, 3),
                                   basis_index(2, 2, 3)};
    Eigen::MatrixXcd cols(6, 4);
    for (size_t i = 0; i < 4; i++) {
        cols.col(i) = lift.col(support[i]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(cols.adjoint() * cols);
    return es.eigenvalues()(0);
}

}  // namespace

TEST(synth3, u101_examples) {
    U101Solution id = solve_u101(1.0, 0.0);
    EXPECT_EQ(id.phi3, 0);
    EXPECT_EQ(id.tau2(), 1);
    U101Solution both_zero = solve_u101(0.0, 0.0);
    EXPECT_EQ(both_zero.phi3, 0);
    EXPECT_EQ(both_zero.tau2(), 1);

    double h = 1 / std::numbers::sqrt2;
    U101Solution even = solve_u101(h, h);
    EXPECT_NEAR(even.phi3, 0, 1e-15);
    EXPECT_NEAR(even.tau2(), h, 1e-15);
    EXPECT_LT(std::abs(residual_101(h, h, even)), 1e-12);

    U101Solution phased = solve_u101(1.0, Complex(0, 1));
    EXPECT_NEAR(phased.phi3, kPi / 2, 1e-15);
    EXPECT_NEAR(phased.tau2(), h, 1e-15);
    EXPECT_LT(std::abs(residual_101(1.0, Complex(0, 1), phased)), 1e-12);

    EXPECT_THROW(solve_u101(0.0, 0.5), DegenerateAmplitudes);
}

TEST(synth3, u101_random_residual) {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g;
    for (int i = 0; i < 1000; i++) {
        Complex d(g(rng), g(rng)), e(g(rng), g(rng));
        U101Solution s = solve_u101(d, e);
        EXPECT_LT(std::abs(residual_101(d, e, s)), 1e-12);
        EXPECT_NEAR(s.tau2(), 1 / std::sqrt(1 + std::norm(e / d)), 1e-14);
    }
}

TEST(synth3, f2_examples) {
    F2Solution none = solve_filter_f2(0.7, 0.0);
    EXPECT_EQ(none.q2, 1);
    EXPECT_EQ(none.compensation, 1);

    F2Solution worst = solve_filter_f2(1.0, std::sqrt(11.0));
    EXPECT_NEAR(worst.q2 * worst.q2, (15 - std::sqrt(209.0)) / 4, 1e-14);
    EXPECT_LT(worst.q2, 0);
    EXPECT_EQ(worst.compensation, worst.q2);

    double h = 1 / std::numbers::sqrt2;
    F2Solution even = solve_filter_f2(h, h);
    EXPECT_NEAR(even.ratio, h, 1e-15);
    EXPECT_NEAR(1 - even.q2 * even.q2, -h * even.q2 / (std::numbers::sqrt2 * h), 1e-12);

    EXPECT_THROW(solve_filter_f2(0.0, 0.3), DegenerateAmplitudes);
}

TEST(synth3, f2_blocks) {
    std::mt19937_64 rng(22);
    std::normal_distribution<double> g;
    for (int i = 0; i < 200; i++) {
        Complex a(g(rng), g(rng)), d(g(rng), g(rng));
        F2Solution f = solve_filter_f2(a, d);
        EXPECT_LE(f.q2, 0);
        EXPECT_GE(f.q2, -1);
        EXPECT_NEAR(std::arg(d / a * std::polar(1.0, f.phi2)), 0, 1e-12);
        Eigen::Matrix2cd prod = f.reverse_block() * f.forward_block();
        EXPECT_LE((prod - f.q2 * f.q2 * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-14);
        Eigen::JacobiSVD<Eigen::Matrix2cd> svd(f.forward_block());
        EXPECT_NEAR(svd.singularValues()(0), 1, 1e-12);
    }
}

TEST(synth3, m_min_values) {
    EXPECT_NEAR(m_min(1.0), 1, 1e-15);
    EXPECT_NEAR(m_min(std::sqrt(0.1358)), 0.0052, 1e-4);
    EXPECT_THROW(m_min(1.01), ValidationError);
    double prev = m_min(0.0);
    for (int i = 1; i <= 10000; i++) {
        double v = m_min(i / 10000.0);
        EXPECT_GE(v, prev - 1e-15);
        prev = v;
    }
}

TEST(synth3, m_min_matches_eigenvalue_oracle) {
    for (int i = 0; i <= 40; i++) {
        double q = -1 + i / 20.0;
        EXPECT_NEAR(m_min(q), filter_floor_oracle(q), 1e-12) << q;
    }
}

TEST(synth3, lower_bounds) {
    LowerBounds b = lower_bounds();
    EXPECT_NEAR(b.q2_sq_min, (15 - std::sqrt(209.0)) / 4, 1e-14);
    EXPECT_NEAR(b.q2_sq_min, 0.13580, 1e-5);
    EXPECT_NEAR(b.p_f2_min, 0.0052, 2e-4);
    EXPECT_EQ(b.p_f1_min, 1.0 / 3.0);
    EXPECT_NEAR(b.p_s_min, 0.0017, 1e-4);
    EXPECT_NEAR(b.p_s_min, b.p_f1_min * b.p_f2_min, 1e-18);
}

TEST(synth3, u011_examples) {
    U011Solution id = solve_u011(0.3, 0.2, 0.0);
    EXPECT_EQ(id.phi1, 0);
    EXPECT_EQ(id.theta1, 0);

    double h = 1 / std::numbers::sqrt2;
    U011Solution s = solve_u011(0.0, h, h);
    EXPECT_NEAR(std::tan(s.phi1), 0, 1e-15);
    EXPECT_NEAR(std::abs(std::tan(2 * s.theta1)), std::numbers::sqrt2, 1e-14);
    EXPECT_LT(std::abs(residual_011(0.0, h, h, s)), 1e-12);

    // Vanishing denominator: equal diagonal weights.
    U011Solution q = solve_u011(0.5, 0.5, 0.4);
    EXPECT_NEAR(std::abs(q.theta1), kPi / 4, 1e-15);
    EXPECT_LT(std::abs(residual_011(0.5, 0.5, 0.4, q)), 1e-12);
}

TEST(synth3, u011_random_residual) {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g;
    for (int i = 0; i < 1000; i++) {
        Complex b(g(rng), g(rng)), c(g(rng), g(rng)), e(g(rng), g(rng));
        U011Solution s = solve_u011(b, c, e);
        EXPECT_LT(std::abs(residual_011(b, c, e, s)), 1e-12);
    }
}

TEST(synth3, f1_examples) {
    double a = 1 / std::sqrt(3.0);
    std::vector<Complex> even = {a, a, a};
    F1Solution e = solve_f1(even);
    for (int j = 0; j < 3; j++) {
        EXPECT_NEAR(e.equalizing[j], 1, 1e-15);
        EXPECT_NEAR(e.forward[j], 1, 1e-15);
        EXPECT_EQ(e.phases[j], 0);
    }
    EXPECT_NEAR(e.success, 1, 1e-15);

    double s6 = std::sqrt(6.0);
    std::vector<Complex> skew = {2 / s6, 1 / s6, 1 / s6};
    F1Solution k = solve_f1(skew);
    EXPECT_NEAR(k.equalizing[0], 1 / std::numbers::sqrt2, 1e-15);
    EXPECT_NEAR(k.equalizing[1], 1, 1e-15);
    EXPECT_NEAR(k.equalizing[2], 1, 1e-15);
    TwoPhotonState diag(3);
    for (size_t j = 0; j < 3; j++) diag.set_amplitude(j, j, skew[j]);
    Circuit eq{3, {Filter{0, k.equalizing[0]}, Filter{1, k.equalizing[1]}, Filter{2, k.equalizing[2]}}};
    EXPECT_NEAR(fidelity(apply(eq, diag), prepare_initial(3)), 1, 1e-15);

    F1Solution k3 = solve_f1(skew[0], skew[1], skew[2]);
    EXPECT_EQ(k3.equalizing, k.equalizing);
    EXPECT_EQ(k3.phases, k.phases);

    std::vector<Complex> zeros(3);
    EXPECT_THROW(solve_f1(zeros), ValidationError);
}

TEST(synth3, f1_forward_layer) {
    std::mt19937_64 rng(24);
    std::normal_distribution<double> g;
    for (int i = 0; i < 1000; i++) {
        std::vector<Complex> c(3);
        for (auto &x : c) x = Complex(g(rng), g(rng));
        F1Solution s = solve_f1(c);
        EXPECT_GE(s.success, 1.0 / 3.0 - 1e-15);
        Circuit layer{3, {}};
        for (size_t j = 0; j < 3; j++) {
            layer.elements.push_back(Filter{j, s.forward[j]});
            layer.elements.push_back(PhaseShifter{j, s.phases[j]});
        }
        TwoPhotonState out = apply(layer, prepare_initial(3));
        EXPECT_NEAR(norm2(out), s.success, 1e-14);
        TwoPhotonState diag(3);
        for (size_t j = 0; j < 3; j++) diag.set_amplitude(j, j, c[j]);
        double ip = std::abs(inner(diag, out));
        EXPECT_NEAR(ip * ip / (norm2(diag) * norm2(out)), 1, 1e-14);
        EXPECT_NEAR(std::arg(inner(diag, out)), 0, 1e-12);
    }
}

TEST(synth3, optimizer_identity_for_initial_state) {
    Bs3Solution s = optimize_bs3(prepare_initial(3), Bs3Mode::kGlobal);
    EXPECT_EQ(s.tau3(), 1);
    EXPECT_NEAR(s.p_success, 1, 1e-15);
}

TEST(synth3, optimizer_balanced_for_w_family) {
    for (double w : {1.1, 1.2, 1.3, 1.4, 1.5}) {
        Bs3Solution s = optimize_bs3(family_w(w), Bs3Mode::kGlobal);
        EXPECT_NEAR(s.tau3(), 1 / std::numbers::sqrt2, 1e-6) << w;
    }
}

TEST(synth3, optimizer_beats_dense_grid) {
    for (uint64_t seed = 0; seed < 20; seed++) {
        TwoPhotonState t = random_state(3, seed);
        Bs3Solution s = optimize_bs3(t, Bs3Mode::kGlobal);
        double dense = 0;
        for (int i = 0; i < 400; i++) {
            for (int j = 0; j < 256; j++) {
                dense = std::max(dense, bs3_objective(t, i * (kPi / 2) / 399, j * 2 * kPi / 256));
            }
        }
        EXPECT_GT(s.p_success, dense - 1e-4) << seed;
    }
}

TEST(synth3, robust_mode_maximizes_window_minimum) {
    OptimizerConfig cfg;
    for (uint64_t seed = 0; seed < 10; seed++) {
        TwoPhotonState t = random_state(3, 100 + seed);
        Bs3Solution g = optimize_bs3(t, Bs3Mode::kGlobal, cfg);
        Bs3Solution r = optimize_bs3(t, Bs3Mode::kRobust, cfg);
        auto window = [&](const Bs3Solution &s) {
            double w = cfg.robust_width;
            return std::min({bs3_objective(t, s.theta3 - w, s.phi4), bs3_objective(t, s.theta3, s.phi4),
                             bs3_objective(t, s.theta3 + w, s.phi4)});
        };
        EXPECT_GE(window(r), window(g) - 1e-9);
        EXPECT_LE(r.p_success, g.p_success + 1e-9);
    }
}

TEST(synth3, closed_form_matches_forward_simulation) {
    SynthOptions fixed;
    fixed.try_permutations = false;
    for (uint64_t seed = 0; seed < 200; seed++) {
        TwoPhotonState t = random_state(3, seed);
        SynthesisPlan plan = synthesize(t, fixed);
        EXPECT_NEAR(plan.p_success, bs3_objective(t, plan.params.theta3, plan.params.phi4), 1e-10);
    }
}

TEST(synth3, examples) {
    SynthesisPlan init = synthesize(prepare_initial(3));
    EXPECT_NEAR(init.p_success, 1, 1e-12);
    EXPECT_NEAR(synthesize(family_g(kPi)).p_success, 0.48, 0.01);
    EXPECT_NEAR(synthesize(family_g(0)).p_success, 0.34, 0.02);
}

TEST(synth3, round_trip_and_structure) {
    for (uint64_t seed = 0; seed < 300; seed++) {
        TwoPhotonState t = random_state(3, 1000 + seed);
        SynthesisPlan plan = synthesize(t);
        ASSERT_GE(plan.fidelity, 1 - 1e-9);
        EXPECT_GT(plan.p_success, 0.0017);
        EXPECT_LE(plan.p_success, 1);
        EXPECT_TRUE(physicality_check(plan.circuit));
        TwoPhotonState out = apply(plan.circuit, prepare_initial(3));
        EXPECT_NEAR(norm2(out), plan.p_success, 1e-15);

        EXPECT_LT(std::abs(plan.psi_prime.amplitude(0, 2)), 1e-12);
        EXPECT_LT(std::abs(plan.psi_double_prime.amplitude(0, 1)), 1e-12);
        EXPECT_LT(std::abs(plan.psi_double_prime.amplitude(0, 2)), 1e-12);
        for (size_t j = 0; j < 3; j++) {
            for (size_t k = j + 1; k < 3; k++) {
                EXPECT_LT(std::abs(plan.psi_triple_prime.amplitude(j, k)), 1e-12);
            }
        }

        double product = 1;
        for (double p : filter_success_probabilities(plan.circuit, prepare_initial(3))) product *= p;
        EXPECT_NEAR(product, plan.p_success, 1e-10);
    }
}

TEST(synth3, permutation_consistency) {
    std::vector<std::vector<size_t>> perms = {{0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (uint64_t seed = 0; seed < 20; seed++) {
        TwoPhotonState t = random_state(3, 2000 + seed);
        double p = synthesize(t).p_success;
        for (const auto &perm : perms) {
            SynthesisPlan q = synthesize(permute_modes(t, perm));
            EXPECT_NEAR(q.p_success, p, 1e-10);
            EXPECT_GE(q.fidelity, 1 - 1e-9);
        }
    }
}

TEST(synth3, option_variants_stay_exact) {
    for (uint64_t seed = 0; seed < 30; seed++) {
        TwoPhotonState t = random_state(3, 3000 + seed);
        for (int mask = 0; mask < 8; mask++) {
            SynthOptions o;
            o.optimize_bs3 = mask & 1;
            o.try_permutations = mask & 2;
            o.robust = mask & 4;
            SynthesisPlan plan = synthesize(t, o);
            EXPECT_GE(plan.fidelity, 1 - 1e-9);
            EXPECT_TRUE(physicality_check(plan.circuit));
        }
    }
}

TEST(synth3, sparse_targets) {
    for (size_t j = 0; j < 3; j++) {
        for (size_t k = j; k < 3; k++) {
            SynthesisPlan plan = synthesize(TwoPhotonState::basis(3, j, k));
            EXPECT_GE(plan.fidelity, 1 - 1e-9) << j << k;
            EXPECT_GT(plan.p_success, 0.0017);
        }
    }
    TwoPhotonState w(3);
    double a = 1 / std::sqrt(3.0);
    w.set_amplitude(0, 1, a);
    w.set_amplitude(0, 2, a);
    w.set_amplitude(1, 2, a);
    EXPECT_GE(synthesize(w).fidelity, 1 - 1e-9);
}

TEST(synth3, errors) {
    EXPECT_THROW(synthesize(TwoPhotonState::basis(3, 0, 0, 0.5)), ValidationError);
    EXPECT_THROW(synthesize(prepare_initial(4)), ValidationError);
    SynthOptions bare;
    bare.optimize_bs3 = false;
    bare.try_permutations = false;
    EXPECT_THROW(synthesize(TwoPhotonState::basis(3, 0, 2), bare), DegenerateAmplitudes);
    EXPECT_NO_THROW(synthesize(TwoPhotonState::basis(3, 0, 2)));
}

TEST(synth3, stage_circuit_shape_is_uniform) {
    size_t size = synthesize(prepare_initial(3)).circuit.elements.size();
    for (uint64_t seed = 0; seed < 10; seed++) {
        EXPECT_EQ(synthesize(random_state(3, seed)).circuit.elements.size(), size);
    }
}
