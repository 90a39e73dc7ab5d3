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

#include "tpsynth/elements.h"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "brute_force.h"
#include "test_util.h"
#include "tpsynth/synth3.h"

using namespace tpsynth;
using tpsynth::testing::brute_force_apply;
using tpsynth::testing::gaussian_state;
using tpsynth::testing::max_abs_diff;
using tpsynth::testing::random_circuit;

TEST(elements, element_matrix_examples) {
    ModeMatrix ps = element_matrix(PhaseShifter{1, std::numbers::pi}, 3);
    ModeMatrix expect = ModeMatrix::Identity(3, 3);
    expect(1, 1) = -1;
    EXPECT_LE((ps - expect).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((element_matrix(BeamSplitter{0, 2, 0}, 3) - ModeMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 0);
    ModeMatrix f = element_matrix(Filter{0, 0.5}, 2);
    EXPECT_EQ(f(0, 0), Complex(0.5));
    EXPECT_EQ(f(1, 1), Complex(1));
    EXPECT_THROW(element_matrix(Filter{2, 0.5}, 2), ValidationError);
    EXPECT_THROW(element_matrix(BeamSplitter{1, 1, 0.3}, 2), ValidationError);
}

TEST(elements, beam_splitter_embedding) {
    double th = 0.3;
    ModeMatrix m = element_matrix(BeamSplitter{2, 0, th}, 3);
    EXPECT_NEAR(m(2, 2).real(), std::cos(th), 1e-15);
    EXPECT_NEAR(m(2, 0).real(), std::sin(th), 1e-15);
    EXPECT_NEAR(m(0, 2).real(), -std::sin(th), 1e-15);
    EXPECT_NEAR(m(0, 0).real(), std::cos(th), 1e-15);
}

TEST(elements, apply_examples) {
    std::mt19937_64 rng(1);
    TwoPhotonState s = gaussian_state(3, rng);
    EXPECT_LE(max_abs_diff(apply(Circuit{3, {}}, s), s), 0);
    double q = 0.6;
    TwoPhotonState out = apply(Circuit{3, {Filter{0, q}}}, TwoPhotonState::basis(3, 0, 0));
    EXPECT_NEAR(out.amplitude(0, 0).real(), q * q, 1e-15);
    EXPECT_NEAR(norm2(out), std::pow(q, 4), 1e-15);
    EXPECT_THROW(apply(Circuit{4, {}}, s), ValidationError);
}

TEST(elements, hom_dip) {
    for (size_t j = 0; j < 3; j++) {
        for (size_t k = j + 1; k < 4; k++) {
            TwoPhotonState out =
                apply(Circuit{4, {BeamSplitter{j, k, std::numbers::pi / 4}}}, TwoPhotonState::basis(4, j, k));
            EXPECT_NEAR(std::abs(out.amplitude(j, k)), 0, 1e-15);
            EXPECT_NEAR(norm2(out), 1, 1e-15);
        }
    }
}

TEST(elements, f2_filter_clears_cross_term) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; i++) {
        TwoPhotonState psi = gaussian_state(3, rng);
        psi.set_amplitude(0, 2, 0);
        Complex alpha = psi.amplitude(0, 0);
        Complex delta = psi.amplitude(0, 1);
        F2Solution f = solve_filter_f2(alpha, delta);
        Circuit c{3, {PhaseShifter{1, f.phi2}, TwoModeMatrix{0, 1, f.reverse_block()}, Filter{2, f.q2}}};
        TwoPhotonState out = apply(c, psi);
        EXPECT_LE(std::abs(out.amplitude(0, 1)), 1e-12);
        EXPECT_LE(std::abs(out.amplitude(0, 2)), 1e-12);
    }
}

TEST(elements, invert_unitary) {
    Circuit one{2, {PhaseShifter{0, 0.4}}};
    auto inv = invert_unitary(one);
    ASSERT_EQ(inv.elements.size(), 1u);
    EXPECT_EQ(std::get<PhaseShifter>(inv.elements[0]).phi, -0.4);
    auto inv_bs = invert_unitary(Circuit{2, {BeamSplitter{0, 1, 0.2}}});
    EXPECT_EQ(std::get<BeamSplitter>(inv_bs.elements[0]).theta, -0.2);
    EXPECT_THROW(invert_unitary(Circuit{2, {Filter{0, 0.5}}}), ValidationError);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; i++) {
        size_t n = 3 + i % 3;
        Circuit c = random_circuit(n, 5, 0, rng);
        TwoPhotonState s = gaussian_state(n, rng);
        TwoPhotonState back = apply(invert_unitary(c), apply(c, s));
        EXPECT_LE(max_abs_diff(back, s), 1e-12);
        EXPECT_NEAR(fidelity(back, s), 1, 1e-12);
    }
}

TEST(elements, prepare_initial) {
    TwoPhotonState s3 = prepare_initial(3);
    for (size_t j = 0; j < 3; j++) {
        EXPECT_NEAR(s3.amplitude(j, j).real(), 1 / std::sqrt(3.0), 1e-15);
    }
    TwoPhotonState s4 = prepare_initial(4);
    for (size_t j = 0; j < 4; j++) {
        EXPECT_NEAR(s4.amplitude(j, j).real(), 0.5, 1e-15);
    }
    for (size_t n = 2; n <= 10; n++) {
        EXPECT_NEAR(norm2(prepare_initial(n)), 1, 1e-14);
    }
    EXPECT_THROW(prepare_initial(1), ValidationError);
}

TEST(elements, source_pipeline) {
    for (size_t d = 1; d <= 4; d++) {
        TwoPhotonState out = simulate_source(d);
        EXPECT_NEAR(norm2(out), 1, 1e-14);
        EXPECT_NEAR(fidelity(out, prepare_initial(2 * d)), 1, 1e-14);
        // All-plus superposition, not just up to phases.
        for (size_t j = 0; j < 2 * d; j++) {
            EXPECT_NEAR(std::abs(out.amplitude(j, j) - prepare_initial(2 * d).amplitude(j, j)), 0, 1e-14);
        }
    }
    TwoPhotonState hom = apply(Circuit{2, {BeamSplitter{0, 1, std::numbers::pi / 4}}}, pair_source_state(1));
    EXPECT_NEAR(hom.amplitude(0, 0).real(), -1 / std::numbers::sqrt2, 1e-15);
    EXPECT_NEAR(hom.amplitude(1, 1).real(), 1 / std::numbers::sqrt2, 1e-15);
    EXPECT_THROW(simulate_source(0), ValidationError);
}

TEST(elements, physicality) {
    EXPECT_TRUE(physicality_check(Circuit{3, {BeamSplitter{0, 1, 1.3}, PhaseShifter{2, 0.1}}}));
    EXPECT_FALSE(physicality_check(Circuit{3, {Filter{0, 1.2}}}));
    EXPECT_TRUE(physicality_check(Circuit{3, {Filter{0, -1.0}}}));
    for (int i = 0; i <= 1000; i++) {
        double ratio = std::sqrt(11.0) * i / 1000.0;
        F2Solution f = solve_filter_f2(1.0, std::numbers::sqrt2 * ratio);
        Circuit c{3, {TwoModeMatrix{0, 1, f.forward_block()}, Filter{2, f.q2}}};
        EXPECT_TRUE(physicality_check(c)) << ratio;
    }
}

TEST(elements, filters_never_increase_norm) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; i++) {
        size_t n = 3 + i % 3;
        Circuit c = random_circuit(n, 6, 3, rng);
        TwoPhotonState s = gaussian_state(n, rng);
        EXPECT_LE(norm2(apply(c, s)), 1 + 1e-12);
        Circuit u = random_circuit(n, 6, 0, rng);
        EXPECT_NEAR(norm2(apply(u, s)), 1, 1e-12);
    }
}

TEST(elements, agrees_with_ancilla_oracle) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; i++) {
        size_t n = 3 + i % 3;
        Circuit c = random_circuit(n, 6, 1 + i % 3, rng);
        TwoPhotonState s = gaussian_state(n, rng);
        TwoPhotonState fast = apply(c, s);
        TwoPhotonState slow = brute_force_apply(c, s);
        EXPECT_LE(max_abs_diff(fast, slow), 1e-10);
        EXPECT_NEAR(norm2(fast), norm2(slow), 1e-10);
    }
}

TEST(elements, relabel_modes) {
    Circuit c{3, {BeamSplitter{0, 1, 0.3}, Filter{2, 0.5}}};
    std::vector<size_t> perm = {2, 0, 1};
    Circuit r = relabel_modes(c, perm);
    EXPECT_EQ(std::get<BeamSplitter>(r.elements[0]).a, 2u);
    EXPECT_EQ(std::get<BeamSplitter>(r.elements[0]).b, 0u);
    EXPECT_EQ(std::get<Filter>(r.elements[1]).mode, 1u);
}
