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

#include <cmath>
#include <numbers>
#include <string>

namespace tpsynth {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_mode(size_t mode, size_t n) {
    if (mode >= n) {
        throw ValidationError(
            "element mode " + std::to_string(mode) + " out of range for " + std::to_string(n) + " modes");
    }
}

bool is_two_mode(const Element &e) {
    return std::holds_alternative<BeamSplitter>(e) || std::holds_alternative<TwoModeMatrix>(e);
}

Element conjugate_transpose(const Element &e) {
    return std::visit(
        Overloaded{
            [](const BeamSplitter &bs) -> Element { return BeamSplitter{bs.a, bs.b, -bs.theta}; },
            [](const PhaseShifter &ps) -> Element { return PhaseShifter{ps.mode, -ps.phi}; },
            [](const Filter &f) -> Element { return f; },
            [](const TwoModeMatrix &tm) -> Element { return TwoModeMatrix{tm.a, tm.b, tm.m.adjoint()}; },
        },
        e);
}

}  // namespace

std::vector<size_t> element_modes(const Element &e) {
    return std::visit(
        Overloaded{
            [](const BeamSplitter &bs) { return std::vector<size_t>{bs.a, bs.b}; },
            [](const PhaseShifter &ps) { return std::vector<size_t>{ps.mode}; },
            [](const Filter &f) { return std::vector<size_t>{f.mode}; },
            [](const TwoModeMatrix &tm) { return std::vector<size_t>{tm.a, tm.b}; },
        },
        e);
}

Eigen::Matrix2cd element_block(const Element &e) {
    return std::visit(
        Overloaded{
            [](const BeamSplitter &bs) {
                double t = std::cos(bs.theta);
                double r = std::sin(bs.theta);
                Eigen::Matrix2cd m;
                m << t, r, -r, t;
                return m;
            },
            [](const PhaseShifter &ps) {
                Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
                m(0, 0) = std::polar(1.0, ps.phi);
                return m;
            },
            [](const Filter &f) {
                Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
                m(0, 0) = f.q;
                return m;
            },
            [](const TwoModeMatrix &tm) -> Eigen::Matrix2cd { return tm.m; },
        },
        e);
}

ModeMatrix element_matrix(const Element &e, size_t n) {
    auto modes = element_modes(e);
    for (size_t mode : modes) {
        check_mode(mode, n);
    }
    ModeMatrix m = ModeMatrix::Identity(n, n);
    Eigen::Matrix2cd block = element_block(e);
    if (modes.size() == 1) {
        m(modes[0], modes[0]) = block(0, 0);
        return m;
    }
    if (modes[0] == modes[1]) {
        throw ValidationError("two-mode element needs distinct modes");
    }
    m(modes[0], modes[0]) = block(0, 0);
    m(modes[0], modes[1]) = block(0, 1);
    m(modes[1], modes[0]) = block(1, 0);
    m(modes[1], modes[1]) = block(1, 1);
    return m;
}

double element_max_singular_value(const Element &e) {
    Eigen::Matrix2cd block = element_block(e);
    if (!is_two_mode(e)) {
        return std::abs(block(0, 0));
    }
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(block);
    return svd.singularValues()(0);
}

bool element_is_unitary(const Element &e, double tol) {
    Eigen::Matrix2cd block = element_block(e);
    if (!is_two_mode(e)) {
        return std::abs(std::abs(block(0, 0)) - 1.0) <= tol;
    }
    return (block.adjoint() * block - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= tol;
}

ModeMatrix circuit_matrix(const Circuit &c) {
    ModeMatrix total = ModeMatrix::Identity(c.n, c.n);
    for (const auto &e : c.elements) {
        total = total * element_matrix(e, c.n);
    }
    return total;
}

CoeffMatrix apply(const Circuit &c, CoeffMatrix state) {
    if (state.num_modes() != c.n) {
        throw ValidationError(
            "apply: circuit has " + std::to_string(c.n) + " modes, state has " +
            std::to_string(state.num_modes()));
    }
    for (const auto &e : c.elements) {
        auto modes = element_modes(e);
        for (size_t mode : modes) {
            check_mode(mode, c.n);
        }
        Eigen::Matrix2cd block = element_block(e);
        if (modes.size() == 1) {
            transform_single(state.c, modes[0], block(0, 0));
        } else {
            if (modes[0] == modes[1]) {
                throw ValidationError("two-mode element needs distinct modes");
            }
            transform_pair(state.c, modes[0], modes[1], block);
        }
    }
    return state;
}

TwoPhotonState apply(const Circuit &c, const TwoPhotonState &state) {
    if (c.elements.empty()) {
        if (state.num_modes() != c.n) {
            throw ValidationError("apply: circuit and state mode counts differ");
        }
        return state;
    }
    return from_coeff_matrix(apply(c, to_coeff_matrix(state)), 1e-9);
}

Circuit invert_unitary(const Circuit &c) {
    Circuit out{c.n, {}};
    out.elements.reserve(c.elements.size());
    for (auto it = c.elements.rbegin(); it != c.elements.rend(); ++it) {
        if (!element_is_unitary(*it)) {
            throw ValidationError("invert_unitary: circuit contains a non-unitary element");
        }
        out.elements.push_back(conjugate_transpose(*it));
    }
    return out;
}

TwoPhotonState prepare_initial(size_t n) {
    if (n < 2) {
        throw ValidationError("prepare_initial: need n >= 2");
    }
    TwoPhotonState s(n);
    double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (size_t j = 0; j < n; j++) {
        s.set_amplitude(j, j, amp);
    }
    return s;
}

TwoPhotonState pair_source_state(size_t d) {
    if (d < 1) {
        throw ValidationError("pair_source_state: need d >= 1");
    }
    TwoPhotonState s(2 * d);
    double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (size_t j = 0; j < d; j++) {
        s.set_amplitude(2 * j, 2 * j + 1, amp);
    }
    return s;
}

Circuit source_circuit(size_t d) {
    if (d < 1) {
        throw ValidationError("source_circuit: need d >= 1");
    }
    Circuit c{2 * d, {}};
    for (size_t j = 0; j < d; j++) {
        // |1 1> -> (|0 2> - |2 0>)/sqrt(2); a quarter-wave phase on the first
        // mode flips the sign of its |2> amplitude.
        c.elements.emplace_back(BeamSplitter{2 * j, 2 * j + 1, std::numbers::pi / 4});
        c.elements.emplace_back(PhaseShifter{2 * j, std::numbers::pi / 2});
    }
    return c;
}

TwoPhotonState simulate_source(size_t d) {
    return apply(source_circuit(d), pair_source_state(d));
}

bool physicality_check(const Circuit &c) {
    for (const auto &e : c.elements) {
        if (element_max_singular_value(e) > 1 + kPhysicalTol) {
            return false;
        }
    }
    return true;
}

Circuit relabel_modes(const Circuit &c, std::span<const size_t> perm) {
    if (perm.size() != c.n) {
        throw ValidationError("relabel_modes: permutation length must equal mode count");
    }
    auto map = [&](size_t mode) {
        check_mode(mode, c.n);
        return perm[mode];
    };
    Circuit out{c.n, {}};
    out.elements.reserve(c.elements.size());
    for (const auto &e : c.elements) {
        out.elements.push_back(std::visit(
            Overloaded{
                [&](const BeamSplitter &bs) -> Element { return BeamSplitter{map(bs.a), map(bs.b), bs.theta}; },
                [&](const PhaseShifter &ps) -> Element { return PhaseShifter{map(ps.mode), ps.phi}; },
                [&](const Filter &f) -> Element { return Filter{map(f.mode), f.q}; },
                [&](const TwoModeMatrix &tm) -> Element { return TwoModeMatrix{map(tm.a), map(tm.b), tm.m}; },
            },
            e));
    }
    return out;
}

}  // namespace tpsynth
