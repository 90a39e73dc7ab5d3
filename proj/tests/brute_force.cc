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

#include "brute_force.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <variant>

namespace tpsynth::testing {

namespace {

struct Occupation {
    size_t a;
    size_t b;
};

std::vector<Occupation> occupations(size_t modes) {
    std::vector<Occupation> out;
    for (size_t a = 0; a < modes; a++) {
        for (size_t b = a; b < modes; b++) {
            out.push_back({a, b});
        }
    }
    return out;
}

/// <out| U |in> for two bosons, a_i^dag -> sum_j u(i, j) a_j^dag.
Complex transition(const ModeMatrix &u, Occupation in, Occupation out) {
    Complex perm = u(in.a, out.a) * u(in.b, out.b) + u(in.a, out.b) * u(in.b, out.a);
    double mult = (in.a == in.b ? 2.0 : 1.0) * (out.a == out.b ? 2.0 : 1.0);
    return perm / std::sqrt(mult);
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd &h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Eigen::MatrixXcd two_photon_lift(const ModeMatrix &m) {
    size_t n = static_cast<size_t>(m.rows());
    auto occ = occupations(n);
    Eigen::MatrixXcd lift(occ.size(), occ.size());
    for (size_t o = 0; o < occ.size(); o++) {
        for (size_t i = 0; i < occ.size(); i++) {
            lift(o, i) = transition(m, occ[i], occ[o]);
        }
    }
    return lift;
}

TwoPhotonState brute_force_apply(const Circuit &c, const TwoPhotonState &input) {
    size_t n = c.n;
    size_t ancillae = 0;
    for (const auto &e : c.elements) {
        if (std::holds_alternative<Filter>(e)) {
            ancillae += 1;
        } else if (std::holds_alternative<TwoModeMatrix>(e)) {
            ancillae += 2;
        }
    }
    size_t total = n + ancillae;
    auto occ = occupations(total);
    // Row-major upper-triangular index over `total` modes.
    auto idx = [&](size_t a, size_t b) {
        if (a > b) std::swap(a, b);
        size_t before = 0;
        for (size_t r = 0; r < a; r++) before += total - r;
        return before + (b - a);
    };

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(occ.size());
    for (size_t a = 0; a < n; a++) {
        for (size_t b = a; b < n; b++) {
            psi(idx(a, b)) = input.amplitude(a, b);
        }
    }

    size_t next_ancilla = n;
    for (const auto &e : c.elements) {
        ModeMatrix u = ModeMatrix::Identity(total, total);
        std::visit(
            [&](const auto &el) {
                using T = std::decay_t<decltype(el)>;
                if constexpr (std::is_same_v<T, BeamSplitter>) {
                    double t = std::cos(el.theta), r = std::sin(el.theta);
                    u(el.a, el.a) = t;
                    u(el.a, el.b) = r;
                    u(el.b, el.a) = -r;
                    u(el.b, el.b) = t;
                } else if constexpr (std::is_same_v<T, PhaseShifter>) {
                    u(el.mode, el.mode) = std::polar(1.0, el.phi);
                } else if constexpr (std::is_same_v<T, Filter>) {
                    size_t x = next_ancilla++;
                    double s = std::sqrt(std::max(0.0, 1 - el.q * el.q));
                    u(el.mode, el.mode) = el.q;
                    u(el.mode, x) = s;
                    u(x, el.mode) = -s;
                    u(x, x) = el.q;
                } else {
                    size_t x0 = next_ancilla++;
                    size_t x1 = next_ancilla++;
                    Eigen::MatrixXcd a = el.m;
                    Eigen::MatrixXcd i2 = Eigen::MatrixXcd::Identity(2, 2);
                    Eigen::MatrixXcd big(4, 4);
                    big.topLeftCorner(2, 2) = a;
                    big.topRightCorner(2, 2) = psd_sqrt(i2 - a * a.adjoint());
                    big.bottomLeftCorner(2, 2) = psd_sqrt(i2 - a.adjoint() * a);
                    big.bottomRightCorner(2, 2) = -a.adjoint();
                    size_t ids[4] = {el.a, el.b, x0, x1};
                    for (int r = 0; r < 4; r++) {
                        for (int col = 0; col < 4; col++) {
                            u(ids[r], ids[col]) = big(r, col);
                        }
                    }
                }
            },
            e);
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(occ.size());
        for (size_t i = 0; i < occ.size(); i++) {
            if (psi(i) == Complex(0)) continue;
            for (size_t o = 0; o < occ.size(); o++) {
                next(o) += transition(u, occ[i], occ[o]) * psi(i);
            }
        }
        psi = next;
    }

    TwoPhotonState out(n);
    for (size_t a = 0; a < n; a++) {
        for (size_t b = a; b < n; b++) {
            out.set_amplitude(a, b, psi(idx(a, b)));
        }
    }
    return out;
}

}  // namespace tpsynth::testing
