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

#ifndef TPSYNTH_SRC_OPTIMIZE_H
#define TPSYNTH_SRC_OPTIMIZE_H

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace tpsynth::detail {

/// Maximizer of a unimodal f on [lo, hi], bracket shrunk below tol.
template <typename F>
std::pair<double, double> golden_max(F &&f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    double x = (lo + hi) / 2;
    return {x, f(x)};
}

/// Nelder-Mead maximization in two dimensions. Stops when every vertex lies
/// within xtol of the best one (per coordinate) or after max_iter steps.
template <typename F>
std::pair<std::array<double, 2>, double> nelder_mead_max(
    F &&f, std::array<double, 2> x0, std::array<double, 2> step, double xtol, int max_iter = 4000) {
    using P = std::array<double, 2>;
    std::array<P, 3> x{x0, P{x0[0] + step[0], x0[1]}, P{x0[0], x0[1] + step[1]}};
    std::array<double, 3> v{f(x[0]), f(x[1]), f(x[2])};
    auto lerp = [](const P &a, const P &b, double t) {
        return P{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
    };
    for (int it = 0; it < max_iter; ++it) {
        std::array<int, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a] > v[b]; });
        P best = x[order[0]];
        P mid = x[order[1]];
        P worst = x[order[2]];
        double vb = v[order[0]], vm = v[order[1]], vw = v[order[2]];
        double spread = 0;
        for (int k = 1; k < 3; ++k) {
            spread = std::max({spread, std::abs(x[order[k]][0] - best[0]), std::abs(x[order[k]][1] - best[1])});
        }
        if (spread < xtol) {
            break;
        }
        P centroid = lerp(best, mid, 0.5);
        P refl = lerp(centroid, worst, -1.0);
        double vr = f(refl);
        if (vr > vb) {
            P exp = lerp(centroid, worst, -2.0);
            double ve = f(exp);
            if (ve > vr) {
                worst = exp;
                vw = ve;
            } else {
                worst = refl;
                vw = vr;
            }
        } else if (vr > vm) {
            worst = refl;
            vw = vr;
        } else {
            P con = vr > vw ? lerp(centroid, refl, 0.5) : lerp(centroid, worst, 0.5);
            double vc = f(con);
            if (vc > std::max(vr, vw)) {
                worst = con;
                vw = vc;
            } else {
                mid = lerp(best, mid, 0.5);
                vm = f(mid);
                worst = lerp(best, worst, 0.5);
                vw = f(worst);
            }
        }
        x = {best, mid, worst};
        v = {vb, vm, vw};
    }
    int arg = 0;
    for (int k = 1; k < 3; ++k) {
        if (v[k] > v[arg]) {
            arg = k;
        }
    }
    return {x[arg], v[arg]};
}

}  // namespace tpsynth::detail

#endif
