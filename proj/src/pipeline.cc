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

#include "pipeline.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "optimize.h"
#include "tpsynth/errors.h"

namespace tpsynth::detail {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

/// Residual tolerance for amplitudes the pipeline has cleared.
constexpr double kClearedTol = 1e-9;

template <typename... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void symmetrize(ModeMatrix &c) {
    for (Eigen::Index i = 0; i < c.rows(); i++) {
        for (Eigen::Index j = i + 1; j < c.cols(); j++) {
            Complex v = (c(i, j) + c(j, i)) * 0.5;
            c(i, j) = v;
            c(j, i) = v;
        }
    }
}

TwoPhotonState state_of(const ModeMatrix &c) {
    return from_coeff_matrix(CoeffMatrix{c});
}

double filter_q(double c) {
    return 0.5 * (c - std::sqrt(c * c + 4));
}

/// Point evaluation of the three-mode merit with precomputed trig values.
struct MeritKernel {
    Complex x00, x01, x02, x11, x12, x22;
    double extra;

    explicit MeritKernel(const Eigen::Matrix3cd &x, double extra_)
        : x00(x(0, 0)), x01(x(0, 1)), x02(x(0, 2)), x11(x(1, 1)), x12(x(1, 2)), x22(x(2, 2)), extra(extra_) {
    }

    double eval(double t, double r, Complex e) const {
        Complex y01 = x01 * e;
        Complex y11 = x11 * e * e;
        Complex y12 = x12 * e;
        return eval_phased(t, r, y01, y11, y12);
    }

    double eval_phased(double t, double r, Complex y01, Complex y11, Complex y12) const {
        double tt = t * t, rr = r * r, tr = t * r;
        Complex n00 = tt * x00 - 2.0 * tr * y01 + rr * y11;
        Complex n01 = tr * (x00 - y11) + (tt - rr) * y01;
        Complex n11 = rr * x00 + 2.0 * tr * y01 + tt * y11;
        Complex n02 = t * x02 - r * y12;
        Complex n12 = r * x02 + t * y12;
        double a00 = std::norm(n00);
        double nr2 = std::norm(n01) + std::norm(n02);
        if (n01 == Complex(0) && n02 != Complex(0)) {
            return 0;
        }
        Complex s11 = n11, s12 = n12, s22 = x22;
        double q4 = 1;
        if (nr2 > 0) {
            if (a00 == 0) {
                return 0;
            }
            Complex inv = 1.0 / n00;
            s11 -= n01 * n01 * inv;
            s12 -= n01 * n02 * inv;
            s22 -= n02 * n02 * inv;
            double q = filter_q(std::sqrt(nr2 / a00));
            q4 = q * q * q * q;
        }
        double f = std::norm(s11) + 2 * std::norm(s12) + std::norm(s22);
        double det = std::norm(s11 * s22 - s12 * s12);
        double sigma2 = 0.5 * (f + std::sqrt(std::max(0.0, f * f - 4 * det)));
        double denom = std::max({2 * a00, 2 * sigma2, q4 * extra});
        if (denom == 0) {
            return 0;
        }
        return q4 / denom;
    }

    double at(double theta, double phi) const {
        return eval(std::cos(theta), std::sin(theta), std::polar(1.0, phi));
    }
};

}  // namespace

ReverseBuilder::ReverseBuilder(ModeMatrix c) : c_(std::move(c)), labels_(static_cast<size_t>(c_.rows())) {
    std::iota(labels_.begin(), labels_.end(), size_t{0});
}

size_t ReverseBuilder::label(size_t a) const {
    return labels_.at(a);
}

Element ReverseBuilder::relabeled(Element e) const {
    std::visit(Overloaded{
                   [&](BeamSplitter &bs) {
                       bs.a = label(bs.a);
                       bs.b = label(bs.b);
                   },
                   [&](PhaseShifter &ps) { ps.mode = label(ps.mode); },
                   [&](Filter &f) { f.mode = label(f.mode); },
                   [&](TwoModeMatrix &tm) {
                       tm.a = label(tm.a);
                       tm.b = label(tm.b);
                   },
               },
               e);
    return e;
}

void ReverseBuilder::relabel(std::span<const size_t> perm) {
    size_t n = num_modes();
    if (perm.size() != n) {
        throw std::logic_error("relabel: permutation length");
    }
    ModeMatrix next(n, n);
    std::vector<size_t> next_labels(n);
    for (size_t a = 0; a < n; a++) {
        next_labels[a] = labels_[perm[a]];
        for (size_t b = 0; b < n; b++) {
            next(a, b) = c_(perm[a], perm[b]);
        }
    }
    c_ = std::move(next);
    labels_ = std::move(next_labels);
}

void ReverseBuilder::unitary(const Element &e) {
    Element inverse = std::visit(
        Overloaded{
            [&](const BeamSplitter &bs) -> Element {
                transform_pair(c_, bs.a, bs.b, element_block(bs));
                return BeamSplitter{bs.a, bs.b, -bs.theta};
            },
            [&](const PhaseShifter &ps) -> Element {
                transform_single(c_, ps.mode, std::polar(1.0, ps.phi));
                return PhaseShifter{ps.mode, -ps.phi};
            },
            [&](const Filter &) -> Element { throw std::logic_error("ReverseBuilder::unitary: filter"); },
            [&](const TwoModeMatrix &tm) -> Element {
                transform_pair(c_, tm.a, tm.b, tm.m);
                return TwoModeMatrix{tm.a, tm.b, tm.m.adjoint()};
            },
        },
        e);
    symmetrize(c_);
    tail_reversed_.push_back(relabeled(inverse));
}

void ReverseBuilder::filter(size_t pivot, size_t partner, const F2Solution &f, std::span<const size_t> compensated) {
    size_t n = num_modes();
    transform_pair(c_, pivot, partner, f.reverse_block());
    std::vector<char> done(n, 0);
    done[pivot] = done[partner] = 1;
    for (size_t k : compensated) {
        transform_single(c_, k, f.q2);
        done[k] = 1;
    }
    for (size_t k = 0; k < n; k++) {
        if (!done[k]) {
            transform_single(c_, k, f.q2 * f.q2);
        }
    }
    symmetrize(c_);
    tail_reversed_.push_back(relabeled(TwoModeMatrix{pivot, partner, f.forward_block()}));
    for (size_t k : compensated) {
        tail_reversed_.push_back(relabeled(Filter{k, f.q2}));
    }
}

void ReverseBuilder::initial_layer(const F1Solution &f1) {
    head_.clear();
    for (size_t a = 0; a < num_modes(); a++) {
        head_.push_back(relabeled(Filter{a, f1.forward[a]}));
        head_.push_back(relabeled(PhaseShifter{a, f1.phases[a]}));
    }
}

Circuit ReverseBuilder::circuit() const {
    Circuit out{num_modes(), head_};
    out.elements.insert(out.elements.end(), tail_reversed_.rbegin(), tail_reversed_.rend());
    return out;
}

double stage3_merit(const Eigen::Matrix3cd &x, double extra, double theta3, double phi4) {
    return MeritKernel(x, extra).at(theta3, phi4);
}

Stage3Choice optimize_stage3(const Eigen::Matrix3cd &x, double extra, bool robust, const OptimizerConfig &config) {
    if (config.theta_points < 2 || config.phi_points < 1) {
        throw ValidationError("optimizer grid needs at least 2 x 1 points");
    }
    MeritKernel kernel(x, extra);
    const size_t nt = config.theta_points;
    const size_t np = config.phi_points;
    const double dtheta = (std::numbers::pi / 2) / static_cast<double>(nt - 1);
    const double dphi = 2 * std::numbers::pi / static_cast<double>(np);
    const double w = config.robust_width;

    std::vector<double> ct(nt), st(nt);
    for (size_t i = 0; i < nt; i++) {
        ct[i] = std::cos(static_cast<double>(i) * dtheta);
        st[i] = std::sin(static_cast<double>(i) * dtheta);
    }
    std::vector<double> cw(nt), sw(nt), cw2(nt), sw2(nt);
    if (robust) {
        for (size_t i = 0; i < nt; i++) {
            double th = static_cast<double>(i) * dtheta;
            cw[i] = std::cos(th - w);
            sw[i] = std::sin(th - w);
            cw2[i] = std::cos(th + w);
            sw2[i] = std::sin(th + w);
        }
    }

    // grid[j * nt + i] = merit at (theta_i, phi_j).
    std::vector<double> grid(nt * np);
    for (size_t j = 0; j < np; j++) {
        Complex e = std::polar(1.0, static_cast<double>(j) * dphi);
        Complex y01 = kernel.x01 * e;
        Complex y11 = kernel.x11 * e * e;
        Complex y12 = kernel.x12 * e;
        for (size_t i = 0; i < nt; i++) {
            double v = kernel.eval_phased(ct[i], st[i], y01, y11, y12);
            if (robust) {
                v = std::min({v, kernel.eval_phased(cw[i], sw[i], y01, y11, y12),
                              kernel.eval_phased(cw2[i], sw2[i], y01, y11, y12)});
            }
            grid[j * nt + i] = v;
        }
    }

    struct Seed {
        double value;
        size_t i, j;
    };
    std::vector<Seed> seeds;
    for (size_t j = 0; j < np; j++) {
        for (size_t i = 0; i < nt; i++) {
            double v = grid[j * nt + i];
            bool peak = true;
            auto check = [&](size_t ii, size_t jj) {
                if (grid[jj * nt + ii] > v) {
                    peak = false;
                }
            };
            if (i > 0) check(i - 1, j);
            if (i + 1 < nt) check(i + 1, j);
            check(i, (j + 1) % np);
            check(i, (j + np - 1) % np);
            if (peak) {
                seeds.push_back({v, i, j});
            }
        }
    }
    // Rank on a rounded key so near-equal peaks keep grid order (smallest theta first).
    auto rank = [](double v) { return std::round(v * 1e12); };
    std::stable_sort(seeds.begin(), seeds.end(),
                     [&](const Seed &a, const Seed &b) { return rank(a.value) > rank(b.value); });
    if (seeds.size() > std::max<size_t>(config.candidates, 1)) {
        seeds.resize(std::max<size_t>(config.candidates, 1));
    }

    const double theta_max = std::numbers::pi / 2;
    auto clamp_theta = [&](double th) { return std::clamp(th, 0.0, theta_max); };
    auto objective = [&](double th, double ph) {
        double v = kernel.at(th, ph);
        if (robust) {
            v = std::min({v, kernel.at(th - w, ph), kernel.at(th + w, ph)});
        }
        return v;
    };

    // Refinement must beat rounding noise so flat optima keep their grid point.
    auto improves = [](double v, double ref) { return v > ref + 1e-13 * std::abs(ref); };

    Stage3Choice best;
    best.merit = -1;
    for (const auto &s : seeds) {
        double th = static_cast<double>(s.i) * dtheta;
        double ph = static_cast<double>(s.j) * dphi;
        double val = s.value;
        if (val > 0) {
            auto [x_nm, v_nm] = nelder_mead_max(
                [&](const std::array<double, 2> &p) { return objective(clamp_theta(p[0]), p[1]); },
                {th, ph}, {dtheta, dphi}, config.tolerance);
            if (improves(v_nm, val)) {
                th = clamp_theta(x_nm[0]);
                ph = x_nm[1];
                val = v_nm;
            }
            for (int sweep = 0; sweep < 4; sweep++) {
                double before = val;
                auto [th2, v2] = golden_max([&](double t) { return objective(t, ph); }, std::max(0.0, th - dtheta),
                                            std::min(theta_max, th + dtheta), config.tolerance);
                if (improves(v2, val)) {
                    th = th2;
                    val = v2;
                }
                auto [ph2, v3] = golden_max([&](double p) { return objective(th, p); }, ph - dphi, ph + dphi,
                                            config.tolerance);
                if (improves(v3, val)) {
                    ph = ph2;
                    val = v3;
                }
                if (val <= before) {
                    break;
                }
            }
        }
        if (best.merit < 0 || improves(val, best.merit)) {
            best.theta3 = th;
            best.phi4 = ph;
            best.merit = val;
        }
    }
    best.phi4 = std::remainder(best.phi4, 2 * std::numbers::pi);
    if (best.phi4 < 0) {
        best.phi4 += 2 * std::numbers::pi;
    }
    best.merit = std::max(best.merit, 0.0);
    return best;
}

Stage3Choice choose_stage3(const ModeMatrix &c, const SynthOptions &options) {
    double extra = 0;
    for (Eigen::Index k = 3; k < c.rows(); k++) {
        extra = std::max(extra, 2 * std::norm(c(k, k)));
    }
    std::vector<std::array<size_t, 3>> perms;
    std::array<size_t, 3> p{0, 1, 2};
    do {
        perms.push_back(p);
    } while (options.try_permutations && std::next_permutation(p.begin(), p.end()));

    Stage3Choice best;
    best.merit = -1;
    for (const auto &perm : perms) {
        Eigen::Matrix3cd x;
        for (size_t a = 0; a < 3; a++) {
            for (size_t b = 0; b < 3; b++) {
                x(a, b) = c(perm[a], perm[b]);
            }
        }
        Stage3Choice cand;
        if (options.optimize_bs3) {
            cand = optimize_stage3(x, extra, options.robust, options.optimizer);
        } else {
            cand.merit = stage3_merit(x, extra, 0, 0);
        }
        cand.perm = perm;
        if (cand.merit > best.merit * (1 + 1e-12)) {
            best = cand;
        }
    }
    return best;
}

namespace {

/// Weight left on the cycle mode's pivot after an optimizing beam splitter on
/// (a, m): the filter's q^4, 1 when nothing needs filtering, 0 when the pivot
/// vanishes under a nonzero cross term.
double cycle_quality(const ModeMatrix &c, size_t a, size_t m, double theta) {
    double t = std::cos(theta), r = std::sin(theta);
    double cross = 0;
    for (size_t j = 0; j < m; j++) {
        Complex v = j == a ? t * r * (c(a, a) - c(m, m)) + (t * t - r * r) * c(a, m) : c(j, a) * r + c(j, m) * t;
        cross += std::norm(v);
    }
    if (cross == 0) {
        return 1;
    }
    double pivot = std::norm(r * r * c(a, a) + 2 * r * t * c(a, m) + t * t * c(m, m));
    if (pivot == 0) {
        return 0;
    }
    double q = filter_q(std::sqrt(cross / pivot));
    return q * q * q * q;
}

struct CycleOptimum {
    double theta = 0;
    double quality = 0;
};

CycleOptimum optimize_cycle(const ModeMatrix &c, size_t a, size_t m, const OptimizerConfig &config) {
    size_t nt = std::max<size_t>(config.theta_points, 2);
    double step = std::numbers::pi / static_cast<double>(nt);
    CycleOptimum best{0, cycle_quality(c, a, m, 0)};
    for (size_t i = 1; i < nt; i++) {
        double th = static_cast<double>(i) * step;
        double v = cycle_quality(c, a, m, th);
        if (v > best.quality) {
            best = {th, v};
        }
    }
    if (best.quality > 0 && best.quality < 1) {
        auto [th, v] = golden_max([&](double x) { return cycle_quality(c, a, m, x); }, best.theta - step,
                                  best.theta + step, config.tolerance);
        if (v > best.quality) {
            best = {th, v};
        }
    }
    return best;
}

}  // namespace

CyclePlan run_cycle(ReverseBuilder &rb, size_t m, const SynthOptions &options) {
    CyclePlan cp;
    cp.cycle_mode = m;
    const ModeMatrix &c0 = rb.state();

    CycleOptimum opt{0, cycle_quality(c0, m - 1, m, 0)};
    size_t partner = m - 1;
    if (options.optimize_bs3) {
        opt = optimize_cycle(c0, partner, m, options.optimizer);
    }
    if (opt.quality == 0) {
        for (size_t a = m; a-- > 0 && opt.quality == 0;) {
            CycleOptimum o = optimize_cycle(c0, a, m, options.optimizer);
            if (o.quality > 0) {
                opt = o;
                partner = a;
            }
        }
    }
    if (opt.quality == 0) {
        throw DegenerateAmplitudes("cycle for mode " + std::to_string(m + 1) + ": no beam splitter gives a pivot");
    }
    cp.optimizer_partner = partner;
    cp.optimizer_theta = opt.theta;
    rb.unitary(BeamSplitter{partner, m, opt.theta});

    for (size_t j = 0; j + 1 < m; j++) {
        const ModeMatrix &c = rb.state();
        Complex delta = 2.0 * c(j + 1, m);
        Complex epsilon = 2.0 * c(j, m);
        EliminatorParams e;
        e.keep_mode = j + 1;
        e.clear_mode = j;
        if (delta == Complex(0) && epsilon != Complex(0)) {
            e.phi = 0;
            e.theta = -std::numbers::pi / 2;
        } else {
            U101Solution u = solve_u101(delta, epsilon);
            e.phi = u.phi3;
            e.theta = u.theta2;
        }
        rb.unitary(PhaseShifter{j + 1, e.phi});
        rb.unitary(BeamSplitter{j + 1, j, e.theta});
        cp.eliminators.push_back(e);
    }

    const ModeMatrix &c = rb.state();
    F2Solution f = solve_filter_f2(kSqrt2 * c(m, m), 2.0 * c(m - 1, m));
    cp.filter_partner = m - 1;
    cp.filter_q = f.q2;
    cp.filter_phase = f.phi2;
    cp.filter_ratio = f.ratio;
    cp.compensated_modes.resize(m - 1);
    std::iota(cp.compensated_modes.begin(), cp.compensated_modes.end(), size_t{0});
    rb.unitary(PhaseShifter{m - 1, f.phi2});
    rb.filter(m, m - 1, f, cp.compensated_modes);

    double scale = rb.state().cwiseAbs().maxCoeff();
    for (size_t j = 0; j < m; j++) {
        cp.residual = std::max(cp.residual, std::abs(rb.state()(j, m)));
    }
    if (cp.residual > kClearedTol * std::max(1.0, scale)) {
        throw std::logic_error("cycle residual " + std::to_string(cp.residual));
    }
    return cp;
}

SynthesisPlan run_synthesis(const TwoPhotonState &target, const SynthOptions &options) {
    const size_t n = target.num_modes();
    if (n < 3) {
        throw ValidationError("synthesis needs at least 3 modes");
    }
    double norm = norm2(target);
    if (std::abs(norm - 1) > 1e-9) {
        throw ValidationError("target is not normalized (norm^2 = " + std::to_string(norm) + ")");
    }

    SynthesisPlan plan;
    plan.target = target;
    ReverseBuilder rb(to_coeff_matrix(target).c);
    for (size_t m = n - 1; m >= 3; m--) {
        plan.cycles.push_back(run_cycle(rb, m, options));
    }

    Stage3Choice choice = choose_stage3(rb.state(), options);
    if (choice.merit <= 0) {
        throw DegenerateAmplitudes("no mode labeling admits a nonzero pivot amplitude");
    }
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), size_t{0});
    std::copy(choice.perm.begin(), choice.perm.end(), perm.begin());
    rb.relabel(perm);
    plan.permutation = rb.labels();

    SynthParams &params = plan.params;
    params.phi4 = choice.phi4;
    params.theta3 = choice.theta3;
    rb.unitary(PhaseShifter{1, params.phi4});
    rb.unitary(BeamSplitter{0, 1, params.theta3});

    U101Solution u101 = solve_u101(2.0 * rb.state()(0, 1), 2.0 * rb.state()(0, 2));
    params.phi3 = u101.phi3;
    params.theta2 = u101.theta2;
    rb.unitary(PhaseShifter{1, params.phi3});
    rb.unitary(BeamSplitter{1, 2, params.theta2});
    plan.psi_prime = state_of(rb.state());

    F2Solution f2 = solve_filter_f2(kSqrt2 * rb.state()(0, 0), 2.0 * rb.state()(0, 1));
    params.phi2 = f2.phi2;
    params.q2 = f2.q2;
    rb.unitary(PhaseShifter{1, params.phi2});
    const size_t compensated[] = {2};
    rb.filter(0, 1, f2, compensated);
    plan.psi_double_prime = state_of(rb.state());

    const ModeMatrix &c2 = rb.state();
    U011Solution u011 = solve_u011(kSqrt2 * c2(1, 1), kSqrt2 * c2(2, 2), 2.0 * c2(1, 2));
    params.phi1 = u011.phi1;
    params.theta1 = u011.theta1;
    rb.unitary(PhaseShifter{1, params.phi1});
    rb.unitary(BeamSplitter{1, 2, params.theta1});
    plan.psi_triple_prime = state_of(rb.state());

    const ModeMatrix &c3 = rb.state();
    double scale = c3.cwiseAbs().maxCoeff();
    std::vector<Complex> diagonal(n);
    for (size_t j = 0; j < n; j++) {
        diagonal[j] = kSqrt2 * c3(j, j);
        for (size_t k = j + 1; k < n; k++) {
            if (std::abs(c3(j, k)) > kClearedTol * std::max(1.0, scale)) {
                throw std::logic_error("pipeline left an off-diagonal term");
            }
        }
    }
    F1Solution f1 = solve_f1(diagonal);
    rb.initial_layer(f1);
    params.f1_transmittances.assign(n, 1.0);
    params.f1_phases.assign(n, 0.0);
    for (size_t a = 0; a < n; a++) {
        params.f1_transmittances[plan.permutation[a]] = f1.forward[a];
        params.f1_phases[plan.permutation[a]] = f1.phases[a];
    }

    plan.circuit = rb.circuit();
    TwoPhotonState out = apply(plan.circuit, prepare_initial(n));
    // Passive circuits cannot amplify; clip rounding above 1.
    plan.p_success = std::min(norm2(out), 1.0);
    plan.fidelity = plan.p_success > 0 ? fidelity(out, target) : 0.0;
    return plan;
}

}  // namespace tpsynth::detail
