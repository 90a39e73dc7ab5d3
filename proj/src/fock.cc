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

#include "tpsynth/fock.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tpsynth {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

}  // namespace

size_t basis_index(size_t j, size_t k, size_t n) {
    if (j > k || k >= n) {
        throw std::out_of_range(
            "basis_index: need j <= k < n, got j=" + std::to_string(j) + " k=" + std::to_string(k) +
            " n=" + std::to_string(n));
    }
    // Rows 0..j-1 contribute n, n-1, ..., n-j+1 entries.
    return j * n - j * (j - 1) / 2 + (k - j);
}

std::pair<size_t, size_t> basis_pair(size_t index, size_t n) {
    if (index >= basis_size(n)) {
        throw std::out_of_range("basis_pair: index " + std::to_string(index) + " out of range");
    }
    size_t j = 0;
    size_t row_len = n;
    while (index >= row_len) {
        index -= row_len;
        ++j;
        --row_len;
    }
    return {j, j + index};
}

TwoPhotonState::TwoPhotonState(size_t n) : n_(n), amps_(basis_size(n)) {
    if (n < 1) {
        throw ValidationError("TwoPhotonState: need at least one mode");
    }
}

TwoPhotonState::TwoPhotonState(size_t n, std::vector<Complex> amps) : n_(n), amps_(std::move(amps)) {
    if (n < 1) {
        throw ValidationError("TwoPhotonState: need at least one mode");
    }
    if (amps_.size() != basis_size(n)) {
        throw ValidationError(
            "TwoPhotonState: expected " + std::to_string(basis_size(n)) + " amplitudes for n=" +
            std::to_string(n) + ", got " + std::to_string(amps_.size()));
    }
    for (const auto &a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw ValidationError("TwoPhotonState: non-finite amplitude");
        }
    }
}

TwoPhotonState TwoPhotonState::basis(size_t n, size_t j, size_t k, Complex amp) {
    TwoPhotonState s(n);
    s.set_amplitude(j, k, amp);
    return s;
}

Complex TwoPhotonState::amplitude(size_t j, size_t k) const {
    if (j > k) {
        std::swap(j, k);
    }
    return amps_[basis_index(j, k, n_)];
}

void TwoPhotonState::set_amplitude(size_t j, size_t k, Complex value) {
    if (j > k) {
        std::swap(j, k);
    }
    amps_[basis_index(j, k, n_)] = value;
}

TwoPhotonState &TwoPhotonState::operator*=(Complex s) {
    for (auto &a : amps_) {
        a *= s;
    }
    return *this;
}

TwoPhotonState &TwoPhotonState::operator+=(const TwoPhotonState &other) {
    if (other.n_ != n_) {
        throw ValidationError("TwoPhotonState: mode count mismatch in sum");
    }
    for (size_t i = 0; i < amps_.size(); i++) {
        amps_[i] += other.amps_[i];
    }
    return *this;
}

void TwoPhotonState::check_probability(double tol) const {
    double p = norm2(*this);
    if (p > 1 + tol) {
        throw ValidationError("TwoPhotonState: squared norm " + std::to_string(p) + " exceeds 1");
    }
}

TwoPhotonState operator*(Complex s, TwoPhotonState state) {
    state *= s;
    return state;
}

TwoPhotonState operator+(TwoPhotonState a, const TwoPhotonState &b) {
    a += b;
    return a;
}

CoeffMatrix to_coeff_matrix(const TwoPhotonState &state) {
    size_t n = state.num_modes();
    CoeffMatrix out{ModeMatrix::Zero(n, n)};
    size_t idx = 0;
    for (size_t j = 0; j < n; j++) {
        out.c(j, j) = state.amplitudes()[idx++] / kSqrt2;
        for (size_t k = j + 1; k < n; k++) {
            Complex v = state.amplitudes()[idx++] / 2.0;
            out.c(j, k) = v;
            out.c(k, j) = v;
        }
    }
    return out;
}

TwoPhotonState from_coeff_matrix(const CoeffMatrix &c, double tol) {
    if (c.c.rows() != c.c.cols() || c.c.rows() < 1) {
        throw ValidationError("from_coeff_matrix: matrix must be square and nonempty");
    }
    size_t n = c.num_modes();
    double scale = std::max(1.0, c.c.cwiseAbs().maxCoeff());
    std::vector<Complex> amps;
    amps.reserve(basis_size(n));
    for (size_t j = 0; j < n; j++) {
        amps.push_back(kSqrt2 * c.c(j, j));
        for (size_t k = j + 1; k < n; k++) {
            if (std::abs(c.c(j, k) - c.c(k, j)) > tol * scale) {
                throw ValidationError(
                    "from_coeff_matrix: matrix not symmetric at (" + std::to_string(j) + "," +
                    std::to_string(k) + ")");
            }
            amps.push_back(c.c(j, k) + c.c(k, j));
        }
    }
    return TwoPhotonState(n, std::move(amps));
}

CoeffMatrix apply_mode_transform(const CoeffMatrix &c, const ModeMatrix &m) {
    if (m.rows() != c.c.rows() || m.cols() != c.c.cols()) {
        throw ValidationError(
            "apply_mode_transform: expected " + std::to_string(c.c.rows()) + "x" +
            std::to_string(c.c.rows()) + " matrix, got " + std::to_string(m.rows()) + "x" +
            std::to_string(m.cols()));
    }
    if (!m.allFinite()) {
        throw ValidationError("apply_mode_transform: non-finite matrix entry");
    }
    return CoeffMatrix{m.transpose() * c.c * m};
}

TwoPhotonState apply_mode_transform(const TwoPhotonState &state, const ModeMatrix &m) {
    return from_coeff_matrix(apply_mode_transform(to_coeff_matrix(state), m), 1e-9);
}

void transform_pair(ModeMatrix &c, size_t a, size_t b, const Eigen::Matrix2cd &block) {
    // Columns first (C M), then rows (M^T (C M)).
    auto n = c.rows();
    for (Eigen::Index i = 0; i < n; i++) {
        Complex ca = c(i, a);
        Complex cb = c(i, b);
        c(i, a) = ca * block(0, 0) + cb * block(1, 0);
        c(i, b) = ca * block(0, 1) + cb * block(1, 1);
    }
    for (Eigen::Index i = 0; i < n; i++) {
        Complex ra = c(a, i);
        Complex rb = c(b, i);
        c(a, i) = block(0, 0) * ra + block(1, 0) * rb;
        c(b, i) = block(0, 1) * ra + block(1, 1) * rb;
    }
}

void transform_single(ModeMatrix &c, size_t a, Complex factor) {
    c.col(a) *= factor;
    c.row(a) *= factor;
}

Complex inner(const TwoPhotonState &a, const TwoPhotonState &b) {
    if (a.num_modes() != b.num_modes()) {
        throw ValidationError("inner: mode count mismatch");
    }
    Complex total = 0;
    for (size_t i = 0; i < a.amplitudes().size(); i++) {
        total += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    }
    return total;
}

double norm2(const TwoPhotonState &state) {
    double total = 0;
    for (const auto &a : state.amplitudes()) {
        total += std::norm(a);
    }
    return total;
}

TwoPhotonState normalize(const TwoPhotonState &state) {
    double p = norm2(state);
    if (p == 0) {
        throw ValidationError("normalize: zero state");
    }
    return (1.0 / std::sqrt(p)) * state;
}

double fidelity(const TwoPhotonState &a, const TwoPhotonState &b) {
    double na = norm2(a);
    double nb = norm2(b);
    if (na == 0 || nb == 0) {
        throw ValidationError("fidelity: zero state");
    }
    return std::min(1.0, std::norm(inner(a, b)) / (na * nb));
}

Eigen::VectorXd coeff_singular_values(const TwoPhotonState &state) {
    Eigen::JacobiSVD<ModeMatrix> svd(to_coeff_matrix(state).c);
    return svd.singularValues();
}

bool reachable_from_separable(const TwoPhotonState &state, double tol) {
    if (norm2(state) == 0) {
        throw ValidationError("reachable_from_separable: zero state");
    }
    Eigen::VectorXd sv = coeff_singular_values(state);
    double cutoff = tol * sv(0);
    long rank = (sv.array() > cutoff).count();
    return rank <= 2;
}

ParamCounts param_counts(long n) {
    if (n < 1) {
        throw ValidationError("param_counts: need n >= 1");
    }
    return {n * n + n - 2, n * n - 1};
}

TwoPhotonState permute_modes(const TwoPhotonState &state, std::span<const size_t> perm) {
    size_t n = state.num_modes();
    if (perm.size() != n) {
        throw ValidationError("permute_modes: permutation length must equal mode count");
    }
    std::vector<bool> seen(n, false);
    for (size_t p : perm) {
        if (p >= n || seen[p]) {
            throw ValidationError("permute_modes: not a permutation");
        }
        seen[p] = true;
    }
    TwoPhotonState out(n);
    for (size_t a = 0; a < n; a++) {
        for (size_t b = a; b < n; b++) {
            out.set_amplitude(a, b, state.amplitude(perm[a], perm[b]));
        }
    }
    return out;
}

}  // namespace tpsynth
