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

#ifndef TPSYNTH_FOCK_H
#define TPSYNTH_FOCK_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tpsynth/errors.h"

namespace tpsynth {

using Complex = std::complex<double>;

/// Single-photon mode transformation. Row i holds the expansion of input mode i
/// in terms of output modes: a_i,in^dag = sum_j m(i, j) a_j,out^dag.
using ModeMatrix = Eigen::MatrixXcd;

/// Number of two-photon Fock basis states over n modes, n(n+1)/2.
constexpr size_t basis_size(size_t n) {
    return n * (n + 1) / 2;
}

/// Linear index of the basis state with photons in modes j <= k (0-based).
/// Ordering is upper-triangular row-major: (0,0), (0,1), ..., (0,n-1), (1,1), ...
/// (j, j) is |2_j>, (j, k) with j < k is |1_j 1_k>.
size_t basis_index(size_t j, size_t k, size_t n);

/// Inverse of basis_index.
std::pair<size_t, size_t> basis_pair(size_t index, size_t n);

/// A (possibly unnormalized) state of exactly two photons in n modes.
///
/// Unnormalized states are the normal currency of post-selected optics: the
/// squared norm of a state produced by a filtering circuit is the probability
/// that the post-selection succeeded. Nothing here normalizes implicitly.
class TwoPhotonState {
   public:
    /// The zero vector over n modes.
    explicit TwoPhotonState(size_t n);
    /// Throws ValidationError unless amps.size() == basis_size(n) and every
    /// entry is finite.
    TwoPhotonState(size_t n, std::vector<Complex> amps);

    /// amp * |2_j> when j == k, amp * |1_j 1_k> otherwise.
    static TwoPhotonState basis(size_t n, size_t j, size_t k, Complex amp = 1.0);

    size_t num_modes() const {
        return n_;
    }
    const std::vector<Complex> &amplitudes() const {
        return amps_;
    }

    /// Order-insensitive in (j, k).
    Complex amplitude(size_t j, size_t k) const;
    void set_amplitude(size_t j, size_t k, Complex value);

    TwoPhotonState &operator*=(Complex s);
    TwoPhotonState &operator+=(const TwoPhotonState &other);

    /// Throws ValidationError if the squared norm exceeds 1 + tol.
    void check_probability(double tol = 1e-9) const;

   private:
    size_t n_;
    std::vector<Complex> amps_;
};

TwoPhotonState operator*(Complex s, TwoPhotonState state);
TwoPhotonState operator+(TwoPhotonState a, const TwoPhotonState &b);

/// Symmetric matrix C with |psi> = sum_jk C_jk a_j^dag a_k^dag |vac>.
/// amplitude(|2_j>) = sqrt(2) C_jj, amplitude(|1_j 1_k>) = 2 C_jk for j < k.
struct CoeffMatrix {
    ModeMatrix c;

    size_t num_modes() const {
        return static_cast<size_t>(c.rows());
    }
};

CoeffMatrix to_coeff_matrix(const TwoPhotonState &state);

/// Throws ValidationError if c is not square or not symmetric within tol
/// (absolute, relative to the largest entry).
TwoPhotonState from_coeff_matrix(const CoeffMatrix &c, double tol = 1e-12);

/// C_out = M^T C_in M. Applying m1 and then m2 is the same as applying m1 * m2.
CoeffMatrix apply_mode_transform(const CoeffMatrix &c, const ModeMatrix &m);
TwoPhotonState apply_mode_transform(const TwoPhotonState &state, const ModeMatrix &m);

/// In-place C <- M^T C M for a matrix that is the identity outside modes a, b.
/// `block` is the 2x2 restriction to (a, b).
void transform_pair(ModeMatrix &c, size_t a, size_t b, const Eigen::Matrix2cd &block);
/// In-place C <- M^T C M for M = identity except M(a, a) = factor.
void transform_single(ModeMatrix &c, size_t a, Complex factor);

Complex inner(const TwoPhotonState &a, const TwoPhotonState &b);
double norm2(const TwoPhotonState &state);
/// Throws ValidationError for the zero state.
TwoPhotonState normalize(const TwoPhotonState &state);
/// |<a|b>|^2 / (<a|a><b|b>). Throws ValidationError if either side is zero.
double fidelity(const TwoPhotonState &a, const TwoPhotonState &b);

/// Singular values of the coefficient matrix, descending.
Eigen::VectorXd coeff_singular_values(const TwoPhotonState &state);

/// True iff the state factorizes as (sum_j u_j a_j^dag)(sum_k v_k a_k^dag)|vac>,
/// i.e. iff rank(C) <= 2 counting singular values above tol * sigma_max.
/// Throws ValidationError for the zero state.
bool reachable_from_separable(const TwoPhotonState &state, double tol = 1e-9);

struct ParamCounts {
    long state_params;
    long su_params;
};

/// Real parameters of a normalized two-photon state modulo global phase, and of
/// SU(n). Throws ValidationError for n < 1.
ParamCounts param_counts(long n);

/// Relabeled state whose mode a is mode perm[a] of the input.
TwoPhotonState permute_modes(const TwoPhotonState &state, std::span<const size_t> perm);

}  // namespace tpsynth

#endif
