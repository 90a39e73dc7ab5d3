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

#ifndef TPSYNTH_ELEMENTS_H
#define TPSYNTH_ELEMENTS_H

#include <Eigen/Dense>
#include <cstddef>
#include <variant>
#include <vector>

#include "tpsynth/fock.h"

namespace tpsynth {

/// Beam splitter on modes (a, b) with t = cos(theta), r = sin(theta):
///     a^dag -> t a^dag + r b^dag,   b^dag -> t b^dag - r a^dag.
struct BeamSplitter {
    size_t a;
    size_t b;
    double theta;
};

/// a^dag -> exp(i phi) a^dag.
struct PhaseShifter {
    size_t mode;
    double phi;
};

/// Single-mode attenuation with real amplitude transmittance q in [-1, 1]
/// (negative q carries an extra pi phase). Realized by a beam splitter onto a
/// vacuum ancilla; success means no photon leaked into the ancilla.
struct Filter {
    size_t mode;
    double q;
};

/// Arbitrary 2x2 block on modes (a, b). Physical iff its largest singular value
/// is at most one, in which case it dilates to a unitary with vacuum ancillae.
struct TwoModeMatrix {
    size_t a;
    size_t b;
    Eigen::Matrix2cd m;
};

using Element = std::variant<BeamSplitter, PhaseShifter, Filter, TwoModeMatrix>;

/// Elements are applied left to right in forward propagation.
struct Circuit {
    size_t n = 0;
    std::vector<Element> elements;
};

constexpr double kPhysicalTol = 1e-12;
constexpr double kUnitaryTol = 1e-12;

/// Modes the element touches (one or two entries).
std::vector<size_t> element_modes(const Element &e);

/// 2x2 (or 1x1 padded) restriction of the element's mode matrix.
Eigen::Matrix2cd element_block(const Element &e);

/// Embeds the element into an n x n mode matrix, identity elsewhere. Throws
/// ValidationError when a mode index is out of range.
ModeMatrix element_matrix(const Element &e, size_t n);

bool element_is_unitary(const Element &e, double tol = kUnitaryTol);
double element_max_singular_value(const Element &e);

/// Overall mode matrix of the circuit, the ordered product of element matrices.
ModeMatrix circuit_matrix(const Circuit &c);

/// Forward propagation. The squared norm of the result is the post-selection
/// success probability of the circuit on this input.
CoeffMatrix apply(const Circuit &c, CoeffMatrix state);
TwoPhotonState apply(const Circuit &c, const TwoPhotonState &state);

/// Reversed order with every element conjugate-transposed. Throws
/// ValidationError if any element is not unitary.
Circuit invert_unitary(const Circuit &c);

/// (1/sqrt(n)) sum_j |2_j>. Throws ValidationError for n < 2.
TwoPhotonState prepare_initial(size_t n);

/// Circuit turning (1/sqrt(d)) sum_j |1_{2j} 1_{2j+1}> into prepare_initial(2d):
/// one balanced beam splitter per pair followed by the phase corrections that
/// make every |2_j> amplitude positive.
Circuit source_circuit(size_t d);

/// The down-conversion state (1/sqrt(d)) sum_j |1_{2j} 1_{2j+1}> over 2d modes.
TwoPhotonState pair_source_state(size_t d);

/// Runs source_circuit(d) on pair_source_state(d).
TwoPhotonState simulate_source(size_t d);

/// True iff every element has largest singular value <= 1 + kPhysicalTol.
bool physicality_check(const Circuit &c);

/// Maps every element mode a to perm[a].
Circuit relabel_modes(const Circuit &c, std::span<const size_t> perm);

}  // namespace tpsynth

#endif
