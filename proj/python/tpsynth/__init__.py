# Copyright 2026 The tpsynth Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Two-photon state synthesis with linear optics and post-selection.

Modes are 0-based in this API. The JSON formats number modes from 1.
"""

from ._tpsynth import (
    DegenerateAmplitudes,
    SynthesisPlan,
    TwoPhotonState,
    coeff_singular_values,
    family_g,
    family_w,
    fidelity,
    histogram,
    klm_params,
    klm_simulate,
    klm_tau_for_ratio,
    lower_bounds,
    m_min,
    prepare_initial,
    random_state,
    reachable_from_separable,
    run_cli,
    simulate,
    sweep_g,
    sweep_w,
    synthesize,
)

__all__ = [
    "DegenerateAmplitudes",
    "SynthesisPlan",
    "TwoPhotonState",
    "coeff_singular_values",
    "family_g",
    "family_w",
    "fidelity",
    "histogram",
    "klm_params",
    "klm_simulate",
    "klm_tau_for_ratio",
    "lower_bounds",
    "m_min",
    "prepare_initial",
    "random_state",
    "reachable_from_separable",
    "run_cli",
    "simulate",
    "sweep_g",
    "sweep_w",
    "synthesize",
]
