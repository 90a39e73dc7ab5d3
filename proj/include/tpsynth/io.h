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

#ifndef TPSYNTH_IO_H
#define TPSYNTH_IO_H

#include <iosfwd>
#include <string>

#include "tpsynth/elements.h"
#include "tpsynth/fock.h"
#include "tpsynth/harness.h"
#include "tpsynth/plan.h"

namespace tpsynth {

// All file formats number modes from 1. Readers throw ValidationError on
// malformed input.

std::string state_to_json(const TwoPhotonState &state);
TwoPhotonState state_from_json(const std::string &text);

std::string circuit_to_json(const Circuit &circuit);
/// Accepts a circuit document or a plan document (its "circuit" member).
Circuit circuit_from_json(const std::string &text);

std::string plan_to_json(const SynthesisPlan &plan);

/// The parts of a plan document needed to re-verify it.
struct PlanRecord {
    Circuit circuit;
    TwoPhotonState target{3};
    double p_success = 0;
};
PlanRecord plan_from_json(const std::string &text);

/// "param,p_success" with the parameter column named after the family.
std::string sweep_to_csv(const SweepResult &sweep);
/// "bin_lo,bin_hi,count".
std::string histogram_to_csv(const HistogramResult &h);
/// {"min", "mean", "samples", "seed", "modes", "fraction_above_0.15"}.
std::string histogram_summary_json(const HistogramResult &h);

/// Fixed 17-significant-digit rendering used by the CSV writers.
std::string format_double(double x);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &contents);

}  // namespace tpsynth

#endif
