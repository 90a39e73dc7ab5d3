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

#ifndef TPSYNTH_ERRORS_H
#define TPSYNTH_ERRORS_H

#include <stdexcept>
#include <string>

namespace tpsynth {

/// Malformed input: wrong shapes, non-finite amplitudes, asymmetric coefficient
/// matrices, parameters outside their domain.
class ValidationError : public std::invalid_argument {
   public:
    explicit ValidationError(const std::string &what) : std::invalid_argument(what) {
    }
};

/// A synthesis stage needs a nonzero pivot amplitude and did not get one.
/// Callers recover by relabeling modes or pre-rotating the state.
class DegenerateAmplitudes : public std::runtime_error {
   public:
    explicit DegenerateAmplitudes(const std::string &what) : std::runtime_error(what) {
    }
};

}  // namespace tpsynth

#endif
