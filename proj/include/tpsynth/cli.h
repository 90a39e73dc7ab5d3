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

#ifndef TPSYNTH_CLI_H
#define TPSYNTH_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace tpsynth {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitMalformedInput = 2,
    kExitDegenerate = 3,
};

/// Runs the command line; args excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace tpsynth

#endif
