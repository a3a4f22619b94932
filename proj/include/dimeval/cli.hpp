// Copyright 2026 The dimeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIMEVAL_CLI_HPP_
#define DIMEVAL_CLI_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dimeval::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kUsageError = 2,
  kIoFailure = 3,
};

// Runs one command line (without the program name). Results go to `out`,
// diagnostics to `err`. `precision_env` stands in for DIMEVAL_PRECISION.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, const std::optional<std::string>& precision_env);

// Same, reading DIMEVAL_PRECISION from the process environment.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace dimeval::cli

#endif  // DIMEVAL_CLI_HPP_
