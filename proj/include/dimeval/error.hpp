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

#ifndef DIMEVAL_ERROR_HPP_
#define DIMEVAL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dimeval {

// Stable, machine-readable error codes. The string forms appear verbatim in
// validation reports and CLI diagnostics.
enum class ErrorCode {
  kMalformedVA,
  kOutOfRangeVA,
  kSchemaError,
  kDuplicateId,
  kInvalidCategory,
  kIoError,
  kMissingRecord,
  kMissingAspect,
  kExtraAspect,
  kSubtaskMismatch,
  kEmptyInput,
  kTooLarge,
  kKeyMismatch,
  kTooFewAnnotators,
  kMixedDatasets,
};

std::string_view to_string(ErrorCode code);

// True for the codes that make up an alignment failure in regression scoring.
bool is_alignment_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dimeval

#endif  // DIMEVAL_ERROR_HPP_
