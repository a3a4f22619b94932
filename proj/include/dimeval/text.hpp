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

#ifndef DIMEVAL_TEXT_HPP_
#define DIMEVAL_TEXT_HPP_

#include <string>
#include <string_view>

namespace dimeval {

struct NormalizeOptions {
  bool ignore_case = false;
};

// Canonical comparison form of a text span: Unicode NFC, surrounding
// whitespace trimmed, internal whitespace runs collapsed to a single space,
// and full case folding when ignore_case is set. Invalid UTF-8 sequences are
// replaced with U+FFFD rather than rejected.
std::string normalize_span(std::string_view text,
                           const NormalizeOptions& options = {});

bool is_valid_utf8(std::string_view text);

}  // namespace dimeval

#endif  // DIMEVAL_TEXT_HPP_
