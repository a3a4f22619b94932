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

#ifndef DIMEVAL_JSON_WRITER_HPP_
#define DIMEVAL_JSON_WRITER_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dimeval {

// Minimal streaming JSON emitter. Exists because reports must print numbers
// with a fixed count of decimals ("0.5000"), which general JSON libraries
// normalize away. Output is deterministic and indented by two spaces.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();

  JsonWriter& key(std::string_view name);

  JsonWriter& value(std::string_view text);
  JsonWriter& value(const char* text) { return value(std::string_view(text)); }
  JsonWriter& value(const std::string& text) {
    return value(std::string_view(text));
  }
  JsonWriter& value(bool flag);
  JsonWriter& value(std::int64_t number);
  JsonWriter& value(std::size_t number) {
    return value(static_cast<std::int64_t>(number));
  }
  JsonWriter& value(int number) { return value(static_cast<std::int64_t>(number)); }
  JsonWriter& fixed(double number, int places);
  JsonWriter& null();

  // The document followed by a newline.
  std::string str() const { return out_ + "\n"; }

 private:
  struct Frame {
    bool is_object;
    std::size_t count;
  };

  void before_value();
  void newline(std::size_t depth);
  void raw(std::string_view token);

  std::string out_;
  std::vector<Frame> stack_;
  bool after_key_ = false;
};

// JSON string literal for `text`, with invalid UTF-8 replaced by U+FFFD.
std::string json_quote(std::string_view text);

}  // namespace dimeval

#endif  // DIMEVAL_JSON_WRITER_HPP_
