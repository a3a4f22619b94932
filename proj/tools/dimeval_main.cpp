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

// dimeval: validate, score, agreement and leaderboard commands.
//
// Sample usage:
//   dimeval validate --subtask 3 --gold gold.jsonl --dataset eng-rest
//   dimeval score --subtask 2 --gold gold.jsonl --pred pred.jsonl
//   dimeval leaderboard --reports reports/ --format markdown

#include <iostream>
#include <string>
#include <vector>

#include "dimeval/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dimeval::cli::run(args, std::cout, std::cerr);
}
