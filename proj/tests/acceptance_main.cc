// Copyright 2026 The fpdyn Authors
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
// Runs every reproduction target and prints one line per criterion.
// Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <exception>

#include "fpdyn/experiments.h"

int main() {
  int failed = 0;
  for (const auto& key : fpdyn::ReproduceKeys()) {
    const auto start = std::chrono::steady_clock::now();
    fpdyn::CriterionResult result;
    try {
      result = fpdyn::RunCriterion(key);
    } catch (const std::exception& e) {
      result.key = key;
      result.passed = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    std::printf("[%s] %2d %-14s %s (%.1fs)\n", result.passed ? "PASS" : "FAIL",
                result.id, result.key.c_str(), result.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!result.passed) ++failed;
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(fpdyn::ReproduceKeys().size()) - failed,
              fpdyn::ReproduceKeys().size());
  return failed == 0 ? 0 : 1;
}
