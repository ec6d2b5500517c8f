// Copyright 2026 The cvboson Authors
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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <cstring>
#include <iostream>

#include "cvboson/verify.hpp"

int main(int argc, char **argv) {
    auto level = cvboson::verify::Level::full;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--level") == 0 && std::strcmp(argv[i + 1], "quick") == 0) {
            level = cvboson::verify::Level::quick;
        }
    }
    const auto results = cvboson::verify::run_acceptance(level, &std::cout);
    int failed = 0;
    for (const auto &r : results) {
        failed += r.passed ? 0 : 1;
    }
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
