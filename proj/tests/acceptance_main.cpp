/*
   Copyright 2026 The rootperturb authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// End-to-end acceptance runner: one pass/fail line per check, exit 1 on any
// failure.  Same checks as `rootperturb verify --suite all`.

#include <cstdio>

#include "rootperturb/verification.hpp"

int main() {
    const auto results = rootperturb::verification::run_acceptance("all", 0);
    bool ok = true;
    for (const auto& r : results) {
        std::printf("%-4s %-32s margin=%-12.3g %s\n", r.passed ? "PASS" : "FAIL", r.id.c_str(),
                    r.margin, r.observed.c_str());
        ok = ok && r.passed;
    }
    std::printf("%s\n", ok ? "acceptance: all checks passed" : "acceptance: FAILURES present");
    return ok ? 0 : 1;
}
