// Copyright 2026 The bptest Authors
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

#ifndef BPTEST_VERIFY_HPP
#define BPTEST_VERIFY_HPP

// Named invariant suites driven by `bptest verify`.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bptest/rng.hpp"

namespace bptest {

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = kDefaultSeed;
    /// Adds 1e-3 to one entry of the two-copy qubit symmetric projector before
    /// it is checked, as a negative control.
    bool inject_fault = false;
};

struct VerifyReport {
    std::string suite;
    std::vector<Check> checks;

    bool passed() const;
};

/// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Returns nullopt for an unknown suite name.
std::optional<VerifyReport> run_suite(const std::string& suite, const VerifyOptions& options = {});

std::vector<Check> facts_checks(const VerifyOptions& options);
std::vector<Check> ensembles_checks(const VerifyOptions& options);
std::vector<Check> testers_checks(const VerifyOptions& options);

nlohmann::json report_to_json(const VerifyReport& report);
std::string report_summary(const VerifyReport& report);

}  // namespace bptest

#endif
