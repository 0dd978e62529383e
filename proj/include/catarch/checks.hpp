//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace catarch {

// One measured property inside a suite.
struct SuiteCase {
    std::string name;
    bool pass = false;
    nlohmann::json details;
};

struct SuiteResult {
    std::string suite;
    std::uint64_t seed = 0;
    bool pass = false;
    std::vector<SuiteCase> cases;

    nlohmann::json to_json() const;
};

// Names accepted by run_suite. "all" runs every other suite in order.
std::vector<std::string> known_suites();

// homomorphism: unrolled nets against their one-step/recursive oracles,
//               1000 trials per architecture and value class.
// gradients:    reverse mode against central finite differences on all
//               five architectures at depth 5.
// comonoid:     counit and coassociativity of copy/delete, bit-exact.
// solver:       nullspace dimensions and patterns against the orbit oracle.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

// Payload of a check spec file.
struct CheckSpec {
    std::string suite;
    std::uint64_t seed = 1;

    static CheckSpec from_json(const nlohmann::json& j);
};

} // namespace catarch
