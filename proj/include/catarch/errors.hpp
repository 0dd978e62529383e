//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <stdexcept>
#include <string>

namespace catarch {

// Base for everything thrown by the library.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: bad shapes, unknown kinds, out-of-range labels,
// mismatched spaces. Maps to CLI exit code 2.
struct validation_error : error {
    explicit validation_error(const std::string& msg) : error(msg) {}
};

// A configured resource cap was exceeded (group closure order, term
// enumeration count, iteration depth). Maps to CLI exit code 3.
struct cap_error : error {
    explicit cap_error(const std::string& msg) : error(msg) {}
};

} // namespace catarch
