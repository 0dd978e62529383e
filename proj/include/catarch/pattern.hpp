//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace catarch {

// A weight-tying scheme for a rows x cols matrix: entries with the same
// class index always hold the same value. Class -1 marks entries forced to
// zero (possible only for non-permutation inputs). Class indices are
// assigned in row-major first-encounter order, so equal partitions compare
// equal as matrices.
struct WeightSharingPattern {
    int rows = 0, cols = 0;
    std::vector<std::vector<int>> class_of;
    int num_classes = 0; // distinct non-zero classes
    int dimension = 0;   // dimension of the solution space it came from

    bool operator==(const WeightSharingPattern& o) const {
        return rows == o.rows && cols == o.cols && class_of == o.class_of;
    }
    bool operator!=(const WeightSharingPattern& o) const {
        return !(*this == o);
    }

    nlohmann::json to_json() const;
    static WeightSharingPattern from_json(const nlohmann::json& j);

    // Index grid, one token per entry ('.' for forced zeros), suitable for
    // terminal display. With color=true each class gets an ANSI color.
    std::string render_ascii(bool color = false) const;
};

// Canonicalize a partition matrix into first-encounter numbering.
WeightSharingPattern pattern_from_classes(std::vector<std::vector<int>> raw);

} // namespace catarch
