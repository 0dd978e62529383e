//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <vector>

#include "catarch/errors.hpp"

namespace catarch {

// product of dims; every dim must be positive
int shape_numel(const std::vector<int>& shape);

// Dense 64-bit float tensor. Wire values are rank-1; higher ranks appear
// only in parameter manifests (matrices stored row-major).
struct Tensor {
    std::vector<int> shape;
    std::vector<double> data;

    static Tensor vec(std::vector<double> v);
    static Tensor zeros(int n);

    int numel() const { return shape_numel(shape); }
    bool operator==(const Tensor&) const = default;
};

} // namespace catarch
