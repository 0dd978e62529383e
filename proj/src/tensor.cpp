//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/tensor.hpp"

namespace catarch {

int shape_numel(const std::vector<int>& shape) {
    long long n = 1;
    for (int d : shape) {
        if (d <= 0) throw validation_error("tensor dims must be positive");
        n *= d;
        if (n > (1 << 28)) throw validation_error("tensor too large");
    }
    return static_cast<int>(n);
}

Tensor Tensor::vec(std::vector<double> v) {
    if (v.empty()) throw validation_error("empty tensor");
    Tensor t;
    t.shape = {static_cast<int>(v.size())};
    t.data = std::move(v);
    return t;
}

Tensor Tensor::zeros(int n) {
    if (n <= 0) throw validation_error("tensor dims must be positive");
    Tensor t;
    t.shape = {n};
    t.data.assign(static_cast<std::size_t>(n), 0.0);
    return t;
}

} // namespace catarch
