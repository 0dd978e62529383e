//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstddef>
#include <vector>

#include "catarch/term.hpp"

namespace catarch {

struct EnumerateOptions {
    std::size_t cap = 500000; // guard against combinatorial explosion
};

// All layer values of `shape` whose Id positions draw subterms from
// `pool_by_size` (index = term size) with chosen subterm sizes summing to
// exactly `budget`. Order: sum arms left to right, labels ascending, budget
// splits ascending, children in pool order.
std::vector<FVal<Term, int>> enumerate_layers(
    const Functor& shape, int budget,
    const std::vector<std::vector<Term>>& pool_by_size);

// Every term of the shape with size (constructor count) <= max_size,
// ordered by (size, arm index, labels, children). Throws cap_error when the
// count would exceed opts.cap.
std::vector<Term> enumerate_terms(const Functor& shape, int max_size,
                                  EnumerateOptions opts = {});

// Terms grouped by exact size; index s holds the terms of size s.
std::vector<std::vector<Term>> enumerate_terms_by_size(
    const Functor& shape, int max_size, EnumerateOptions opts = {});

} // namespace catarch
