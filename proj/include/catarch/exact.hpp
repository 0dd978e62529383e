//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace catarch {

// Exact rational scalar; never leaves this form inside the solver.
using Rat = boost::multiprecision::cpp_rational;
using RatMat = std::vector<std::vector<Rat>>;

RatMat rat_identity(int n);
RatMat rat_zero(int rows, int cols);
RatMat rat_mul(const RatMat& a, const RatMat& b);
bool rat_eq(const RatMat& a, const RatMat& b);
bool rat_is_zero(const RatMat& a);

// In-place reduction to reduced row echelon form. Columns are processed left
// to right; the pivot is the first remaining row with a nonzero entry.
// Returns the pivot columns in order.
std::vector<int> rref(RatMat& m);

// Canonical nullspace basis of the homogeneous system m x = 0 with
// `unknowns` variables: one vector per free column (ascending), value 1 at
// its free column, the negated reduced-echelon coefficients at pivots.
std::vector<std::vector<Rat>> nullspace(RatMat m, int unknowns);

} // namespace catarch
