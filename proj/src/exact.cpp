//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/exact.hpp"

#include "catarch/errors.hpp"

namespace catarch {

RatMat rat_identity(int n) {
    RatMat m = rat_zero(n, n);
    for (int i = 0; i < n; ++i)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return m;
}

RatMat rat_zero(int rows, int cols) {
    return RatMat(static_cast<std::size_t>(rows),
                  std::vector<Rat>(static_cast<std::size_t>(cols), Rat(0)));
}

RatMat rat_mul(const RatMat& a, const RatMat& b) {
    if (a.empty() || b.empty() || a[0].size() != b.size())
        throw validation_error("matrix product: dimension mismatch");
    RatMat r = rat_zero(static_cast<int>(a.size()),
                        static_cast<int>(b[0].size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j) {
                if (b[k][j] == 0) continue;
                r[i][j] += a[i][k] * b[k][j];
            }
        }
    return r;
}

bool rat_eq(const RatMat& a, const RatMat& b) { return a == b; }

bool rat_is_zero(const RatMat& a) {
    for (const auto& row : a)
        for (const auto& v : row)
            if (v != 0) return false;
    return true;
}

std::vector<int> rref(RatMat& m) {
    std::vector<int> pivot_cols;
    if (m.empty()) return pivot_cols;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        const Rat inv = m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rat f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_cols.push_back(static_cast<int>(c));
        ++r;
    }
    return pivot_cols;
}

std::vector<std::vector<Rat>> nullspace(RatMat m, int unknowns) {
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != unknowns)
            throw validation_error("nullspace: row width mismatch");
    auto pivots = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(unknowns), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<Rat>> basis;
    for (int f = 0; f < unknowns; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<Rat> v(static_cast<std::size_t>(unknowns), Rat(0));
        v[static_cast<std::size_t>(f)] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] =
                -m[r][static_cast<std::size_t>(f)];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace catarch
