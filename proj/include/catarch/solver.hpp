//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <vector>

#include "catarch/pattern.hpp"
#include "catarch/rep.hpp"

namespace catarch {

inline constexpr int kDefaultDimCap = 64;

// A basis of the space of intertwiners {W : W rho_in(g) = rho_out(g) W}.
// Matrices are out_dim x in_dim, exact, in the canonical order produced by
// the reduced-echelon nullspace over row-major vectorized W.
struct EquivariantBasis {
    int rows = 0, cols = 0;
    std::vector<RatMat> mats;
    int dimension() const { return static_cast<int>(mats.size()); }
};

// Solve the intertwiner space for explicit constraint pairs
// (rho_in(g), rho_out(g)). Exposed so generator-only and full-closure
// solves can be compared.
EquivariantBasis solve_intertwiners(const std::vector<RatMat>& in_mats,
                                    const std::vector<RatMat>& out_mats,
                                    int in_dim, int out_dim);

// Basis of maps commuting with the two actions, solved from generators.
EquivariantBasis equivariance_basis(const LinearRep& rep_in,
                                    const LinearRep& rep_out,
                                    int dim_cap = kDefaultDimCap);

// Maps whose output ignores the action entirely: equivariance against the
// trivial action on out_dim coordinates.
EquivariantBasis invariance_basis(const LinearRep& rep_in, int out_dim,
                                  int dim_cap = kDefaultDimCap);

// Entries share a class iff their coefficient vectors across the basis are
// identical; all-zero entries get class -1. For permutation reps this
// reproduces the orbit partition and num_classes equals the dimension.
WeightSharingPattern pattern_of_basis(const EquivariantBasis& basis);

} // namespace catarch
