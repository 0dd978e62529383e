//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include "catarch/pattern.hpp"
#include "catarch/rep.hpp"

namespace catarch {

// Counting oracle for the tying scheme: partitions matrix entries (i,j)
// into orbits of the simultaneous index action
// (i,j) -> (rho_out(g) i, rho_in(g) j). Deliberately restricted to
// permutation representations and implemented by plain orbit traversal; it
// shares nothing with the linear solver. The pair closure is computed under
// `cap` to honor the group-size budget.
WeightSharingPattern orbit_pattern(const LinearRep& rep_in,
                                   const LinearRep& rep_out,
                                   std::size_t cap = kDefaultGroupCap);

} // namespace catarch
