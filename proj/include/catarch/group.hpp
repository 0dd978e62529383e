//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "catarch/errors.hpp"

namespace catarch {

// A permutation of {0..n-1} as its image table.
using Perm = std::vector<int>;

Perm perm_identity(int n);
bool perm_valid(const Perm& p);
// (a o b)(i) = a[b[i]]
Perm perm_compose(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& p);

inline constexpr std::size_t kDefaultGroupCap = 10080;

// A finite group acting on {0..degree-1}, presented by generator
// permutations. The closure is computed eagerly at construction (breadth
// first, deterministic order, identity first) and capped.
class GroupAction {
  public:
    static GroupAction make(int degree, std::vector<Perm> generators,
                            std::size_t cap = kDefaultGroupCap);

    int degree() const { return degree_; }
    const std::vector<Perm>& generators() const { return generators_; }
    const std::vector<Perm>& closure() const { return closure_; }
    std::size_t order() const { return closure_.size(); }

    nlohmann::json to_json() const;
    static GroupAction from_json(const nlohmann::json& j,
                                 std::size_t cap = kDefaultGroupCap);

  private:
    int degree_ = 0;
    std::vector<Perm> generators_;
    std::vector<Perm> closure_;
};

// Stock actions used by the derivations and the test sweep.
GroupAction trivial_group(int degree);
GroupAction cyclic_group(int n);          // rotation i -> i+1 mod n
GroupAction symmetric_group(int n);       // transposition (0 1) + n-cycle
GroupAction dihedral_group(int n);        // rotation + reflection, degree n
GroupAction klein_four_group();           // (01)(23), (02)(13) on 4 points

// The group acting on its own element list by left multiplication. Element
// order is the closure order of `g`; generators correspond to g's.
GroupAction regular_action(const GroupAction& g,
                           std::size_t cap = kDefaultGroupCap);

} // namespace catarch
