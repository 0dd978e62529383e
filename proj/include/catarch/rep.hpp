//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <vector>

#include "catarch/exact.hpp"
#include "catarch/group.hpp"

namespace catarch {

// A linear action on Q^dim given by one matrix per group generator.
// Permutation representations keep their index permutations (the orbit
// oracle is restricted to those); general rational matrices are accepted
// but live outside the oracle.
class LinearRep {
  public:
    static LinearRep perm_rep(int dim, std::vector<Perm> gen_perms);
    static LinearRep mat_rep(int dim, std::vector<RatMat> gen_mats);

    int dim() const { return dim_; }
    bool is_perm() const { return is_perm_; }
    std::size_t num_gens() const;
    // coordinate permutation of generator k (perm reps only)
    const Perm& gen_perm(std::size_t k) const;
    // matrix of generator k: P(sigma)[i][j] = 1 iff i == sigma(j)
    RatMat gen_mat(std::size_t k) const;

  private:
    int dim_ = 0;
    bool is_perm_ = true;
    std::vector<Perm> gen_perms_;
    std::vector<RatMat> gen_mats_;
};

// rho(g) permutes coordinates the way g permutes points:
// (rho(g) x)(i) = x(g^-1 i).
LinearRep rep_vector(const GroupAction& g);

// Action on matrix entries, (i,j) -> (g i, g j), vectorized row-major over
// degree^2 coordinates; the conjugation X -> P(g) X P(g)^T in matrix form.
LinearRep rep_entries(const GroupAction& g);

// Identity action with one generator per generator of the paired rep.
LinearRep rep_trivial(int dim, std::size_t num_gens);

// Block-diagonal combination; both must have the same generator count.
LinearRep rep_direct_sum(const LinearRep& a, const LinearRep& b);

// Extend the generator assignment along the whole group word by word,
// checking consistency (every product of assigned elements must agree with
// the assignment). Returns one matrix per closure element of `g`, in
// closure order. Throws validation_error when the generator matrices do not
// define a representation of g.
std::vector<RatMat> rep_closure_matrices(const LinearRep& rep,
                                         const GroupAction& g);

} // namespace catarch
