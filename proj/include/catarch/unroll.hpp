//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>

#include <json.hpp>

#include "catarch/cells.hpp"
#include "catarch/term.hpp"

namespace catarch {

// A cell compiled against a fixed structure. Parameters are tied: the graph
// holds one Param node per field, concatenated onto a single wire that fans
// out through one Copy node to every cell instance (instances <= 1 need no
// Copy), and each instance splits the wire back into fields. Arms an
// instance does not use are left dangling.
struct UnrolledNet {
    Graph graph;
    ParamStore store;         // zero values, manifest = the cell's fields
    nlohmann::json structure; // what the net was unrolled over
    int instances = 0;        // cell applications in the graph
};

struct TieCensus {
    int param_nodes = 0;
    int param_copies = 0; // Copy nodes fed by a parameter wire
    int copy_fanout = 0;  // fan-out of that Copy, 0 when absent
    int instances = 0;
};

TieCensus tie_census(const UnrolledNet& net);

// f(Nil) = init(p), f(Cons(a, as)) = step(p, a, f(as)). Graph inputs are the
// feature vectors in term order; output is the final state.
UnrolledNet unroll_fold(const Cell& cell, const Term& term);

// Output k = o(p, next^k(p, x)) for k in [0, steps). Graph input is the
// initial state; `steps` outputs.
UnrolledNet unroll_stream(const Cell& cell, int steps);

// f(Leaf(a)) = leaf(p, a), f(Node(l, r)) = node(p, f(l), f(r)). Graph inputs
// are the leaf features in left-to-right order; output is the root state.
UnrolledNet unroll_tree(const Cell& cell, const Term& tree);

// (o_k, s_{k+1}) = cell(p, s_k, i_k). Graph inputs: initial state, then the
// k input vectors; outputs: o_0..o_{k-1}, final state. Length 0 returns the
// initial state only.
UnrolledNet unroll_mealy(const Cell& cell, int len);

// o_k = o(p, s_k) for k in [0, len], s_{k+1} = next(p, s_k, i_k). Graph
// inputs: initial state, then the len input vectors; outputs o_0..o_len.
UnrolledNet unroll_moore(const Cell& cell, int len);

struct SquareReport {
    bool pass = false;
    double tol = 0;
    double max_abs_residual = 0;
    int trials = 0;

    nlohmann::json to_json() const;
};

// Verifies the defining homomorphism square of the cell's kind on random
// parameters and data: the unrolled net against one cell application on top
// of the shorter unrolling (folds/streams/trees), or against stepwise
// iteration (machines). With integer_values the parameters and data are
// drawn from a small integer lattice, so with the identity nonlinearity
// every intermediate is exactly representable and the residual must be 0
// regardless of evaluation order.
SquareReport check_square(const Cell& cell, int trials, double tol,
                          std::uint64_t seed = 1, bool integer_values = false);

} // namespace catarch
