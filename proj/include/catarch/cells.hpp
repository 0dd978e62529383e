//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <vector>

#include "catarch/para.hpp"

namespace catarch {

enum class CellKind { FoldingRNN, UnfoldingRNN, RecursiveNN, Mealy, Moore };

// Cells are affine maps plus a chosen nonlinearity. A map out of a sum is a
// tuple of maps, so constructor arms and tuple components appear as separate
// data and output ports on one ParaMap:
//
//   FoldingRNN    data [a, s]     out [init, step]   (init ignores the data)
//   UnfoldingRNN  data [s]        out [o, next]
//   RecursiveNN   data [a, l, r]  out [leaf, node]
//   Mealy         data [s, i]     out [o, next]
//   Moore         data [s, i]     out [o, next]      (o reads s only)
struct CellSpec {
    CellKind kind = CellKind::FoldingRNN;
    int a = 0; // input feature dim
    int s = 0; // state dim
    int o = 0; // output dim
    int i = 0; // input dim (machines)
    Nonlin fn = Nonlin::Tanh;
    // FoldingRNN: the initial state is a learned parameter by default; this
    // switches it to a constant zero vector
    bool zero_s0 = false;
};

struct Cell {
    CellSpec spec;
    ParaMap map;
};

Cell make_cell(const CellSpec& spec);

// uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)) per field, where fan_in is a
// matrix field's input dim and a vector field's length; bit-deterministic
// across platforms for a given seed
std::vector<double> init_cell_params(const Cell& cell, std::uint64_t seed);

// A Moore cell already has the Mealy port layout with an output head that
// ignores i, so the lift is a retag.
Cell moore_as_mealy(const Cell& moore);

} // namespace catarch
