//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <string>
#include <vector>

#include "catarch/functor.hpp"
#include "catarch/fvalue.hpp"
#include "catarch/graph.hpp"

namespace catarch {

// Ordered list of named parameter tensor shapes; the monoidal product of
// parameter objects, unit = empty list. Names are display metadata: identity
// (equality, halves, monoid laws) lives on the shape sequence, and
// concatenation renames clashes deterministically so a store manifest can
// always be formed.
struct ParamShape {
    std::vector<ParamField> fields;

    static ParamShape unit() { return {}; }
    static ParamShape of(std::vector<ParamField> fields);

    int total() const;
    std::vector<std::vector<int>> shapes() const;
    bool operator==(const ParamShape& o) const {
        return shapes() == o.shapes();
    }
    // the two-identical-halves test behind weight tying
    bool splits_in_half() const;
    ParamShape first_half() const;
};

ParamShape param_concat(const ParamShape& a, const ParamShape& b);

// A parametric map (P, f): dense data ports in and out, plus parameter
// ports. The body is a graph whose Input nodes are the parameter fields (in
// order) followed by the data ports; it contains no Param nodes because
// parameters arrive on wires.
struct ParaMap {
    ParamShape param;
    std::vector<int> in_widths;
    std::vector<int> out_widths;
    Graph body;
};

// validates the port discipline described above
ParaMap para_from_graph(ParamShape param, std::vector<int> in_widths,
                        std::vector<int> out_widths, Graph body);

// plain maps are trivially parametric (unit parameter)
ParaMap para_embed(std::vector<int> in_widths, std::vector<int> out_widths,
                   Graph body);
ParaMap para_identity(int width);

std::vector<Tensor> para_forward(const ParaMap& f,
                                 const std::vector<double>& params,
                                 const std::vector<Tensor>& xs);

// (Q,g) after (P,f): parameter shape Q then P, bodies spliced in sequence
ParaMap para_compose(const ParaMap& g, const ParaMap& f);

// Rebuild the body against a real parameter store: one Param node per
// field, so the result can be differentiated and serialized on its own.
struct CompiledPara {
    Graph graph;
    ParamStore store; // zeros, manifest matches the param shape
};
CompiledPara para_compile(const ParaMap& f);

// A 2-cell: pure wiring (copy, delete, swap, fixed linear) from target
// parameters to source parameters. Applying it to (source, f) yields
// (target, f') with f'(p', x) = f(r(p'), x).
struct Reparam {
    ParamShape source;
    ParamShape target;
    Graph map; // Inputs: target fields; outputs: source fields
};

Reparam make_reparam(ParamShape source, ParamShape target, Graph map);
Reparam reparam_identity(const ParamShape& p);
// the copy map: source P (x) P, target P, every field duplicated
Reparam reparam_copy(const ParamShape& p);
// the delete map: source unit, target P (the parameter is dropped unused)
Reparam reparam_delete(const ParamShape& p);
// function P (x) Q -> Q (x) P
Reparam reparam_swap(const ParamShape& p, const ParamShape& q);
// function composition r . s (run s, then r); needs s.source == r.target
Reparam reparam_compose(const Reparam& r, const Reparam& s);
// parallel composition on concatenated shapes
Reparam reparam_tensor(const Reparam& a, const Reparam& b);

std::vector<double> reparam_eval(const Reparam& r,
                                 const std::vector<double>& target_values);

ParaMap reparam_apply(const Reparam& r, const ParaMap& f);

// precompose with the copy map; f's parameter must split into two
// identical halves
ParaMap weight_tie(const ParaMap& f);

struct TriangleReport {
    bool ok = false;
    double tol = 0;
    double max_abs_residual = 0;
    int samples = 0;
};

// Checks the 2-cell triangle f2(p', x) == f(r(p'), x) on random samples.
TriangleReport check_reparam_triangle(const Reparam& r, const ParaMap& f,
                                      const ParaMap& f2, int samples,
                                      double tol, std::uint64_t seed = 1);

// Functor-shaped values whose payloads are dense vectors.
using PVal = FVal<std::vector<double>, int>;

void validate_pval(const Functor& shape, const PVal& v, int payload_width);

// The lift of a strong functor to parametric maps: (P, f) becomes (P, f')
// on F-shaped values, f' = fmap(f) after the strength, so one parameter is
// pushed into every payload position. Kept as its own form because dense
// graphs cannot branch on constructor arms.
struct LiftedMap {
    Functor shape;
    ParaMap inner; // exactly one data port in and out
};

LiftedMap para_lift(const Functor& shape, const ParaMap& f);

PVal lifted_forward(const LiftedMap& lm, const std::vector<double>& params,
                    const PVal& x);

} // namespace catarch
