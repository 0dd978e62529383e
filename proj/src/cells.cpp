//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/cells.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "catarch/errors.hpp"

namespace catarch {

namespace {

void need(bool ok, const char* msg) {
    if (!ok) throw validation_error(msg);
}

struct BodyBuilder {
    Graph g;
    std::vector<ParamField> fields;
    std::vector<int> param_nodes;
    Nonlin fn;

    int param(const std::string& name, std::vector<int> shape) {
        int id = g.add_input(name, shape_numel(shape));
        fields.push_back({name, std::move(shape)});
        param_nodes.push_back(id);
        return id;
    }
    int data(const std::string& name, int width) {
        return g.add_input(name, width);
    }
    // y = act(W x + b)
    int affine(const std::string& tag, PortRef x, int in, int out, int w,
               int b) {
        int lin = g.add_linear(tag + "/lin", x, {w, 0}, in, out);
        int add = g.add_bias(tag + "/add", {lin, 0}, {b, 0});
        if (fn == Nonlin::Identity) return add;
        return g.add_pointwise(tag + "/act", {add, 0}, fn);
    }
};

} // namespace

Cell make_cell(const CellSpec& spec) {
    BodyBuilder b;
    b.fn = spec.fn;
    std::vector<int> in_widths;
    std::vector<int> out_widths;

    switch (spec.kind) {
    case CellKind::FoldingRNN: {
        need(spec.a > 0 && spec.s > 0, "FoldingRNN needs positive a and s");
        int wa = b.param("w_a", {spec.s, spec.a});
        int ws = b.param("w_s", {spec.s, spec.s});
        int bb = b.param("b", {spec.s});
        int s0 = spec.zero_s0 ? -1 : b.param("s0", {spec.s});
        int a = b.data("a", spec.a);
        int s = b.data("s", spec.s);
        PortRef init;
        if (spec.zero_s0)
            init = {b.g.add_const("zero_s0",
                                  std::vector<double>(spec.s, 0.0)),
                    0};
        else
            init = {s0, 0};
        int la = b.g.add_linear("step/la", {a, 0}, {wa, 0}, spec.a, spec.s);
        int ls = b.g.add_linear("step/ls", {s, 0}, {ws, 0}, spec.s, spec.s);
        int sum = b.g.add_sum("step/sum", {{la, 0}, {ls, 0}});
        int add = b.g.add_bias("step/add", {sum, 0}, {bb, 0});
        PortRef step = {add, 0};
        if (spec.fn != Nonlin::Identity)
            step = {b.g.add_pointwise("step/act", step, spec.fn), 0};
        b.g.mark_output(init);
        b.g.mark_output(step);
        in_widths = {spec.a, spec.s};
        out_widths = {spec.s, spec.s};
        break;
    }
    case CellKind::UnfoldingRNN: {
        need(spec.s > 0 && spec.o > 0, "UnfoldingRNN needs positive s and o");
        int wo = b.param("w_o", {spec.o, spec.s});
        int bo = b.param("b_o", {spec.o});
        int wn = b.param("w_n", {spec.s, spec.s});
        int bn = b.param("b_n", {spec.s});
        int s = b.data("s", spec.s);
        b.g.mark_output({b.affine("out", {s, 0}, spec.s, spec.o, wo, bo), 0});
        b.g.mark_output({b.affine("next", {s, 0}, spec.s, spec.s, wn, bn), 0});
        in_widths = {spec.s};
        out_widths = {spec.o, spec.s};
        break;
    }
    case CellKind::RecursiveNN: {
        need(spec.a > 0 && spec.s > 0, "RecursiveNN needs positive a and s");
        int wl = b.param("w_leaf", {spec.s, spec.a});
        int bl = b.param("b_leaf", {spec.s});
        int wn = b.param("w_node", {spec.s, 2 * spec.s});
        int bn = b.param("b_node", {spec.s});
        int a = b.data("a", spec.a);
        int l = b.data("l", spec.s);
        int r = b.data("r", spec.s);
        b.g.mark_output({b.affine("leaf", {a, 0}, spec.a, spec.s, wl, bl), 0});
        int cat = b.g.add_concat("node/cat", {{l, 0}, {r, 0}});
        b.g.mark_output(
            {b.affine("node", {cat, 0}, 2 * spec.s, spec.s, wn, bn), 0});
        in_widths = {spec.a, spec.s, spec.s};
        out_widths = {spec.s, spec.s};
        break;
    }
    case CellKind::Mealy: {
        need(spec.s > 0 && spec.i > 0 && spec.o > 0,
             "Mealy needs positive s, i and o");
        int wo = b.param("w_o", {spec.o, spec.s + spec.i});
        int bo = b.param("b_o", {spec.o});
        int ws = b.param("w_s", {spec.s, spec.s + spec.i});
        int bs = b.param("b_s", {spec.s});
        int s = b.data("s", spec.s);
        int i = b.data("i", spec.i);
        int cat = b.g.add_concat("cat", {{s, 0}, {i, 0}});
        b.g.mark_output(
            {b.affine("out", {cat, 0}, spec.s + spec.i, spec.o, wo, bo), 0});
        b.g.mark_output(
            {b.affine("next", {cat, 0}, spec.s + spec.i, spec.s, ws, bs), 0});
        in_widths = {spec.s, spec.i};
        out_widths = {spec.o, spec.s};
        break;
    }
    case CellKind::Moore: {
        need(spec.s > 0 && spec.i > 0 && spec.o > 0,
             "Moore needs positive s, i and o");
        int wo = b.param("w_o", {spec.o, spec.s});
        int bo = b.param("b_o", {spec.o});
        int ws = b.param("w_s", {spec.s, spec.s + spec.i});
        int bs = b.param("b_s", {spec.s});
        int s = b.data("s", spec.s);
        int i = b.data("i", spec.i);
        b.g.mark_output({b.affine("out", {s, 0}, spec.s, spec.o, wo, bo), 0});
        int cat = b.g.add_concat("cat", {{s, 0}, {i, 0}});
        b.g.mark_output(
            {b.affine("next", {cat, 0}, spec.s + spec.i, spec.s, ws, bs), 0});
        in_widths = {spec.s, spec.i};
        out_widths = {spec.o, spec.s};
        break;
    }
    }
    ParaMap map = para_from_graph(ParamShape::of(b.fields),
                                  std::move(in_widths), std::move(out_widths),
                                  std::move(b.g));
    return Cell{spec, std::move(map)};
}

std::vector<double> init_cell_params(const Cell& cell, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(cell.map.param.total()));
    for (const auto& f : cell.map.param.fields) {
        int fan_in = f.shape.size() == 2 ? f.shape[1] : f.shape[0];
        double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (int k = 0; k < f.numel(); ++k) {
            double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            out.push_back((2.0 * u - 1.0) * bound);
        }
    }
    return out;
}

Cell moore_as_mealy(const Cell& moore) {
    if (moore.spec.kind != CellKind::Moore)
        throw validation_error("moore_as_mealy needs a Moore cell");
    Cell c = moore;
    c.spec.kind = CellKind::Mealy;
    return c;
}

} // namespace catarch
