//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/unroll.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "catarch/errors.hpp"

namespace catarch {

namespace {

// Shared parameter plumbing: Param taps, one concatenated wire, one Copy
// fan-out, per-instance Splits back into fields.
std::vector<std::vector<PortRef>> plumb_params(Graph& g,
                                               const ParamShape& param,
                                               int instances) {
    std::vector<PortRef> fieldports;
    for (const auto& f : param.fields)
        fieldports.push_back({g.add_param(f.name, f.name, f.numel()), 0});
    PortRef whole = fieldports.size() == 1
                        ? fieldports[0]
                        : PortRef{g.add_concat("p", fieldports), 0};
    std::vector<std::vector<PortRef>> taps;
    if (instances == 0) return taps;

    std::vector<PortRef> per_inst;
    if (instances == 1) {
        per_inst = {whole};
    } else {
        int c = g.add_copy("p_ties", whole, instances);
        for (int k = 0; k < instances; ++k) per_inst.push_back({c, k});
    }
    std::vector<int> sizes;
    for (const auto& f : param.fields) sizes.push_back(f.numel());
    for (int k = 0; k < instances; ++k) {
        if (sizes.size() == 1) {
            taps.push_back({per_inst[k]});
        } else {
            int sp = g.add_split("p" + std::to_string(k) + "/fields",
                                 per_inst[k], sizes);
            std::vector<PortRef> ports;
            for (std::size_t j = 0; j < sizes.size(); ++j)
                ports.push_back({sp, static_cast<int>(j)});
            taps.push_back(std::move(ports));
        }
    }
    return taps;
}

std::vector<PortRef> with_data(const std::vector<PortRef>& tap,
                               std::initializer_list<PortRef> data) {
    std::vector<PortRef> binds = tap;
    for (auto p : data) binds.push_back(p);
    return binds;
}

void need_kind(const Cell& cell, CellKind kind, const char* what) {
    if (cell.spec.kind != kind)
        throw validation_error(std::string("cell kind mismatch: ") + what);
}

bool is_list_shape(const Functor& f) {
    return f.kind() == FunctorKind::Sum &&
           f.left().kind() == FunctorKind::Const &&
           f.right().kind() == FunctorKind::Prod &&
           f.right().left().kind() == FunctorKind::Const &&
           f.right().right().kind() == FunctorKind::Id;
}

bool is_tree_shape(const Functor& f) {
    return f.kind() == FunctorKind::Sum &&
           f.left().kind() == FunctorKind::Const &&
           f.right().kind() == FunctorKind::Prod &&
           f.right().left().kind() == FunctorKind::Id &&
           f.right().right().kind() == FunctorKind::Id;
}

// lazily shared zero-vector constants
struct Zeros {
    Graph* g;
    int a = -1, s = -1, i = -1;
    PortRef of(int& slot, const char* name, int width) {
        if (slot < 0)
            slot = g->add_const(name, std::vector<double>(width, 0.0));
        return {slot, 0};
    }
};

double rand_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> rand_values(std::mt19937_64& rng, int n) {
    std::vector<double> v(n);
    for (double& x : v) x = 2.0 * rand_unit(rng) - 1.0;
    return v;
}

} // namespace

TieCensus tie_census(const UnrolledNet& net) {
    TieCensus c;
    c.instances = net.instances;
    const auto& nodes = net.graph.nodes();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (nodes[k].kind == NodeKind::Param) ++c.param_nodes;
        if (nodes[k].kind == NodeKind::Copy &&
            net.graph.param_wire(nodes[k].inputs[0])) {
            ++c.param_copies;
            c.copy_fanout = nodes[k].fanout;
        }
    }
    return c;
}

UnrolledNet unroll_fold(const Cell& cell, const Term& term) {
    need_kind(cell, CellKind::FoldingRNN, "unroll_fold needs a FoldingRNN");
    if (!term.valid() || !is_list_shape(term.shape()))
        throw validation_error("unroll_fold needs a list term");
    std::vector<int> labels = list_labels(term);
    int len = static_cast<int>(labels.size());
    int instances = len + 1;

    Graph g;
    auto taps = plumb_params(g, cell.map.param, instances);
    std::vector<int> feats;
    for (int k = 0; k < len; ++k)
        feats.push_back(g.add_input("a" + std::to_string(k), cell.spec.a));

    Zeros z{&g};
    int at = 0;
    PortRef cur =
        g.splice(cell.map.body,
                 with_data(taps[at], {z.of(z.a, "zero_a", cell.spec.a),
                                      z.of(z.s, "zero_s", cell.spec.s)}),
                 "nil/")[0];
    ++at;
    for (int k = len - 1; k >= 0; --k, ++at)
        cur = g.splice(cell.map.body,
                       with_data(taps[at], {{feats[k], 0}, cur}),
                       "step" + std::to_string(k) + "/")[1];
    g.mark_output(cur);

    UnrolledNet net{std::move(g), ParamStore(cell.map.param.fields),
                    nlohmann::json{{"kind", "fold"},
                                   {"length", len},
                                   {"term", term.to_json()}},
                    instances};
    return net;
}

UnrolledNet unroll_stream(const Cell& cell, int steps) {
    need_kind(cell, CellKind::UnfoldingRNN,
              "unroll_stream needs an UnfoldingRNN");
    if (steps < 0) throw validation_error("steps must be >= 0");

    Graph g;
    auto taps = plumb_params(g, cell.map.param, steps);
    PortRef cur = {g.add_input("x", cell.spec.s), 0};
    for (int k = 0; k < steps; ++k) {
        auto outs = g.splice(cell.map.body, with_data(taps[k], {cur}),
                             "step" + std::to_string(k) + "/");
        g.mark_output(outs[0]);
        cur = outs[1];
    }
    UnrolledNet net{std::move(g), ParamStore(cell.map.param.fields),
                    nlohmann::json{{"kind", "stream"}, {"steps", steps}},
                    steps};
    return net;
}

namespace {

int count_leaves(const Term& t) {
    const auto& lay = t.layer();
    if (lay.tag() == VTag::Inl) return 1;
    if (lay.tag() == VTag::Inr && lay.child(0).tag() == VTag::Pair)
        return count_leaves(lay.child(0).child(0).slot_value()) +
               count_leaves(lay.child(0).child(1).slot_value());
    throw validation_error("unroll_tree needs a binary tree term");
}

struct TreeBuild {
    Graph* g;
    const Cell* cell;
    const std::vector<std::vector<PortRef>>* taps;
    const std::vector<int>* leaf_inputs;
    Zeros* z;
    int inst = 0;
    int leaf = 0;

    PortRef walk(const Term& t) {
        const auto& lay = t.layer();
        if (lay.tag() == VTag::Inl) {
            PortRef a = {(*leaf_inputs)[leaf++], 0};
            int id = inst++;
            auto outs = g->splice(
                cell->map.body,
                with_data((*taps)[id],
                          {a, z->of(z->s, "zero_s", cell->spec.s),
                           z->of(z->s, "zero_s", cell->spec.s)}),
                "n" + std::to_string(id) + "/");
            return outs[0];
        }
        PortRef l = walk(lay.child(0).child(0).slot_value());
        PortRef r = walk(lay.child(0).child(1).slot_value());
        int id = inst++;
        auto outs = g->splice(
            cell->map.body,
            with_data((*taps)[id],
                      {z->of(z->a, "zero_a", cell->spec.a), l, r}),
            "n" + std::to_string(id) + "/");
        return outs[1];
    }
};

} // namespace

UnrolledNet unroll_tree(const Cell& cell, const Term& tree) {
    need_kind(cell, CellKind::RecursiveNN, "unroll_tree needs a RecursiveNN");
    if (!tree.valid() || !is_tree_shape(tree.shape()))
        throw validation_error("unroll_tree needs a binary tree term");
    int leaves = count_leaves(tree);
    int instances = static_cast<int>(tree.size());

    Graph g;
    auto taps = plumb_params(g, cell.map.param, instances);
    std::vector<int> leaf_inputs;
    for (int k = 0; k < leaves; ++k)
        leaf_inputs.push_back(
            g.add_input("leaf" + std::to_string(k), cell.spec.a));

    Zeros z{&g};
    TreeBuild tb{&g, &cell, &taps, &leaf_inputs, &z};
    g.mark_output(tb.walk(tree));

    UnrolledNet net{std::move(g), ParamStore(cell.map.param.fields),
                    nlohmann::json{{"kind", "tree"},
                                   {"leaves", leaves},
                                   {"term", tree.to_json()}},
                    instances};
    return net;
}

UnrolledNet unroll_mealy(const Cell& cell, int len) {
    need_kind(cell, CellKind::Mealy, "unroll_mealy needs a Mealy cell");
    if (len < 0) throw validation_error("sequence length must be >= 0");

    Graph g;
    auto taps = plumb_params(g, cell.map.param, len);
    PortRef state = {g.add_input("s", cell.spec.s), 0};
    std::vector<int> ins;
    for (int k = 0; k < len; ++k)
        ins.push_back(g.add_input("i" + std::to_string(k), cell.spec.i));

    std::vector<PortRef> outs;
    for (int k = 0; k < len; ++k) {
        auto r = g.splice(cell.map.body,
                          with_data(taps[k], {state, {ins[k], 0}}),
                          "step" + std::to_string(k) + "/");
        outs.push_back(r[0]);
        state = r[1];
    }
    for (auto p : outs) g.mark_output(p);
    g.mark_output(state);

    UnrolledNet net{std::move(g), ParamStore(cell.map.param.fields),
                    nlohmann::json{{"kind", "mealy"}, {"length", len}}, len};
    return net;
}

UnrolledNet unroll_moore(const Cell& cell, int len) {
    need_kind(cell, CellKind::Moore, "unroll_moore needs a Moore cell");
    if (len < 0) throw validation_error("sequence length must be >= 0");
    int instances = len + 1;

    Graph g;
    auto taps = plumb_params(g, cell.map.param, instances);
    PortRef state = {g.add_input("s", cell.spec.s), 0};
    std::vector<int> ins;
    for (int k = 0; k < len; ++k)
        ins.push_back(g.add_input("i" + std::to_string(k), cell.spec.i));

    Zeros z{&g};
    std::vector<PortRef> outs;
    for (int k = 0; k < len; ++k) {
        auto r = g.splice(cell.map.body,
                          with_data(taps[k], {state, {ins[k], 0}}),
                          "step" + std::to_string(k) + "/");
        outs.push_back(r[0]);
        state = r[1];
    }
    // final output reads the last state; its next-arm dangles
    auto r = g.splice(cell.map.body,
                      with_data(taps[len],
                                {state, z.of(z.i, "zero_i", cell.spec.i)}),
                      "emit/");
    outs.push_back(r[0]);
    for (auto p : outs) g.mark_output(p);

    UnrolledNet net{std::move(g), ParamStore(cell.map.param.fields),
                    nlohmann::json{{"kind", "moore"}, {"length", len}},
                    instances};
    return net;
}

nlohmann::json SquareReport::to_json() const {
    return {{"pass", pass},
            {"tol", tol},
            {"max_abs_residual", max_abs_residual},
            {"trials", trials}};
}

SquareReport check_square(const Cell& cell, int trials, double tol,
                          std::uint64_t seed, bool integer_values) {
    if (trials <= 0) throw validation_error("trials must be positive");
    std::mt19937_64 rng(seed);
    double worst = 0;
    auto track = [&](const std::vector<double>& a,
                     const std::vector<double>& b) {
        for (std::size_t k = 0; k < a.size(); ++k)
            worst = std::max(worst, std::abs(a[k] - b[k]));
    };
    auto draw = [&](int n) {
        if (!integer_values) return rand_values(rng, n);
        std::vector<double> v(static_cast<std::size_t>(n));
        for (double& x : v)
            x = static_cast<double>(static_cast<int>(rng() % 7)) - 3.0;
        return v;
    };
    int ptotal = cell.map.param.total();

    switch (cell.spec.kind) {
    case CellKind::FoldingRNN: {
        Functor shape = Functor::list_of({"a"});
        std::vector<UnrolledNet> nets;
        for (int len = 0; len <= 4; ++len)
            nets.push_back(
                unroll_fold(cell, make_list(shape, std::vector<int>(len, 0))));
        for (int t = 0; t < trials; ++t) {
            int len = t % 4; // tail length
            auto p = draw(ptotal);
            std::vector<Tensor> full;
            for (int k = 0; k <= len; ++k)
                full.push_back(Tensor::vec(draw(cell.spec.a)));
            std::vector<Tensor> tail(full.begin() + 1, full.end());
            nets[len].store.set_values(p);
            nets[len + 1].store.set_values(p);
            auto y_tail = forward(nets[len].graph, nets[len].store, tail);
            auto lhs = forward(nets[len + 1].graph, nets[len + 1].store, full);
            auto rhs = para_forward(cell.map, p, {full[0], y_tail[0]});
            track(lhs[0].data, rhs[1].data);
        }
        break;
    }
    case CellKind::UnfoldingRNN: {
        UnrolledNet four = unroll_stream(cell, 4);
        UnrolledNet three = unroll_stream(cell, 3);
        for (int t = 0; t < trials; ++t) {
            auto p = draw(ptotal);
            Tensor x = Tensor::vec(draw(cell.spec.s));
            four.store.set_values(p);
            three.store.set_values(p);
            auto lhs = forward(four.graph, four.store, {x});
            auto head = para_forward(cell.map, p, {x});
            auto rest = forward(three.graph, three.store, {head[1]});
            track(lhs[0].data, head[0].data);
            for (int k = 0; k < 3; ++k)
                track(lhs[k + 1].data, rest[k].data);
        }
        break;
    }
    case CellKind::RecursiveNN: {
        Functor shape = Functor::tree_of({"a"});
        Term leaf = make_leaf(shape, 0);
        std::vector<Term> trees = {
            leaf, make_node(shape, leaf, leaf),
            make_node(shape, make_node(shape, leaf, leaf), leaf)};
        std::vector<UnrolledNet> nets;
        for (const auto& tr : trees) nets.push_back(unroll_tree(cell, tr));
        Tensor zs = Tensor::zeros(cell.spec.s);
        Tensor za = Tensor::zeros(cell.spec.a);
        for (int t = 0; t < trials; ++t) {
            std::size_t pick = static_cast<std::size_t>(t) % trees.size();
            auto p = draw(ptotal);
            int nleaves = count_leaves(trees[pick]);
            std::vector<Tensor> feats;
            for (int k = 0; k < nleaves; ++k)
                feats.push_back(Tensor::vec(draw(cell.spec.a)));
            nets[pick].store.set_values(p);
            auto lhs = forward(nets[pick].graph, nets[pick].store, feats);
            // direct recursion oracle
            std::size_t leaf_at = 0;
            std::function<Tensor(const Term&)> rec =
                [&](const Term& tr) -> Tensor {
                const auto& lay = tr.layer();
                if (lay.tag() == VTag::Inl)
                    return para_forward(cell.map, p,
                                        {feats[leaf_at++], zs, zs})[0];
                Tensor l = rec(lay.child(0).child(0).slot_value());
                Tensor r = rec(lay.child(0).child(1).slot_value());
                return para_forward(cell.map, p, {za, l, r})[1];
            };
            track(lhs[0].data, rec(trees[pick]).data);
        }
        break;
    }
    case CellKind::Mealy: {
        UnrolledNet net = unroll_mealy(cell, 4);
        for (int t = 0; t < trials; ++t) {
            auto p = draw(ptotal);
            std::vector<Tensor> args = {
                Tensor::vec(draw(cell.spec.s))};
            for (int k = 0; k < 4; ++k)
                args.push_back(Tensor::vec(draw(cell.spec.i)));
            net.store.set_values(p);
            auto lhs = forward(net.graph, net.store, args);
            Tensor s = args[0];
            for (int k = 0; k < 4; ++k) {
                auto r = para_forward(cell.map, p, {s, args[k + 1]});
                track(lhs[k].data, r[0].data);
                s = r[1];
            }
            track(lhs[4].data, s.data);
        }
        break;
    }
    case CellKind::Moore: {
        UnrolledNet net = unroll_moore(cell, 3);
        Tensor zi = Tensor::zeros(cell.spec.i);
        for (int t = 0; t < trials; ++t) {
            auto p = draw(ptotal);
            std::vector<Tensor> args = {
                Tensor::vec(draw(cell.spec.s))};
            for (int k = 0; k < 3; ++k)
                args.push_back(Tensor::vec(draw(cell.spec.i)));
            net.store.set_values(p);
            auto lhs = forward(net.graph, net.store, args);
            Tensor s = args[0];
            for (int k = 0; k <= 3; ++k) {
                auto r = para_forward(cell.map, p,
                                      {s, k < 3 ? args[k + 1] : zi});
                track(lhs[k].data, r[0].data);
                s = r[1];
            }
        }
        break;
    }
    }
    SquareReport rep;
    rep.tol = tol;
    rep.trials = trials;
    rep.max_abs_residual = worst;
    rep.pass = worst <= tol;
    return rep;
}

} // namespace catarch
