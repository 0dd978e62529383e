//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/para.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>

#include "catarch/errors.hpp"

namespace catarch {

namespace {

std::string fresh_name(const std::string& base,
                       std::set<std::string>& taken) {
    std::string cand = base;
    for (int k = 2; taken.count(cand); ++k)
        cand = base + "_" + std::to_string(k);
    taken.insert(cand);
    return cand;
}

void check_widths(const std::vector<int>& widths, const char* what) {
    for (int w : widths)
        if (w <= 0) throw validation_error(std::string(what) + " width must be positive");
}

// input nodes for a para body: parameter fields first, then data ports
std::vector<int> add_body_inputs(Graph& g, const ParamShape& param,
                                 const std::vector<int>& in_widths) {
    std::vector<int> ids;
    for (std::size_t i = 0; i < param.fields.size(); ++i)
        ids.push_back(g.add_input("p" + std::to_string(i),
                                  param.fields[i].numel()));
    for (std::size_t i = 0; i < in_widths.size(); ++i)
        ids.push_back(g.add_input("x" + std::to_string(i), in_widths[i]));
    return ids;
}

std::vector<PortRef> ports_of(const std::vector<int>& nodes, std::size_t from,
                              std::size_t count) {
    std::vector<PortRef> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back({nodes[from + i], 0});
    return out;
}

std::vector<Tensor> split_by_fields(const std::vector<ParamField>& fields,
                                    const std::vector<double>& flat,
                                    const char* what) {
    int total = 0;
    for (const auto& f : fields) total += f.numel();
    if (static_cast<int>(flat.size()) != total)
        throw validation_error(std::string(what) + ": expected " +
                               std::to_string(total) + " values, got " +
                               std::to_string(flat.size()));
    std::vector<Tensor> out;
    int at = 0;
    for (const auto& f : fields) {
        int n = f.numel();
        out.push_back(Tensor::vec(std::vector<double>(
            flat.begin() + at, flat.begin() + at + n)));
        at += n;
    }
    return out;
}

double rand_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> rand_values(std::mt19937_64& rng, int n) {
    std::vector<double> v(n);
    for (double& x : v) x = 2.0 * rand_unit(rng) - 1.0;
    return v;
}

} // namespace

ParamShape ParamShape::of(std::vector<ParamField> fields) {
    std::set<std::string> seen;
    for (const auto& f : fields) {
        if (f.name.empty())
            throw validation_error("parameter field name must be non-empty");
        if (!seen.insert(f.name).second)
            throw validation_error("duplicate parameter field name '" +
                                   f.name + "'");
        shape_numel(f.shape); // rejects non-positive dims
    }
    ParamShape p;
    p.fields = std::move(fields);
    return p;
}

int ParamShape::total() const {
    int n = 0;
    for (const auto& f : fields) n += f.numel();
    return n;
}

std::vector<std::vector<int>> ParamShape::shapes() const {
    std::vector<std::vector<int>> out;
    for (const auto& f : fields) out.push_back(f.shape);
    return out;
}

bool ParamShape::splits_in_half() const {
    if (fields.size() % 2 != 0) return false;
    std::size_t h = fields.size() / 2;
    for (std::size_t i = 0; i < h; ++i)
        if (fields[i].shape != fields[h + i].shape) return false;
    return true;
}

ParamShape ParamShape::first_half() const {
    if (!splits_in_half())
        throw validation_error("parameter does not split into identical halves");
    ParamShape p;
    p.fields.assign(fields.begin(),
                    fields.begin() + static_cast<long>(fields.size() / 2));
    return p;
}

ParamShape param_concat(const ParamShape& a, const ParamShape& b) {
    ParamShape out = a;
    std::set<std::string> taken;
    for (const auto& f : out.fields) taken.insert(f.name);
    for (const auto& f : b.fields)
        out.fields.push_back({fresh_name(f.name, taken), f.shape});
    return out;
}

ParaMap para_from_graph(ParamShape param, std::vector<int> in_widths,
                        std::vector<int> out_widths, Graph body) {
    check_widths(in_widths, "data port");
    check_widths(out_widths, "output port");
    for (const auto& n : body.nodes())
        if (n.kind == NodeKind::Param)
            throw validation_error(
                "para body reads parameters through input ports, not Param "
                "nodes");
    auto ins = body.input_nodes();
    std::size_t nfield = param.fields.size();
    if (ins.size() != nfield + in_widths.size())
        throw validation_error("para body has " + std::to_string(ins.size()) +
                               " input ports, expected " +
                               std::to_string(nfield + in_widths.size()));
    for (std::size_t i = 0; i < nfield; ++i)
        if (body.nodes()[ins[i]].width != param.fields[i].numel())
            throw validation_error("parameter port " + std::to_string(i) +
                                   " width mismatch");
    for (std::size_t i = 0; i < in_widths.size(); ++i)
        if (body.nodes()[ins[nfield + i]].width != in_widths[i])
            throw validation_error("data port " + std::to_string(i) +
                                   " width mismatch");
    if (body.outputs().size() != out_widths.size())
        throw validation_error("para body has " +
                               std::to_string(body.outputs().size()) +
                               " outputs, expected " +
                               std::to_string(out_widths.size()));
    for (std::size_t i = 0; i < out_widths.size(); ++i)
        if (body.port_width(body.outputs()[i]) != out_widths[i])
            throw validation_error("output port " + std::to_string(i) +
                                   " width mismatch");
    return ParaMap{std::move(param), std::move(in_widths),
                   std::move(out_widths), std::move(body)};
}

ParaMap para_embed(std::vector<int> in_widths, std::vector<int> out_widths,
                   Graph body) {
    return para_from_graph(ParamShape::unit(), std::move(in_widths),
                           std::move(out_widths), std::move(body));
}

ParaMap para_identity(int width) {
    Graph g;
    int x = g.add_input("x0", width);
    g.mark_output({x, 0});
    return para_embed({width}, {width}, std::move(g));
}

std::vector<Tensor> para_forward(const ParaMap& f,
                                 const std::vector<double>& params,
                                 const std::vector<Tensor>& xs) {
    if (xs.size() != f.in_widths.size())
        throw validation_error("expected " +
                               std::to_string(f.in_widths.size()) +
                               " data inputs, got " + std::to_string(xs.size()));
    std::vector<Tensor> all =
        split_by_fields(f.param.fields, params, "parameter vector");
    for (const auto& x : xs) all.push_back(x);
    return forward(f.body, ParamStore(), all);
}

ParaMap para_compose(const ParaMap& g, const ParaMap& f) {
    if (f.out_widths != g.in_widths)
        throw validation_error("composition port mismatch between maps");
    ParamShape param = param_concat(g.param, f.param);
    std::size_t nq = g.param.fields.size();
    std::size_t np = f.param.fields.size();

    Graph body;
    auto ins = add_body_inputs(body, param, f.in_widths);
    auto f_binds = ports_of(ins, nq, np);
    for (auto p : ports_of(ins, nq + np, f.in_widths.size()))
        f_binds.push_back(p);
    auto mid = body.splice(f.body, f_binds, "f/");
    auto g_binds = ports_of(ins, 0, nq);
    for (auto p : mid) g_binds.push_back(p);
    auto outs = body.splice(g.body, g_binds, "g/");
    for (auto p : outs) body.mark_output(p);
    return para_from_graph(std::move(param), f.in_widths, g.out_widths,
                           std::move(body));
}

CompiledPara para_compile(const ParaMap& f) {
    Graph g;
    std::vector<PortRef> binds;
    for (const auto& fld : f.param.fields)
        binds.push_back({g.add_param(fld.name, fld.name, fld.numel()), 0});
    for (std::size_t i = 0; i < f.in_widths.size(); ++i)
        binds.push_back(
            {g.add_input("x" + std::to_string(i), f.in_widths[i]), 0});
    auto outs = g.splice(f.body, binds, "b/");
    for (auto p : outs) g.mark_output(p);
    return CompiledPara{std::move(g), ParamStore(f.param.fields)};
}

Reparam make_reparam(ParamShape source, ParamShape target, Graph map) {
    for (const auto& n : map.nodes()) {
        if (n.kind == NodeKind::Param || n.kind == NodeKind::Pointwise)
            throw validation_error("reparam fragments are pure wiring: copy, "
                                   "delete, swap and fixed linear maps only");
    }
    auto ins = map.input_nodes();
    if (ins.size() != target.fields.size())
        throw validation_error("reparam fragment has " +
                               std::to_string(ins.size()) +
                               " inputs, expected one per target field");
    for (std::size_t i = 0; i < ins.size(); ++i)
        if (map.nodes()[ins[i]].width != target.fields[i].numel())
            throw validation_error("reparam target port " + std::to_string(i) +
                                   " width mismatch");
    if (map.outputs().size() != source.fields.size())
        throw validation_error("reparam fragment has " +
                               std::to_string(map.outputs().size()) +
                               " outputs, expected one per source field");
    for (std::size_t i = 0; i < map.outputs().size(); ++i)
        if (map.port_width(map.outputs()[i]) != source.fields[i].numel())
            throw validation_error("reparam source port " + std::to_string(i) +
                                   " width mismatch");
    return Reparam{std::move(source), std::move(target), std::move(map)};
}

Reparam reparam_identity(const ParamShape& p) {
    Graph g;
    auto ins = add_body_inputs(g, p, {});
    for (auto r : ports_of(ins, 0, ins.size())) g.mark_output(r);
    return make_reparam(p, p, std::move(g));
}

Reparam reparam_copy(const ParamShape& p) {
    Graph g;
    auto ins = add_body_inputs(g, p, {});
    std::vector<int> copies;
    for (std::size_t i = 0; i < ins.size(); ++i)
        copies.push_back(
            g.add_copy("c" + std::to_string(i), {ins[i], 0}, 2));
    for (int c : copies) g.mark_output({c, 0});
    for (int c : copies) g.mark_output({c, 1});
    return make_reparam(param_concat(p, p), p, std::move(g));
}

Reparam reparam_delete(const ParamShape& p) {
    Graph g;
    add_body_inputs(g, p, {});
    return make_reparam(ParamShape::unit(), p, std::move(g));
}

Reparam reparam_swap(const ParamShape& p, const ParamShape& q) {
    ParamShape target = param_concat(p, q);
    Graph g;
    auto ins = add_body_inputs(g, target, {});
    for (auto r : ports_of(ins, p.fields.size(), q.fields.size()))
        g.mark_output(r);
    for (auto r : ports_of(ins, 0, p.fields.size())) g.mark_output(r);
    return make_reparam(param_concat(q, p), std::move(target), std::move(g));
}

Reparam reparam_compose(const Reparam& r, const Reparam& s) {
    if (!(s.source == r.target))
        throw validation_error("reparam composition shape mismatch");
    Graph g;
    auto ins = add_body_inputs(g, s.target, {});
    auto mid = g.splice(s.map, ports_of(ins, 0, ins.size()), "s/");
    auto outs = g.splice(r.map, mid, "r/");
    for (auto p : outs) g.mark_output(p);
    return make_reparam(r.source, s.target, std::move(g));
}

Reparam reparam_tensor(const Reparam& a, const Reparam& b) {
    ParamShape target = param_concat(a.target, b.target);
    Graph g;
    auto ins = add_body_inputs(g, target, {});
    auto outs_a =
        g.splice(a.map, ports_of(ins, 0, a.target.fields.size()), "a/");
    auto outs_b = g.splice(
        b.map, ports_of(ins, a.target.fields.size(), b.target.fields.size()),
        "b/");
    for (auto p : outs_a) g.mark_output(p);
    for (auto p : outs_b) g.mark_output(p);
    return make_reparam(param_concat(a.source, b.source), std::move(target),
                        std::move(g));
}

std::vector<double> reparam_eval(const Reparam& r,
                                 const std::vector<double>& target_values) {
    auto ins =
        split_by_fields(r.target.fields, target_values, "target values");
    auto outs = forward(r.map, ParamStore(), ins);
    std::vector<double> flat;
    for (const auto& t : outs)
        flat.insert(flat.end(), t.data.begin(), t.data.end());
    return flat;
}

ParaMap reparam_apply(const Reparam& r, const ParaMap& f) {
    if (!(r.source == f.param))
        throw validation_error("reparam source does not match map parameter");
    Graph body;
    auto ins = add_body_inputs(body, r.target, f.in_widths);
    auto src =
        body.splice(r.map, ports_of(ins, 0, r.target.fields.size()), "r/");
    for (auto p :
         ports_of(ins, r.target.fields.size(), f.in_widths.size()))
        src.push_back(p);
    auto outs = body.splice(f.body, src, "f/");
    for (auto p : outs) body.mark_output(p);
    return para_from_graph(r.target, f.in_widths, f.out_widths,
                           std::move(body));
}

ParaMap weight_tie(const ParaMap& f) {
    return reparam_apply(reparam_copy(f.param.first_half()), f);
}

TriangleReport check_reparam_triangle(const Reparam& r, const ParaMap& f,
                                      const ParaMap& f2, int samples,
                                      double tol, std::uint64_t seed) {
    if (!(r.source == f.param))
        throw validation_error("triangle: reparam source != f parameter");
    if (!(r.target == f2.param))
        throw validation_error("triangle: reparam target != f2 parameter");
    if (f.in_widths != f2.in_widths || f.out_widths != f2.out_widths)
        throw validation_error("triangle: data port signature mismatch");
    if (samples <= 0) throw validation_error("triangle: samples must be positive");

    std::mt19937_64 rng(seed);
    TriangleReport rep;
    rep.tol = tol;
    rep.samples = samples;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> pt = rand_values(rng, r.target.total());
        std::vector<Tensor> xs;
        for (int w : f.in_widths) xs.push_back(Tensor::vec(rand_values(rng, w)));
        auto y2 = para_forward(f2, pt, xs);
        auto y1 = para_forward(f, reparam_eval(r, pt), xs);
        for (std::size_t i = 0; i < y1.size(); ++i)
            for (std::size_t k = 0; k < y1[i].data.size(); ++k)
                rep.max_abs_residual =
                    std::max(rep.max_abs_residual,
                             std::abs(y2[i].data[k] - y1[i].data[k]));
    }
    rep.ok = rep.max_abs_residual <= tol;
    return rep;
}

void validate_pval(const Functor& shape, const PVal& v, int payload_width) {
    validate_value(shape, v);
    std::vector<std::vector<double>> slots;
    collect_slots(v, slots);
    for (const auto& s : slots)
        if (static_cast<int>(s.size()) != payload_width)
            throw validation_error("payload width mismatch at Id position");
}

LiftedMap para_lift(const Functor& shape, const ParaMap& f) {
    if (f.in_widths.size() != 1 || f.out_widths.size() != 1)
        throw validation_error(
            "lift needs a map with one data input and one output");
    return LiftedMap{shape, f};
}

PVal lifted_forward(const LiftedMap& lm, const std::vector<double>& params,
                    const PVal& x) {
    validate_pval(lm.shape, x, lm.inner.in_widths[0]);
    auto st = strength(lm.shape, params, x);
    return fmap_value(
        lm.shape,
        [&](const std::pair<std::vector<double>, std::vector<double>>& px) {
            return para_forward(lm.inner, px.first,
                                {Tensor::vec(px.second)})[0]
                .data;
        },
        st);
}

} // namespace catarch
