//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include <cmath>

#include "catarch/graph.hpp"

namespace catarch {

namespace {

using Vals = std::vector<std::vector<std::vector<double>>>;

// values per (node, port), computed in construction order
Vals evaluate(const Graph& g, const ParamStore& params,
              const std::vector<Tensor>& inputs, NanPolicy nan) {
    const auto& nodes = g.nodes();
    const auto in_nodes = g.input_nodes();
    if (inputs.size() != in_nodes.size())
        throw validation_error("forward: expected " +
                               std::to_string(in_nodes.size()) +
                               " inputs, got " +
                               std::to_string(inputs.size()));
    Vals val(nodes.size());
    std::size_t next_input = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        auto in = [&](std::size_t k) -> const std::vector<double>& {
            const PortRef& p = n.inputs[k];
            return val[static_cast<std::size_t>(p.node)]
                      [static_cast<std::size_t>(p.port)];
        };
        switch (n.kind) {
            case NodeKind::Input: {
                const Tensor& t = inputs[next_input++];
                if (t.numel() != n.width ||
                    t.data.size() != static_cast<std::size_t>(n.width))
                    throw validation_error("forward: input '" + n.name +
                                           "' width mismatch");
                val[i] = {t.data};
                break;
            }
            case NodeKind::Param: {
                if (!params.has_field(n.field) ||
                    params.field_size(n.field) != n.width)
                    throw validation_error("forward: param '" + n.name +
                                           "' does not match field '" +
                                           n.field + "'");
                auto f = params.field(n.field);
                val[i] = {std::vector<double>(f.begin(), f.end())};
                break;
            }
            case NodeKind::Const:
                val[i] = {n.value};
                break;
            case NodeKind::Linear: {
                const auto& x = in(0);
                const auto& w = in(1);
                std::vector<double> y(static_cast<std::size_t>(n.width), 0.0);
                for (int r = 0; r < n.width; ++r) {
                    double acc = 0.0;
                    for (int c = 0; c < n.in_width; ++c)
                        acc += w[static_cast<std::size_t>(r * n.in_width +
                                                          c)] *
                               x[static_cast<std::size_t>(c)];
                    y[static_cast<std::size_t>(r)] = acc;
                }
                val[i] = {std::move(y)};
                break;
            }
            case NodeKind::Bias: {
                std::vector<double> y = in(0);
                const auto& b = in(1);
                for (std::size_t k = 0; k < y.size(); ++k) y[k] += b[k];
                val[i] = {std::move(y)};
                break;
            }
            case NodeKind::Pointwise: {
                std::vector<double> y = in(0);
                if (n.fn == Nonlin::Tanh)
                    for (auto& v : y) v = std::tanh(v);
                val[i] = {std::move(y)};
                break;
            }
            case NodeKind::Concat: {
                std::vector<double> y;
                y.reserve(static_cast<std::size_t>(n.width));
                for (std::size_t k = 0; k < n.inputs.size(); ++k) {
                    const auto& x = in(k);
                    y.insert(y.end(), x.begin(), x.end());
                }
                val[i] = {std::move(y)};
                break;
            }
            case NodeKind::Split: {
                const auto& x = in(0);
                std::size_t at = 0;
                for (int s : n.sizes) {
                    val[i].emplace_back(
                        x.begin() + static_cast<std::ptrdiff_t>(at),
                        x.begin() + static_cast<std::ptrdiff_t>(
                                        at + static_cast<std::size_t>(s)));
                    at += static_cast<std::size_t>(s);
                }
                break;
            }
            case NodeKind::Copy:
                val[i].assign(static_cast<std::size_t>(n.fanout), in(0));
                break;
            case NodeKind::Sum: {
                std::vector<double> y = in(0);
                for (std::size_t k = 1; k < n.inputs.size(); ++k) {
                    const auto& x = in(k);
                    for (std::size_t t = 0; t < y.size(); ++t) y[t] += x[t];
                }
                val[i] = {std::move(y)};
                break;
            }
        }
        if (nan == NanPolicy::Error)
            for (const auto& port : val[i])
                for (double v : port)
                    if (!std::isfinite(v))
                        throw error("non-finite value at node '" + n.name +
                                    "'");
    }
    return val;
}

} // namespace

std::vector<Tensor> forward(const Graph& g, const ParamStore& params,
                            const std::vector<Tensor>& inputs,
                            NanPolicy nan) {
    Vals val = evaluate(g, params, inputs, nan);
    std::vector<Tensor> out;
    out.reserve(g.outputs().size());
    for (const auto& o : g.outputs())
        out.push_back(Tensor::vec(val[static_cast<std::size_t>(o.node)]
                                     [static_cast<std::size_t>(o.port)]));
    return out;
}

ParamStore backward(const Graph& g, const ParamStore& params,
                    const std::vector<Tensor>& inputs,
                    const std::vector<Tensor>& seeds, NanPolicy nan) {
    const auto& nodes = g.nodes();
    Vals val = evaluate(g, params, inputs, nan);
    if (seeds.size() != g.outputs().size())
        throw validation_error("backward: one seed per output required");

    Vals adj(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        adj[i].resize(static_cast<std::size_t>(
            g.out_ports(static_cast<int>(i))));
        for (std::size_t p = 0; p < adj[i].size(); ++p)
            adj[i][p].assign(val[i][p].size(), 0.0);
    }
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        const PortRef& o = g.outputs()[k];
        auto& a = adj[static_cast<std::size_t>(o.node)]
                     [static_cast<std::size_t>(o.port)];
        if (seeds[k].data.size() != a.size())
            throw validation_error("backward: seed width mismatch");
        for (std::size_t t = 0; t < a.size(); ++t)
            a[t] += seeds[k].data[t];
    }

    ParamStore grad = params.zeros_like();
    for (std::size_t ri = nodes.size(); ri-- > 0;) {
        const Node& n = nodes[ri];
        auto input_adj = [&](std::size_t k) -> std::vector<double>& {
            const PortRef& p = n.inputs[k];
            return adj[static_cast<std::size_t>(p.node)]
                      [static_cast<std::size_t>(p.port)];
        };
        auto input_val = [&](std::size_t k) -> const std::vector<double>& {
            const PortRef& p = n.inputs[k];
            return val[static_cast<std::size_t>(p.node)]
                      [static_cast<std::size_t>(p.port)];
        };
        switch (n.kind) {
            case NodeKind::Input:
            case NodeKind::Const:
                break;
            case NodeKind::Param: {
                auto f = grad.field(n.field);
                for (std::size_t t = 0; t < f.size(); ++t)
                    f[t] += adj[ri][0][t];
                break;
            }
            case NodeKind::Linear: {
                const auto& x = input_val(0);
                const auto& w = input_val(1);
                auto& xa = input_adj(0);
                auto& wa = input_adj(1);
                const auto& ya = adj[ri][0];
                for (int r = 0; r < n.width; ++r)
                    for (int c = 0; c < n.in_width; ++c) {
                        const std::size_t wi =
                            static_cast<std::size_t>(r * n.in_width + c);
                        xa[static_cast<std::size_t>(c)] +=
                            w[wi] * ya[static_cast<std::size_t>(r)];
                        wa[wi] += ya[static_cast<std::size_t>(r)] *
                                  x[static_cast<std::size_t>(c)];
                    }
                break;
            }
            case NodeKind::Bias: {
                const auto& ya = adj[ri][0];
                auto& xa = input_adj(0);
                auto& ba = input_adj(1);
                for (std::size_t t = 0; t < ya.size(); ++t) {
                    xa[t] += ya[t];
                    ba[t] += ya[t];
                }
                break;
            }
            case NodeKind::Pointwise: {
                const auto& ya = adj[ri][0];
                const auto& y = val[ri][0];
                auto& xa = input_adj(0);
                if (n.fn == Nonlin::Tanh) {
                    for (std::size_t t = 0; t < ya.size(); ++t)
                        xa[t] += (1.0 - y[t] * y[t]) * ya[t];
                } else {
                    for (std::size_t t = 0; t < ya.size(); ++t)
                        xa[t] += ya[t];
                }
                break;
            }
            case NodeKind::Concat: {
                const auto& ya = adj[ri][0];
                std::size_t at = 0;
                for (std::size_t k = 0; k < n.inputs.size(); ++k) {
                    auto& xa = input_adj(k);
                    for (std::size_t t = 0; t < xa.size(); ++t)
                        xa[t] += ya[at + t];
                    at += xa.size();
                }
                break;
            }
            case NodeKind::Split: {
                auto& xa = input_adj(0);
                std::size_t at = 0;
                for (std::size_t p = 0; p < adj[ri].size(); ++p) {
                    for (std::size_t t = 0; t < adj[ri][p].size(); ++t)
                        xa[at + t] += adj[ri][p][t];
                    at += adj[ri][p].size();
                }
                break;
            }
            case NodeKind::Copy: {
                // the tied-gradient rule: copies' adjoints add at the source
                auto& xa = input_adj(0);
                for (const auto& port : adj[ri])
                    for (std::size_t t = 0; t < xa.size(); ++t)
                        xa[t] += port[t];
                break;
            }
            case NodeKind::Sum: {
                const auto& ya = adj[ri][0];
                for (std::size_t k = 0; k < n.inputs.size(); ++k) {
                    auto& xa = input_adj(k);
                    for (std::size_t t = 0; t < ya.size(); ++t)
                        xa[t] += ya[t];
                }
                break;
            }
        }
    }
    return grad;
}

nlohmann::json FdReport::to_json() const {
    nlohmann::json j;
    j["pass"] = pass;
    j["tol"] = tol;
    j["eps"] = eps;
    j["max_rel_err"] = max_rel_err;
    j["worst_index"] = worst_index;
    j["coords"] = static_cast<int>(rel_err.size());
    return j;
}

FdReport finite_diff_compare(const Graph& g, const ParamStore& params,
                             const std::vector<Tensor>& inputs,
                             const ParamStore& analytic, double eps,
                             double tol) {
    if (eps <= 0) throw validation_error("finite differences need eps > 0");
    if (!params.same_manifest(analytic))
        throw validation_error("gradient manifest mismatch");
    auto loss = [&](const ParamStore& p) {
        double acc = 0.0;
        for (const auto& t : forward(g, p, inputs))
            for (double v : t.data) acc += v;
        return acc;
    };
    FdReport rep;
    rep.tol = tol;
    rep.eps = eps;
    rep.rel_err.assign(static_cast<std::size_t>(params.total_size()), 0.0);
    ParamStore work = params;
    for (int i = 0; i < params.total_size(); ++i) {
        const double keep = work.values()[static_cast<std::size_t>(i)];
        work.values()[static_cast<std::size_t>(i)] = keep + eps;
        const double up = loss(work);
        work.values()[static_cast<std::size_t>(i)] = keep - eps;
        const double dn = loss(work);
        work.values()[static_cast<std::size_t>(i)] = keep;
        const double numeric = (up - dn) / (2.0 * eps);
        const double got = analytic.values()[static_cast<std::size_t>(i)];
        const double scale =
            std::max({1.0, std::fabs(numeric), std::fabs(got)});
        rep.rel_err[static_cast<std::size_t>(i)] =
            std::fabs(numeric - got) / scale;
        if (rep.rel_err[static_cast<std::size_t>(i)] > rep.max_rel_err) {
            rep.max_rel_err = rep.rel_err[static_cast<std::size_t>(i)];
            rep.worst_index = i;
        }
    }
    rep.pass = rep.max_rel_err <= tol;
    return rep;
}

FdReport finite_diff_check(const Graph& g, const ParamStore& params,
                           const std::vector<Tensor>& inputs, double eps,
                           double tol) {
    std::vector<Tensor> seeds;
    seeds.reserve(g.outputs().size());
    for (const auto& o : g.outputs()) {
        Tensor t = Tensor::zeros(g.port_width(o));
        for (auto& v : t.data) v = 1.0;
        seeds.push_back(std::move(t));
    }
    return finite_diff_compare(g, params, inputs,
                               backward(g, params, inputs, seeds), eps, tol);
}

} // namespace catarch
