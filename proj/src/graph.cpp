//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/graph.hpp"

#include <numeric>

namespace catarch {

int Graph::add_node(Node n) {
    if (n.name.empty() || n.name.find('"') != std::string::npos)
        throw validation_error("bad node name");
    if (!names_.insert(n.name).second)
        throw validation_error("duplicate node name '" + n.name + "'");
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
}

void Graph::check_ref(const PortRef& p) const {
    if (p.node < 0 || p.node >= static_cast<int>(nodes_.size()))
        throw validation_error("wire references an unknown node");
    if (p.port < 0 || p.port >= out_ports(p.node))
        throw validation_error("wire references a missing output port of '" +
                               nodes_[static_cast<std::size_t>(p.node)].name +
                               "'");
}

int Graph::add_input(std::string name, int width) {
    if (width <= 0) throw validation_error("input width must be positive");
    Node n;
    n.kind = NodeKind::Input;
    n.name = std::move(name);
    n.width = width;
    return add_node(std::move(n));
}

int Graph::add_param(std::string name, std::string field, int width) {
    if (width <= 0) throw validation_error("param width must be positive");
    if (field.empty()) throw validation_error("param needs a field name");
    Node n;
    n.kind = NodeKind::Param;
    n.name = std::move(name);
    n.field = std::move(field);
    n.width = width;
    return add_node(std::move(n));
}

int Graph::add_const(std::string name, std::vector<double> value) {
    if (value.empty()) throw validation_error("empty constant");
    Node n;
    n.kind = NodeKind::Const;
    n.name = std::move(name);
    n.width = static_cast<int>(value.size());
    n.value = std::move(value);
    return add_node(std::move(n));
}

int Graph::add_linear(std::string name, PortRef x, PortRef w, int in_width,
                      int out_width) {
    if (in_width <= 0 || out_width <= 0)
        throw validation_error("linear dims must be positive");
    check_ref(x);
    check_ref(w);
    if (port_width(x) != in_width)
        throw validation_error("linear data wire width mismatch");
    if (port_width(w) != in_width * out_width)
        throw validation_error("linear weight wire width mismatch");
    Node n;
    n.kind = NodeKind::Linear;
    n.name = std::move(name);
    n.inputs = {x, w};
    n.in_width = in_width;
    n.width = out_width;
    return add_node(std::move(n));
}

int Graph::add_bias(std::string name, PortRef x, PortRef b) {
    check_ref(x);
    check_ref(b);
    if (port_width(x) != port_width(b))
        throw validation_error("bias wire width mismatch");
    Node n;
    n.kind = NodeKind::Bias;
    n.name = std::move(name);
    n.inputs = {x, b};
    n.width = port_width(x);
    return add_node(std::move(n));
}

int Graph::add_pointwise(std::string name, PortRef x, Nonlin fn) {
    check_ref(x);
    Node n;
    n.kind = NodeKind::Pointwise;
    n.name = std::move(name);
    n.inputs = {x};
    n.fn = fn;
    n.width = port_width(x);
    return add_node(std::move(n));
}

int Graph::add_concat(std::string name, std::vector<PortRef> xs) {
    if (xs.empty()) throw validation_error("concat needs at least one wire");
    int total = 0;
    for (const auto& x : xs) {
        check_ref(x);
        total += port_width(x);
    }
    Node n;
    n.kind = NodeKind::Concat;
    n.name = std::move(name);
    n.inputs = std::move(xs);
    n.width = total;
    return add_node(std::move(n));
}

int Graph::add_split(std::string name, PortRef x, std::vector<int> sizes) {
    check_ref(x);
    if (sizes.empty()) throw validation_error("split needs piece sizes");
    int total = 0;
    for (int s : sizes) {
        if (s <= 0) throw validation_error("split piece must be positive");
        total += s;
    }
    if (total != port_width(x))
        throw validation_error("split pieces do not cover the wire");
    Node n;
    n.kind = NodeKind::Split;
    n.name = std::move(name);
    n.inputs = {x};
    n.sizes = std::move(sizes);
    n.width = 0;
    return add_node(std::move(n));
}

int Graph::add_copy(std::string name, PortRef x, int fanout) {
    check_ref(x);
    if (fanout < 2) throw validation_error("copy fan-out must be >= 2");
    Node n;
    n.kind = NodeKind::Copy;
    n.name = std::move(name);
    n.inputs = {x};
    n.fanout = fanout;
    n.width = port_width(x);
    return add_node(std::move(n));
}

int Graph::add_sum(std::string name, std::vector<PortRef> xs) {
    if (xs.empty()) throw validation_error("sum needs at least one wire");
    check_ref(xs[0]);
    const int w = port_width(xs[0]);
    for (const auto& x : xs) {
        check_ref(x);
        if (port_width(x) != w)
            throw validation_error("sum wire width mismatch");
    }
    Node n;
    n.kind = NodeKind::Sum;
    n.name = std::move(name);
    n.inputs = std::move(xs);
    n.width = w;
    return add_node(std::move(n));
}

void Graph::mark_output(PortRef p) {
    check_ref(p);
    outputs_.push_back(p);
}

std::vector<int> Graph::input_nodes() const {
    std::vector<int> ids;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].kind == NodeKind::Input)
            ids.push_back(static_cast<int>(i));
    return ids;
}

int Graph::out_ports(int node) const {
    const Node& n = nodes_.at(static_cast<std::size_t>(node));
    if (n.kind == NodeKind::Split) return static_cast<int>(n.sizes.size());
    if (n.kind == NodeKind::Copy) return n.fanout;
    return 1;
}

int Graph::port_width(PortRef p) const {
    const Node& n = nodes_.at(static_cast<std::size_t>(p.node));
    if (n.kind == NodeKind::Split)
        return n.sizes.at(static_cast<std::size_t>(p.port));
    return n.width;
}

bool Graph::param_wire(PortRef p) const {
    check_ref(p);
    // one forward sweep; wires through shape plumbing keep their flag, data
    // heads (Linear/Bias/Pointwise) pass on their data input's flag
    std::vector<char> flag(nodes_.size(), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        switch (n.kind) {
            case NodeKind::Param: flag[i] = 1; break;
            case NodeKind::Input:
            case NodeKind::Const: flag[i] = 0; break;
            case NodeKind::Copy:
            case NodeKind::Split:
            case NodeKind::Linear:
            case NodeKind::Bias:
            case NodeKind::Pointwise:
                flag[i] = flag[static_cast<std::size_t>(n.inputs[0].node)];
                break;
            case NodeKind::Concat:
            case NodeKind::Sum: {
                char all = 1;
                for (const auto& x : n.inputs)
                    all = static_cast<char>(
                        all & flag[static_cast<std::size_t>(x.node)]);
                flag[i] = all;
                break;
            }
        }
    }
    return flag[static_cast<std::size_t>(p.node)] != 0;
}

std::vector<PortRef> Graph::splice(const Graph& frag,
                                   const std::vector<PortRef>& bindings,
                                   const std::string& prefix) {
    const auto frag_inputs = frag.input_nodes();
    if (bindings.size() != frag_inputs.size())
        throw validation_error("splice: binding count mismatch");
    std::vector<int> map(frag.nodes_.size(), -1);
    std::vector<int> input_index(frag.nodes_.size(), -1);
    for (std::size_t i = 0; i < frag_inputs.size(); ++i) {
        check_ref(bindings[i]);
        if (port_width(bindings[i]) !=
            frag.nodes_[static_cast<std::size_t>(frag_inputs[i])].width)
            throw validation_error("splice: binding width mismatch");
        input_index[static_cast<std::size_t>(frag_inputs[i])] =
            static_cast<int>(i);
    }
    auto rebase = [&](const PortRef& p) -> PortRef {
        const int bi = input_index[static_cast<std::size_t>(p.node)];
        if (bi >= 0) return bindings[static_cast<std::size_t>(bi)];
        return PortRef{map[static_cast<std::size_t>(p.node)], p.port};
    };
    for (std::size_t i = 0; i < frag.nodes_.size(); ++i) {
        if (input_index[i] >= 0) continue;
        Node n = frag.nodes_[i];
        n.name = prefix + n.name;
        for (auto& x : n.inputs) x = rebase(x);
        map[i] = add_node(std::move(n));
    }
    std::vector<PortRef> outs;
    outs.reserve(frag.outputs_.size());
    for (const auto& o : frag.outputs_) outs.push_back(rebase(o));
    return outs;
}

} // namespace catarch
