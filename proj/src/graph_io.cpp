//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include <map>
#include <sstream>

#include "catarch/graph.hpp"

namespace catarch {

namespace {

constexpr const char* kSchema = "catarch-graph/1";

const std::map<NodeKind, std::string>& kind_names() {
    static const std::map<NodeKind, std::string> m = {
        {NodeKind::Input, "input"},       {NodeKind::Param, "param"},
        {NodeKind::Const, "const"},       {NodeKind::Linear, "linear"},
        {NodeKind::Bias, "bias"},         {NodeKind::Pointwise, "pointwise"},
        {NodeKind::Concat, "concat"},     {NodeKind::Split, "split"},
        {NodeKind::Copy, "copy"},         {NodeKind::Sum, "sum"},
    };
    return m;
}

std::string dot_label(const Node& n) {
    std::ostringstream s;
    s << n.name << "\\n";
    switch (n.kind) {
        case NodeKind::Input: s << "in[" << n.width << "]"; break;
        case NodeKind::Param:
            s << "param " << n.field << "[" << n.width << "]";
            break;
        case NodeKind::Const: s << "const[" << n.width << "]"; break;
        case NodeKind::Linear:
            s << "linear " << n.width << "x" << n.in_width;
            break;
        case NodeKind::Bias: s << "bias[" << n.width << "]"; break;
        case NodeKind::Pointwise:
            s << (n.fn == Nonlin::Tanh ? "tanh" : "id") << "[" << n.width
              << "]";
            break;
        case NodeKind::Concat: s << "concat[" << n.width << "]"; break;
        case NodeKind::Split: s << "split x" << n.sizes.size(); break;
        case NodeKind::Copy: s << "copy x" << n.fanout; break;
        case NodeKind::Sum: s << "sum[" << n.width << "]"; break;
    }
    return s.str();
}

} // namespace

std::string export_dot(const Graph& g) {
    std::ostringstream out;
    out << "digraph catarch {\n  rankdir=LR;\n";
    const auto& nodes = g.nodes();
    for (const auto& n : nodes) {
        out << "  \"" << n.name << "\" [label=\"" << dot_label(n) << "\"";
        if (n.kind == NodeKind::Input)
            out << ",shape=ellipse";
        else if (n.kind == NodeKind::Param || n.kind == NodeKind::Const)
            out << ",shape=box,style=filled,fillcolor=lightyellow";
        else
            out << ",shape=box";
        out << "];\n";
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (const auto& x : nodes[i].inputs) {
            out << "  \"" << nodes[static_cast<std::size_t>(x.node)].name
                << "\" -> \"" << nodes[i].name << "\" [label=\""
                << g.port_width(x) << "\"";
            if (g.out_ports(x.node) > 1)
                out << ",taillabel=\"" << x.port << "\"";
            // the vertical-wire convention: parameter wires look different
            if (g.param_wire(x)) out << ",style=dashed";
            out << "];\n";
        }
    }
    for (std::size_t k = 0; k < g.outputs().size(); ++k) {
        const auto& o = g.outputs()[k];
        out << "  \"out" << k << "\" [label=\"out " << k
            << "\",shape=plaintext];\n";
        out << "  \"" << nodes[static_cast<std::size_t>(o.node)].name
            << "\" -> \"out" << k << "\"";
        if (g.out_ports(o.node) > 1)
            out << " [taillabel=\"" << o.port << "\"]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

nlohmann::json export_json(const Graph& g) {
    nlohmann::json j;
    j["schema"] = kSchema;
    j["nodes"] = nlohmann::json::array();
    const auto& nodes = g.nodes();
    for (const auto& n : nodes) {
        nlohmann::json e;
        e["kind"] = kind_names().at(n.kind);
        e["name"] = n.name;
        if (!n.inputs.empty()) {
            auto in = nlohmann::json::array();
            for (const auto& x : n.inputs)
                in.push_back({nodes[static_cast<std::size_t>(x.node)].name,
                              x.port});
            e["in"] = std::move(in);
        }
        switch (n.kind) {
            case NodeKind::Input: e["width"] = n.width; break;
            case NodeKind::Param:
                e["width"] = n.width;
                e["field"] = n.field;
                break;
            case NodeKind::Const: e["value"] = n.value; break;
            case NodeKind::Linear:
                e["in_width"] = n.in_width;
                e["out_width"] = n.width;
                break;
            case NodeKind::Pointwise:
                e["fn"] = n.fn == Nonlin::Tanh ? "tanh" : "identity";
                break;
            case NodeKind::Split: e["sizes"] = n.sizes; break;
            case NodeKind::Copy: e["fanout"] = n.fanout; break;
            case NodeKind::Bias:
            case NodeKind::Concat:
            case NodeKind::Sum: break;
        }
        j["nodes"].push_back(std::move(e));
    }
    j["outputs"] = nlohmann::json::array();
    for (const auto& o : g.outputs())
        j["outputs"].push_back(
            {nodes[static_cast<std::size_t>(o.node)].name, o.port});
    return j;
}

Graph import_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("schema") ||
        j.at("schema").get<std::string>() != kSchema)
        throw validation_error(std::string("graph json: expected schema '") +
                               kSchema + "'");
    if (!j.contains("nodes") || !j.at("nodes").is_array())
        throw validation_error("graph json: missing nodes");
    Graph g;
    std::map<std::string, int> by_name;
    auto ref = [&](const nlohmann::json& e) -> PortRef {
        if (!e.is_array() || e.size() != 2)
            throw validation_error("graph json: bad wire reference");
        auto it = by_name.find(e.at(0).get<std::string>());
        if (it == by_name.end())
            throw validation_error("graph json: wire from unknown node '" +
                                   e.at(0).get<std::string>() + "'");
        return PortRef{it->second, e.at(1).get<int>()};
    };
    auto refs = [&](const nlohmann::json& e) {
        std::vector<PortRef> out;
        for (const auto& x : e) out.push_back(ref(x));
        return out;
    };
    for (const auto& e : j.at("nodes")) {
        const auto kind = e.at("kind").get<std::string>();
        const auto name = e.at("name").get<std::string>();
        int id = -1;
        if (kind == "input") {
            id = g.add_input(name, e.at("width").get<int>());
        } else if (kind == "param") {
            id = g.add_param(name, e.at("field").get<std::string>(),
                             e.at("width").get<int>());
        } else if (kind == "const") {
            id = g.add_const(name,
                             e.at("value").get<std::vector<double>>());
        } else if (kind == "linear") {
            auto in = refs(e.at("in"));
            if (in.size() != 2)
                throw validation_error("graph json: linear needs two wires");
            id = g.add_linear(name, in[0], in[1], e.at("in_width").get<int>(),
                              e.at("out_width").get<int>());
        } else if (kind == "bias") {
            auto in = refs(e.at("in"));
            if (in.size() != 2)
                throw validation_error("graph json: bias needs two wires");
            id = g.add_bias(name, in[0], in[1]);
        } else if (kind == "pointwise") {
            auto in = refs(e.at("in"));
            if (in.size() != 1)
                throw validation_error(
                    "graph json: pointwise needs one wire");
            const auto fn = e.at("fn").get<std::string>();
            if (fn != "tanh" && fn != "identity")
                throw validation_error("graph json: unknown fn '" + fn + "'");
            id = g.add_pointwise(
                name, in[0],
                fn == "tanh" ? Nonlin::Tanh : Nonlin::Identity);
        } else if (kind == "concat") {
            id = g.add_concat(name, refs(e.at("in")));
        } else if (kind == "split") {
            auto in = refs(e.at("in"));
            if (in.size() != 1)
                throw validation_error("graph json: split needs one wire");
            id = g.add_split(name, in[0],
                             e.at("sizes").get<std::vector<int>>());
        } else if (kind == "copy") {
            auto in = refs(e.at("in"));
            if (in.size() != 1)
                throw validation_error("graph json: copy needs one wire");
            id = g.add_copy(name, in[0], e.at("fanout").get<int>());
        } else if (kind == "sum") {
            id = g.add_sum(name, refs(e.at("in")));
        } else {
            throw validation_error("graph json: unknown kind '" + kind + "'");
        }
        by_name.emplace(name, id);
    }
    if (j.contains("outputs"))
        for (const auto& o : j.at("outputs")) g.mark_output(ref(o));
    return g;
}

} // namespace catarch
