//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "catarch/paramstore.hpp"
#include "catarch/tensor.hpp"

namespace catarch {

enum class NodeKind {
    Input,
    Param,
    Const,
    Linear,
    Bias,
    Pointwise,
    Concat,
    Split,
    Copy,
    Sum
};

enum class Nonlin { Identity, Tanh };

enum class NanPolicy { Error, Propagate };

// (producer node, output port). Nodes may only reference earlier nodes, so
// every graph is acyclic by construction.
struct PortRef {
    int node = -1;
    int port = 0;
    bool operator==(const PortRef&) const = default;
};

struct Node {
    NodeKind kind = NodeKind::Input;
    std::string name;
    std::vector<PortRef> inputs;
    int width = 0;             // output width (per port)
    int in_width = 0;          // Linear: data input width
    Nonlin fn = Nonlin::Identity;
    std::string field;         // Param: manifest field it reads
    std::vector<double> value; // Const payload
    std::vector<int> sizes;    // Split piece widths
    int fanout = 0;            // Copy output count, always >= 2

    bool operator==(const Node&) const = default;
};

// Computation graph over rank-1 wires. Built append-only (topological order
// is construction order) and treated as immutable by the runtime; evaluation
// keeps all state in per-call workspaces, so concurrent passes over one
// graph are safe.
class Graph {
  public:
    int add_input(std::string name, int width);
    int add_param(std::string name, std::string field, int width);
    int add_const(std::string name, std::vector<double> value);
    // y = W x with W row-major [out_width][in_width], delivered on wire `w`
    int add_linear(std::string name, PortRef x, PortRef w, int in_width,
                   int out_width);
    int add_bias(std::string name, PortRef x, PortRef b);
    int add_pointwise(std::string name, PortRef x, Nonlin fn);
    int add_concat(std::string name, std::vector<PortRef> xs);
    int add_split(std::string name, PortRef x, std::vector<int> sizes);
    // fan-out >= 2; gradients of the copies add up at the source
    int add_copy(std::string name, PortRef x, int fanout);
    int add_sum(std::string name, std::vector<PortRef> xs);

    void mark_output(PortRef p);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<PortRef>& outputs() const { return outputs_; }
    std::vector<int> input_nodes() const;
    int out_ports(int node) const;
    int port_width(PortRef p) const;

    // true when the wire's value is determined by parameters alone (its
    // provenance chain starts at a Param node); used for distinct styling
    bool param_wire(PortRef p) const;

    // Append `frag`, binding its Input nodes positionally to `bindings` and
    // prefixing every copied node name. Returns frag's outputs rebased into
    // this graph. Does not touch this graph's output list.
    std::vector<PortRef> splice(const Graph& frag,
                                const std::vector<PortRef>& bindings,
                                const std::string& prefix);

    bool operator==(const Graph& o) const {
        return nodes_ == o.nodes_ && outputs_ == o.outputs_;
    }

  private:
    int add_node(Node n);
    void check_ref(const PortRef& p) const;

    std::vector<Node> nodes_;
    std::vector<PortRef> outputs_;
    std::set<std::string> names_;
};

// Deterministic evaluation in construction order. `inputs` bind to Input
// nodes positionally. The NaN guard scans every computed wire and throws on
// non-finite values unless the policy says propagate.
std::vector<Tensor> forward(const Graph& g, const ParamStore& params,
                            const std::vector<Tensor>& inputs,
                            NanPolicy nan = NanPolicy::Error);

// Reverse-mode accumulation; `seeds` bind to graph outputs positionally.
// Copy nodes backpropagate as Sum: tied gradients add.
ParamStore backward(const Graph& g, const ParamStore& params,
                    const std::vector<Tensor>& inputs,
                    const std::vector<Tensor>& seeds,
                    NanPolicy nan = NanPolicy::Error);

struct FdReport {
    bool pass = false;
    double tol = 0;
    double eps = 0;
    double max_rel_err = 0;
    int worst_index = -1;
    std::vector<double> rel_err; // one entry per parameter coordinate

    nlohmann::json to_json() const;
};

// Central finite differences of the summed-outputs loss against a supplied
// gradient; relative error is guarded at magnitude 1. This is the oracle
// every reverse-mode result is judged against.
FdReport finite_diff_compare(const Graph& g, const ParamStore& params,
                             const std::vector<Tensor>& inputs,
                             const ParamStore& analytic, double eps,
                             double tol);

// finite_diff_compare against this graph's own backward pass.
FdReport finite_diff_check(const Graph& g, const ParamStore& params,
                           const std::vector<Tensor>& inputs, double eps,
                           double tol);

// Deterministic DOT text; parameter wires are drawn dashed.
std::string export_dot(const Graph& g);

// Versioned schema "catarch-graph/1"; import(export(g)) == g structurally.
nlohmann::json export_json(const Graph& g);
Graph import_json(const nlohmann::json& j);

} // namespace catarch
