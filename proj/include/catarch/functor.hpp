//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace catarch {

enum class FunctorKind { Const, Id, Sum, Prod, Pow };

// A polynomial shape: constants over finite label sets, the identity,
// binary sums and products, and powers indexed by a finite enumerated set.
// Values are immutable and share structure; equality is structural.
class Functor {
  public:
    static Functor constant(std::vector<std::string> labels);
    static Functor unit(); // Const over the one-element set {"*"}
    static Functor id();
    static Functor sum(Functor left, Functor right);
    static Functor prod(Functor left, Functor right);
    static Functor pow(std::vector<std::string> index, Functor body);

    FunctorKind kind() const { return node_->kind; }
    // Const: the label set. Pow: the index set.
    const std::vector<std::string>& labels() const { return node_->labels; }
    Functor left() const;  // Sum/Prod
    Functor right() const; // Sum/Prod
    Functor body() const;  // Pow

    bool operator==(const Functor& other) const;
    bool operator!=(const Functor& other) const { return !(*this == other); }

    bool contains_id() const; // whether any Id occurs under this shape

    std::string to_string() const;
    nlohmann::json to_json() const;
    static Functor from_json(const nlohmann::json& j);

    // Common datatype shapes.
    static Functor list_of(std::vector<std::string> labels);   // 1 + A x Id
    static Functor tree_of(std::vector<std::string> labels);   // A + Id^2
    static Functor stream_of(std::vector<std::string> out);    // O x Id
    static Functor mealy_of(std::vector<std::string> in,
                            std::vector<std::string> out);     // (I -> O x Id)
    static Functor moore_of(std::vector<std::string> in,
                            std::vector<std::string> out);     // O x (I -> Id)

  private:
    struct Node {
        FunctorKind kind;
        std::vector<std::string> labels;
        std::shared_ptr<const Node> left, right;
    };
    explicit Functor(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

} // namespace catarch
