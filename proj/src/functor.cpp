//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/functor.hpp"

#include <set>

#include "catarch/errors.hpp"

namespace catarch {

static void check_label_set(const std::vector<std::string>& labels,
                            const char* what) {
    std::set<std::string> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second)
            throw validation_error(std::string(what) + ": duplicate label '" +
                                   l + "'");
}

Functor Functor::constant(std::vector<std::string> labels) {
    check_label_set(labels, "Const");
    auto n = std::make_shared<Node>();
    n->kind = FunctorKind::Const;
    n->labels = std::move(labels);
    return Functor(std::move(n));
}

Functor Functor::unit() { return constant({"*"}); }

Functor Functor::id() {
    auto n = std::make_shared<Node>();
    n->kind = FunctorKind::Id;
    return Functor(std::move(n));
}

Functor Functor::sum(Functor left, Functor right) {
    auto n = std::make_shared<Node>();
    n->kind = FunctorKind::Sum;
    n->left = left.node_;
    n->right = right.node_;
    return Functor(std::move(n));
}

Functor Functor::prod(Functor left, Functor right) {
    auto n = std::make_shared<Node>();
    n->kind = FunctorKind::Prod;
    n->left = left.node_;
    n->right = right.node_;
    return Functor(std::move(n));
}

Functor Functor::pow(std::vector<std::string> index, Functor body) {
    check_label_set(index, "Pow");
    if (index.empty())
        throw validation_error("Pow: index set must be non-empty");
    auto n = std::make_shared<Node>();
    n->kind = FunctorKind::Pow;
    n->labels = std::move(index);
    n->left = body.node_;
    return Functor(std::move(n));
}

Functor Functor::left() const {
    if (!node_->left) throw validation_error("shape has no left child");
    return Functor(node_->left);
}

Functor Functor::right() const {
    if (!node_->right) throw validation_error("shape has no right child");
    return Functor(node_->right);
}

Functor Functor::body() const {
    if (kind() != FunctorKind::Pow)
        throw validation_error("shape is not a Pow");
    return Functor(node_->left);
}

bool Functor::operator==(const Functor& other) const {
    const Node* a = node_.get();
    const Node* b = other.node_.get();
    if (a == b) return true;
    if (a->kind != b->kind || a->labels != b->labels) return false;
    switch (a->kind) {
    case FunctorKind::Const:
    case FunctorKind::Id: return true;
    case FunctorKind::Pow: return Functor(a->left) == Functor(b->left);
    default:
        return Functor(a->left) == Functor(b->left) &&
               Functor(a->right) == Functor(b->right);
    }
}

bool Functor::contains_id() const {
    switch (kind()) {
    case FunctorKind::Const: return false;
    case FunctorKind::Id: return true;
    case FunctorKind::Pow: return body().contains_id();
    default: return left().contains_id() || right().contains_id();
    }
}

static std::string label_set_str(const std::vector<std::string>& labels) {
    std::string s = "{";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) s += ",";
        s += labels[i];
    }
    return s + "}";
}

std::string Functor::to_string() const {
    switch (kind()) {
    case FunctorKind::Const: return label_set_str(labels());
    case FunctorKind::Id: return "X";
    case FunctorKind::Sum:
        return "(" + left().to_string() + " + " + right().to_string() + ")";
    case FunctorKind::Prod:
        return "(" + left().to_string() + " * " + right().to_string() + ")";
    case FunctorKind::Pow:
        return "(" + label_set_str(labels()) + " -> " + body().to_string() +
               ")";
    }
    return "?";
}

nlohmann::json Functor::to_json() const {
    nlohmann::json j;
    switch (kind()) {
    case FunctorKind::Const:
        j["kind"] = "const";
        j["labels"] = labels();
        break;
    case FunctorKind::Id: j["kind"] = "id"; break;
    case FunctorKind::Sum:
        j["kind"] = "sum";
        j["left"] = left().to_json();
        j["right"] = right().to_json();
        break;
    case FunctorKind::Prod:
        j["kind"] = "prod";
        j["left"] = left().to_json();
        j["right"] = right().to_json();
        break;
    case FunctorKind::Pow:
        j["kind"] = "pow";
        j["index"] = labels();
        j["body"] = body().to_json();
        break;
    }
    return j;
}

Functor Functor::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw validation_error("shape json: object with 'kind' required");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "const")
        return constant(j.at("labels").get<std::vector<std::string>>());
    if (kind == "id") return id();
    if (kind == "sum")
        return sum(from_json(j.at("left")), from_json(j.at("right")));
    if (kind == "prod")
        return prod(from_json(j.at("left")), from_json(j.at("right")));
    if (kind == "pow")
        return pow(j.at("index").get<std::vector<std::string>>(),
                   from_json(j.at("body")));
    throw validation_error("shape json: unknown kind '" + kind + "'");
}

Functor Functor::list_of(std::vector<std::string> labels) {
    return sum(unit(), prod(constant(std::move(labels)), id()));
}

Functor Functor::tree_of(std::vector<std::string> labels) {
    return sum(constant(std::move(labels)), prod(id(), id()));
}

Functor Functor::stream_of(std::vector<std::string> out) {
    return prod(constant(std::move(out)), id());
}

Functor Functor::mealy_of(std::vector<std::string> in,
                          std::vector<std::string> out) {
    return pow(std::move(in), prod(constant(std::move(out)), id()));
}

Functor Functor::moore_of(std::vector<std::string> in,
                          std::vector<std::string> out) {
    return prod(constant(std::move(out)), pow(std::move(in), id()));
}

} // namespace catarch
