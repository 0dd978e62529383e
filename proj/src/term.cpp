//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/term.hpp"

#include <sstream>

namespace catarch {

struct Term::Rep {
    Functor shape;
    FVal<Term, int> layer;
    std::size_t size;
    std::string key;
};

Term Term::make(const Functor& shape, FVal<Term, int> layer) {
    validate_value(shape, layer);
    std::vector<Term> subs;
    collect_slots(layer, subs);
    std::size_t size = 1;
    for (const auto& s : subs) {
        if (!s.valid()) throw validation_error("term: empty subterm handle");
        if (s.shape() != shape)
            throw validation_error("term: subterm shape mismatch");
        size += s.size();
    }
    auto rep = std::make_shared<Rep>(
        Rep{shape, std::move(layer), size, std::string()});
    // canonical key: arm path, labels and children in traversal order
    std::ostringstream os;
    std::function<void(const FVal<Term, int>&)> emit =
        [&](const FVal<Term, int>& v) {
            using Tag = FVal<Term, int>::Tag;
            switch (v.tag()) {
            case Tag::Label: os << 'c' << v.label_value(); break;
            case Tag::Slot: os << '(' << v.slot_value().key() << ')'; break;
            case Tag::Inl:
                os << 'l';
                emit(v.child(0));
                break;
            case Tag::Inr:
                os << 'r';
                emit(v.child(0));
                break;
            case Tag::Pair:
                os << 'p';
                emit(v.child(0));
                emit(v.child(1));
                break;
            case Tag::Table:
                os << 't';
                for (const auto& c : v.children()) emit(c);
                os << ';';
                break;
            }
        };
    emit(rep->layer);
    rep->key = os.str();
    Term t;
    t.rep_ = std::move(rep);
    return t;
}

const Functor& Term::shape() const { return rep_->shape; }
const FVal<Term, int>& Term::layer() const { return rep_->layer; }
std::size_t Term::size() const { return rep_->size; }
const std::string& Term::key() const { return rep_->key; }

bool Term::operator==(const Term& o) const {
    if (rep_ == o.rep_) return true;
    if (!rep_ || !o.rep_) return false;
    return rep_->key == o.rep_->key && rep_->shape == o.rep_->shape;
}

std::vector<Functor> sum_arms(const Functor& shape) {
    if (shape.kind() != FunctorKind::Sum) return {shape};
    auto l = sum_arms(shape.left());
    auto r = sum_arms(shape.right());
    l.insert(l.end(), r.begin(), r.end());
    return l;
}

namespace {

// Descend through the root Sum structure: arm index + the value inside.
std::pair<int, const FVal<Term, int>*> arm_of(const Functor& shape,
                                              const FVal<Term, int>& v) {
    using Tag = FVal<Term, int>::Tag;
    if (shape.kind() != FunctorKind::Sum) return {0, &v};
    const int left_arms = static_cast<int>(sum_arms(shape.left()).size());
    if (v.tag() == Tag::Inl) return arm_of(shape.left(), v.child(0));
    auto [i, inner] = arm_of(shape.right(), v.child(0));
    return {left_arms + i, inner};
}

// Nested Sum choices below the root arm are recorded in the label stream as
// "<"/">" markers so the flat encoding stays invertible for general shapes.
void collect_labels(const Functor& shape, const FVal<Term, int>& v,
                    std::vector<std::string>& out) {
    using Tag = FVal<Term, int>::Tag;
    switch (v.tag()) {
    case Tag::Label: out.push_back(shape.labels()[v.label_value()]); return;
    case Tag::Slot: return;
    case Tag::Inl:
        out.push_back("<");
        return collect_labels(shape.left(), v.child(0), out);
    case Tag::Inr:
        out.push_back(">");
        return collect_labels(shape.right(), v.child(0), out);
    case Tag::Pair:
        collect_labels(shape.left(), v.child(0), out);
        collect_labels(shape.right(), v.child(1), out);
        return;
    case Tag::Table:
        for (const auto& c : v.children())
            collect_labels(shape.body(), c, out);
        return;
    }
}

// Rebuild an arm's value from label and child streams (traversal order).
FVal<Term, int> build_arm(const Functor& shape,
                          const std::vector<std::string>& labels,
                          std::size_t& li, const std::vector<Term>& kids,
                          std::size_t& ki) {
    using V = FVal<Term, int>;
    switch (shape.kind()) {
    case FunctorKind::Const: {
        if (li >= labels.size())
            throw validation_error("term json: not enough labels");
        const auto& want = labels[li++];
        const auto& set = shape.labels();
        for (std::size_t i = 0; i < set.size(); ++i)
            if (set[i] == want) return V::label(static_cast<int>(i));
        throw validation_error("term json: label '" + want +
                               "' not in the shape's set");
    }
    case FunctorKind::Id:
        if (ki >= kids.size())
            throw validation_error("term json: not enough children");
        return V::slot(kids[ki++]);
    case FunctorKind::Prod: {
        auto a = build_arm(shape.left(), labels, li, kids, ki);
        auto b = build_arm(shape.right(), labels, li, kids, ki);
        return V::pair(std::move(a), std::move(b));
    }
    case FunctorKind::Pow: {
        std::vector<V> entries;
        entries.reserve(shape.labels().size());
        for (std::size_t i = 0; i < shape.labels().size(); ++i)
            entries.push_back(build_arm(shape.body(), labels, li, kids, ki));
        return V::table(std::move(entries));
    }
    case FunctorKind::Sum: {
        if (li >= labels.size())
            throw validation_error("term json: missing nested arm marker");
        const auto& m = labels[li++];
        if (m == "<")
            return V::inl(build_arm(shape.left(), labels, li, kids, ki));
        if (m == ">")
            return V::inr(build_arm(shape.right(), labels, li, kids, ki));
        throw validation_error("term json: expected '<' or '>' arm marker");
    }
    }
    throw validation_error("unreachable shape kind");
}

// Wrap an arm value in the Inl/Inr path leading to flattened arm index k.
FVal<Term, int> wrap_arm(const Functor& shape, int k, FVal<Term, int> inner) {
    using V = FVal<Term, int>;
    if (shape.kind() != FunctorKind::Sum) return inner;
    const int left_arms = static_cast<int>(sum_arms(shape.left()).size());
    if (k < left_arms) return V::inl(wrap_arm(shape.left(), k, std::move(inner)));
    return V::inr(wrap_arm(shape.right(), k - left_arms, std::move(inner)));
}

} // namespace

nlohmann::json Term::to_json() const {
    auto [arm, inner] = arm_of(shape(), layer());
    const Functor arm_shape = sum_arms(shape())[static_cast<std::size_t>(arm)];
    std::vector<std::string> labels;
    collect_labels(arm_shape, *inner, labels);
    std::vector<Term> kids;
    collect_slots(*inner, kids);
    nlohmann::json j;
    j["arm"] = arm;
    j["labels"] = labels;
    j["children"] = nlohmann::json::array();
    for (const auto& k : kids) j["children"].push_back(k.to_json());
    return j;
}

Term Term::from_json(const Functor& shape, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("arm"))
        throw validation_error("term json: object with 'arm' required");
    auto arms = sum_arms(shape);
    const int arm = j.at("arm").get<int>();
    if (arm < 0 || arm >= static_cast<int>(arms.size()))
        throw validation_error("term json: arm index out of range");
    std::vector<std::string> labels;
    if (j.contains("labels"))
        labels = j.at("labels").get<std::vector<std::string>>();
    std::vector<Term> kids;
    if (j.contains("children"))
        for (const auto& c : j.at("children"))
            kids.push_back(from_json(shape, c));
    std::size_t li = 0, ki = 0;
    auto inner =
        build_arm(arms[static_cast<std::size_t>(arm)], labels, li, kids, ki);
    if (li != labels.size() || ki != kids.size())
        throw validation_error("term json: unused labels or children");
    return make(shape, wrap_arm(shape, arm, std::move(inner)));
}

using V = FVal<Term, int>;

Term make_nil(const Functor& list_shape) {
    return Term::make(list_shape, V::inl(V::label(0)));
}

Term make_cons(const Functor& list_shape, int label, const Term& tail) {
    return Term::make(list_shape,
                      V::inr(V::pair(V::label(label), V::slot(tail))));
}

Term make_list(const Functor& list_shape, const std::vector<int>& labels) {
    Term t = make_nil(list_shape);
    for (auto it = labels.rbegin(); it != labels.rend(); ++it)
        t = make_cons(list_shape, *it, t);
    return t;
}

std::vector<int> list_labels(const Term& t) {
    std::vector<int> out;
    const Term* cur = &t;
    while (cur->layer().tag() == V::Tag::Inr) {
        const auto& p = cur->layer().child(0);
        out.push_back(p.child(0).label_value());
        cur = &p.child(1).slot_value();
    }
    return out;
}

Term make_leaf(const Functor& tree_shape, int label) {
    return Term::make(tree_shape, V::inl(V::label(label)));
}

Term make_node(const Functor& tree_shape, const Term& l, const Term& r) {
    return Term::make(tree_shape, V::inr(V::pair(V::slot(l), V::slot(r))));
}

} // namespace catarch
