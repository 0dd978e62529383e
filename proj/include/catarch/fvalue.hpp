//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "catarch/errors.hpp"
#include "catarch/functor.hpp"

namespace catarch {

enum class VTag { Label, Slot, Inl, Inr, Pair, Table };

// One application F(X) of a shape to a payload: the tree mirrors the shape
// grammar, with an L at each Const position (a label index for terms, an
// arbitrary observation for coalgebra prefixes) and an S at each Id position.
template <class S, class L = int>
class FVal {
  public:
    using Tag = VTag;

    static FVal label(L v) {
        FVal r;
        r.tag_ = Tag::Label;
        r.label_.push_back(std::move(v));
        return r;
    }
    static FVal slot(S v) {
        FVal r;
        r.tag_ = Tag::Slot;
        r.slot_.push_back(std::move(v));
        return r;
    }
    static FVal inl(FVal v) { return wrap(Tag::Inl, {std::move(v)}); }
    static FVal inr(FVal v) { return wrap(Tag::Inr, {std::move(v)}); }
    static FVal pair(FVal a, FVal b) {
        return wrap(Tag::Pair, {std::move(a), std::move(b)});
    }
    static FVal table(std::vector<FVal> entries) {
        FVal r;
        r.tag_ = Tag::Table;
        r.kids_ = std::move(entries);
        return r;
    }

    Tag tag() const { return tag_; }
    const L& label_value() const { return label_.front(); }
    const S& slot_value() const { return slot_.front(); }
    S& slot_value() { return slot_.front(); }
    const std::vector<FVal>& children() const { return kids_; }
    const FVal& child(std::size_t i) const { return kids_[i]; }

    bool operator==(const FVal& o) const {
        if (tag_ != o.tag_) return false;
        switch (tag_) {
        case Tag::Label: return label_.front() == o.label_.front();
        case Tag::Slot: return slot_.front() == o.slot_.front();
        default: return kids_ == o.kids_;
        }
    }
    bool operator!=(const FVal& o) const { return !(*this == o); }

  private:
    static FVal wrap(Tag t, std::vector<FVal> kids) {
        FVal r;
        r.tag_ = t;
        r.kids_ = std::move(kids);
        return r;
    }
    Tag tag_ = Tag::Label;
    std::vector<L> label_; // Label: exactly one entry
    std::vector<S> slot_;  // Slot: exactly one entry
    std::vector<FVal> kids_;
};

// Structural check of a value against a shape. When the label payload is an
// index (int), Const/Pow ranges are enforced; other payloads are opaque and
// only the structure is checked.
template <class S, class L>
void validate_value(const Functor& shape, const FVal<S, L>& v) {
    using Tag = typename FVal<S, L>::Tag;
    switch (shape.kind()) {
    case FunctorKind::Const:
        if (v.tag() != Tag::Label)
            throw validation_error("value does not match Const position");
        if constexpr (std::is_same_v<L, int>) {
            int i = v.label_value();
            if (i < 0 || i >= static_cast<int>(shape.labels().size()))
                throw validation_error("label index out of range");
        }
        return;
    case FunctorKind::Id:
        if (v.tag() != Tag::Slot)
            throw validation_error("value does not match Id position");
        return;
    case FunctorKind::Sum:
        if (v.tag() == Tag::Inl) return validate_value(shape.left(), v.child(0));
        if (v.tag() == Tag::Inr) return validate_value(shape.right(), v.child(0));
        throw validation_error("value does not match Sum position");
    case FunctorKind::Prod:
        if (v.tag() != Tag::Pair)
            throw validation_error("value does not match Prod position");
        validate_value(shape.left(), v.child(0));
        validate_value(shape.right(), v.child(1));
        return;
    case FunctorKind::Pow:
        if (v.tag() != Tag::Table ||
            v.children().size() != shape.labels().size())
            throw validation_error("value does not match Pow position: "
                                   "one child per index-set element required");
        for (const auto& c : v.children()) validate_value(shape.body(), c);
        return;
    }
    throw validation_error("unknown shape kind");
}

// fmap: apply fn at every Id position, leaving structure and labels alone.
template <class S, class L, class Fn>
auto fmap_value(const Functor& shape, Fn&& fn, const FVal<S, L>& v)
    -> FVal<std::decay_t<decltype(fn(std::declval<const S&>()))>, L> {
    using U = std::decay_t<decltype(fn(std::declval<const S&>()))>;
    using Out = FVal<U, L>;
    using Tag = typename FVal<S, L>::Tag;
    switch (v.tag()) {
    case Tag::Label: return Out::label(v.label_value());
    case Tag::Slot: return Out::slot(fn(v.slot_value()));
    case Tag::Inl: return Out::inl(fmap_value(shape.left(), fn, v.child(0)));
    case Tag::Inr: return Out::inr(fmap_value(shape.right(), fn, v.child(0)));
    case Tag::Pair:
        return Out::pair(fmap_value(shape.left(), fn, v.child(0)),
                         fmap_value(shape.right(), fn, v.child(1)));
    case Tag::Table: {
        std::vector<Out> kids;
        kids.reserve(v.children().size());
        for (const auto& c : v.children())
            kids.push_back(fmap_value(shape.body(), fn, c));
        return Out::table(std::move(kids));
    }
    }
    throw validation_error("unreachable value tag");
}

// Tensorial strength: push a context value into every Id position,
// P x F(X) -> F(P x X). Structure and constants are untouched.
template <class P, class S, class L>
FVal<std::pair<P, S>, L> strength(const Functor& shape, const P& p,
                                  const FVal<S, L>& v) {
    validate_value(shape, v);
    return fmap_value(shape, [&p](const S& x) { return std::make_pair(p, x); },
                      v);
}

// Collect the Id-position payloads in left-to-right traversal order.
template <class S, class L>
void collect_slots(const FVal<S, L>& v, std::vector<S>& out) {
    using Tag = typename FVal<S, L>::Tag;
    switch (v.tag()) {
    case Tag::Label: return;
    case Tag::Slot: out.push_back(v.slot_value()); return;
    default:
        for (const auto& c : v.children()) collect_slots(c, out);
    }
}

} // namespace catarch
