//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "catarch/fvalue.hpp"

namespace catarch {

// An inhabitant of the initial algebra of a shape: one constructor layer
// whose Id positions hold subterms of the same shape. Validated against the
// shape on construction. Size is the constructor count (every layer counts
// one, including nullary arms like the empty list).
class Term {
  public:
    Term() = default; // empty handle; only valid after make()

    static Term make(const Functor& shape, FVal<Term, int> layer);

    bool valid() const { return rep_ != nullptr; }
    const Functor& shape() const;
    const FVal<Term, int>& layer() const;
    std::size_t size() const;

    bool operator==(const Term& o) const;
    bool operator!=(const Term& o) const { return !(*this == o); }

    // Canonical compact encoding, usable as a set/map key and a total order.
    const std::string& key() const;

    // {"arm": k, "labels": [...], "children": [...]} where k indexes the
    // left-to-right flattening of the root Sum arms, labels are the Const
    // choices inside the arm in traversal order, and children the subterms.
    nlohmann::json to_json() const;
    static Term from_json(const Functor& shape, const nlohmann::json& j);

  private:
    struct Rep;
    std::shared_ptr<const Rep> rep_;
};

// Flatten the nested Sum structure at the root of a shape into its arms.
std::vector<Functor> sum_arms(const Functor& shape);

// List shape helpers (shape must be 1 + A x Id as built by Functor::list_of).
Term make_nil(const Functor& list_shape);
Term make_cons(const Functor& list_shape, int label, const Term& tail);
Term make_list(const Functor& list_shape, const std::vector<int>& labels);
std::vector<int> list_labels(const Term& t);

// Tree shape helpers (shape must be A + Id^2 as built by Functor::tree_of).
Term make_leaf(const Functor& tree_shape, int label);
Term make_node(const Functor& tree_shape, const Term& l, const Term& r);

// Structural recursion: the unique algebra map out of the initial algebra.
// The algebra consumes one layer whose Id positions already carry results.
template <class X>
X fold(const Functor& shape, const std::function<X(const FVal<X, int>&)>& alg,
       const Term& t) {
    if (t.shape() != shape)
        throw validation_error("fold: term shape does not match");
    FVal<X, int> layer = fmap_value(
        shape, [&](const Term& sub) { return fold(shape, alg, sub); },
        t.layer());
    return alg(layer);
}

} // namespace catarch
