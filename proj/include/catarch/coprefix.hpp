//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <limits>
#include <memory>
#include <utility>

#include "catarch/fvalue.hpp"

namespace catarch {

// A depth-bounded prefix of a final-coalgebra element: each node is either
// an explicit truncation marker or one observed layer whose Id slots hold
// strictly shallower prefixes. L is the observation payload stored at Const
// positions (label indices, numbers, ...). Equality is structural and, for
// floating payloads, bitwise on the observations.
template <class L>
class CoPrefix {
  public:
    // Depth sentinel for a branch that terminated inside the bound (a layer
    // with no Id positions): no truncation marker exists below it.
    static constexpr int kComplete = std::numeric_limits<int>::max() / 2;

    CoPrefix() { rep_ = std::make_shared<const Rep>(Rep{true, {}, 0}); }

    static CoPrefix truncated() { return CoPrefix(); }
    static CoPrefix layer(FVal<CoPrefix, L> observed) {
        int d = kComplete;
        std::vector<CoPrefix> slots;
        collect_slots(observed, slots);
        for (const auto& s : slots) d = std::min(d, s.depth());
        if (d != kComplete) d += 1;
        CoPrefix p;
        p.rep_ = std::make_shared<const Rep>(Rep{false, std::move(observed), d});
        return p;
    }

    bool is_truncated() const { return rep_->truncated; }
    const FVal<CoPrefix, L>& observed() const { return rep_->observed; }
    // Observed layers along the shallowest path to a truncation marker,
    // kComplete when every branch terminated inside the bound.
    int depth() const { return rep_->depth; }

    bool operator==(const CoPrefix& o) const {
        if (rep_ == o.rep_) return true;
        if (rep_->truncated != o.rep_->truncated) return false;
        if (rep_->truncated) return true;
        return rep_->observed == o.rep_->observed;
    }
    bool operator!=(const CoPrefix& o) const { return !(*this == o); }

  private:
    struct Rep {
        bool truncated;
        FVal<CoPrefix, L> observed;
        int depth;
    };
    std::shared_ptr<const Rep> rep_;
};

// Run a coalgebra step: X -> F(X) for `depth` layers from `seed`, recording
// observations. depth 0 is the bare truncation marker.
template <class X, class Coalg>
auto unfold(const Functor& shape, Coalg&& step, const X& seed, int depth) {
    using Obs = std::decay_t<decltype(step(seed))>; // FVal<X, L>
    using L = std::decay_t<decltype(std::declval<Obs>().label_value())>;
    if (depth <= 0) return CoPrefix<L>::truncated();
    Obs obs = step(seed);
    validate_value(shape, obs);
    return CoPrefix<L>::layer(fmap_value(
        shape,
        [&](const X& x) { return unfold(shape, step, x, depth - 1); }, obs));
}

// Cut a prefix down to at most `depth` observed layers (uniformly on every
// branch). Branches that terminated inside the bound are kept as-is.
template <class L>
CoPrefix<L> truncate(const Functor& shape, const CoPrefix<L>& p, int depth) {
    if (depth <= 0 || p.is_truncated()) return CoPrefix<L>::truncated();
    return CoPrefix<L>::layer(fmap_value(
        shape,
        [&](const CoPrefix<L>& sub) { return truncate(shape, sub, depth - 1); },
        p.observed()));
}

} // namespace catarch
