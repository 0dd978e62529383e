//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/free_monad.hpp"

#include <algorithm>
#include <map>

namespace catarch {

using V = FVal<Term, int>;
using FV = FVal<FreeTerm, int>;

Functor free_shape(const Functor& base, int num_vars) {
    if (num_vars <= 0)
        throw validation_error("free terms need a non-empty variable set");
    std::vector<std::string> vars;
    vars.reserve(static_cast<std::size_t>(num_vars));
    for (int i = 0; i < num_vars; ++i)
        vars.push_back("z" + std::to_string(i));
    return Functor::sum(base, Functor::constant(std::move(vars)));
}

static int term_depth(const Term& t) {
    int deepest = 0;
    std::vector<Term> subs;
    collect_slots(t.layer(), subs);
    for (const auto& s : subs) deepest = std::max(deepest, term_depth(s));
    return 1 + deepest;
}

FreeTerm FreeTerm::from_term(const Functor& base, int num_vars,
                             const Term& t) {
    if (t.shape() != free_shape(base, num_vars))
        throw validation_error("free term: backing term has wrong shape");
    FreeTerm f;
    f.base_ = base;
    f.num_vars_ = num_vars;
    f.term_ = t;
    if (f.depth() > kFreeDepthCap)
        throw cap_error("free term exceeds depth cap of " +
                        std::to_string(kFreeDepthCap));
    return f;
}

FreeTerm FreeTerm::var(const Functor& base, int num_vars, int v) {
    if (v < 0 || v >= num_vars)
        throw validation_error("variable " + std::to_string(v) +
                               " not in the declared set of " +
                               std::to_string(num_vars));
    Functor shape = free_shape(base, num_vars);
    return from_term(base, num_vars,
                     Term::make(shape, V::inr(V::label(v))));
}

FreeTerm FreeTerm::op(const Functor& base, int num_vars,
                      FVal<FreeTerm, int> layer) {
    Functor shape = free_shape(base, num_vars);
    auto backing = fmap_value(
        base,
        [&](const FreeTerm& f) {
            if (f.base() != base || f.num_vars() != num_vars)
                throw validation_error(
                    "free term: children disagree on base or variable set");
            return f.as_term();
        },
        layer);
    validate_value(base, layer);
    return from_term(base, num_vars,
                     Term::make(shape, V::inl(std::move(backing))));
}

bool FreeTerm::is_var() const {
    return term_.layer().tag() == V::Tag::Inr;
}

int FreeTerm::var_index() const {
    if (!is_var()) throw validation_error("free term is not a variable");
    return term_.layer().child(0).label_value();
}

FV FreeTerm::op_layer() const {
    if (is_var()) throw validation_error("free term is a variable");
    const Functor b = base_;
    const int n = num_vars_;
    return fmap_value(
        b, [&](const Term& t) { return FreeTerm::from_term(b, n, t); },
        term_.layer().child(0));
}

int FreeTerm::depth() const { return term_depth(term_); }

FreeTerm free_pure(const Functor& base, int num_vars, int v) {
    return FreeTerm::var(base, num_vars, v);
}

FreeTerm free_join(const FreeTerm& outer,
                   const std::vector<FreeTerm>& bindings) {
    if (static_cast<int>(bindings.size()) != outer.num_vars())
        throw validation_error("join: one binding per outer variable required");
    const int num_vars = bindings.front().num_vars();
    for (const auto& b : bindings) {
        if (b.base() != outer.base())
            throw validation_error("join: bindings disagree on base shape");
        if (b.num_vars() != num_vars)
            throw validation_error("join: bindings disagree on variable set");
    }
    if (outer.is_var())
        return bindings[static_cast<std::size_t>(outer.var_index())];
    auto grafted = fmap_value(
        outer.base(),
        [&](const FreeTerm& sub) { return free_join(sub, bindings); },
        outer.op_layer());
    // op() re-checks the depth cap, so oversized grafts error here
    return FreeTerm::op(outer.base(), num_vars, std::move(grafted));
}

FreeTerm free_rename(const FreeTerm& t, const std::vector<int>& var_map,
                     int new_num_vars) {
    if (static_cast<int>(var_map.size()) != t.num_vars())
        throw validation_error("rename: map must cover the variable set");
    std::vector<FreeTerm> bindings;
    bindings.reserve(var_map.size());
    for (int v : var_map)
        bindings.push_back(free_pure(t.base(), new_num_vars, v));
    return free_join(t, bindings);
}

std::vector<std::vector<FreeTerm>> free_iteration_stages(
    const Functor& base, int num_vars, int max_size, int iterations,
    EnumerateOptions opts) {
    if (iterations > kFreeDepthCap)
        throw cap_error("iteration count exceeds depth cap of " +
                        std::to_string(kFreeDepthCap));
    std::vector<std::vector<FreeTerm>> stages;
    std::map<std::string, FreeTerm> current;
    for (int v = 0; v < num_vars; ++v) {
        FreeTerm f = free_pure(base, num_vars, v);
        current.emplace(f.key(), f);
    }
    auto snapshot = [&]() {
        std::vector<FreeTerm> s;
        s.reserve(current.size());
        for (const auto& [k, f] : current) s.push_back(f);
        return s;
    };
    stages.push_back(snapshot());
    for (int k = 0; k < iterations; ++k) {
        // group the current stage by size, then extend by one layer
        std::vector<std::vector<Term>> pool(
            static_cast<std::size_t>(max_size) + 1);
        for (const auto& [key, f] : current) {
            (void)key;
            if (static_cast<int>(f.size()) <= max_size)
                pool[f.size()].push_back(f.as_term());
        }
        std::map<std::string, FreeTerm> next = current;
        std::size_t total = next.size();
        for (int s = 1; s <= max_size; ++s) {
            auto layers = enumerate_layers(base, s - 1, pool);
            for (auto& l : layers) {
                auto lifted = fmap_value(
                    base,
                    [&](const Term& t) {
                        return FreeTerm::from_term(base, num_vars, t);
                    },
                    l);
                FreeTerm f = FreeTerm::op(base, num_vars, std::move(lifted));
                if (next.emplace(f.key(), f).second) {
                    total += 1;
                    if (total > opts.cap)
                        throw cap_error("iteration: term count exceeds cap");
                }
            }
        }
        current = std::move(next);
        stages.push_back(snapshot());
    }
    return stages;
}

} // namespace catarch
