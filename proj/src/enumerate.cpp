//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/enumerate.hpp"

#include "catarch/errors.hpp"

namespace catarch {

namespace {

using V = FVal<Term, int>;

void enum_shape(const Functor& shape, int budget,
                const std::vector<std::vector<Term>>& pool,
                std::vector<V>& out) {
    switch (shape.kind()) {
    case FunctorKind::Const:
        if (budget == 0)
            for (std::size_t i = 0; i < shape.labels().size(); ++i)
                out.push_back(V::label(static_cast<int>(i)));
        return;
    case FunctorKind::Id:
        if (budget >= 0 && budget < static_cast<int>(pool.size()))
            for (const auto& t : pool[static_cast<std::size_t>(budget)])
                out.push_back(V::slot(t));
        return;
    case FunctorKind::Sum: {
        std::vector<V> l, r;
        enum_shape(shape.left(), budget, pool, l);
        enum_shape(shape.right(), budget, pool, r);
        for (auto& v : l) out.push_back(V::inl(std::move(v)));
        for (auto& v : r) out.push_back(V::inr(std::move(v)));
        return;
    }
    case FunctorKind::Prod: {
        for (int b = 0; b <= budget; ++b) {
            std::vector<V> l, r;
            enum_shape(shape.left(), b, pool, l);
            if (l.empty()) continue;
            enum_shape(shape.right(), budget - b, pool, r);
            for (const auto& a : l)
                for (const auto& c : r) out.push_back(V::pair(a, c));
        }
        return;
    }
    case FunctorKind::Pow: {
        // tables entry by entry, splitting the budget left to right
        const int n = static_cast<int>(shape.labels().size());
        std::vector<V> row;
        std::function<void(int, int)> go = [&](int i, int left) {
            if (i == n) {
                if (left == 0) out.push_back(V::table(row));
                return;
            }
            for (int b = 0; b <= left; ++b) {
                std::vector<V> entries;
                enum_shape(shape.body(), b, pool, entries);
                for (const auto& e : entries) {
                    row.push_back(e);
                    go(i + 1, left - b);
                    row.pop_back();
                }
            }
        };
        go(0, budget);
        return;
    }
    }
}

} // namespace

std::vector<V> enumerate_layers(const Functor& shape, int budget,
                                const std::vector<std::vector<Term>>& pool) {
    std::vector<V> out;
    enum_shape(shape, budget, pool, out);
    return out;
}

std::vector<std::vector<Term>> enumerate_terms_by_size(const Functor& shape,
                                                       int max_size,
                                                       EnumerateOptions opts) {
    if (max_size < 0) throw validation_error("enumerate: negative max_size");
    std::vector<std::vector<Term>> by_size(
        static_cast<std::size_t>(max_size) + 1);
    std::size_t total = 0;
    for (int s = 1; s <= max_size; ++s) {
        // a term of size s is one constructor over children of total size s-1
        auto layers = enumerate_layers(shape, s - 1, by_size);
        for (auto& l : layers) {
            total += 1;
            if (total > opts.cap)
                throw cap_error("enumerate: term count exceeds cap of " +
                                std::to_string(opts.cap));
            by_size[static_cast<std::size_t>(s)].push_back(
                Term::make(shape, std::move(l)));
        }
    }
    return by_size;
}

std::vector<Term> enumerate_terms(const Functor& shape, int max_size,
                                  EnumerateOptions opts) {
    auto by_size = enumerate_terms_by_size(shape, max_size, opts);
    std::vector<Term> out;
    for (const auto& bucket : by_size)
        out.insert(out.end(), bucket.begin(), bucket.end());
    return out;
}

} // namespace catarch
