//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/rep.hpp"

#include <map>

namespace catarch {

LinearRep LinearRep::perm_rep(int dim, std::vector<Perm> gen_perms) {
    if (dim <= 0) throw validation_error("rep dimension must be positive");
    for (const auto& p : gen_perms) {
        if (static_cast<int>(p.size()) != dim)
            throw validation_error("rep generator degree mismatch");
        if (!perm_valid(p))
            throw validation_error("rep generator is not a permutation");
    }
    LinearRep r;
    r.dim_ = dim;
    r.is_perm_ = true;
    r.gen_perms_ = std::move(gen_perms);
    return r;
}

LinearRep LinearRep::mat_rep(int dim, std::vector<RatMat> gen_mats) {
    if (dim <= 0) throw validation_error("rep dimension must be positive");
    for (const auto& m : gen_mats) {
        if (static_cast<int>(m.size()) != dim)
            throw validation_error("rep generator matrix height mismatch");
        for (const auto& row : m)
            if (static_cast<int>(row.size()) != dim)
                throw validation_error("rep generator matrix width mismatch");
    }
    LinearRep r;
    r.dim_ = dim;
    r.is_perm_ = false;
    r.gen_mats_ = std::move(gen_mats);
    return r;
}

std::size_t LinearRep::num_gens() const {
    return is_perm_ ? gen_perms_.size() : gen_mats_.size();
}

const Perm& LinearRep::gen_perm(std::size_t k) const {
    if (!is_perm_)
        throw validation_error("rep is not a permutation representation");
    return gen_perms_.at(k);
}

RatMat LinearRep::gen_mat(std::size_t k) const {
    if (!is_perm_) return gen_mats_.at(k);
    const Perm& s = gen_perms_.at(k);
    RatMat m = rat_zero(dim_, dim_);
    for (int j = 0; j < dim_; ++j)
        m[static_cast<std::size_t>(s[static_cast<std::size_t>(j)])]
         [static_cast<std::size_t>(j)] = 1;
    return m;
}

LinearRep rep_vector(const GroupAction& g) {
    return LinearRep::perm_rep(g.degree(), g.generators());
}

LinearRep rep_entries(const GroupAction& g) {
    const int n = g.degree();
    std::vector<Perm> gens;
    gens.reserve(g.generators().size());
    for (const auto& s : g.generators()) {
        Perm p(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                p[static_cast<std::size_t>(i * n + j)] =
                    s[static_cast<std::size_t>(i)] * n +
                    s[static_cast<std::size_t>(j)];
        gens.push_back(std::move(p));
    }
    return LinearRep::perm_rep(n * n, std::move(gens));
}

LinearRep rep_trivial(int dim, std::size_t num_gens) {
    return LinearRep::perm_rep(
        dim, std::vector<Perm>(num_gens, perm_identity(dim)));
}

LinearRep rep_direct_sum(const LinearRep& a, const LinearRep& b) {
    if (a.num_gens() != b.num_gens())
        throw validation_error(
            "direct sum: generator counts differ (same group required)");
    const int dim = a.dim() + b.dim();
    if (a.is_perm() && b.is_perm()) {
        std::vector<Perm> gens;
        for (std::size_t k = 0; k < a.num_gens(); ++k) {
            Perm p(static_cast<std::size_t>(dim));
            for (int i = 0; i < a.dim(); ++i)
                p[static_cast<std::size_t>(i)] =
                    a.gen_perm(k)[static_cast<std::size_t>(i)];
            for (int i = 0; i < b.dim(); ++i)
                p[static_cast<std::size_t>(a.dim() + i)] =
                    a.dim() + b.gen_perm(k)[static_cast<std::size_t>(i)];
            gens.push_back(std::move(p));
        }
        return LinearRep::perm_rep(dim, std::move(gens));
    }
    std::vector<RatMat> mats;
    for (std::size_t k = 0; k < a.num_gens(); ++k) {
        RatMat m = rat_zero(dim, dim);
        RatMat ma = a.gen_mat(k), mb = b.gen_mat(k);
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    ma[static_cast<std::size_t>(i)]
                      [static_cast<std::size_t>(j)];
        for (int i = 0; i < b.dim(); ++i)
            for (int j = 0; j < b.dim(); ++j)
                m[static_cast<std::size_t>(a.dim() + i)]
                 [static_cast<std::size_t>(a.dim() + j)] =
                    mb[static_cast<std::size_t>(i)]
                      [static_cast<std::size_t>(j)];
        mats.push_back(std::move(m));
    }
    return LinearRep::mat_rep(dim, std::move(mats));
}

std::vector<RatMat> rep_closure_matrices(const LinearRep& rep,
                                         const GroupAction& g) {
    if (rep.num_gens() != g.generators().size())
        throw validation_error("rep/group generator counts differ");
    std::map<Perm, std::size_t> index;
    const auto& elems = g.closure();
    for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
    std::vector<RatMat> mats(elems.size());
    std::vector<bool> have(elems.size(), false);
    mats[0] = rat_identity(rep.dim());
    have[0] = true;
    // walk the closure breadth-first the same way it was generated
    std::vector<std::size_t> queue = {0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t at = queue[head];
        for (std::size_t k = 0; k < g.generators().size(); ++k) {
            Perm next = perm_compose(g.generators()[k], elems[at]);
            const std::size_t ni = index.at(next);
            RatMat nm = rat_mul(rep.gen_mat(k), mats[at]);
            if (!have[ni]) {
                mats[ni] = std::move(nm);
                have[ni] = true;
                queue.push_back(ni);
            } else if (!rat_eq(mats[ni], nm)) {
                throw validation_error(
                    "generator matrices do not extend to a representation "
                    "of the group (inconsistent along relations)");
            }
        }
    }
    return mats;
}

} // namespace catarch
