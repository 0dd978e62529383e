//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/group.hpp"

#include <map>
#include <numeric>

namespace catarch {

Perm perm_identity(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

bool perm_valid(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size())) return false;
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

Perm perm_compose(const Perm& a, const Perm& b) {
    if (a.size() != b.size())
        throw validation_error("permutation degrees differ");
    Perm r(a.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] = a[static_cast<std::size_t>(b[i])];
    return r;
}

Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return r;
}

GroupAction GroupAction::make(int degree, std::vector<Perm> generators,
                              std::size_t cap) {
    if (degree <= 0) throw validation_error("group degree must be positive");
    for (const auto& g : generators) {
        if (static_cast<int>(g.size()) != degree)
            throw validation_error("generator degree mismatch");
        if (!perm_valid(g))
            throw validation_error("generator is not a permutation");
    }
    GroupAction a;
    a.degree_ = degree;
    a.generators_ = std::move(generators);
    // breadth-first closure: identity, then products with generators in a
    // deterministic discovery order
    std::map<Perm, std::size_t> index;
    std::vector<Perm> elems = {perm_identity(degree)};
    index.emplace(elems[0], 0);
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : a.generators_) {
            Perm next = perm_compose(g, elems[head]);
            if (index.emplace(next, elems.size()).second) {
                elems.push_back(std::move(next));
                if (elems.size() > cap)
                    throw cap_error(
                        "group closure exceeds cap of " + std::to_string(cap));
            }
        }
    }
    a.closure_ = std::move(elems);
    return a;
}

nlohmann::json GroupAction::to_json() const {
    nlohmann::json j;
    j["degree"] = degree_;
    j["generators"] = generators_;
    return j;
}

GroupAction GroupAction::from_json(const nlohmann::json& j, std::size_t cap) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("generators"))
        throw validation_error(
            "group json: 'degree' and 'generators' required");
    return make(j.at("degree").get<int>(),
                j.at("generators").get<std::vector<Perm>>(), cap);
}

GroupAction trivial_group(int degree) {
    return GroupAction::make(degree, {});
}

GroupAction cyclic_group(int n) {
    Perm rot(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rot[static_cast<std::size_t>(i)] = (i + 1) % n;
    return GroupAction::make(n, {rot});
}

GroupAction symmetric_group(int n) {
    if (n < 1) throw validation_error("symmetric group needs n >= 1");
    if (n == 1) return trivial_group(1);
    Perm swap01 = perm_identity(n);
    swap01[0] = 1;
    swap01[1] = 0;
    if (n == 2) return GroupAction::make(n, {swap01});
    Perm cycle(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        cycle[static_cast<std::size_t>(i)] = (i + 1) % n;
    return GroupAction::make(n, {swap01, cycle});
}

GroupAction dihedral_group(int n) {
    if (n < 3) throw validation_error("dihedral group needs n >= 3");
    Perm rot(static_cast<std::size_t>(n)), refl(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        rot[static_cast<std::size_t>(i)] = (i + 1) % n;
        refl[static_cast<std::size_t>(i)] = (n - i) % n;
    }
    return GroupAction::make(n, {rot, refl});
}

GroupAction klein_four_group() {
    return GroupAction::make(4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
}

GroupAction regular_action(const GroupAction& g, std::size_t cap) {
    const auto& elems = g.closure();
    std::map<Perm, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i)
        index.emplace(elems[i], static_cast<int>(i));
    std::vector<Perm> gens;
    gens.reserve(g.generators().size());
    for (const auto& s : g.generators()) {
        Perm p(elems.size());
        for (std::size_t i = 0; i < elems.size(); ++i)
            p[i] = index.at(perm_compose(s, elems[i]));
        gens.push_back(std::move(p));
    }
    return GroupAction::make(static_cast<int>(elems.size()), std::move(gens),
                             cap);
}

} // namespace catarch
