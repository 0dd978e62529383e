//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/orbit.hpp"

#include <set>
#include <utility>

namespace catarch {

WeightSharingPattern orbit_pattern(const LinearRep& rep_in,
                                   const LinearRep& rep_out,
                                   std::size_t cap) {
    if (!rep_in.is_perm() || !rep_out.is_perm())
        throw validation_error(
            "orbit counting requires permutation representations");
    if (rep_in.num_gens() != rep_out.num_gens())
        throw validation_error("orbit counting: generator counts differ");
    const int rows = rep_out.dim();
    const int cols = rep_in.dim();
    const std::size_t ngens = rep_in.num_gens();

    // size check on the simultaneous action: closure of the generator pairs
    {
        using PairPerm = std::pair<Perm, Perm>;
        std::set<PairPerm> seen;
        std::vector<PairPerm> queue;
        PairPerm id{perm_identity(rows), perm_identity(cols)};
        seen.insert(id);
        queue.push_back(std::move(id));
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (std::size_t k = 0; k < ngens; ++k) {
                PairPerm next{
                    perm_compose(rep_out.gen_perm(k), queue[head].first),
                    perm_compose(rep_in.gen_perm(k), queue[head].second)};
                if (seen.insert(next).second) {
                    if (seen.size() > cap)
                        throw cap_error("group closure exceeds cap");
                    queue.push_back(std::move(next));
                }
            }
        }
    }

    // entry orbits under (i,j) -> (rho_out(g) i, rho_in(g) j); generator
    // edges reach the whole orbit because every generator has finite order
    std::vector<std::vector<int>> cls(
        static_cast<std::size_t>(rows),
        std::vector<int>(static_cast<std::size_t>(cols), -1));
    int next_class = 0;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            if (cls[static_cast<std::size_t>(i)]
                   [static_cast<std::size_t>(j)] >= 0)
                continue;
            std::vector<std::pair<int, int>> stack{{i, j}};
            cls[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                next_class;
            while (!stack.empty()) {
                auto [a, b] = stack.back();
                stack.pop_back();
                for (std::size_t k = 0; k < ngens; ++k) {
                    const int na =
                        rep_out.gen_perm(k)[static_cast<std::size_t>(a)];
                    const int nb =
                        rep_in.gen_perm(k)[static_cast<std::size_t>(b)];
                    int& c = cls[static_cast<std::size_t>(na)]
                                [static_cast<std::size_t>(nb)];
                    if (c < 0) {
                        c = next_class;
                        stack.emplace_back(na, nb);
                    }
                }
            }
            ++next_class;
        }
    }
    return pattern_from_classes(std::move(cls));
}

} // namespace catarch
