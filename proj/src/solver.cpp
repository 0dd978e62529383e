//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/solver.hpp"

#include <map>

#include "catarch/errors.hpp"

namespace catarch {

EquivariantBasis solve_intertwiners(const std::vector<RatMat>& in_mats,
                                    const std::vector<RatMat>& out_mats,
                                    int in_dim, int out_dim) {
    if (in_dim <= 0 || out_dim <= 0)
        throw validation_error("intertwiner solve: dimensions must be positive");
    if (in_mats.size() != out_mats.size())
        throw validation_error("intertwiner solve: constraint counts differ");
    auto check_square = [](const RatMat& m, int d) {
        if (static_cast<int>(m.size()) != d)
            throw validation_error("intertwiner solve: matrix size mismatch");
        for (const auto& row : m)
            if (static_cast<int>(row.size()) != d)
                throw validation_error(
                    "intertwiner solve: matrix size mismatch");
    };
    for (const auto& m : in_mats) check_square(m, in_dim);
    for (const auto& m : out_mats) check_square(m, out_dim);

    // unknowns: W vectorized row-major, w[i*in_dim + j] = W[i][j].
    // W A = B W gives, per entry (i,j):
    //   sum_k A[k][j] w[i*in_dim+k] - sum_k B[i][k] w[k*in_dim+j] = 0
    const int unknowns = out_dim * in_dim;
    RatMat sys;
    sys.reserve(in_mats.size() * static_cast<std::size_t>(unknowns));
    for (std::size_t g = 0; g < in_mats.size(); ++g) {
        const RatMat& A = in_mats[g];
        const RatMat& B = out_mats[g];
        for (int i = 0; i < out_dim; ++i) {
            for (int j = 0; j < in_dim; ++j) {
                std::vector<Rat> row(static_cast<std::size_t>(unknowns),
                                     Rat(0));
                for (int k = 0; k < in_dim; ++k)
                    row[static_cast<std::size_t>(i * in_dim + k)] +=
                        A[static_cast<std::size_t>(k)]
                         [static_cast<std::size_t>(j)];
                for (int k = 0; k < out_dim; ++k)
                    row[static_cast<std::size_t>(k * in_dim + j)] -=
                        B[static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(k)];
                bool all_zero = true;
                for (const auto& v : row)
                    if (v != 0) {
                        all_zero = false;
                        break;
                    }
                if (!all_zero) sys.push_back(std::move(row));
            }
        }
    }

    EquivariantBasis basis;
    basis.rows = out_dim;
    basis.cols = in_dim;
    for (auto& vec : nullspace(std::move(sys), unknowns)) {
        RatMat w = rat_zero(out_dim, in_dim);
        for (int i = 0; i < out_dim; ++i)
            for (int j = 0; j < in_dim; ++j)
                w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    std::move(vec[static_cast<std::size_t>(i * in_dim + j)]);
        basis.mats.push_back(std::move(w));
    }
    return basis;
}

EquivariantBasis equivariance_basis(const LinearRep& rep_in,
                                    const LinearRep& rep_out, int dim_cap) {
    if (rep_in.num_gens() != rep_out.num_gens())
        throw validation_error("equivariance: generator counts differ");
    if (rep_in.dim() > dim_cap || rep_out.dim() > dim_cap)
        throw cap_error("representation dimension exceeds cap");
    std::vector<RatMat> in_mats, out_mats;
    for (std::size_t k = 0; k < rep_in.num_gens(); ++k) {
        in_mats.push_back(rep_in.gen_mat(k));
        out_mats.push_back(rep_out.gen_mat(k));
    }
    return solve_intertwiners(in_mats, out_mats, rep_in.dim(), rep_out.dim());
}

EquivariantBasis invariance_basis(const LinearRep& rep_in, int out_dim,
                                  int dim_cap) {
    return equivariance_basis(
        rep_in, rep_trivial(out_dim, rep_in.num_gens()), dim_cap);
}

WeightSharingPattern pattern_of_basis(const EquivariantBasis& basis) {
    // entries are tied iff they carry identical coefficients across every
    // basis matrix; an all-zero profile is a forced zero
    std::vector<std::vector<int>> cls(
        static_cast<std::size_t>(basis.rows),
        std::vector<int>(static_cast<std::size_t>(basis.cols), -1));
    std::map<std::vector<Rat>, int> classes;
    for (int i = 0; i < basis.rows; ++i) {
        for (int j = 0; j < basis.cols; ++j) {
            std::vector<Rat> profile;
            profile.reserve(basis.mats.size());
            bool all_zero = true;
            for (const auto& m : basis.mats) {
                profile.push_back(m[static_cast<std::size_t>(i)]
                                   [static_cast<std::size_t>(j)]);
                if (profile.back() != 0) all_zero = false;
            }
            if (all_zero) continue;
            auto it = classes.find(profile);
            if (it == classes.end())
                it = classes
                         .emplace(std::move(profile),
                                  static_cast<int>(classes.size()))
                         .first;
            cls[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                it->second;
        }
    }
    WeightSharingPattern p = pattern_from_classes(std::move(cls));
    p.dimension = basis.dimension();
    return p;
}

} // namespace catarch
