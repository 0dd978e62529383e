//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/checks.hpp"

#include <random>
#include <utility>

#include "catarch/arch.hpp"
#include "catarch/errors.hpp"
#include "catarch/orbit.hpp"
#include "catarch/para.hpp"

namespace catarch {

namespace {

std::vector<double> rand_vec(std::mt19937_64& rng, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v)
        x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    return v;
}

CellSpec suite_cell(CellKind kind, Nonlin fn) {
    CellSpec c;
    c.kind = kind;
    c.fn = fn;
    switch (kind) {
    case CellKind::FoldingRNN:
    case CellKind::RecursiveNN: c.a = 3, c.s = 4; break;
    case CellKind::UnfoldingRNN: c.s = 4, c.o = 3; break;
    case CellKind::Mealy:
    case CellKind::Moore: c.s = 3, c.i = 2, c.o = 2; break;
    }
    return c;
}

SuiteResult homomorphism_suite(std::uint64_t seed) {
    SuiteResult r{"homomorphism", seed, true, {}};
    struct Tier {
        const char* name;
        Nonlin fn;
        double tol;
        bool integer_values;
    };
    const Tier tiers[] = {
        {"integer", Nonlin::Identity, 0.0, true},
        {"identity", Nonlin::Identity, 1e-12, false},
        {"tanh", Nonlin::Tanh, 1e-6, false},
    };
    std::uint64_t salt = 0;
    for (int k = 0; k < 5; ++k) {
        CellKind kind = static_cast<CellKind>(k);
        for (const Tier& t : tiers) {
            Cell cell = make_cell(suite_cell(kind, t.fn));
            SquareReport rep = check_square(cell, 1000, t.tol, seed + salt++,
                                            t.integer_values);
            SuiteCase c;
            c.name = cell_kind_name(kind) + "/" + t.name;
            c.pass = rep.pass;
            c.details = rep.to_json();
            c.details["values"] = t.integer_values ? "integer" : "float";
            r.pass = r.pass && c.pass;
            r.cases.push_back(std::move(c));
        }
    }
    return r;
}

SuiteResult gradients_suite(std::uint64_t seed) {
    SuiteResult r{"gradients", seed, true, {}};
    for (int k = 0; k < 5; ++k) {
        CellKind kind = static_cast<CellKind>(k);
        ArchSpec spec;
        spec.cell = suite_cell(kind, Nonlin::Tanh);
        switch (kind) {
        case CellKind::FoldingRNN:
        case CellKind::RecursiveNN: spec.cell.s = 6; break;
        case CellKind::UnfoldingRNN: spec.cell.s = 6, spec.cell.o = 4; break;
        case CellKind::Mealy:
        case CellKind::Moore:
            spec.cell.s = 5, spec.cell.i = 3, spec.cell.o = 4;
            break;
        }
        spec.length = 5;
        spec.seed = seed + static_cast<std::uint64_t>(k);
        UnrolledNet net = build_arch(spec);

        std::mt19937_64 rng(seed * 31 + static_cast<std::uint64_t>(k));
        std::vector<Tensor> inputs;
        for (int id : net.graph.input_nodes())
            inputs.push_back(Tensor::vec(rand_vec(
                rng, net.graph.nodes()[static_cast<std::size_t>(id)].width)));

        FdReport rep =
            finite_diff_check(net.graph, net.store, inputs, 1e-5, 1e-4);
        SuiteCase c;
        c.name = cell_kind_name(kind);
        c.pass = rep.pass;
        c.details = rep.to_json();
        c.details["instances"] = net.instances;
        r.pass = r.pass && c.pass;
        r.cases.push_back(std::move(c));
    }
    return r;
}

SuiteResult comonoid_suite(std::uint64_t seed) {
    SuiteResult r{"comonoid", seed, true, {}};
    std::vector<ParamShape> shapes = {
        ParamShape::of({{"m", {2, 2}}, {"v", {3}}}),
        ParamShape::of({{"s", {1}}}),
        ParamShape::of({{"a", {2}}, {"b", {2}}, {"c", {4}}}),
    };
    std::mt19937_64 rng(seed);
    for (const auto& P : shapes) {
        Reparam copy = reparam_copy(P);
        Reparam id = reparam_identity(P);
        Reparam del = reparam_delete(P);
        Reparam counit_l = reparam_compose(reparam_tensor(id, del), copy);
        Reparam counit_r = reparam_compose(reparam_tensor(del, id), copy);
        Reparam coassoc_l = reparam_compose(reparam_tensor(copy, id), copy);
        Reparam coassoc_r = reparam_compose(reparam_tensor(id, copy), copy);

        bool ok = true;
        for (int t = 0; t < 100 && ok; ++t) {
            auto p = rand_vec(rng, P.total());
            auto ppp = p;
            ppp.insert(ppp.end(), p.begin(), p.end());
            ppp.insert(ppp.end(), p.begin(), p.end());
            ok = reparam_eval(counit_l, p) == p &&
                 reparam_eval(counit_r, p) == p &&
                 reparam_eval(coassoc_l, p) == ppp &&
                 reparam_eval(coassoc_r, p) == ppp;
        }
        std::string name;
        for (const auto& f : P.fields) {
            if (!name.empty()) name += "+";
            name += f.name;
            for (std::size_t d = 0; d < f.shape.size(); ++d)
                name += (d ? "x" : "") + std::to_string(f.shape[d]);
        }
        SuiteCase c;
        c.name = name;
        c.pass = ok;
        c.details = {{"vectors", 100}, {"coords", P.total()}};
        r.pass = r.pass && c.pass;
        r.cases.push_back(std::move(c));
    }
    return r;
}

SuiteResult solver_suite(std::uint64_t seed) {
    SuiteResult r{"solver", seed, true, {}};
    auto push = [&](std::string name, bool pass, nlohmann::json details) {
        r.pass = r.pass && pass;
        r.cases.push_back({std::move(name), pass, std::move(details)});
    };

    {
        LinearRep v = rep_vector(cyclic_group(2));
        auto basis = equivariance_basis(v, v);
        bool ok = basis.dimension() == 2 &&
                  pattern_of_basis(basis) == orbit_pattern(v, v);
        push("pixel swap equivariance", ok,
             {{"dimension", basis.dimension()}});
    }
    {
        LinearRep v = rep_vector(cyclic_group(2));
        auto basis = invariance_basis(v, 2);
        bool ok =
            basis.dimension() == 2 &&
            pattern_of_basis(basis) ==
                orbit_pattern(v, rep_trivial(2, v.num_gens()));
        push("pixel swap invariance", ok, {{"dimension", basis.dimension()}});
    }
    {
        LinearRep v = rep_vector(cyclic_group(8));
        auto basis = equivariance_basis(v, v);
        auto pat = pattern_of_basis(basis);
        bool ok = basis.dimension() == 8 && pat == orbit_pattern(v, v);
        for (int i = 0; i < 8 && ok; ++i)
            for (int j = 0; j < 8; ++j)
                if (pat.class_of[static_cast<std::size_t>(i)]
                                [static_cast<std::size_t>(j)] !=
                    pat.class_of[0][static_cast<std::size_t>((j - i + 8) %
                                                             8)]) {
                    ok = false;
                    break;
                }
        push("circulant shift", ok, {{"dimension", basis.dimension()}});
    }
    {
        std::vector<GroupAction> groups;
        for (int n = 1; n <= 3; ++n) groups.push_back(trivial_group(n));
        for (int n = 2; n <= 8; ++n) groups.push_back(cyclic_group(n));
        for (int n = 2; n <= 4; ++n) groups.push_back(symmetric_group(n));
        groups.push_back(dihedral_group(3));
        groups.push_back(dihedral_group(4));
        groups.push_back(klein_four_group());
        groups.push_back(regular_action(cyclic_group(4)));
        groups.push_back(regular_action(symmetric_group(3)));
        groups.push_back(regular_action(klein_four_group()));

        int pairs = 0;
        bool ok = true;
        for (const auto& g : groups) {
            const auto ng = g.generators().size();
            LinearRep v = rep_vector(g);
            std::vector<std::pair<LinearRep, LinearRep>> cases;
            cases.emplace_back(v, v);
            cases.emplace_back(v, rep_trivial(1, ng));
            cases.emplace_back(rep_trivial(2, ng), v);
            if (g.degree() <= 2) {
                LinearRep e = rep_entries(g);
                cases.emplace_back(e, e);
                cases.emplace_back(e, v);
            }
            for (const auto& [in, out] : cases) {
                auto basis = equivariance_basis(in, out);
                auto orb = orbit_pattern(in, out);
                ok = ok && basis.dimension() == orb.num_classes &&
                     pattern_of_basis(basis) == orb;
                ++pairs;
            }
        }
        push("oracle sweep", ok, {{"pairs", pairs}});
    }
    return r;
}

} // namespace

nlohmann::json SuiteResult::to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : cases)
        cs.push_back(
            {{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
    return {{"suite", suite},
            {"seed", seed},
            {"pass", pass},
            {"cases", cs}};
}

std::vector<std::string> known_suites() {
    return {"homomorphism", "gradients", "comonoid", "solver", "all"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "homomorphism") return homomorphism_suite(seed);
    if (name == "gradients") return gradients_suite(seed);
    if (name == "comonoid") return comonoid_suite(seed);
    if (name == "solver") return solver_suite(seed);
    if (name == "all") {
        SuiteResult all{"all", seed, true, {}};
        for (const auto& sub :
             {"homomorphism", "gradients", "comonoid", "solver"}) {
            SuiteResult s = run_suite(sub, seed);
            all.pass = all.pass && s.pass;
            for (auto& c : s.cases) {
                c.name = s.suite + "/" + c.name;
                all.cases.push_back(std::move(c));
            }
        }
        return all;
    }
    throw validation_error("unknown suite '" + name + "'");
}

CheckSpec CheckSpec::from_json(const nlohmann::json& j) {
    expect_keys(j, "check spec", {"suite", "seed"});
    CheckSpec c;
    c.suite = spec_string(j, "check spec", "suite");
    if (j.contains("seed"))
        c.seed =
            static_cast<std::uint64_t>(spec_int(j, "check spec", "seed", 0));
    return c;
}

} // namespace catarch
