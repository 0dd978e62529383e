//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "catarch/errors.hpp"
#include "catarch/para.hpp"

using namespace catarch;

namespace {

std::vector<double> rand_vec(std::mt19937_64& rng, int n) {
    std::vector<double> v(n);
    for (double& x : v)
        x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    return v;
}

// y = W x + b, fields w [out,in] and b [out]
ParaMap make_affine(int in, int out, bool tanh_after = false) {
    Graph g;
    int w = g.add_input("p0", out * in);
    int b = g.add_input("p1", out);
    int x = g.add_input("x0", in);
    int lin = g.add_linear("lin", {x, 0}, {w, 0}, in, out);
    int y = g.add_bias("add", {lin, 0}, {b, 0});
    if (tanh_after) y = g.add_pointwise("act", {y, 0}, Nonlin::Tanh);
    g.mark_output({y, 0});
    return para_from_graph(
        ParamShape::of({{"w", {out, in}}, {"b", {out}}}), {in}, {out},
        std::move(g));
}

// y = s * x on scalars, single field s [1,1]
ParaMap make_scale() {
    Graph g;
    int s = g.add_input("p0", 1);
    int x = g.add_input("x0", 1);
    g.mark_output({g.add_linear("mul", {x, 0}, {s, 0}, 1, 1), 0});
    return para_from_graph(ParamShape::of({{"s", {1, 1}}}), {1}, {1},
                           std::move(g));
}

// fixed linear reparam: one source field, one target field, values W t
Reparam make_linear_reparam(const std::string& sname, const std::string& tname,
                            int sdim, int tdim, std::vector<double> w_rowmajor) {
    Graph g;
    int t = g.add_input("t0", tdim);
    int w = g.add_const("w", std::move(w_rowmajor));
    g.mark_output({g.add_linear("mix", {t, 0}, {w, 0}, tdim, sdim), 0});
    return make_reparam(ParamShape::of({{sname, {sdim}}}),
                        ParamShape::of({{tname, {tdim}}}), std::move(g));
}

PVal dvec(std::vector<double> v) { return PVal::slot(std::move(v)); }

} // namespace

TEST_CASE("parameter shapes form a monoid under concatenation") {
    ParamShape a = ParamShape::of({{"w", {2, 2}}, {"b", {2}}});
    ParamShape b = ParamShape::of({{"w", {3}}});
    ParamShape c = ParamShape::of({{"u", {1, 4}}});

    CHECK(param_concat(a, ParamShape::unit()) == a);
    CHECK(param_concat(ParamShape::unit(), a) == a);
    CHECK(param_concat(param_concat(a, b), c) ==
          param_concat(a, param_concat(b, c)));
    CHECK(param_concat(a, b).total() == a.total() + b.total());

    // name clashes are renamed, never merged
    ParamShape ab = param_concat(a, b);
    REQUIRE(ab.fields.size() == 3);
    CHECK(ab.fields[0].name == "w");
    CHECK(ab.fields[1].name == "b");
    CHECK(ab.fields[2].name == "w_2");
    CHECK(ab.fields[2].shape == std::vector<int>{3});

    CHECK(param_concat(a, a).splits_in_half());
    CHECK(param_concat(a, a).first_half() == a);
    CHECK_FALSE(param_concat(a, b).splits_in_half());
    CHECK_FALSE(ParamShape::of({{"w", {2}}}).splits_in_half());
    CHECK(ParamShape::unit().splits_in_half()); // trivially, both halves empty
}

TEST_CASE("embedding a plain map adds a unit parameter") {
    Graph g;
    int x = g.add_input("x0", 2);
    int w = g.add_const("w", {3.0, 0.0, 0.0, 3.0});
    g.mark_output({g.add_linear("lin", {x, 0}, {w, 0}, 2, 2), 0});
    auto raw = g; // keep a copy for the oracle
    ParaMap f = para_embed({2}, {2}, std::move(g));

    CHECK(f.param.total() == 0);
    std::vector<Tensor> xs = {Tensor::vec({1.5, -2.0})};
    CHECK(para_forward(f, {}, xs) == forward(raw, ParamStore(), xs));
    CHECK(para_forward(f, {}, xs)[0].data == std::vector<double>{4.5, -6.0});

    ParaMap id2 = para_identity(2);
    CHECK(para_forward(id2, {}, xs)[0].data == xs[0].data);
}

TEST_CASE("embedding respects composition") {
    // f doubles, g negates; both parameter-free
    Graph gf;
    {
        int x = gf.add_input("x0", 2);
        int w = gf.add_const("w", {2.0, 0.0, 0.0, 2.0});
        gf.mark_output({gf.add_linear("lin", {x, 0}, {w, 0}, 2, 2), 0});
    }
    Graph gg;
    {
        int x = gg.add_input("x0", 2);
        int w = gg.add_const("w", {-1.0, 0.0, 0.0, -1.0});
        gg.mark_output({gg.add_linear("lin", {x, 0}, {w, 0}, 2, 2), 0});
    }
    // splice the two fragments into one plain graph: the unparametrised oracle
    Graph seq;
    {
        int x = seq.add_input("x0", 2);
        auto mid = seq.splice(gf, {{x, 0}}, "f/");
        auto out = seq.splice(gg, mid, "g/");
        seq.mark_output(out[0]);
    }
    ParaMap lhs = para_embed({2}, {2}, std::move(seq));
    ParaMap rhs = para_compose(para_embed({2}, {2}, std::move(gg)),
                               para_embed({2}, {2}, std::move(gf)));

    CHECK(rhs.param.total() == 0);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        std::vector<Tensor> xs = {Tensor::vec(rand_vec(rng, 2))};
        CHECK(para_forward(lhs, {}, xs) == para_forward(rhs, {}, xs));
    }
}

TEST_CASE("composition stacks parameters with the later map first") {
    ParaMap f = make_affine(2, 3);
    ParaMap g = make_affine(3, 2);
    ParaMap comp = para_compose(g, f);

    REQUIRE(comp.param.fields.size() == 4);
    CHECK(comp.param.fields[0].shape == std::vector<int>{2, 3}); // g's w
    CHECK(comp.param.fields[1].shape == std::vector<int>{2});
    CHECK(comp.param.fields[2].shape == std::vector<int>{3, 2}); // f's w
    CHECK(comp.param.fields[3].shape == std::vector<int>{3});
    CHECK(comp.param.total() == g.param.total() + f.param.total());
    CHECK(comp.in_widths == std::vector<int>{2});
    CHECK(comp.out_widths == std::vector<int>{2});

    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        auto q = rand_vec(rng, g.param.total());
        auto p = rand_vec(rng, f.param.total());
        auto x = Tensor::vec(rand_vec(rng, 2));
        auto qp = q;
        qp.insert(qp.end(), p.begin(), p.end());
        auto stage = para_forward(f, p, {x});
        CHECK(para_forward(comp, qp, {x}) == para_forward(g, q, stage));
    }
}

TEST_CASE("composition is associative and unital") {
    ParaMap f = make_affine(2, 3);
    ParaMap g = make_affine(3, 3, true);
    ParaMap h = make_affine(3, 2);

    ParaMap left = para_compose(para_compose(h, g), f);
    ParaMap right = para_compose(h, para_compose(g, f));
    CHECK(left.param == right.param);
    CHECK(left.in_widths == right.in_widths);
    CHECK(left.out_widths == right.out_widths);

    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; ++t) {
        auto ps = rand_vec(rng, left.param.total());
        std::vector<Tensor> xs = {Tensor::vec(rand_vec(rng, 2))};
        CHECK(para_forward(left, ps, xs) == para_forward(right, ps, xs));
    }

    ParaMap lu = para_compose(f, para_identity(2));
    ParaMap ru = para_compose(para_identity(3), f);
    CHECK(lu.param == f.param);
    CHECK(ru.param == f.param);
    for (int t = 0; t < 20; ++t) {
        auto ps = rand_vec(rng, f.param.total());
        std::vector<Tensor> xs = {Tensor::vec(rand_vec(rng, 2))};
        auto want = para_forward(f, ps, xs);
        CHECK(para_forward(lu, ps, xs) == want);
        CHECK(para_forward(ru, ps, xs) == want);
    }
}

TEST_CASE("reparameterisation rewires parameters before the map") {
    // f(s, t, x) = s*x + t on scalars
    Graph g;
    int s = g.add_input("p0", 1);
    int t = g.add_input("p1", 1);
    int x = g.add_input("x0", 1);
    int lin = g.add_linear("mul", {x, 0}, {s, 0}, 1, 1);
    g.mark_output({g.add_bias("add", {lin, 0}, {t, 0}), 0});
    ParaMap f = para_from_graph(
        ParamShape::of({{"s", {1}}, {"t", {1}}}), {1}, {1}, std::move(g));

    SUBCASE("identity reparam changes nothing") {
        ParaMap f2 = reparam_apply(reparam_identity(f.param), f);
        CHECK(f2.param == f.param);
        CHECK(para_forward(f2, {2.0, 5.0}, {Tensor::vec({3.0})})[0].data ==
              std::vector<double>{11.0});
    }

    SUBCASE("copy ties both fields to one") {
        ParaMap tied = weight_tie(f);
        REQUIRE(tied.param.fields.size() == 1);
        CHECK(tied.param.fields[0].shape == std::vector<int>{1});
        // a*x + a
        CHECK(para_forward(tied, {2.0}, {Tensor::vec({3.0})})[0].data ==
              std::vector<double>{8.0});
        CHECK(para_forward(tied, {-1.0}, {Tensor::vec({4.0})})[0].data ==
              std::vector<double>{-5.0});
    }

    SUBCASE("swap exchanges the two fields") {
        ParamShape ps = ParamShape::of({{"s", {1}}});
        ParamShape pt = ParamShape::of({{"t", {1}}});
        // function s (x) t -> t (x) s applies to f's parameter read as t,s
        Reparam sw = reparam_swap(ps, pt);
        CHECK(sw.source == f.param);
        ParaMap f2 = reparam_apply(sw, f);
        // f2(a, b, x) = f(b, a, x) = b*x + a
        CHECK(para_forward(f2, {5.0, 2.0}, {Tensor::vec({3.0})})[0].data ==
              std::vector<double>{11.0});
    }

    SUBCASE("fixed linear mixes parameters") {
        // p = [u, v] |-> s = u - v, t = 2u
        Graph m;
        int p = m.add_input("t0", 2);
        int w1 = m.add_const("w1", {1.0, -1.0});
        int w2 = m.add_const("w2", {2.0, 0.0});
        m.mark_output({m.add_linear("ms", {p, 0}, {w1, 0}, 2, 1), 0});
        m.mark_output({m.add_linear("mt", {p, 0}, {w2, 0}, 2, 1), 0});
        Reparam r = make_reparam(f.param, ParamShape::of({{"uv", {2}}}),
                                 std::move(m));
        CHECK(reparam_eval(r, {3.0, 1.0}) == std::vector<double>{2.0, 6.0});
        ParaMap f2 = reparam_apply(r, f);
        // f2([u,v], x) = (u-v)*x + 2u
        CHECK(para_forward(f2, {3.0, 1.0}, {Tensor::vec({4.0})})[0].data ==
              std::vector<double>{14.0});
    }
}

TEST_CASE("deleting an unused parameter weakens for free") {
    Graph g;
    int x = g.add_input("x0", 2);
    int w = g.add_const("w", {1.0, 2.0, -1.0, 0.5});
    g.mark_output({g.add_linear("lin", {x, 0}, {w, 0}, 2, 2), 0});
    ParaMap f0 = para_embed({2}, {2}, std::move(g));

    ParamShape P = ParamShape::of({{"junk", {5}}});
    ParaMap weak = reparam_apply(reparam_delete(P), f0);
    CHECK(weak.param == P);

    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        auto p = rand_vec(rng, 5);
        std::vector<Tensor> xs = {Tensor::vec(rand_vec(rng, 2))};
        CHECK(para_forward(weak, p, xs) == para_forward(f0, {}, xs));
    }

    auto rep = check_reparam_triangle(reparam_delete(P), f0, weak, 25, 0.0);
    CHECK(rep.ok);
    CHECK(rep.max_abs_residual == 0.0);
}

TEST_CASE("reparameterisation is contravariant") {
    // f(c, x) = <c, x> on width 2
    Graph g;
    int c = g.add_input("p0", 2);
    int x = g.add_input("x0", 2);
    g.mark_output({g.add_linear("dot", {x, 0}, {c, 0}, 2, 1), 0});
    ParaMap f = para_from_graph(ParamShape::of({{"c", {2}}}), {2}, {1},
                                std::move(g));

    Reparam r = make_linear_reparam("c", "b", 2, 2, {0.0, 1.0, 1.0, 0.0});
    Reparam s = make_linear_reparam("b", "a", 2, 2, {2.0, 1.0, 0.0, -1.0});

    Reparam rs = reparam_compose(r, s);
    CHECK(rs.source == r.source);
    CHECK(rs.target == s.target);
    // r(s(a)) pointwise
    std::mt19937_64 rng(19);
    for (int t = 0; t < 20; ++t) {
        auto a = rand_vec(rng, 2);
        CHECK(reparam_eval(rs, a) == reparam_eval(r, reparam_eval(s, a)));
    }

    ParaMap nested = reparam_apply(s, reparam_apply(r, f));
    ParaMap direct = reparam_apply(rs, f);
    CHECK(nested.param == direct.param);
    for (int t = 0; t < 20; ++t) {
        auto a = rand_vec(rng, 2);
        std::vector<Tensor> xs = {Tensor::vec(rand_vec(rng, 2))};
        CHECK(para_forward(nested, a, xs) == para_forward(direct, a, xs));
    }
}

TEST_CASE("triangle check accepts tied maps and rejects untied ones") {
    // f(u, v, x) = u*x + 2*v*x
    Graph g;
    int u = g.add_input("p0", 1);
    int v = g.add_input("p1", 1);
    int x = g.add_input("x0", 1);
    int xa = g.add_copy("xc", {x, 0}, 2);
    int l1 = g.add_linear("l1", {xa, 0}, {u, 0}, 1, 1);
    int l2 = g.add_linear("l2", {xa, 1}, {v, 0}, 1, 1);
    int two = g.add_const("two", {2.0});
    int l2b = g.add_linear("dbl", {l2, 0}, {two, 0}, 1, 1);
    g.mark_output({g.add_sum("sum", {{l1, 0}, {l2b, 0}}), 0});
    ParaMap f = para_from_graph(
        ParamShape::of({{"u", {1}}, {"v", {1}}}), {1}, {1}, std::move(g));

    Reparam delta = reparam_copy(f.param.first_half());
    ParaMap tied = weight_tie(f);
    auto good = check_reparam_triangle(delta, f, tied, 50, 0.0);
    CHECK(good.ok);
    CHECK(good.max_abs_residual == 0.0);

    // forgetting the v-branch is not a valid tying: p*x vs 3*p*x
    Graph wg;
    int wp = wg.add_input("p0", 1);
    int wx = wg.add_input("x0", 1);
    wg.mark_output({wg.add_linear("mul", {wx, 0}, {wp, 0}, 1, 1), 0});
    ParaMap wrong = para_from_graph(ParamShape::of({{"u", {1}}}), {1}, {1},
                                    std::move(wg));
    auto bad = check_reparam_triangle(delta, f, wrong, 50, 1e-9);
    CHECK_FALSE(bad.ok);
    CHECK(bad.max_abs_residual > 0.1);
}

TEST_CASE("weight tying equals running the same parameters twice") {
    ParaMap step = make_affine(2, 2, true);
    ParaMap twostep = para_compose(step, step);
    CHECK(twostep.param.splits_in_half());
    ParaMap tied = weight_tie(twostep);
    CHECK(tied.param == step.param);

    std::mt19937_64 rng(23);
    for (int t = 0; t < 50; ++t) {
        auto p = rand_vec(rng, step.param.total());
        auto x = Tensor::vec(rand_vec(rng, 2));
        auto once = para_forward(step, p, {x});
        auto twice = para_forward(step, p, once);
        CHECK(para_forward(tied, p, {x}) == twice);
    }
}

TEST_CASE("tying sums the partial gradients") {
    // f(w, v, x) = w*x + v*x; tied gradient must be the sum of both partials
    Graph g;
    int w = g.add_input("p0", 1);
    int v = g.add_input("p1", 1);
    int x = g.add_input("x0", 1);
    int xa = g.add_copy("xc", {x, 0}, 2);
    int l1 = g.add_linear("l1", {xa, 0}, {w, 0}, 1, 1);
    int l2 = g.add_linear("l2", {xa, 1}, {v, 0}, 1, 1);
    g.mark_output({g.add_sum("sum", {{l1, 0}, {l2, 0}}), 0});
    ParaMap f = para_from_graph(
        ParamShape::of({{"w", {1, 1}}, {"v", {1, 1}}}), {1}, {1},
        std::move(g));

    CompiledPara untied = para_compile(f);
    untied.store.set_values({0.7, -0.3});
    std::vector<Tensor> xs = {Tensor::vec({2.5})};
    ParamStore gu = backward(untied.graph, untied.store, xs,
                             {Tensor::vec({1.0})});
    CHECK(gu.field("w")[0] == 2.5);
    CHECK(gu.field("v")[0] == 2.5);

    ParaMap tied = weight_tie(f);
    CompiledPara ct = para_compile(tied);
    REQUIRE(ct.store.manifest().size() == 1);
    ct.store.set_values({0.7});
    ParamStore gt = backward(ct.graph, ct.store, xs, {Tensor::vec({1.0})});
    CHECK(gt.field("w")[0] == gu.field("w")[0] + gu.field("v")[0]);

    auto fd = finite_diff_check(ct.graph, ct.store, xs, 1e-5, 1e-4);
    CHECK(fd.pass);
}

TEST_CASE("copy and delete satisfy the comonoid laws bit-exactly") {
    std::vector<ParamShape> shapes = {
        ParamShape::of({{"m", {2, 2}}, {"v", {3}}}),
        ParamShape::of({{"s", {1}}}),
        ParamShape::of({{"a", {2}}, {"b", {2}}, {"c", {4}}}),
    };
    std::mt19937_64 rng(29);
    for (const auto& P : shapes) {
        Reparam copy = reparam_copy(P);
        Reparam id = reparam_identity(P);
        Reparam del = reparam_delete(P);

        Reparam counit_l = reparam_compose(reparam_tensor(id, del), copy);
        Reparam counit_r = reparam_compose(reparam_tensor(del, id), copy);
        CHECK(counit_l.source == P);
        CHECK(counit_l.target == P);

        Reparam coassoc_l = reparam_compose(reparam_tensor(copy, id), copy);
        Reparam coassoc_r = reparam_compose(reparam_tensor(id, copy), copy);
        CHECK(coassoc_l.source == coassoc_r.source);

        for (int t = 0; t < 100; ++t) {
            auto p = rand_vec(rng, P.total());
            CHECK(reparam_eval(counit_l, p) == p);
            CHECK(reparam_eval(counit_r, p) == p);
            auto l = reparam_eval(coassoc_l, p);
            CHECK(l == reparam_eval(coassoc_r, p));
            auto ppp = p;
            ppp.insert(ppp.end(), p.begin(), p.end());
            ppp.insert(ppp.end(), p.begin(), p.end());
            CHECK(l == ppp);
        }
    }
}

TEST_CASE("swap is a self-inverse wiring") {
    ParamShape P = ParamShape::of({{"a", {2}}});
    ParamShape Q = ParamShape::of({{"b", {3}}});
    Reparam sw_pq = reparam_swap(P, Q); // P (x) Q -> Q (x) P
    Reparam sw_qp = reparam_swap(Q, P);

    CHECK(reparam_eval(sw_pq, {1, 2, 3, 4, 5}) ==
          std::vector<double>{3, 4, 5, 1, 2});

    Reparam round = reparam_compose(sw_pq, sw_qp); // Q (x) P -> itself
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        auto v = rand_vec(rng, 5);
        CHECK(reparam_eval(round, v) == v);
    }
}

TEST_CASE("lift pushes one parameter into every payload position") {
    ParaMap f = make_scale(); // p*x on width 1
    Functor list = Functor::list_of({"a0", "a1"});
    LiftedMap lf = para_lift(list, f);

    PVal nil = PVal::inl(PVal::label(0));
    CHECK(lifted_forward(lf, {2.0}, nil) == nil);

    PVal cons = PVal::inr(PVal::pair(PVal::label(1), dvec({3.0})));
    PVal want = PVal::inr(PVal::pair(PVal::label(1), dvec({6.0})));
    CHECK(lifted_forward(lf, {2.0}, cons) == want);

    Functor tree = Functor::tree_of({"leaf"});
    LiftedMap lt = para_lift(tree, f);
    PVal node = PVal::inr(PVal::pair(dvec({1.5}), dvec({-4.0})));
    PVal node_want = PVal::inr(PVal::pair(dvec({3.0}), dvec({-8.0})));
    CHECK(lifted_forward(lt, {2.0}, node) == node_want);

    Functor table = Functor::pow({"i0", "i1", "i2"}, Functor::id());
    LiftedMap lp = para_lift(table, f);
    PVal tab = PVal::table({dvec({1.0}), dvec({2.0}), dvec({3.0})});
    PVal tab_want = PVal::table({dvec({-1.0}), dvec({-2.0}), dvec({-3.0})});
    CHECK(lifted_forward(lp, {-1.0}, tab) == tab_want);
}

TEST_CASE("lift agrees with mapping the function directly") {
    ParaMap f = make_affine(2, 2, true);
    Functor shape = Functor::prod(Functor::constant({"k"}),
                                  Functor::sum(Functor::id(), Functor::id()));
    LiftedMap lf = para_lift(shape, f);

    std::mt19937_64 rng(37);
    auto p = rand_vec(rng, f.param.total());
    PVal v = PVal::pair(PVal::label(0), PVal::inr(dvec(rand_vec(rng, 2))));

    auto direct = fmap_value(shape,
                             [&](const std::vector<double>& x) {
                                 return para_forward(f, p,
                                                     {Tensor::vec(x)})[0]
                                     .data;
                             },
                             v);
    CHECK(lifted_forward(lf, p, v) == direct);
}

TEST_CASE("lift is functorial") {
    ParaMap f = make_scale();
    ParaMap g = make_affine(1, 1);
    ParaMap gf = para_compose(g, f);
    Functor list = Functor::list_of({"x"});
    Functor tree = Functor::tree_of({"l"});

    std::mt19937_64 rng(41);
    std::vector<std::pair<Functor, PVal>> values = {
        {list, PVal::inl(PVal::label(0))},
        {list, PVal::inr(PVal::pair(PVal::label(0), dvec({0.7})))},
        {tree, PVal::inr(PVal::pair(dvec({-1.2}), dvec({0.4})))},
        {tree, PVal::inl(PVal::label(0))},
    };
    for (auto& [shape, v] : values) {
        auto p = rand_vec(rng, f.param.total());
        auto q = rand_vec(rng, g.param.total());
        auto qp = q;
        qp.insert(qp.end(), p.begin(), p.end());
        auto composed = lifted_forward(para_lift(shape, gf), qp, v);
        auto staged = lifted_forward(para_lift(shape, g), q,
                                     lifted_forward(para_lift(shape, f), p, v));
        CHECK(composed == staged);
    }

    // identity lifts to identity
    PVal v = PVal::inr(PVal::pair(PVal::label(0), dvec({2.0})));
    CHECK(lifted_forward(para_lift(list, para_identity(1)), {}, v) == v);
}

TEST_CASE("para validation rejects malformed pieces") {
    CHECK_THROWS_AS(ParamShape::of({{"", {1}}}), validation_error);
    CHECK_THROWS_AS(ParamShape::of({{"a", {1}}, {"a", {2}}}), validation_error);
    CHECK_THROWS_AS(ParamShape::of({{"a", {0}}}), validation_error);

    // body with a Param node
    Graph g1;
    g1.add_param("w", "w", 2);
    int x1 = g1.add_input("x0", 2);
    g1.mark_output({x1, 0});
    CHECK_THROWS_AS(para_embed({2}, {2}, std::move(g1)), validation_error);

    // port arity and width mismatches
    Graph g2;
    g2.add_input("x0", 2);
    g2.mark_output({0, 0});
    CHECK_THROWS_AS(para_embed({2, 3}, {2}, Graph(g2)), validation_error);
    CHECK_THROWS_AS(para_embed({3}, {2}, Graph(g2)), validation_error);
    CHECK_THROWS_AS(para_embed({2}, {3}, Graph(g2)), validation_error);
    CHECK_THROWS_AS(para_embed({2}, {2, 2}, Graph(g2)), validation_error);
    CHECK_THROWS_AS(
        para_from_graph(ParamShape::of({{"w", {3}}}), {2}, {2}, Graph(g2)),
        validation_error);

    ParaMap f = make_affine(2, 3);
    CHECK_THROWS_AS(para_compose(f, f), validation_error); // 3 != 2
    CHECK_THROWS_AS(para_forward(f, {1.0}, {Tensor::vec({1.0, 2.0})}),
                    validation_error);
    CHECK_THROWS_AS(para_forward(f, std::vector<double>(9, 0.0), {}),
                    validation_error);

    // reparams must stay pure wiring
    Graph m;
    int t = m.add_input("t0", 2);
    m.mark_output({m.add_pointwise("act", {t, 0}, Nonlin::Tanh), 0});
    CHECK_THROWS_AS(make_reparam(ParamShape::of({{"s", {2}}}),
                                 ParamShape::of({{"t", {2}}}), std::move(m)),
                    validation_error);

    CHECK_THROWS_AS(weight_tie(f), validation_error); // halves differ
    CHECK_THROWS_AS(
        reparam_apply(reparam_identity(ParamShape::of({{"z", {1}}})), f),
        validation_error);

    ParaMap s1 = make_scale();
    CHECK_THROWS_AS(
        check_reparam_triangle(reparam_identity(s1.param), s1,
                               make_affine(1, 1), 5, 1e-9),
        validation_error);

    // lifted maps need single ports and matching payload widths
    Graph g3;
    int x3 = g3.add_input("x0", 2);
    int sp = g3.add_split("sp", {x3, 0}, {1, 1});
    g3.mark_output({sp, 0});
    g3.mark_output({sp, 1});
    ParaMap two_out = para_embed({2}, {1, 1}, std::move(g3));
    CHECK_THROWS_AS(para_lift(Functor::id(), two_out), validation_error);

    LiftedMap lf = para_lift(Functor::list_of({"a"}), make_scale());
    PVal wide = PVal::inr(PVal::pair(PVal::label(0), dvec({1.0, 2.0})));
    CHECK_THROWS_AS(lifted_forward(lf, {2.0}, wide), validation_error);
}
