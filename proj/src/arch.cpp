//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/arch.hpp"

#include <functional>
#include <utility>
#include <vector>

#include "catarch/errors.hpp"
#include "catarch/term.hpp"

namespace catarch {

const nlohmann::json& spec_field(const nlohmann::json& j,
                                 const std::string& what, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw validation_error(what + ": missing field '" + key + "'");
    return j.at(key);
}

std::string spec_string(const nlohmann::json& j, const std::string& what,
                        const char* key) {
    const auto& v = spec_field(j, what, key);
    if (!v.is_string())
        throw validation_error(what + ": '" + key + "' must be a string");
    return v.get<std::string>();
}

long long spec_int(const nlohmann::json& j, const std::string& what,
                   const char* key, long long min) {
    const auto& v = spec_field(j, what, key);
    if (!v.is_number_integer() && !v.is_number_unsigned())
        throw validation_error(what + ": '" + key + "' must be an integer");
    long long n = v.get<long long>();
    if (n < min)
        throw validation_error(what + ": '" + key + "' must be >= " +
                               std::to_string(min));
    return n;
}

namespace {

struct KindInfo {
    const char* name;
    std::vector<const char*> dims;
    const char* structure_key;
};

const KindInfo& kind_info(CellKind kind) {
    static const KindInfo table[] = {
        {"folding_rnn", {"a", "s"}, "list_len"},
        {"unfolding_rnn", {"s", "o"}, "steps"},
        {"recursive_nn", {"a", "s"}, "tree_depth"},
        {"mealy", {"s", "i", "o"}, "seq_len"},
        {"moore", {"s", "i", "o"}, "seq_len"},
    };
    return table[static_cast<int>(kind)];
}

CellKind parse_kind(const std::string& name) {
    for (int k = 0; k < 5; ++k)
        if (name == kind_info(static_cast<CellKind>(k)).name)
            return static_cast<CellKind>(k);
    throw validation_error("arch spec: unknown kind '" + name + "'");
}

GroupAction parse_group(const nlohmann::json& j, std::size_t cap) {
    expect_keys(j, "group", {"kind", "n", "degree", "generators"});
    std::string kind = spec_string(j, "group", "kind");
    GroupAction g = trivial_group(1);
    if (kind == "custom") {
        int degree = static_cast<int>(spec_int(j, "group", "degree", 1));
        const auto& gens = spec_field(j, "group", "generators");
        if (!gens.is_array())
            throw validation_error("group: 'generators' must be an array");
        std::vector<Perm> perms;
        for (const auto& arr : gens) {
            if (!arr.is_array())
                throw validation_error("group: each generator is an array");
            Perm p;
            for (const auto& e : arr) {
                if (!e.is_number_integer() && !e.is_number_unsigned())
                    throw validation_error("group: generator entries must "
                                           "be integers");
                p.push_back(e.get<int>());
            }
            perms.push_back(std::move(p));
        }
        g = GroupAction::make(degree, perms, cap);
    } else {
        if (j.contains("degree") || j.contains("generators"))
            throw validation_error(
                "group: 'degree'/'generators' apply to kind custom only");
        if (kind == "klein_four") {
            if (j.contains("n"))
                throw validation_error("group: klein_four takes no 'n'");
            g = klein_four_group();
        } else {
            int n = static_cast<int>(spec_int(j, "group", "n", 1));
            if (kind == "trivial")
                g = trivial_group(n);
            else if (kind == "cyclic")
                g = cyclic_group(n);
            else if (kind == "symmetric")
                g = symmetric_group(n);
            else if (kind == "dihedral")
                g = dihedral_group(n);
            else
                throw validation_error("group: unknown kind '" + kind + "'");
        }
    }
    if (g.order() > cap)
        throw cap_error("group order " + std::to_string(g.order()) +
                        " exceeds cap " + std::to_string(cap));
    return g;
}

const char* rep_kind_name(RepSpec::Kind k) {
    switch (k) {
    case RepSpec::Kind::Vector: return "vector";
    case RepSpec::Kind::Entries: return "entries";
    case RepSpec::Kind::Regular: return "regular";
    case RepSpec::Kind::Trivial: return "trivial";
    }
    return "?";
}

} // namespace

std::string cell_kind_name(CellKind kind) { return kind_info(kind).name; }

void expect_keys(const nlohmann::json& j, const std::string& what,
                 std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        throw validation_error(what + ": expected an object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                known = true;
                break;
            }
        if (!known)
            throw validation_error(what + ": unknown field '" + item.key() +
                                   "'");
    }
}

SpecFile SpecFile::from_json(const nlohmann::json& j) {
    expect_keys(j, "spec file", {"version", "command", "payload"});
    SpecFile s;
    s.version = spec_string(j, "spec file", "version");
    if (s.version != kSpecVersion)
        throw validation_error("spec file: unsupported version '" +
                               s.version + "'");
    s.command = spec_string(j, "spec file", "command");
    if (s.command != "derive" && s.command != "unroll" &&
        s.command != "check")
        throw validation_error("spec file: unknown command '" + s.command +
                               "'");
    const auto& p = spec_field(j, "spec file", "payload");
    if (!p.is_object())
        throw validation_error("spec file: 'payload' must be an object");
    s.payload = p;
    return s;
}

ArchSpec ArchSpec::from_json(const nlohmann::json& j) {
    std::string kname = spec_string(j, "arch spec", "kind");
    ArchSpec a;
    a.cell.kind = parse_kind(kname);
    const KindInfo& info = kind_info(a.cell.kind);

    bool folding = a.cell.kind == CellKind::FoldingRNN;
    if (folding)
        expect_keys(j, "arch spec",
                    {"kind", "dims", "nonlinearity", "seed", "structure",
                     "zero_s0"});
    else
        expect_keys(j, "arch spec",
                    {"kind", "dims", "nonlinearity", "seed", "structure"});

    const auto& dims = spec_field(j, "arch spec", "dims");
    {
        std::initializer_list<const char*> two = {"a", "s"};
        std::initializer_list<const char*> so = {"s", "o"};
        std::initializer_list<const char*> sio = {"s", "i", "o"};
        if (a.cell.kind == CellKind::UnfoldingRNN)
            expect_keys(dims, "dims", so);
        else if (info.dims.size() == 2)
            expect_keys(dims, "dims", two);
        else
            expect_keys(dims, "dims", sio);
    }
    for (const char* d : info.dims) {
        int v = static_cast<int>(spec_int(dims, "dims", d, 1));
        if (d[0] == 'a') a.cell.a = v;
        if (d[0] == 's') a.cell.s = v;
        if (d[0] == 'o') a.cell.o = v;
        if (d[0] == 'i') a.cell.i = v;
    }

    if (j.contains("nonlinearity")) {
        std::string fn = spec_string(j, "arch spec", "nonlinearity");
        if (fn == "tanh")
            a.cell.fn = Nonlin::Tanh;
        else if (fn == "identity")
            a.cell.fn = Nonlin::Identity;
        else
            throw validation_error("arch spec: unknown nonlinearity '" + fn +
                                   "'");
    }
    if (j.contains("seed"))
        a.seed =
            static_cast<std::uint64_t>(spec_int(j, "arch spec", "seed", 0));
    if (folding && j.contains("zero_s0")) {
        if (!j.at("zero_s0").is_boolean())
            throw validation_error("arch spec: 'zero_s0' must be a boolean");
        a.cell.zero_s0 = j.at("zero_s0").get<bool>();
    }

    const auto& st = spec_field(j, "arch spec", "structure");
    expect_keys(st, "structure", {info.structure_key});
    a.length = static_cast<int>(spec_int(st, "structure", info.structure_key,
                                         0));
    return a;
}

UnrolledNet build_arch(const ArchSpec& spec) {
    Cell cell = make_cell(spec.cell);
    UnrolledNet net;
    switch (spec.cell.kind) {
    case CellKind::FoldingRNN: {
        Functor shape = Functor::list_of({"a"});
        net = unroll_fold(cell,
                          make_list(shape, std::vector<int>(
                                               static_cast<std::size_t>(
                                                   spec.length),
                                               0)));
        break;
    }
    case CellKind::UnfoldingRNN:
        net = unroll_stream(cell, spec.length);
        break;
    case CellKind::RecursiveNN: {
        if (spec.length > kMaxTreeDepth)
            throw cap_error("tree depth " + std::to_string(spec.length) +
                            " exceeds cap " + std::to_string(kMaxTreeDepth));
        Functor shape = Functor::tree_of({"a"});
        std::function<Term(int)> grow = [&](int d) -> Term {
            if (d == 0) return make_leaf(shape, 0);
            Term sub = grow(d - 1);
            return make_node(shape, sub, sub);
        };
        net = unroll_tree(cell, grow(spec.length));
        break;
    }
    case CellKind::Mealy:
        net = unroll_mealy(cell, spec.length);
        break;
    case CellKind::Moore:
        net = unroll_moore(cell, spec.length);
        break;
    }
    net.store.set_values(init_cell_params(cell, spec.seed));
    return net;
}

RepSpec RepSpec::from_json(const nlohmann::json& j) {
    RepSpec r;
    std::string kind;
    if (j.is_string()) {
        kind = j.get<std::string>();
    } else {
        expect_keys(j, "rep", {"kind", "dim"});
        kind = spec_string(j, "rep", "kind");
    }
    if (kind == "vector")
        r.kind = Kind::Vector;
    else if (kind == "entries")
        r.kind = Kind::Entries;
    else if (kind == "regular")
        r.kind = Kind::Regular;
    else if (kind == "trivial")
        r.kind = Kind::Trivial;
    else
        throw validation_error("rep: unknown kind '" + kind + "'");

    if (r.kind == Kind::Trivial) {
        if (j.is_string())
            throw validation_error("rep: trivial needs an explicit 'dim'");
        r.dim = static_cast<int>(spec_int(j, "rep", "dim", 1));
    } else if (!j.is_string() && j.contains("dim")) {
        throw validation_error("rep: 'dim' applies to kind trivial only");
    }
    return r;
}

nlohmann::json RepSpec::to_json() const {
    nlohmann::json j = {{"kind", rep_kind_name(kind)}};
    if (kind == Kind::Trivial) j["dim"] = dim;
    return j;
}

LinearRep make_rep(const RepSpec& spec, const GroupAction& g,
                   std::size_t cap) {
    switch (spec.kind) {
    case RepSpec::Kind::Vector: return rep_vector(g);
    case RepSpec::Kind::Entries: return rep_entries(g);
    case RepSpec::Kind::Regular: return rep_vector(regular_action(g, cap));
    case RepSpec::Kind::Trivial:
        return rep_trivial(spec.dim, g.generators().size());
    }
    throw validation_error("rep: unknown kind");
}

DeriveSpec DeriveSpec::from_json(const nlohmann::json& j, std::size_t cap) {
    expect_keys(j, "derive spec", {"group", "rep_in", "rep_out"});
    DeriveSpec d;
    d.group = parse_group(spec_field(j, "derive spec", "group"), cap);
    d.rep_in = RepSpec::from_json(spec_field(j, "derive spec", "rep_in"));
    d.rep_out = RepSpec::from_json(spec_field(j, "derive spec", "rep_out"));
    return d;
}

DeriveResult run_derive(const DeriveSpec& spec, std::size_t cap) {
    LinearRep in = make_rep(spec.rep_in, spec.group, cap);
    LinearRep out = make_rep(spec.rep_out, spec.group, cap);
    DeriveResult res;
    if (spec.rep_out.kind == RepSpec::Kind::Trivial)
        res.basis = invariance_basis(in, spec.rep_out.dim);
    else
        res.basis = equivariance_basis(in, out);
    res.pattern = pattern_of_basis(res.basis);
    nlohmann::json rin = spec.rep_in.to_json();
    rin["dim"] = in.dim();
    nlohmann::json rout = spec.rep_out.to_json();
    rout["dim"] = out.dim();
    res.report = {
        {"dimension", res.basis.dimension()},
        {"group",
         {{"degree", spec.group.degree()}, {"order", spec.group.order()}}},
        {"rep_in", rin},
        {"rep_out", rout},
        {"pattern", res.pattern.to_json()},
    };
    return res;
}

} // namespace catarch
