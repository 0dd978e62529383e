//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "catarch/arch.hpp"
#include "catarch/checks.hpp"
#include "catarch/errors.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string spec_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

std::size_t group_cap_from_env() {
    const char* v = std::getenv("CATARCH_CAP");
    if (!v) return catarch::kDefaultGroupCap;
    char* end = nullptr;
    unsigned long long n = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0' || n == 0)
        throw catarch::validation_error(
            "CATARCH_CAP must be a positive integer");
    return static_cast<std::size_t>(n);
}

nlohmann::json load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw catarch::validation_error("cannot open spec file '" + path +
                                        "'");
    return nlohmann::json::parse(in);
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    out.flush();
    if (!out)
        throw catarch::error("cannot write '" + p.string() + "'");
}

void write_json(const fs::path& p, const nlohmann::json& j) {
    write_text(p, j.dump(2) + "\n");
}

int cmd_derive(const catarch::SpecFile& spec, const Options& opt) {
    std::size_t cap = group_cap_from_env();
    catarch::DeriveSpec d = catarch::DeriveSpec::from_json(spec.payload, cap);
    catarch::DeriveResult res = catarch::run_derive(d, cap);

    fs::create_directories(opt.out_dir);
    write_json(fs::path(opt.out_dir) / "pattern.json", res.report);
    write_text(fs::path(opt.out_dir) / "pattern.txt",
               res.pattern.render_ascii(false));

    std::cout << "dimension " << res.basis.dimension() << ", "
              << res.pattern.num_classes << " tied classes on a "
              << res.pattern.rows << "x" << res.pattern.cols << " map\n";
    return 0;
}

int cmd_unroll(const catarch::SpecFile& spec, const Options& opt) {
    catarch::ArchSpec a = catarch::ArchSpec::from_json(spec.payload);
    if (opt.seed_set) a.seed = opt.seed;
    catarch::UnrolledNet net = catarch::build_arch(a);
    catarch::TieCensus census = catarch::tie_census(net);

    nlohmann::json fields = nlohmann::json::array();
    for (const auto& f : net.store.manifest())
        fields.push_back({{"name", f.name}, {"shape", f.shape}});
    nlohmann::json inputs = nlohmann::json::array();
    for (int id : net.graph.input_nodes()) {
        const auto& n = net.graph.nodes()[static_cast<std::size_t>(id)];
        inputs.push_back({{"name", n.name}, {"width", n.width}});
    }
    auto vals = net.store.values();
    nlohmann::json report = {
        {"kind", catarch::cell_kind_name(a.cell.kind)},
        {"seed", a.seed},
        {"structure", net.structure},
        {"instances", net.instances},
        {"param_count", net.store.total_size()},
        {"fields", fields},
        {"param_values", std::vector<double>(vals.begin(), vals.end())},
        {"ties",
         {{"param_nodes", census.param_nodes},
          {"param_copies", census.param_copies},
          {"copy_fanout", census.copy_fanout},
          {"instances", census.instances}}},
        {"inputs", inputs},
        {"outputs", static_cast<int>(net.graph.outputs().size())},
    };

    fs::create_directories(opt.out_dir);
    write_json(fs::path(opt.out_dir) / "graph.json",
               catarch::export_json(net.graph));
    write_text(fs::path(opt.out_dir) / "graph.dot",
               catarch::export_dot(net.graph));
    write_json(fs::path(opt.out_dir) / "report.json", report);

    std::cout << "params: " << net.store.total_size() << " values in "
              << net.store.manifest().size() << " fields\n";
    if (census.param_copies > 0)
        std::cout << "ties: 1 copy of the whole store, fan-out "
                  << census.copy_fanout << " across " << census.instances
                  << " cell instances\n";
    else
        std::cout << "ties: none (" << census.instances
                  << " cell instance" << (census.instances == 1 ? "" : "s")
                  << ")\n";
    return 0;
}

int cmd_check(const catarch::SpecFile& spec, const Options& opt) {
    catarch::CheckSpec c = catarch::CheckSpec::from_json(spec.payload);
    if (opt.seed_set) c.seed = opt.seed;
    catarch::SuiteResult res = catarch::run_suite(c.suite, c.seed);

    fs::create_directories(opt.out_dir);
    write_json(fs::path(opt.out_dir) / "report.json", res.to_json());

    int passed = 0;
    for (const auto& cs : res.cases) {
        std::cout << (cs.pass ? "[PASS] " : "[FAIL] ") << cs.name << "\n";
        if (cs.pass) ++passed;
    }
    std::cout << "suite " << res.suite << ": " << passed << "/"
              << res.cases.size() << " passed\n";
    return res.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"derive weight-sharing patterns, unroll recursive cells "
                 "into computation graphs, run property suites"};
    app.require_subcommand(1);

    Options opt;
    const char* descs[3][2] = {
        {"derive", "solve the weight-sharing pattern of a group spec"},
        {"unroll", "compile an architecture spec into a tied graph"},
        {"check", "run a named property suite"},
    };
    CLI::App* subs[3];
    for (int k = 0; k < 3; ++k) {
        CLI::App* s = app.add_subcommand(descs[k][0], descs[k][1]);
        s->add_option("--spec", opt.spec_path, "spec file (JSON)")
            ->required();
        s->add_option("--out", opt.out_dir, "output directory")->required();
        s->add_option("--seed", opt.seed,
                      "seed override (wins over the spec file)");
        subs[k] = s;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string command;
    for (int k = 0; k < 3; ++k)
        if (subs[k]->parsed()) {
            command = descs[k][0];
            opt.seed_set = subs[k]->count("--seed") > 0;
        }

    try {
        catarch::SpecFile spec =
            catarch::SpecFile::from_json(load_spec(opt.spec_path));
        if (spec.command != command)
            throw catarch::validation_error(
                "spec file is for command '" + spec.command +
                "', invoked as '" + command + "'");
        if (command == "derive") return cmd_derive(spec, opt);
        if (command == "unroll") return cmd_unroll(spec, opt);
        return cmd_check(spec, opt);
    } catch (const catarch::cap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const catarch::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: spec file: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
