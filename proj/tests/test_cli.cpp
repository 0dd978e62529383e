//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "catarch/arch.hpp"
#include "catarch/checks.hpp"
#include "catarch/errors.hpp"

using namespace catarch;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    if (const char* env = std::getenv("CATARCH_CLI_PATH")) return env;
#ifdef CATARCH_CLI_PATH
    return CATARCH_CLI_PATH;
#else
    return "./catarch";
#endif
}

const fs::path& tmp_root() {
    static fs::path root = [] {
#ifdef CATARCH_TEST_TMP
        fs::path r = CATARCH_TEST_TMP;
#else
        fs::path r = "./cli_tmp";
#endif
        std::error_code ec;
        fs::remove_all(r, ec);
        fs::create_directories(r);
        return r;
    }();
    return root;
}

fs::path fresh_dir(const std::string& stem) {
    static int counter = 0;
    fs::path d = tmp_root() / (stem + "_" + std::to_string(counter++));
    fs::create_directories(d);
    return d;
}

fs::path write_spec(const fs::path& dir, const nlohmann::json& j) {
    fs::path p = dir / "spec.json";
    std::ofstream out(p, std::ios::binary);
    out << j.dump(2) << "\n";
    REQUIRE(out.good());
    return p;
}

nlohmann::json spec_for(const std::string& command,
                        nlohmann::json payload) {
    return {{"version", "1"},
            {"command", command},
            {"payload", std::move(payload)}};
}

struct RunResult {
    int code = -1;
    std::string out;
};

// Runs the binary through the shell, stderr folded into stdout.
RunResult run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + "\"" + cli_path() +
                      "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (fgets(buf, sizeof buf, pipe)) r.out += buf;
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

RunResult run_spec(const std::string& command, const nlohmann::json& payload,
                   const fs::path& dir, const std::string& extra = "",
                   const std::string& env = "") {
    fs::path spec = write_spec(dir, spec_for(command, payload));
    fs::path out = dir / "out";
    return run_cli(command + " --spec \"" + spec.string() + "\" --out \"" +
                       out.string() + "\"" + extra,
                   env);
}

nlohmann::json read_json(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in),
            std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("derive solves the pixel swap both ways of naming the group") {
    nlohmann::json stock = {{"group", {{"kind", "cyclic"}, {"n", 2}}},
                            {"rep_in", "vector"},
                            {"rep_out", "vector"}};
    nlohmann::json custom = {
        {"group",
         {{"kind", "custom"},
          {"degree", 2},
          {"generators", nlohmann::json::array({{1, 0}})}}},
        {"rep_in", "vector"},
        {"rep_out", "vector"}};

    for (const auto& payload : {stock, custom}) {
        fs::path dir = fresh_dir("swap");
        RunResult r = run_spec("derive", payload, dir);
        CHECK(r.code == 0);
        CHECK(r.out.find("dimension 2") != std::string::npos);

        nlohmann::json rep = read_json(dir / "out" / "pattern.json");
        CHECK(rep["dimension"] == 2);
        CHECK(rep["pattern"]["classes"] ==
              nlohmann::json({{0, 1}, {1, 0}}));
        CHECK(read_text(dir / "out" / "pattern.txt") == "a b\nb a\n");
    }
}

TEST_CASE("derive counts singleton classes under the trivial group") {
    fs::path dir = fresh_dir("trivial");
    RunResult r = run_spec("derive",
                           {{"group", {{"kind", "trivial"}, {"n", 3}}},
                            {"rep_in", "vector"},
                            {"rep_out", "vector"}},
                           dir);
    CHECK(r.code == 0);
    nlohmann::json rep = read_json(dir / "out" / "pattern.json");
    CHECK(rep["dimension"] == 9);
    CHECK(rep["pattern"]["dimension"] == 9);
    auto classes = rep["pattern"]["classes"];
    std::set<int> seen;
    for (const auto& row : classes)
        for (const auto& c : row) seen.insert(c.get<int>());
    CHECK(seen.size() == 9);
}

TEST_CASE("derive ties the eight-shift along wrapped diagonals") {
    fs::path dir = fresh_dir("z8");
    RunResult r = run_spec("derive",
                           {{"group", {{"kind", "cyclic"}, {"n", 8}}},
                            {"rep_in", "vector"},
                            {"rep_out", "vector"}},
                           dir);
    CHECK(r.code == 0);
    nlohmann::json rep = read_json(dir / "out" / "pattern.json");
    CHECK(rep["dimension"] == 8);
    auto classes = rep["pattern"]["classes"];
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            CHECK(classes[i][j] == classes[0][(j - i + 8) % 8]);
}

TEST_CASE("derive handles invariance and the regular action") {
    fs::path dir = fresh_dir("inv");
    RunResult r = run_spec("derive",
                           {{"group", {{"kind", "cyclic"}, {"n", 2}}},
                            {"rep_in", "vector"},
                            {"rep_out", {{"kind", "trivial"}, {"dim", 2}}}},
                           dir);
    CHECK(r.code == 0);
    nlohmann::json rep = read_json(dir / "out" / "pattern.json");
    CHECK(rep["dimension"] == 2);
    CHECK(rep["pattern"]["classes"] == nlohmann::json({{0, 0}, {1, 1}}));

    fs::path dir2 = fresh_dir("reg");
    RunResult r2 = run_spec("derive",
                            {{"group", {{"kind", "klein_four"}}},
                             {"rep_in", "regular"},
                             {"rep_out", "regular"}},
                            dir2);
    CHECK(r2.code == 0);
    nlohmann::json rep2 = read_json(dir2 / "out" / "pattern.json");
    CHECK(rep2["dimension"] == 4);
    CHECK(rep2["rep_in"]["dim"] == 4);
}

TEST_CASE("unroll reports the tying census of a folded list") {
    nlohmann::json payload = {{"kind", "folding_rnn"},
                              {"dims", {{"a", 3}, {"s", 8}}},
                              {"nonlinearity", "tanh"},
                              {"seed", 42},
                              {"structure", {{"list_len", 3}}}};
    fs::path dir = fresh_dir("fold");
    RunResult r = run_spec("unroll", payload, dir);
    CHECK(r.code == 0);
    CHECK(r.out.find("params: 104 values in 4 fields") != std::string::npos);
    CHECK(r.out.find("fan-out 4") != std::string::npos);

    nlohmann::json rep = read_json(dir / "out" / "report.json");
    CHECK(rep["kind"] == "folding_rnn");
    CHECK(rep["instances"] == 4);
    CHECK(rep["param_count"] == 104);
    CHECK(rep["ties"]["param_nodes"] == 4);
    CHECK(rep["ties"]["param_copies"] == 1);
    CHECK(rep["ties"]["copy_fanout"] == 4);
    CHECK(rep["outputs"] == 1);
    CHECK(rep["inputs"].size() == 3);

    // the files must agree with an in-process build of the same spec
    ArchSpec spec = ArchSpec::from_json(payload);
    UnrolledNet net = build_arch(spec);
    CHECK(read_json(dir / "out" / "graph.json") == export_json(net.graph));
    auto vals = net.store.values();
    std::vector<double> expect(vals.begin(), vals.end());
    CHECK(rep["param_values"].get<std::vector<double>>() == expect);

    std::string dot = read_text(dir / "out" / "graph.dot");
    CHECK(dot.find("p_ties") != std::string::npos);
}

TEST_CASE("unroll accepts a zero-step stream and emits no outputs") {
    fs::path dir = fresh_dir("s0");
    RunResult r = run_spec("unroll",
                           {{"kind", "unfolding_rnn"},
                            {"dims", {{"s", 4}, {"o", 2}}},
                            {"structure", {{"steps", 0}}}},
                           dir);
    CHECK(r.code == 0);
    nlohmann::json rep = read_json(dir / "out" / "report.json");
    CHECK(rep["outputs"] == 0);
    CHECK(rep["instances"] == 0);
    CHECK(rep["ties"]["param_copies"] == 0);
    CHECK(read_text(dir / "out" / "graph.dot").size() > 0);
}

TEST_CASE("unroll gives a mealy machine its final state port") {
    fs::path dir = fresh_dir("mealy");
    RunResult r = run_spec("unroll",
                           {{"kind", "mealy"},
                            {"dims", {{"s", 3}, {"i", 2}, {"o", 2}}},
                            {"structure", {{"seq_len", 4}}}},
                           dir);
    CHECK(r.code == 0);
    nlohmann::json rep = read_json(dir / "out" / "report.json");
    CHECK(rep["outputs"] == 5); // o_0..o_3 then the final state
    CHECK(rep["inputs"].size() == 5);
    CHECK(rep["inputs"][0]["name"] == "s");

    Graph g = import_json(read_json(dir / "out" / "graph.json"));
    REQUIRE(g.outputs().size() == 5);
    for (int k = 0; k < 4; ++k) CHECK(g.port_width(g.outputs()[k]) == 2);
    CHECK(g.port_width(g.outputs()[4]) == 3);
}

TEST_CASE("seed flag wins over the payload seed") {
    nlohmann::json payload = {{"kind", "moore"},
                              {"dims", {{"s", 3}, {"i", 2}, {"o", 2}}},
                              {"seed", 1},
                              {"structure", {{"seq_len", 2}}}};
    fs::path dir = fresh_dir("seeded");
    RunResult r = run_spec("unroll", payload, dir, " --seed 9");
    CHECK(r.code == 0);
    nlohmann::json rep = read_json(dir / "out" / "report.json");
    CHECK(rep["seed"] == 9);

    ArchSpec spec = ArchSpec::from_json(payload);
    spec.seed = 9;
    UnrolledNet net = build_arch(spec);
    auto vals = net.store.values();
    std::vector<double> expect(vals.begin(), vals.end());
    CHECK(rep["param_values"].get<std::vector<double>>() == expect);
}

TEST_CASE("identical spec and seed give byte-identical artifacts") {
    nlohmann::json payload = {{"suite", "comonoid"}, {"seed", 7}};
    fs::path d1 = fresh_dir("rep1");
    fs::path d2 = fresh_dir("rep2");
    CHECK(run_spec("check", payload, d1).code == 0);
    CHECK(run_spec("check", payload, d2).code == 0);
    CHECK(read_text(d1 / "out" / "report.json") ==
          read_text(d2 / "out" / "report.json"));

    nlohmann::json fold = {{"kind", "folding_rnn"},
                           {"dims", {{"a", 2}, {"s", 3}}},
                           {"seed", 5},
                           {"structure", {{"list_len", 2}}}};
    fs::path d3 = fresh_dir("rep3");
    fs::path d4 = fresh_dir("rep4");
    CHECK(run_spec("unroll", fold, d3).code == 0);
    CHECK(run_spec("unroll", fold, d4).code == 0);
    CHECK(read_text(d3 / "out" / "report.json") ==
          read_text(d4 / "out" / "report.json"));
    CHECK(read_text(d3 / "out" / "graph.json") ==
          read_text(d4 / "out" / "graph.json"));
}

TEST_CASE("check runs the property suites through the binary") {
    fs::path dir = fresh_dir("hom");
    RunResult r = run_spec("check", {{"suite", "homomorphism"}}, dir);
    CHECK(r.code == 0);
    CHECK(r.out.find("15/15 passed") != std::string::npos);
    nlohmann::json rep = read_json(dir / "out" / "report.json");
    CHECK(rep["pass"] == true);
    CHECK(rep["cases"].size() == 15);
    for (const auto& c : rep["cases"]) {
        CHECK(c["pass"] == true);
        CHECK(c["details"]["trials"] == 1000);
    }

    fs::path dir2 = fresh_dir("grad");
    RunResult r2 = run_spec("check", {{"suite", "gradients"}}, dir2);
    CHECK(r2.code == 0);
    nlohmann::json rep2 = read_json(dir2 / "out" / "report.json");
    CHECK(rep2["cases"].size() == 5);

    fs::path dir3 = fresh_dir("solver");
    RunResult r3 = run_spec("check", {{"suite", "solver"}}, dir3);
    CHECK(r3.code == 0);
    CHECK(r3.out.find("[PASS] oracle sweep") != std::string::npos);
}

TEST_CASE("spec validation maps to exit code two") {
    struct Bad {
        const char* command;
        nlohmann::json payload;
        const char* hint;
    };
    nlohmann::json dims = {{"a", 2}, {"s", 3}};
    std::vector<Bad> bads = {
        {"check", {{"suite", "bogus"}}, "unknown suite"},
        {"check", {{"suite", "comonoid"}, {"extra", 1}}, "unknown field"},
        {"unroll",
         {{"kind", "folding_rnn"},
          {"dims", dims},
          {"structure", {{"steps", 2}}}},
         "unknown field"},
        {"unroll",
         {{"kind", "folding_rnn"},
          {"dims", {{"a", 2}, {"s", 3}, {"o", 1}}},
          {"structure", {{"list_len", 2}}}},
         "unknown field"},
        {"unroll",
         {{"kind", "folding_rnn"},
          {"dims", dims},
          {"structure", {{"list_len", -1}}}},
         "must be >="},
        {"unroll",
         {{"kind", "mealy"},
          {"dims", {{"s", 3}, {"i", 2}, {"o", 2}}},
          {"zero_s0", true},
          {"structure", {{"seq_len", 1}}}},
         "unknown field"},
        {"unroll",
         {{"kind", "maybe_rnn"}, {"dims", dims},
          {"structure", {{"list_len", 1}}}},
         "unknown kind"},
        {"derive",
         {{"group", {{"kind", "cyclic"}, {"n", 2}}},
          {"rep_in", "trivial"},
          {"rep_out", "vector"}},
         "needs an explicit 'dim'"},
        {"derive",
         {{"group", {{"kind", "klein_four"}, {"n", 4}}},
          {"rep_in", "vector"},
          {"rep_out", "vector"}},
         "takes no 'n'"},
    };
    for (const auto& bad : bads) {
        CAPTURE(bad.hint);
        fs::path dir = fresh_dir("bad");
        RunResult r = run_spec(bad.command, bad.payload, dir);
        CHECK(r.code == 2);
        CHECK(r.out.find(bad.hint) != std::string::npos);
    }
}

TEST_CASE("envelope problems map to exit code two") {
    fs::path dir = fresh_dir("env");

    // version other than "1"
    nlohmann::json j = spec_for("check", {{"suite", "solver"}});
    j["version"] = "2";
    fs::path p = dir / "v2.json";
    std::ofstream(p) << j.dump();
    RunResult r =
        run_cli("check --spec \"" + p.string() + "\" --out \"" +
                (dir / "o").string() + "\"");
    CHECK(r.code == 2);
    CHECK(r.out.find("unsupported version") != std::string::npos);

    // command mismatch between envelope and subcommand
    fs::path dir2 = fresh_dir("env");
    RunResult r2 = run_spec("unroll", {{"suite", "solver"}}, dir2);
    // payload parses as unroll spec and fails there; write a real check
    // envelope and invoke unroll on it instead
    fs::path p3 = dir2 / "chk.json";
    std::ofstream(p3) << spec_for("check", {{"suite", "solver"}}).dump();
    RunResult r3 = run_cli("unroll --spec \"" + p3.string() +
                           "\" --out \"" + (dir2 / "o").string() + "\"");
    CHECK(r3.code == 2);
    CHECK(r3.out.find("invoked as 'unroll'") != std::string::npos);

    // malformed json, missing file, missing required flag
    fs::path p4 = dir / "broken.json";
    std::ofstream(p4) << "{nope";
    CHECK(run_cli("derive --spec \"" + p4.string() + "\" --out \"" +
                  (dir / "o").string() + "\"")
              .code == 2);
    CHECK(run_cli("derive --spec \"" + (dir / "absent.json").string() +
                  "\" --out \"" + (dir / "o").string() + "\"")
              .code == 2);
    CHECK(run_cli("derive --out \"" + (dir / "o").string() + "\"").code ==
          2);
    (void)r2;
}

TEST_CASE("resource caps map to exit code three") {
    fs::path dir = fresh_dir("cap");
    RunResult r = run_spec("derive",
                           {{"group", {{"kind", "cyclic"}, {"n", 12}}},
                            {"rep_in", "vector"},
                            {"rep_out", "vector"}},
                           dir, "", "CATARCH_CAP=5");
    CHECK(r.code == 3);
    CHECK(r.out.find("exceeds cap") != std::string::npos);

    // custom group whose closure blows the cap while it is being built
    fs::path dir2 = fresh_dir("cap");
    RunResult r2 = run_spec(
        "derive",
        {{"group",
          {{"kind", "custom"},
           {"degree", 5},
           {"generators",
            nlohmann::json::array({{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}})}}},
         {"rep_in", "vector"},
         {"rep_out", "vector"}},
        dir2, "", "CATARCH_CAP=10");
    CHECK(r2.code == 3);

    fs::path dir3 = fresh_dir("cap");
    RunResult r3 = run_spec("unroll",
                            {{"kind", "recursive_nn"},
                             {"dims", {{"a", 2}, {"s", 2}}},
                             {"structure", {{"tree_depth", 17}}}},
                            dir3);
    CHECK(r3.code == 3);
    CHECK(r3.out.find("tree depth") != std::string::npos);
}

TEST_CASE("spec parsers validate shapes before any work happens") {
    CHECK_THROWS_AS(SpecFile::from_json({{"version", "1"}}),
                    validation_error);
    CHECK_THROWS_AS(
        SpecFile::from_json(
            {{"version", "1"}, {"command", "fly"}, {"payload", {}}}),
        validation_error);
    CHECK_THROWS_AS(SpecFile::from_json({{"version", "1"},
                                         {"command", "check"},
                                         {"payload", 3}}),
                    validation_error);

    nlohmann::json ok = {{"kind", "mealy"},
                         {"dims", {{"s", 2}, {"i", 1}, {"o", 1}}},
                         {"structure", {{"seq_len", 1}}}};
    CHECK(ArchSpec::from_json(ok).cell.i == 1);
    nlohmann::json missing = ok;
    missing["dims"].erase("i");
    CHECK_THROWS_AS(ArchSpec::from_json(missing), validation_error);
    nlohmann::json zero = ok;
    zero["dims"]["s"] = 0;
    CHECK_THROWS_AS(ArchSpec::from_json(zero), validation_error);
    nlohmann::json fraction = ok;
    fraction["dims"]["s"] = 2.5;
    CHECK_THROWS_AS(ArchSpec::from_json(fraction), validation_error);

    CHECK(CheckSpec::from_json({{"suite", "solver"}}).seed == 1);
    CHECK(CheckSpec::from_json({{"suite", "solver"}, {"seed", 4}}).seed ==
          4);
    CHECK_THROWS_AS(CheckSpec::from_json({{"seed", 4}}), validation_error);
}

TEST_CASE("the meta suite aggregates every other suite") {
    auto names = known_suites();
    CHECK(names == std::vector<std::string>{"homomorphism", "gradients",
                                            "comonoid", "solver", "all"});
    SuiteResult all = run_suite("all", 3);
    CHECK(all.pass);
    CHECK(all.cases.size() == 15 + 5 + 3 + 4);
    CHECK(all.cases.front().name == "homomorphism/folding_rnn/integer");
    CHECK(all.cases.back().name == "solver/oracle sweep");
    CHECK_THROWS_AS(run_suite("nope", 1), validation_error);
}
