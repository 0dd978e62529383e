//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "catarch/group.hpp"
#include "catarch/rep.hpp"
#include "catarch/solver.hpp"
#include "catarch/unroll.hpp"

namespace catarch {

// Top-level envelope of every spec file. `payload` is handed to the
// command-specific parser; `command` must match the subcommand being run.
struct SpecFile {
    std::string version;
    std::string command;
    nlohmann::json payload;

    static SpecFile from_json(const nlohmann::json& j);
};

inline constexpr const char* kSpecVersion = "1";

// Rejects keys outside `allowed`. All object parsers go through this so a
// misspelled field fails loudly instead of being ignored.
void expect_keys(const nlohmann::json& j, const std::string& what,
                 std::initializer_list<const char*> allowed);

// Field accessors shared by the spec parsers; absence and type mismatches
// become validation_errors naming the enclosing object.
const nlohmann::json& spec_field(const nlohmann::json& j,
                                 const std::string& what, const char* key);
std::string spec_string(const nlohmann::json& j, const std::string& what,
                        const char* key);
long long spec_int(const nlohmann::json& j, const std::string& what,
                   const char* key, long long min);

// Spec-file name of a cell kind ("folding_rnn", ...).
std::string cell_kind_name(CellKind kind);

// A cell plus the structure it gets compiled against. `length` is the
// list length, step count, sequence length, or tree depth, depending on
// the cell kind.
struct ArchSpec {
    CellSpec cell;
    std::uint64_t seed = 0;
    int length = 0;

    static ArchSpec from_json(const nlohmann::json& j);
};

inline constexpr int kMaxTreeDepth = 16;

// Builds the cell, unrolls it over the declared structure (trees are
// complete binary trees of the given depth) and fills the store with
// seeded initial values.
UnrolledNet build_arch(const ArchSpec& spec);

// Representation choices a derive spec can name. `regular` acts on the
// closure elements themselves; `trivial` fixes every coordinate and needs
// an explicit dimension.
struct RepSpec {
    enum class Kind { Vector, Entries, Regular, Trivial };
    Kind kind = Kind::Vector;
    int dim = 0; // trivial only

    static RepSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

LinearRep make_rep(const RepSpec& spec, const GroupAction& g,
                   std::size_t cap);

// Group plus an input and output representation. `cap` bounds every group
// closure computed while parsing.
struct DeriveSpec {
    GroupAction group;
    RepSpec rep_in;
    RepSpec rep_out;

    static DeriveSpec from_json(const nlohmann::json& j, std::size_t cap);
};

struct DeriveResult {
    EquivariantBasis basis;
    WeightSharingPattern pattern;
    nlohmann::json report; // contents of pattern.json
};

DeriveResult run_derive(const DeriveSpec& spec, std::size_t cap);

} // namespace catarch
