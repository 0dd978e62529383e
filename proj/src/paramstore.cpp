//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/paramstore.hpp"

#include <set>

namespace catarch {

ParamStore::ParamStore(std::vector<ParamField> manifest)
    : manifest_(std::move(manifest)) {
    std::set<std::string> seen;
    long long total = 0;
    for (const auto& f : manifest_) {
        if (f.name.empty())
            throw validation_error("parameter field needs a name");
        if (!seen.insert(f.name).second)
            throw validation_error("duplicate parameter field '" + f.name +
                                   "'");
        total += f.numel();
    }
    data_.assign(static_cast<std::size_t>(total), 0.0);
}

bool ParamStore::has_field(const std::string& name) const {
    for (const auto& f : manifest_)
        if (f.name == name) return true;
    return false;
}

int ParamStore::field_offset(const std::string& name) const {
    int at = 0;
    for (const auto& f : manifest_) {
        if (f.name == name) return at;
        at += f.numel();
    }
    throw validation_error("unknown parameter field '" + name + "'");
}

int ParamStore::field_size(const std::string& name) const {
    for (const auto& f : manifest_)
        if (f.name == name) return f.numel();
    throw validation_error("unknown parameter field '" + name + "'");
}

std::span<double> ParamStore::field(const std::string& name) {
    return std::span<double>(data_).subspan(
        static_cast<std::size_t>(field_offset(name)),
        static_cast<std::size_t>(field_size(name)));
}

std::span<const double> ParamStore::field(const std::string& name) const {
    return std::span<const double>(data_).subspan(
        static_cast<std::size_t>(field_offset(name)),
        static_cast<std::size_t>(field_size(name)));
}

void ParamStore::set_values(std::vector<double> v) {
    if (v.size() != data_.size())
        throw validation_error("parameter vector length mismatch");
    data_ = std::move(v);
}

} // namespace catarch
