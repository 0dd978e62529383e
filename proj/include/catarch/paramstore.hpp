//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <span>
#include <string>
#include <vector>

#include "catarch/tensor.hpp"

namespace catarch {

struct ParamField {
    std::string name;
    std::vector<int> shape;

    int numel() const { return shape_numel(shape); }
    bool operator==(const ParamField&) const = default;
};

// Flat 64-bit float vector plus a shape manifest; the vector's length always
// equals the sum of manifest sizes. Fields live at fixed offsets in manifest
// order.
class ParamStore {
  public:
    ParamStore() = default;
    explicit ParamStore(std::vector<ParamField> manifest);

    const std::vector<ParamField>& manifest() const { return manifest_; }
    int total_size() const { return static_cast<int>(data_.size()); }

    bool has_field(const std::string& name) const;
    int field_offset(const std::string& name) const;
    int field_size(const std::string& name) const;
    std::span<double> field(const std::string& name);
    std::span<const double> field(const std::string& name) const;

    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }
    void set_values(std::vector<double> v);

    ParamStore zeros_like() const { return ParamStore(manifest_); }
    bool same_manifest(const ParamStore& o) const {
        return manifest_ == o.manifest_;
    }
    bool operator==(const ParamStore&) const = default;

  private:
    std::vector<ParamField> manifest_;
    std::vector<double> data_;
};

} // namespace catarch
