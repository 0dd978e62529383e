//
// Copyright (c) 2026 the catarch authors
// SPDX-License-Identifier: Apache-2.0
//
#include "catarch/pattern.hpp"

#include <map>
#include <sstream>

#include "catarch/errors.hpp"

namespace catarch {

WeightSharingPattern pattern_from_classes(
    std::vector<std::vector<int>> raw) {
    const int rows = static_cast<int>(raw.size());
    if (rows == 0) throw validation_error("pattern: no rows");
    const int cols = static_cast<int>(raw.front().size());
    if (cols == 0) throw validation_error("pattern: no columns");
    for (const auto& r : raw)
        if (static_cast<int>(r.size()) != cols)
            throw validation_error("pattern: ragged rows");

    WeightSharingPattern p;
    p.rows = rows;
    p.cols = cols;
    p.class_of.assign(static_cast<std::size_t>(rows),
                      std::vector<int>(static_cast<std::size_t>(cols), -1));
    std::map<int, int> renumber;
    int next = 0;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const int c = raw[static_cast<std::size_t>(i)]
                             [static_cast<std::size_t>(j)];
            if (c < 0) continue;
            auto it = renumber.find(c);
            if (it == renumber.end()) it = renumber.emplace(c, next++).first;
            p.class_of[static_cast<std::size_t>(i)]
                      [static_cast<std::size_t>(j)] = it->second;
        }
    }
    p.num_classes = next;
    p.dimension = next;
    return p;
}

nlohmann::json WeightSharingPattern::to_json() const {
    nlohmann::json j;
    j["rows"] = rows;
    j["cols"] = cols;
    j["classes"] = class_of;
    j["dimension"] = dimension;
    return j;
}

WeightSharingPattern WeightSharingPattern::from_json(
    const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("classes"))
        throw validation_error("pattern json: missing fields");
    WeightSharingPattern p = pattern_from_classes(
        j.at("classes").get<std::vector<std::vector<int>>>());
    if (j.contains("rows") && j.at("rows").get<int>() != p.rows)
        throw validation_error("pattern json: rows field disagrees");
    if (j.contains("cols") && j.at("cols").get<int>() != p.cols)
        throw validation_error("pattern json: cols field disagrees");
    if (j.contains("dimension")) p.dimension = j.at("dimension").get<int>();
    return p;
}

std::string WeightSharingPattern::render_ascii(bool color) const {
    static const char* names = "abcdefghijklmnopqrstuvwxyz";
    static const int hues[] = {31, 32, 33, 34, 35, 36, 91, 92, 93, 94, 95, 96};
    std::ostringstream out;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            if (j) out << ' ';
            const int c = class_of[static_cast<std::size_t>(i)]
                                  [static_cast<std::size_t>(j)];
            if (c < 0) {
                out << '.';
                continue;
            }
            if (color) out << "\x1b[" << hues[c % 12] << 'm';
            if (c < 26)
                out << names[c];
            else
                out << 'w' << c;
            if (color) out << "\x1b[0m";
        }
        out << '\n';
    }
    return out.str();
}

} // namespace catarch
