/*
 * Copyright 2026 The gammachain Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GAMMACHAIN_TABLE_HPP
#define GAMMACHAIN_TABLE_HPP

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace gammachain {

using Cell = std::variant<double, long long, std::string>;

/// Self-describing output table: `# key=value` metadata, a column header, then rows.
struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void set(const std::string& key, const std::string& value) { meta.emplace_back(key, value); }
    void set(const std::string& key, double value);
    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// 17 significant digits, so every double round-trips; -0 prints as 0.
inline std::string format_double(double v) {
    if (v == 0) return "0";
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void Table::set(const std::string& key, double value) { meta.emplace_back(key, format_double(value)); }

inline std::string format_cell(const Cell& c) {
    if (auto d = std::get_if<double>(&c)) return format_double(*d);
    if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

inline void write_csv(std::ostream& os, const Table& t) {
    for (const auto& [k, v] : t.meta) os << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
        os << '\n';
    }
}

inline nlohmann::ordered_json to_json(const Table& t) {
    nlohmann::ordered_json j;
    j["meta"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.meta) j["meta"][k] = v;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const Cell& c : row) {
            if (auto d = std::get_if<double>(&c))
                std::isfinite(*d) ? r.push_back(*d) : r.push_back(nullptr);
            else if (auto i = std::get_if<long long>(&c))
                r.push_back(*i);
            else
                r.push_back(std::get<std::string>(c));
        }
        j["rows"].push_back(std::move(r));
    }
    return j;
}

inline void write_json(std::ostream& os, const Table& t) { os << to_json(t).dump(2) << '\n'; }

}  // namespace gammachain

#endif
