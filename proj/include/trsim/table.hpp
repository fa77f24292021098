// SPDX-License-Identifier: Apache-2.0
//
// trsim - time-reversal link simulator for in-package wireless channels
// Copyright (C) 2026 The trsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef TRSIM_TABLE_HPP
#define TRSIM_TABLE_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace trsim
{
    // Column-named text table, the in-memory form of every CSV the tools write.
    struct Table
    {
        std::vector<std::string> columns;
        std::vector<std::vector<std::string>> rows;

        bool empty() const { return rows.empty(); }

        // Index of a column; throws std::out_of_range when missing.
        std::size_t column(const std::string &name) const;
        bool has_column(const std::string &name) const;

        void add_row(std::vector<std::string> row);

        // Numeric view of a column (strtod; throws on non-numeric cells).
        std::vector<double> numbers(const std::string &name) const;
    };

    // Fixed-format number rendering used in all tables (%.12g; exact integers without exponent).
    std::string format_number(double v);

    void write_csv(std::ostream &out, const Table &t);
    void write_csv(const std::filesystem::path &path, const Table &t);
    Table read_csv(std::istream &in);
    Table read_csv(const std::filesystem::path &path);

} // namespace trsim

#endif
