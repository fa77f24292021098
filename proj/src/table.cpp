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

#include "trsim/table.hpp"
#include "trsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace trsim
{
    std::size_t Table::column(const std::string &name) const
    {
        const auto it = std::find(columns.begin(), columns.end(), name);
        if (it == columns.end())
            throw std::out_of_range("table has no column '" + name + "'");
        return static_cast<std::size_t>(it - columns.begin());
    }

    bool Table::has_column(const std::string &name) const
    {
        return std::find(columns.begin(), columns.end(), name) != columns.end();
    }

    void Table::add_row(std::vector<std::string> row)
    {
        if (row.size() != columns.size())
            throw std::invalid_argument("row width does not match the table header");
        rows.push_back(std::move(row));
    }

    std::vector<double> Table::numbers(const std::string &name) const
    {
        const std::size_t c = column(name);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto &r : rows)
        {
            char *end = nullptr;
            const double v = std::strtod(r[c].c_str(), &end);
            if (r[c].empty() || end != r[c].c_str() + r[c].size())
                throw std::invalid_argument("column '" + name + "' holds a non-numeric value '" + r[c] + "'");
            out.push_back(v);
        }
        return out;
    }

    std::string format_number(double v)
    {
        char buf[48];
        if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15)
            std::snprintf(buf, sizeof(buf), "%.0f", v);
        else
            std::snprintf(buf, sizeof(buf), "%.12g", v);
        return buf;
    }

    namespace
    {
        std::string quote(const std::string &s)
        {
            if (s.find_first_of(",\"\n") == std::string::npos)
                return s;
            std::string q = "\"";
            for (char c : s)
            {
                if (c == '"')
                    q += '"';
                q += c;
            }
            return q + "\"";
        }

        std::vector<std::string> split_csv(const std::string &line)
        {
            std::vector<std::string> out(1);
            bool in_quotes = false;
            for (std::size_t i = 0; i < line.size(); ++i)
            {
                const char c = line[i];
                if (in_quotes)
                {
                    if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
                        out.back() += '"', ++i;
                    else if (c == '"')
                        in_quotes = false;
                    else
                        out.back() += c;
                }
                else if (c == '"')
                    in_quotes = true;
                else if (c == ',')
                    out.emplace_back();
                else if (c != '\r')
                    out.back() += c;
            }
            return out;
        }
    } // namespace

    void write_csv(std::ostream &out, const Table &t)
    {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out << (i ? "," : "") << quote(t.columns[i]);
        out << '\n';
        for (const auto &r : t.rows)
        {
            for (std::size_t i = 0; i < r.size(); ++i)
                out << (i ? "," : "") << quote(r[i]);
            out << '\n';
        }
    }

    void write_csv(const std::filesystem::path &path, const Table &t)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write '" + path.string() + "'");
        write_csv(out, t);
        if (!out)
            throw std::runtime_error("write to '" + path.string() + "' failed");
    }

    Table read_csv(std::istream &in)
    {
        Table t;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            if (line.empty() || line == "\r")
                continue;
            auto fields = split_csv(line);
            if (t.columns.empty())
                t.columns = std::move(fields);
            else if (fields.size() != t.columns.size())
                throw parse_error(parse_error::kind::malformed_row, line_no, "row width does not match the header");
            else
                t.rows.push_back(std::move(fields));
        }
        if (t.columns.empty())
            throw parse_error(parse_error::kind::empty_file, 0, "table file is empty");
        return t;
    }

    Table read_csv(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw parse_error(parse_error::kind::io, 0, "cannot open '" + path.string() + "'");
        return read_csv(in);
    }

} // namespace trsim
