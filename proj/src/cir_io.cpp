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

#include "trsim/cir_io.hpp"
#include "trsim/errors.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace trsim
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        bool parse_double(const std::string &field, double &v)
        {
            const std::string t = trim(field);
            if (t.empty())
                return false;
            char *end = nullptr;
            errno = 0;
            v = std::strtod(t.c_str(), &end);
            return errno == 0 && end == t.c_str() + t.size() && std::isfinite(v);
        }

        std::string format_g17(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            return buf;
        }
    } // namespace

    ChannelImpulseResponse read_cir_trace(std::istream &in, TraceFormat)
    {
        std::string line;
        std::size_t line_no = 0;
        bool have_header = false;
        std::vector<double> times;
        samples_t samples;

        while (std::getline(in, line))
        {
            ++line_no;
            if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
                line.erase(0, 3);
            const std::string t = trim(line);
            if (t.empty())
                continue;
            if (!have_header)
            {
                std::string h;
                for (char c : t)
                    if (c != ' ' && c != '\t')
                        h += c;
                if (h != "time_s,real,imag")
                    throw parse_error(parse_error::kind::bad_header, line_no, "expected header 'time_s,real,imag'");
                have_header = true;
                continue;
            }
            std::vector<std::string> fields;
            std::stringstream ss(t);
            std::string f;
            while (std::getline(ss, f, ','))
                fields.push_back(f);
            if (!t.empty() && t.back() == ',')
                fields.emplace_back();
            double tv = 0.0, re = 0.0, im = 0.0;
            if (fields.size() != 3 || !parse_double(fields[0], tv) || !parse_double(fields[1], re) ||
                !parse_double(fields[2], im))
                throw parse_error(parse_error::kind::malformed_row, line_no, "expected three numeric fields");

            if (times.size() >= 1)
            {
                const double step = tv - times.back();
                if (times.size() == 1)
                {
                    if (!(step > 0.0))
                        throw parse_error(parse_error::kind::nonuniform_grid, line_no, "timestamps must increase");
                }
                else
                {
                    const double ref = times[1] - times[0];
                    const double expect = times[0] + static_cast<double>(times.size()) * ref;
                    if (std::abs(tv - expect) > 1e-6 * ref)
                        throw parse_error(parse_error::kind::nonuniform_grid, line_no,
                                          "time step deviates from the grid by more than 1 ppm");
                }
            }
            times.push_back(tv);
            samples.emplace_back(re, im);
        }

        if (!have_header)
            throw parse_error(parse_error::kind::empty_file, 0, "trace file is empty");
        if (samples.size() < 2)
            throw parse_error(parse_error::kind::too_short, 0, "trace needs at least two samples to define a rate");

        const double fs = static_cast<double>(samples.size() - 1) / (times.back() - times.front());
        return make_sampled_cir(std::move(samples), fs);
    }

    ChannelImpulseResponse import_cir_trace(const std::filesystem::path &path, TraceFormat format)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw parse_error(parse_error::kind::io, 0, "cannot open '" + path.string() + "'");
        auto cir = read_cir_trace(in, format);
        cir.id = path.filename().string();
        return cir;
    }

    void write_cir_trace(std::ostream &out, std::span<const cplx> samples, double sample_rate)
    {
        if (!(sample_rate > 0.0))
            throw domain_error("sample rate must be positive");
        out << "time_s,real,imag\n";
        for (std::size_t i = 0; i < samples.size(); ++i)
            out << format_g17(static_cast<double>(i) / sample_rate) << ',' << format_g17(samples[i].real()) << ','
                << format_g17(samples[i].imag()) << '\n';
    }

    void export_cir_trace(const std::filesystem::path &path, std::span<const cplx> samples, double sample_rate)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw parse_error(parse_error::kind::io, 0, "cannot write '" + path.string() + "'");
        write_cir_trace(out, samples, sample_rate);
        if (!out)
            throw parse_error(parse_error::kind::io, 0, "write to '" + path.string() + "' failed");
    }

} // namespace trsim
