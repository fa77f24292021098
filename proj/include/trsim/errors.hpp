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

#ifndef TRSIM_ERRORS_HPP
#define TRSIM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trsim
{
    // Argument outside the mathematical domain of an operation (negative permittivity,
    // nonpositive frequency, sigma <= 0, ...).
    class domain_error : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Transmitter/receiver placement that the cavity model cannot handle.
    class geometry_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Operation needs a signal with nonzero energy.
    class zero_energy_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Two signals combined at different sample rates, or a rate that is not an
    // integer multiple of the symbol rate.
    class sample_rate_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Two-cluster threshold estimation on data without two distinct values.
    class degenerate_cluster_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Trace file problems. line() is 1-based, 0 when the error is not tied to a line.
    class parse_error : public std::runtime_error
    {
    public:
        enum class kind
        {
            empty_file,
            bad_header,
            malformed_row,
            nonuniform_grid,
            too_short,
            io
        };

        parse_error(kind k, std::size_t line, const std::string &what)
            : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what), kind_(k), line_(line)
        {
        }

        kind error_kind() const noexcept { return kind_; }
        std::size_t line() const noexcept { return line_; }

    private:
        kind kind_;
        std::size_t line_;
    };

    // Experiment configuration problems; carries the offending key and line.
    class config_error : public std::runtime_error
    {
    public:
        config_error(const std::string &key, std::size_t line, const std::string &what)
            : std::runtime_error(format(key, line, what)), key_(key), line_(line)
        {
        }

        const std::string &key() const noexcept { return key_; }
        std::size_t line() const noexcept { return line_; }

    private:
        static std::string format(const std::string &key, std::size_t line, const std::string &what)
        {
            std::string s = what;
            if (!key.empty())
                s = "'" + key + "': " + s;
            if (line)
                s += " (line " + std::to_string(line) + ")";
            return s;
        }

        std::string key_;
        std::size_t line_;
    };

} // namespace trsim

#endif
