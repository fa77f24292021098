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

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "trsim/cir_io.hpp"
#include "trsim/errors.hpp"
#include "trsim/trcore.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace trsim;
using Catch::Matchers::WithinRel;

namespace
{
    ChannelImpulseResponse read(const std::string &text)
    {
        std::istringstream in(text);
        return read_cir_trace(in);
    }

    parse_error::kind kind_of(const std::string &text)
    {
        try
        {
            read(text);
        }
        catch (const parse_error &e)
        {
            return e.error_kind();
        }
        FAIL("expected a parse error");
        return parse_error::kind::io;
    }

    std::size_t line_of(const std::string &text)
    {
        try
        {
            read(text);
        }
        catch (const parse_error &e)
        {
            return e.line();
        }
        return 0;
    }

    std::filesystem::path temp_file(const std::string &name)
    {
        return std::filesystem::temp_directory_path() / ("trsim_test_" + name);
    }
}

TEST_CASE("CIR trace - three-row file")
{
    const auto cir = read("time_s,real,imag\n0,1,0\n1e-12,0.5,0\n2e-12,0.25,0\n");
    REQUIRE(cir.samples.size() == 3);
    CHECK(cir.samples[0] == cplx{1.0, 0.0});
    CHECK(cir.samples[1] == cplx{0.5, 0.0});
    CHECK(cir.samples[2] == cplx{0.25, 0.0});
    CHECK_THAT(cir.sample_rate, WithinRel(1e12, 1e-12));
    CHECK(cir.taps.empty());
}

TEST_CASE("CIR trace - tolerates CRLF, spaces and blank lines")
{
    const auto cir = read("time_s, real, imag\r\n0, 1, -2\r\n\r\n1e-9, 3, 4\r\n");
    REQUIRE(cir.samples.size() == 2);
    CHECK(cir.samples[0] == cplx{1.0, -2.0});
    CHECK_THAT(cir.sample_rate, WithinRel(1e9, 1e-12));
}

TEST_CASE("CIR trace - distinct errors with line numbers")
{
    CHECK(kind_of("") == parse_error::kind::empty_file);
    CHECK(kind_of("\n\n") == parse_error::kind::empty_file);
    CHECK(kind_of("t,re,im\n0,1,0\n") == parse_error::kind::bad_header);
    CHECK(kind_of("time_s,real,imag\n0,1,0\n1e-12,abc,0\n") == parse_error::kind::malformed_row);
    CHECK(line_of("time_s,real,imag\n0,1,0\n1e-12,abc,0\n") == 3);
    CHECK(kind_of("time_s,real,imag\n0,1\n") == parse_error::kind::malformed_row);
    CHECK(kind_of("time_s,real,imag\n0,1,0,4\n") == parse_error::kind::malformed_row);
    CHECK(kind_of("time_s,real,imag\n0,1,0\n1e-12,0.5,0\n2.5e-12,0.25,0\n") == parse_error::kind::nonuniform_grid);
    CHECK(line_of("time_s,real,imag\n0,1,0\n1e-12,0.5,0\n2.5e-12,0.25,0\n") == 4);
    CHECK(kind_of("time_s,real,imag\n0,1,0\n0,1,0\n") == parse_error::kind::nonuniform_grid);
    CHECK(kind_of("time_s,real,imag\n0,1,0\n") == parse_error::kind::too_short);
    CHECK(kind_of("time_s,real,imag\n0,nan,0\n1,1,0\n") == parse_error::kind::malformed_row);

    try
    {
        read("time_s,real,imag\n0,1,0\nx,1,0\n");
        FAIL("no error");
    }
    catch (const parse_error &e)
    {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("CIR trace - sub-ppm jitter is accepted")
{
    const auto cir = read("time_s,real,imag\n0,1,0\n1e-12,0.5,0\n2.0000000001e-12,0.25,0\n");
    CHECK(cir.samples.size() == 3);
}

TEST_CASE("CIR trace - export then import is bit-exact")
{
    std::mt19937_64 rng(5);
    const auto s = oracle::random_signal(rng, 777);
    const auto path = temp_file("roundtrip.csv");
    export_cir_trace(path, s, 960e9);
    const auto cir = import_cir_trace(path);
    CHECK(cir.samples == s);
    CHECK_THAT(cir.sample_rate, WithinRel(960e9, 1e-12));
    CHECK(cir.id == path.filename().string());
    std::filesystem::remove(path);
}

TEST_CASE("CIR trace - filters use the same schema")
{
    CavityModel c;
    const auto cir = synth_cavity_cir(c, {1.4e-3, 5e-3}, {8.6e-3, 5e-3});
    const auto f = build_tr_filter(cir);
    const auto path = temp_file("filter.csv");
    export_tr_filter(path, f);
    CHECK(import_cir_trace(path).samples == f.coefficients);
    std::filesystem::remove(path);
}

TEST_CASE("CIR trace - missing file")
{
    try
    {
        import_cir_trace(temp_file("does_not_exist.csv"));
        FAIL("no error");
    }
    catch (const parse_error &e)
    {
        CHECK(e.error_kind() == parse_error::kind::io);
    }
}
