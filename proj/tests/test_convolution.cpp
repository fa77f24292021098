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
#include "trsim/convolution.hpp"

using namespace trsim;

TEST_CASE("Convolution - small known products")
{
    const samples_t a = {1.0, 2.0}, b = {3.0, 4.0};
    const samples_t expect = {3.0, 10.0, 8.0};
    CHECK(dsp::convolve_direct(a, b) == expect);
    CHECK(oracle::rel_error(dsp::convolve_fft(a, b), expect) < 1e-14);
    CHECK(dsp::convolve(a, b) == expect);

    const samples_t j = {cplx{0.0, 1.0}};
    const auto r = dsp::convolve(j, j);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == cplx{-1.0, 0.0});
}

TEST_CASE("Convolution - empty operands give an empty result")
{
    const samples_t a = {1.0}, none;
    CHECK(dsp::convolve(a, none).empty());
    CHECK(dsp::convolve_fft(none, a).empty());
    CHECK(dsp::convolve_direct(none, none).empty());
}

TEST_CASE("Convolution - direct and transform paths match the long-double oracle")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> len(1, 4096);
    for (int i = 0; i < 40; ++i)
    {
        const auto a = oracle::random_signal(rng, len(rng));
        const auto b = oracle::random_signal(rng, len(rng));
        const auto ref = oracle::convolve(a, b);
        CHECK(oracle::rel_error(dsp::convolve_fft(a, b), ref) < 1e-10);
        CHECK(oracle::rel_error(dsp::convolve(a, b), ref) < 1e-10);
    }
}

TEST_CASE("Convolution - overlap-add with many blocks")
{
    std::mt19937_64 rng(11);
    const auto a = oracle::random_signal(rng, 50000);
    const auto b = oracle::random_signal(rng, 300);
    const auto ref = oracle::convolve(a, b);
    CHECK(oracle::rel_error(dsp::convolve_fft(a, b), ref) < 1e-10);
    CHECK(oracle::rel_error(dsp::convolve_fft(b, a), ref) < 1e-10);
}

TEST_CASE("Convolution - commutative and linear")
{
    std::mt19937_64 rng(3);
    const auto a = oracle::random_signal(rng, 3000);
    const auto b = oracle::random_signal(rng, 700);
    const auto c = oracle::random_signal(rng, 700);
    CHECK(oracle::rel_error(dsp::convolve(a, b), dsp::convolve(b, a)) < 1e-12);

    samples_t bc(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        bc[i] = b[i] + 2.0 * c[i];
    const auto lhs = dsp::convolve(a, bc);
    auto rhs = dsp::convolve(a, b);
    const auto ac = dsp::convolve(a, c);
    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] += 2.0 * ac[i];
    CHECK(oracle::rel_error(lhs, rhs) < 1e-10);
}
