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

#include "trsim/errors.hpp"
#include "trsim/link.hpp"
#include "trsim/metrics.hpp"

#include <cmath>

using namespace trsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    LinkConfig identity_link(SchemeKind kind, double fs, double rate)
    {
        LinkConfig c;
        c.scheme.kind = kind;
        c.symbol_rate = rate;
        c.channel = make_sampled_cir({cplx{1.0, 0.0}}, fs);
        c.n_bits = 2000;
        return c;
    }

    ChannelImpulseResponse cavity_channel()
    {
        return synth_cavity_cir(CavityModel{}, {1.4e-3, 5.0e-3}, {8.6e-3, 5.0e-3});
    }
}

TEST_CASE("Seeds - derived streams are distinct and stable")
{
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(0, 1) != derive_seed(1, 0));
}

TEST_CASE("Noise sigma")
{
    CHECK_THAT(noise_sigma(1.0, 0.0), WithinRel(1.0, 1e-15));
    CHECK_THAT(noise_sigma(4.0, 10.0), WithinRel(std::sqrt(0.4), 1e-14));
    CHECK(noise_sigma(1.0, snr_infinite) == 0.0);
    CHECK_THROWS_AS(noise_sigma(1.0, std::nan("")), trsim::domain_error);
    CHECK_THROWS_AS(noise_sigma(1.0, -snr_infinite), trsim::domain_error);
    CHECK_THROWS_AS(noise_sigma(0.0, 10.0), zero_energy_error);
}

TEST_CASE("AWGN - infinite SNR is a no-op")
{
    Waveform w;
    w.sample_rate = 1e9;
    w.samples = {cplx{1.0, 2.0}, cplx{-0.5, 0.25}};
    const auto n = add_awgn(w, snr_infinite, 7);
    CHECK(n.waveform.samples == w.samples);
    CHECK(n.noise.sigma == 0.0);
    Waveform zero = w;
    zero.samples.assign(4, cplx{0.0, 0.0});
    CHECK_THROWS_AS(add_awgn(zero, 10.0, 1), zero_energy_error);
}

TEST_CASE("AWGN - deterministic per seed")
{
    Waveform w;
    w.sample_rate = 1e9;
    w.samples.assign(256, cplx{1.0, 0.0});
    CHECK(add_awgn(w, 5.0, 3).waveform.samples == add_awgn(w, 5.0, 3).waveform.samples);
    CHECK(add_awgn(w, 5.0, 3).waveform.samples != add_awgn(w, 5.0, 4).waveform.samples);
}

TEST_CASE("AWGN - variance matches the requested SNR")
{
    Waveform w;
    w.sample_rate = 1e9;
    w.samples.assign(1000000, cplx{1.0, 0.0});
    const auto n = add_awgn(w, 16.0, 11);
    double re2 = 0.0, im2 = 0.0, re = 0.0;
    for (std::size_t i = 0; i < w.samples.size(); ++i)
    {
        const cplx d = n.waveform.samples[i] - w.samples[i];
        re += d.real();
        re2 += d.real() * d.real();
        im2 += d.imag() * d.imag();
    }
    const double count = static_cast<double>(w.samples.size());
    const double var = std::pow(10.0, -1.6);
    CHECK_THAT((re2 + im2) / count, WithinRel(var, 0.01));
    CHECK_THAT(re2 / im2, WithinRel(1.0, 0.01));
    CHECK(std::abs(re / count) < 5.0 * std::sqrt(0.5 * var / count));
}

TEST_CASE("Guard symbols")
{
    CHECK(guard_symbols(1, 4) == 0);
    CHECK(guard_symbols(5, 4) == 1);
    CHECK(guard_symbols(6, 4) == 2);
    CHECK(guard_symbols(9, 4) == 2);
    CHECK_THROWS(guard_symbols(0, 4));
    CHECK_THROWS(guard_symbols(4, 0));
}

TEST_CASE("Link - noiseless identity channel is error free")
{
    for (auto k : {SchemeKind::cw_ask, SchemeKind::bpsk, SchemeKind::ir_ook, SchemeKind::ir_ppm})
        for (bool tr : {false, true})
        {
            auto c = identity_link(k, 16e9, 1e9);
            c.snr_db = snr_infinite;
            c.tr_enabled = tr;
            const auto r = run_trial(c);
            CHECK(r.n_bits == c.n_bits);
            CHECK(r.n_errors == 0);
            CHECK(r.noise_sigma == 0.0);
            CHECK(r.delta_a > 0.0);
        }
}

TEST_CASE("Link - TR on a single unit tap changes nothing")
{
    for (auto k : {SchemeKind::cw_ask, SchemeKind::bpsk, SchemeKind::ir_ppm})
    {
        auto c = identity_link(k, 8e9, 1e9);
        c.snr_db = -5.0;
        c.tr_enabled = false;
        const auto a = run_trial(c);
        c.tr_enabled = true;
        const auto b = run_trial(c);
        CHECK(a.n_errors == b.n_errors);
        CHECK(a.delta_a == b.delta_a);
        CHECK(a.noise_sigma == b.noise_sigma);
        CHECK(a.n_errors > 0);
    }
}

TEST_CASE("Link - real single-tap gain is exact")
{
    // Powers of two scale signal, noise and statistics without rounding.
    for (auto k : {SchemeKind::cw_ask, SchemeKind::bpsk, SchemeKind::ir_ook})
    {
        auto c = identity_link(k, 8e9, 1e9);
        c.snr_db = 3.0;
        c.tr_enabled = false;
        const auto ref = run_trial(c);
        for (double g : {0.25, 2.0, 8.0})
        {
            c.channel = make_sampled_cir({cplx{g, 0.0}}, 8e9);
            const auto r = run_trial(c);
            CHECK(r.n_errors == ref.n_errors);
            CHECK(r.delta_a == g * ref.delta_a);
            CHECK(r.noise_sigma == g * ref.noise_sigma);
        }
    }
}

TEST_CASE("Link - complex single tap is equivalent in distribution")
{
    auto c = identity_link(SchemeKind::bpsk, 4e9, 1e9);
    c.n_bits = 40000;
    c.snr_db = 0.0;
    c.tr_enabled = false;
    const auto ref = run_trial(c);
    c.channel = make_sampled_cir({std::polar(0.7, 2.1)}, 4e9);
    const auto r = run_trial(c);
    CHECK(within_binomial_ci(r.n_errors, r.n_bits, ref.ber, 4.0));
    CHECK(r.n_errors > 0);
}

TEST_CASE("Link - BPSK matches the closed form on the identity channel")
{
    // sps = 2, received mean power 1: statistic = +-2 + N(0, sigma^2), so BER = Q(2 / sigma).
    auto c = identity_link(SchemeKind::bpsk, 2e9, 1e9);
    c.n_bits = 100000;
    c.snr_db = 1.33;
    c.tr_enabled = false;
    const auto r = run_trial(c);
    const double p = q_function(2.0 / r.noise_sigma);
    INFO("ber " << r.ber << " expected " << p);
    CHECK(within_binomial_ci(r.n_errors, r.n_bits, p));
}

TEST_CASE("Link - results do not depend on the worker count")
{
    std::vector<LinkConfig> cs;
    for (int i = 0; i < 6; ++i)
    {
        auto c = identity_link(i % 2 ? SchemeKind::cw_ask : SchemeKind::ir_ppm, 16e9, 1e9);
        c.seed = static_cast<std::uint64_t>(100 + i);
        c.snr_db = 2.0 * i;
        cs.push_back(c);
    }
    const auto a = run_trials(cs, 1);
    const auto b = run_trials(cs, 3);
    REQUIRE(a.size() == cs.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        CHECK(a[i].n_errors == b[i].n_errors);
        CHECK(a[i].delta_a == b[i].delta_a);
        CHECK(a[i].seed == cs[i].seed);
    }
    cs[2].n_bits = 0;
    CHECK_THROWS(run_trials(cs, 2));
}

TEST_CASE("Link - BPSK errors never increase with SNR for a fixed seed")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
    {
        std::size_t last = std::numeric_limits<std::size_t>::max();
        for (double snr : {0.0, 3.0, 6.0, 9.0})
        {
            auto c = identity_link(SchemeKind::bpsk, 4e9, 1e9);
            c.seed = seed;
            c.snr_db = snr;
            const auto r = run_trial(c);
            CHECK(r.n_errors <= last);
            last = r.n_errors;
        }
    }
}

TEST_CASE("Link - mean BER over seeds does not rise with SNR")
{
    // Fixed multipath channel, every scheme, both arms. Below 1e-3 the means may tie or cross
    // within their confidence intervals.
    const auto h = make_sampled_cir({cplx{1.0, 0.0}, cplx{0.0, 0.0}, std::polar(0.5, 1.0)}, 16e9);
    for (auto k : {SchemeKind::cw_ask, SchemeKind::bpsk, SchemeKind::ir_ook, SchemeKind::ir_ppm})
        for (bool tr : {false, true})
        {
            double last = 1.0, last_hi = 1.0;
            for (double snr : {0.0, 4.0, 8.0, 12.0})
            {
                std::size_t errs = 0, bits = 0;
                for (std::uint64_t seed = 1; seed <= 10; ++seed)
                {
                    LinkConfig c;
                    c.scheme.kind = k;
                    c.symbol_rate = 1e9;
                    c.channel = h;
                    c.n_bits = 1000;
                    c.tr_enabled = tr;
                    c.seed = seed;
                    c.snr_db = snr;
                    const auto r = run_trial(c);
                    errs += r.n_errors;
                    bits += r.n_bits;
                }
                const double mean = static_cast<double>(errs) / static_cast<double>(bits);
                INFO(to_string(k) << " tr " << tr << " snr " << snr << " mean " << mean << " previous " << last);
                if (last >= 1e-3)
                    CHECK(mean <= last);
                else
                    CHECK(mean <= last_hi);
                last = mean;
                last_hi = ber_upper_bound(errs, bits);
            }
        }
}

TEST_CASE("Link - TR beats non-TR for ASK in the default cavity")
{
    const auto h = cavity_channel();
    for (double rate : {5e9, 10e9})
    {
        LinkConfig c;
        c.scheme.kind = SchemeKind::cw_ask;
        c.symbol_rate = rate;
        c.channel = h;
        c.n_bits = 2000;
        c.tr_enabled = false;
        const auto off = run_trial(c);
        c.tr_enabled = true;
        const auto on = run_trial(c);
        INFO("rate " << rate << " nonTR " << off.n_errors << " TR " << on.n_errors);
        CHECK(on.ber < off.ber);
        CHECK(on.n_bits == c.n_bits);
        CHECK(off.n_bits == c.n_bits);
    }
}

TEST_CASE("Link - transmit-power reference")
{
    auto c = identity_link(SchemeKind::cw_ask, 8e9, 1e9);
    c.snr_db = 6.0;
    c.channel = make_sampled_cir({cplx{2.0, 0.0}}, 8e9);
    const auto a = run_trial(c);
    c.snr_reference = SnrReference::transmit_power;
    const auto b = run_trial(c);
    CHECK_THAT(b.noise_sigma, WithinRel(a.noise_sigma, 1e-12));

    // With TR the received power grows by the focusing gain, the transmit reference does not.
    c.channel = cavity_channel();
    c.symbol_rate = 10e9;
    c.snr_reference = SnrReference::received_signal_power;
    const auto rx_ref = run_trial(c);
    c.snr_reference = SnrReference::transmit_power;
    const auto tx_ref = run_trial(c);
    CHECK(tx_ref.noise_sigma != rx_ref.noise_sigma);
}

TEST_CASE("Link - error cases")
{
    auto c = identity_link(SchemeKind::bpsk, 4e9, 1e9);
    c.channel = make_sampled_cir({cplx{0.0, 0.0}}, 4e9);
    CHECK_THROWS_AS(run_trial(c), zero_energy_error);
    c = identity_link(SchemeKind::bpsk, 4e9, 3e9);
    CHECK_THROWS_AS(run_trial(c), sample_rate_error);
    c = identity_link(SchemeKind::bpsk, 4e9, 1e9);
    c.n_bits = 0;
    CHECK_THROWS(run_trial(c));
    c.n_bits = 10;
    c.channel.samples.clear();
    CHECK_THROWS(run_trial(c));
}

TEST_CASE("Interference probe")
{
    const CavityModel cav;
    const auto h = cavity_channel();
    LinkConfig c;
    c.channel = h;
    std::vector<ChannelImpulseResponse> victims = {
        synth_cavity_cir(cav, {1.4e-3, 5.0e-3}, {7.6e-3, 5.0e-3}),
        synth_cavity_cir(cav, {1.4e-3, 5.0e-3}, {8.6e-3, 6.0e-3}),
    };
    const auto rep = run_interference_probe(c, victims);
    REQUIRE(rep.victim_peak_powers.size() == 2);
    CHECK_THAT(rep.intended_center_power, WithinRel(h.energy(), 1e-9));
    CHECK(rep.intended_peak_power >= rep.intended_center_power);
    for (std::size_t i = 0; i < 2; ++i)
    {
        CHECK(rep.victim_peak_powers[i] < rep.intended_peak_power);
        CHECK(rep.victim_center_powers[i] <= rep.victim_peak_powers[i]);
    }

    // The intended receiver as its own victim gives 0 dB.
    const std::vector<ChannelImpulseResponse> self = {h};
    const auto same = run_interference_probe(c, self);
    CHECK(suppression_ratio_db(same.intended_peak_power, same.victim_peak_powers) == 0.0);

    // A victim whose support does not overlap the intended channel sees nothing at the focusing lag.
    LinkConfig d;
    d.channel = make_sampled_cir({cplx{1.0, 0.0}, cplx{0.5, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}}, 960e9);
    const std::vector<ChannelImpulseResponse> disjoint = {
        make_sampled_cir({cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{0.7, 0.0}, cplx{0.2, 0.1}}, 960e9)};
    const auto dis = run_interference_probe(d, disjoint);
    CHECK(dis.victim_center_powers[0] < 1e-30);
    CHECK(dis.intended_center_power > 1.0);

    CHECK_THROWS(run_interference_probe(c, std::vector<ChannelImpulseResponse>{}));
    c.tr_enabled = false;
    CHECK_THROWS(run_interference_probe(c, victims));
}
