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

#include "trsim/link.hpp"
#include "trsim/convolution.hpp"
#include "trsim/errors.hpp"
#include "trsim/trcore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

namespace trsim
{
    namespace
    {
        std::uint64_t splitmix64(std::uint64_t z)
        {
            z += 0x9E3779B97F4A7C15ull;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            return z ^ (z >> 31);
        }

        constexpr std::uint64_t bit_stream = 0x62697473ull;   // "bits"
        constexpr std::uint64_t noise_stream = 0x6e6f6973ull; // "nois"
    } // namespace

    std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
    {
        return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
    }

    double noise_sigma(double reference_power, double snr_db)
    {
        if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
            throw domain_error("SNR must be a number above -inf");
        if (!(reference_power > 0.0) || !std::isfinite(reference_power))
            throw zero_energy_error("noise reference power must be positive");
        if (std::isinf(snr_db))
            return 0.0;
        return std::sqrt(reference_power / std::pow(10.0, snr_db / 10.0));
    }

    Waveform add_noise(const Waveform &waveform, double sigma, std::uint64_t seed)
    {
        if (!(sigma >= 0.0) || !std::isfinite(sigma))
            throw domain_error("noise sigma must be finite and >= 0");
        Waveform out = waveform;
        if (sigma == 0.0)
            return out;
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, sigma / std::sqrt(2.0));
        for (auto &v : out.samples)
        {
            const double re = normal(rng);
            const double im = normal(rng);
            v += cplx{re, im};
        }
        return out;
    }

    NoisyWaveform add_awgn(const Waveform &waveform, double snr_db, std::uint64_t seed)
    {
        NoisyWaveform out;
        out.noise.sigma = noise_sigma(mean_power(waveform.samples), snr_db);
        out.noise.reference = SnrReference::received_signal_power;
        out.waveform = add_noise(waveform, out.noise.sigma, seed);
        return out;
    }

    std::size_t guard_symbols(std::size_t effective_length, std::size_t sps)
    {
        if (effective_length == 0 || sps == 0)
            throw std::invalid_argument("guard needs a nonempty channel and sps > 0");
        return (effective_length - 1 + sps - 1) / sps;
    }

    BerResult run_trial(const LinkConfig &config)
    {
        if (config.n_bits == 0)
            throw std::invalid_argument("n_bits must be >= 1");
        if (!(config.symbol_rate > 0.0))
            throw domain_error("symbol rate must be positive");
        const auto &cir = config.channel;
        if (cir.samples.empty())
            throw std::invalid_argument("link needs a channel");
        if (!(cir.energy() > 0.0))
            throw zero_energy_error("channel has zero energy");

        const std::size_t sps = samples_per_symbol(config.scheme, config.symbol_rate, cir.sample_rate);
        const std::size_t eff_len = config.tr_enabled ? 2 * cir.samples.size() - 1 : cir.samples.size();
        const std::size_t guard = guard_symbols(eff_len, sps);
        const std::size_t total = config.n_bits + 2 * guard;

        bits_t bits(total);
        std::mt19937_64 bit_rng(derive_seed(config.seed, bit_stream));
        for (auto &b : bits)
            b = static_cast<std::uint8_t>(bit_rng() >> 63);

        const Waveform m = modulate(bits, config.scheme, config.symbol_rate, cir.sample_rate);

        Waveform rx;
        rx.sample_rate = m.sample_rate;
        rx.carrier_frequency = m.carrier_frequency;
        samples_t eff;
        if (config.tr_enabled)
        {
            const auto filter = build_tr_filter(cir);
            const Waveform x = precode(filter, m);
            rx.samples = dsp::convolve(cir.samples, x.samples);
            eff = effective_channel(cir);
        }
        else
        {
            rx.samples = dsp::convolve(cir.samples, m.samples);
            eff = cir.samples;
        }

        double ref_power = 0.0;
        if (config.snr_reference == SnrReference::received_signal_power)
            ref_power = mean_power(rx.samples);
        else
            ref_power = mean_power(m.samples) * cir.energy();
        const double sigma = noise_sigma(ref_power, config.snr_db);
        const Waveform y = add_noise(rx, sigma, derive_seed(config.seed, noise_stream));

        const std::size_t lag = argmax_abs(eff);
        const double phase = std::arg(eff[lag]);
        const auto demod = demodulate(y, config.scheme, config.symbol_rate, total, phase, lag);

        BerResult res;
        res.seed = config.seed;
        res.noise_sigma = sigma;
        res.n_bits = config.n_bits;
        for (std::size_t i = guard; i < guard + config.n_bits; ++i)
            res.n_errors += demod.bits[i] != bits[i];
        res.ber = static_cast<double>(res.n_errors) / static_cast<double>(res.n_bits);

        const std::span<const double> counted(demod.statistics.data() + guard, res.n_bits);
        try
        {
            res.delta_a = estimate_threshold(counted).delta();
        }
        catch (const degenerate_cluster_error &)
        {
            res.delta_a = 0.0;
        }
        return res;
    }

    std::vector<BerResult> run_trials(std::span<const LinkConfig> configs, unsigned workers)
    {
        std::vector<BerResult> out(configs.size());
        if (configs.empty())
            return out;
        if (workers == 0)
            workers = std::max(1u, std::thread::hardware_concurrency());
        workers = std::min<unsigned>(workers, static_cast<unsigned>(configs.size()));

        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(configs.size());
        auto work = [&] {
            for (std::size_t i = next++; i < configs.size(); i = next++)
            {
                try
                {
                    out[i] = run_trial(configs[i]);
                }
                catch (...)
                {
                    errors[i] = std::current_exception();
                }
            }
        };
        if (workers == 1)
            work();
        else
        {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(work);
            for (auto &t : pool)
                t.join();
        }
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
        return out;
    }

    InterferenceReport run_interference_probe(const LinkConfig &config,
                                              std::span<const ChannelImpulseResponse> victim_cirs)
    {
        if (!config.tr_enabled)
            throw std::invalid_argument("the interference probe needs TR enabled");
        if (victim_cirs.empty())
            throw std::invalid_argument("no victim channels given");

        const auto filter = build_tr_filter(config.channel);
        Waveform impulse;
        impulse.samples = {cplx{1.0, 0.0}};
        impulse.sample_rate = config.channel.sample_rate;

        const std::size_t focus = config.channel.samples.size() - 1;
        auto measure = [&](const ChannelImpulseResponse &cir, double &peak, double &center) {
            const auto y = spatial_response(filter, cir, impulse);
            peak = 0.0;
            for (const auto &v : y.samples)
                peak = std::max(peak, std::norm(v));
            center = focus < y.samples.size() ? std::norm(y.samples[focus]) : 0.0;
        };

        InterferenceReport rep;
        measure(config.channel, rep.intended_peak_power, rep.intended_center_power);
        for (const auto &v : victim_cirs)
        {
            double p = 0.0, c = 0.0;
            measure(v, p, c);
            rep.victim_peak_powers.push_back(p);
            rep.victim_center_powers.push_back(c);
        }
        return rep;
    }

} // namespace trsim
