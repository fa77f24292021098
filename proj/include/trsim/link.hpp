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

#ifndef TRSIM_LINK_HPP
#define TRSIM_LINK_HPP

#include "trsim/channel.hpp"
#include "trsim/modem.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace trsim
{
    // Independent 64-bit stream seed for (master, index), splitmix64 finalizer over both words.
    std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

    enum class SnrReference
    {
        received_signal_power, // mean power of the channel output before noise
        transmit_power         // mean power of the unprecoded symbols times ||h||^2
    };

    struct NoiseSpec
    {
        double sigma = 0.0; // per-sample std of the complex noise (each component sigma / sqrt 2)
        SnrReference reference = SnrReference::received_signal_power;
    };

    struct NoisyWaveform
    {
        Waveform waveform;
        NoiseSpec noise;
    };

    // Flag value for a noiseless run.
    inline constexpr double snr_infinite = std::numeric_limits<double>::infinity();

    // sigma^2 = reference_power / 10^(snr_db / 10); 0 for snr_db = +inf.
    double noise_sigma(double reference_power, double snr_db);

    // Adds circularly symmetric Gaussian noise of per-sample std sigma (no-op for sigma = 0).
    Waveform add_noise(const Waveform &waveform, double sigma, std::uint64_t seed);

    // Noise referenced to the mean power of the waveform itself.
    NoisyWaveform add_awgn(const Waveform &waveform, double snr_db, std::uint64_t seed);

    struct LinkConfig
    {
        ModulationScheme scheme;
        double symbol_rate = 5e9; // Hz
        double snr_db = 16.0;
        std::size_t n_bits = 1000;
        bool tr_enabled = true;
        std::uint64_t seed = 1;
        ChannelImpulseResponse channel;
        std::vector<Position> interferer_positions;
        SnrReference snr_reference = SnrReference::received_signal_power;
    };

    struct BerResult
    {
        std::size_t n_bits = 0;   // counted bits, equal to LinkConfig::n_bits
        std::size_t n_errors = 0;
        double ber = 0.0;
        double delta_a = 0.0;     // separation of the two statistic centroids over the counted bits
        double noise_sigma = 0.0; // per-sample noise std (statistics are scaled to the same std)
        std::uint64_t seed = 0;
    };

    // Symbols at each end excluded from error counting: ceil((L_eff - 1) / sps), where L_eff is the
    // length of the effective channel (h for non-TR, its TR autocorrelation otherwise).
    std::size_t guard_symbols(std::size_t effective_length, std::size_t sps);

    // modulate -> [precode] -> channel -> AWGN -> align at the effective-channel peak -> demodulate.
    // Bits and noise come from separate streams derived from config.seed. The transmitted frame
    // carries guard_symbols() extra symbols at each end; only the config.n_bits in between are scored.
    BerResult run_trial(const LinkConfig &config);

    // Runs trials on up to `workers` threads (0: hardware concurrency). Results are in input order
    // and do not depend on the worker count.
    std::vector<BerResult> run_trials(std::span<const LinkConfig> configs, unsigned workers = 0);

    struct InterferenceReport
    {
        double intended_peak_power = 0.0;        // max |y|^2 at the intended receiver
        double intended_center_power = 0.0;      // |y|^2 at the focusing lag
        std::vector<double> victim_peak_powers;  // max |y|^2 at each victim
        std::vector<double> victim_center_powers; // |y|^2 at the focusing lag
    };

    // Sends one TR-precoded unit impulse built for config.channel and records the response at the
    // intended receiver and at each victim.
    InterferenceReport run_interference_probe(const LinkConfig &config,
                                              std::span<const ChannelImpulseResponse> victim_cirs);

} // namespace trsim

#endif
