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

#ifndef TRSIM_MODEM_HPP
#define TRSIM_MODEM_HPP

#include "trsim/signal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trsim
{
    using bits_t = std::vector<std::uint8_t>;

    enum class SchemeKind
    {
        cw_ask,
        bpsk,
        ir_ook,
        ir_ppm
    };

    std::string to_string(SchemeKind kind);

    // Accepts "cw_ask", "cw-ask", "ask", "bpsk", "ir_ook", "ook", "ir_ppm", "ppm" (case-insensitive).
    SchemeKind parse_scheme_kind(std::string_view name);

    // Binary modulation at complex baseband.
    //
    // CW_ASK: NRZ envelope, bit 0 -> ask_amplitude_ratio, bit 1 -> 1.
    // BPSK:   NRZ envelope, bit 0 -> -1, bit 1 -> +1.
    // IR_OOK: Gaussian pulse at the slot start for bit 1, nothing for bit 0.
    // IR_PPM: Gaussian pulse at the slot start for bit 0, delayed by ppm_shift_fraction * T for bit 1.
    //
    // Carrier schemes are represented by their complex envelope (carrier phase 0) and tag the
    // waveform with carrier_frequency; impulse-radio waveforms carry frequency 0.
    // The Gaussian pulse occupies N = round(pulse_width * fs) samples with sigma = N/6, centered on
    // the middle sample, peak value 1. Without an explicit width, the pulse fills
    // min(shift, 1 - shift) of the symbol period.
    struct ModulationScheme
    {
        SchemeKind kind = SchemeKind::cw_ask;
        double ask_amplitude_ratio = 0.5;
        double ppm_shift_fraction = 0.5;
        std::optional<double> pulse_width; // s
        int samples_per_symbol = 0;        // 0: derived from sample and symbol rate
        double carrier_frequency = 60e9;   // Hz, ignored for impulse radio

        void validate() const;

        friend bool operator==(const ModulationScheme &, const ModulationScheme &) = default;
    };

    // fs / symbol_rate, which must be an integer >= 2 (and match scheme.samples_per_symbol if set).
    std::size_t samples_per_symbol(const ModulationScheme &scheme, double symbol_rate, double sample_rate);

    // Sampled Gaussian pulse used by the impulse-radio schemes. Throws if the pulse does not fit
    // its PPM window (or the slot, for OOK).
    std::vector<double> gaussian_pulse(const ModulationScheme &scheme, std::size_t sps, double sample_rate);

    Waveform modulate(std::span<const std::uint8_t> bits, const ModulationScheme &scheme, double symbol_rate,
                      double sample_rate);

    // 1D two-cluster split. Lloyd iterations seeded with the minimum and maximum; threshold is the
    // midpoint of the converged centroids. A value equal to the threshold belongs to the low cluster.
    struct ThresholdEstimate
    {
        double threshold = 0.0;
        double low_centroid = 0.0;
        double high_centroid = 0.0;

        double delta() const { return high_centroid - low_centroid; }
    };

    ThresholdEstimate estimate_threshold(std::span<const double> statistics);

    struct Demodulated
    {
        bits_t bits;
        std::vector<double> statistics; // one real decision value per symbol
        double threshold = 0.0;         // 0 for BPSK and PPM (sign decisions)
    };

    // Slices n_bits symbols starting at sample `offset` and decides each one. Decision statistics
    // are scaled so that additive noise of per-sample std sigma gives statistic noise of std ~sigma:
    //   CW_ASK, IR_OOK: sqrt(2 * slot energy), threshold from estimate_threshold, bit 1 above it.
    //   IR_PPM:        sqrt(2 * E_shifted) - sqrt(2 * E_start), windows split at the shift; bit 1 if > 0.
    //   BPSK:          sqrt(2 / sps) * sum Re(y * exp(-j * reference_phase)); bit 1 if > 0.
    // Ties resolve to bit 0.
    Demodulated demodulate(const Waveform &received, const ModulationScheme &scheme, double symbol_rate,
                           std::size_t n_bits, std::optional<double> reference_phase = std::nullopt,
                           std::size_t offset = 0);

} // namespace trsim

#endif
