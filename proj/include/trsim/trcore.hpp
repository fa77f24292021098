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

#ifndef TRSIM_TRCORE_HPP
#define TRSIM_TRCORE_HPP

#include "trsim/channel.hpp"

#include <filesystem>
#include <string>

namespace trsim
{
    // Conjugated, time-reversed copy of a channel scaled to unit energy:
    // coefficients[k] = conj(h[L-1-k]) * normalization_gain, normalization_gain = 1/||h||.
    struct TimeReversalFilter
    {
        samples_t coefficients;
        double sample_rate = 0.0;
        double normalization_gain = 0.0;
        std::string source_channel_id;
    };

    TimeReversalFilter build_tr_filter(const ChannelImpulseResponse &cir);

    // Prefilters a waveform with the TR filter (linear convolution).
    Waveform precode(const TimeReversalFilter &filter, const Waveform &waveform);

    // h * conj(h(-t)) / ||h||, i.e. what the receiver sees when the transmitter sends a unit
    // impulse through the TR filter. Length 2L-1, peak at index L-1 with value ||h||.
    samples_t effective_channel(const ChannelImpulseResponse &cir);

    // Noise-free response at a receiver whose channel is cir_at_r: cir_at_r * (filter * waveform).
    Waveform spatial_response(const TimeReversalFilter &filter, const ChannelImpulseResponse &cir_at_r,
                              const Waveform &waveform);

    // Peak received amplitude with TR over peak received amplitude without TR, both for a
    // unit-energy impulse at the transmitter, in dB: 20 log10(||h|| / max|h_k|).
    double temporal_focusing_gain(const ChannelImpulseResponse &cir);

    // Filters share the CIR trace schema.
    void export_tr_filter(const std::filesystem::path &path, const TimeReversalFilter &filter);

} // namespace trsim

#endif
