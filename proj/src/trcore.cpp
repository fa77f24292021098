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

#include "trsim/trcore.hpp"
#include "trsim/cir_io.hpp"
#include "trsim/convolution.hpp"
#include "trsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace trsim
{
    namespace
    {
        double checked_norm(const ChannelImpulseResponse &cir)
        {
            const double n = cir.norm();
            if (!(n > 0.0) || !std::isfinite(n))
                throw zero_energy_error("channel has zero (or non-finite) energy");
            return n;
        }

        void require_same_rate(double a, double b)
        {
            if (!same_rate(a, b))
                throw sample_rate_error("sample rates differ");
        }
    } // namespace

    TimeReversalFilter build_tr_filter(const ChannelImpulseResponse &cir)
    {
        const double n = checked_norm(cir);
        TimeReversalFilter f;
        f.normalization_gain = 1.0 / n;
        f.sample_rate = cir.sample_rate;
        f.source_channel_id = cir.id;
        f.coefficients.resize(cir.samples.size());
        const std::size_t L = cir.samples.size();
        for (std::size_t k = 0; k < L; ++k)
            f.coefficients[k] = std::conj(cir.samples[L - 1 - k]) * f.normalization_gain;
        return f;
    }

    Waveform precode(const TimeReversalFilter &filter, const Waveform &waveform)
    {
        require_same_rate(filter.sample_rate, waveform.sample_rate);
        Waveform out;
        out.samples = dsp::convolve(filter.coefficients, waveform.samples);
        out.sample_rate = waveform.sample_rate;
        out.carrier_frequency = waveform.carrier_frequency;
        return out;
    }

    samples_t effective_channel(const ChannelImpulseResponse &cir)
    {
        const auto f = build_tr_filter(cir);
        return dsp::convolve(cir.samples, f.coefficients);
    }

    Waveform spatial_response(const TimeReversalFilter &filter, const ChannelImpulseResponse &cir_at_r,
                              const Waveform &waveform)
    {
        require_same_rate(filter.sample_rate, cir_at_r.sample_rate);
        Waveform x = precode(filter, waveform);
        Waveform y;
        y.samples = dsp::convolve(cir_at_r.samples, x.samples);
        y.sample_rate = x.sample_rate;
        y.carrier_frequency = x.carrier_frequency;
        return y;
    }

    double temporal_focusing_gain(const ChannelImpulseResponse &cir)
    {
        const double n = checked_norm(cir);
        double peak = 0.0;
        for (const auto &v : cir.samples)
            peak = std::max(peak, std::abs(v));
        return 20.0 * std::log10(n / peak);
    }

    void export_tr_filter(const std::filesystem::path &path, const TimeReversalFilter &filter)
    {
        export_cir_trace(path, filter.coefficients, filter.sample_rate);
    }

} // namespace trsim
