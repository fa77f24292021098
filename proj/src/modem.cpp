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

#include "trsim/modem.hpp"
#include "trsim/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace trsim
{
    std::string to_string(SchemeKind kind)
    {
        switch (kind)
        {
        case SchemeKind::cw_ask:
            return "cw_ask";
        case SchemeKind::bpsk:
            return "bpsk";
        case SchemeKind::ir_ook:
            return "ir_ook";
        case SchemeKind::ir_ppm:
            return "ir_ppm";
        }
        return "unknown";
    }

    SchemeKind parse_scheme_kind(std::string_view name)
    {
        std::string s;
        for (char c : name)
            s += c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (s == "cw_ask" || s == "ask")
            return SchemeKind::cw_ask;
        if (s == "bpsk")
            return SchemeKind::bpsk;
        if (s == "ir_ook" || s == "ook")
            return SchemeKind::ir_ook;
        if (s == "ir_ppm" || s == "ppm")
            return SchemeKind::ir_ppm;
        throw std::invalid_argument("unknown modulation scheme '" + std::string(name) + "'");
    }

    void ModulationScheme::validate() const
    {
        if (!(ask_amplitude_ratio > 0.0 && ask_amplitude_ratio < 1.0))
            throw domain_error("ASK amplitude ratio must lie in (0, 1)");
        if (!(ppm_shift_fraction > 0.0 && ppm_shift_fraction < 1.0))
            throw domain_error("PPM shift fraction must lie in (0, 1)");
        if (pulse_width && !(*pulse_width > 0.0 && std::isfinite(*pulse_width)))
            throw domain_error("pulse width must be positive");
        if (samples_per_symbol != 0 && samples_per_symbol < 2)
            throw domain_error("samples per symbol must be >= 2");
        if (!(carrier_frequency >= 0.0))
            throw domain_error("carrier frequency must be >= 0");
    }

    std::size_t samples_per_symbol(const ModulationScheme &scheme, double symbol_rate, double sample_rate)
    {
        if (!(symbol_rate > 0.0) || !(sample_rate > 0.0))
            throw domain_error("symbol and sample rates must be positive");
        const double ratio = sample_rate / symbol_rate;
        const double rounded = std::round(ratio);
        if (std::abs(ratio - rounded) > 1e-9 * ratio)
            throw sample_rate_error("sample rate is not an integer multiple of the symbol rate");
        if (rounded < 2.0)
            throw sample_rate_error("need at least two samples per symbol");
        const auto sps = static_cast<std::size_t>(rounded);
        if (scheme.samples_per_symbol != 0 && static_cast<std::size_t>(scheme.samples_per_symbol) != sps)
            throw sample_rate_error("samples per symbol does not match sample rate / symbol rate");
        return sps;
    }

    namespace
    {
        std::size_t shift_samples(const ModulationScheme &scheme, std::size_t sps)
        {
            return static_cast<std::size_t>(std::llround(scheme.ppm_shift_fraction * static_cast<double>(sps)));
        }
    } // namespace

    std::vector<double> gaussian_pulse(const ModulationScheme &scheme, std::size_t sps, double sample_rate)
    {
        const std::size_t shift = shift_samples(scheme, sps);
        // PPM needs both pulse positions inside the slot; OOK only uses the first window
        // but keeps the same default width so the two schemes are comparable.
        const std::size_t room = std::min(shift, sps - shift);
        std::size_t n = 0;
        if (scheme.pulse_width)
            n = static_cast<std::size_t>(std::llround(*scheme.pulse_width * sample_rate));
        else
            n = room;
        if (n == 0)
            throw domain_error("pulse width is shorter than one sample");
        const std::size_t limit = scheme.kind == SchemeKind::ir_ppm ? room : sps;
        if (n > limit)
            throw domain_error("pulse does not fit inside its slot window");

        std::vector<double> p(n);
        const double center = 0.5 * static_cast<double>(n - 1);
        const double sigma = static_cast<double>(n) / 6.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            const double t = (static_cast<double>(i) - center) / sigma;
            p[i] = std::exp(-0.5 * t * t);
        }
        if (n == 1)
            p[0] = 1.0;
        return p;
    }

    Waveform modulate(std::span<const std::uint8_t> bits, const ModulationScheme &scheme, double symbol_rate,
                      double sample_rate)
    {
        scheme.validate();
        if (bits.empty())
            throw std::invalid_argument("cannot modulate an empty bit sequence");
        for (auto b : bits)
            if (b > 1)
                throw std::invalid_argument("bits must be 0 or 1");

        const std::size_t sps = samples_per_symbol(scheme, symbol_rate, sample_rate);
        Waveform w;
        w.sample_rate = sample_rate;
        w.samples.assign(bits.size() * sps, cplx{0.0, 0.0});

        switch (scheme.kind)
        {
        case SchemeKind::cw_ask:
        case SchemeKind::bpsk:
        {
            w.carrier_frequency = scheme.carrier_frequency;
            const bool ask = scheme.kind == SchemeKind::cw_ask;
            for (std::size_t i = 0; i < bits.size(); ++i)
            {
                const double a = ask ? (bits[i] ? 1.0 : scheme.ask_amplitude_ratio) : (bits[i] ? 1.0 : -1.0);
                std::fill_n(w.samples.begin() + static_cast<std::ptrdiff_t>(i * sps), sps, cplx{a, 0.0});
            }
            break;
        }
        case SchemeKind::ir_ook:
        case SchemeKind::ir_ppm:
        {
            w.carrier_frequency = 0.0;
            const auto pulse = gaussian_pulse(scheme, sps, sample_rate);
            const std::size_t shift = shift_samples(scheme, sps);
            const bool ppm = scheme.kind == SchemeKind::ir_ppm;
            for (std::size_t i = 0; i < bits.size(); ++i)
            {
                if (!ppm && !bits[i])
                    continue;
                const std::size_t start = i * sps + (ppm && bits[i] ? shift : 0);
                for (std::size_t k = 0; k < pulse.size(); ++k)
                    w.samples[start + k] = pulse[k];
            }
            break;
        }
        }
        return w;
    }

    ThresholdEstimate estimate_threshold(std::span<const double> statistics)
    {
        if (statistics.size() < 2)
            throw degenerate_cluster_error("threshold estimation needs at least two statistics");
        std::vector<double> v(statistics.begin(), statistics.end());
        for (double x : v)
            if (!std::isfinite(x))
                throw std::invalid_argument("decision statistics must be finite");
        std::sort(v.begin(), v.end());
        if (v.front() == v.back())
            throw degenerate_cluster_error("all decision statistics are identical");

        // Prefix sums over the sorted data make each Lloyd step a binary search.
        std::vector<double> prefix(v.size() + 1, 0.0);
        for (std::size_t i = 0; i < v.size(); ++i)
            prefix[i + 1] = prefix[i] + v[i];

        ThresholdEstimate est;
        est.low_centroid = v.front();
        est.high_centroid = v.back();
        est.threshold = 0.5 * (est.low_centroid + est.high_centroid);
        std::size_t split = v.size() + 1;
        for (int iter = 0; iter < 10000; ++iter)
        {
            const auto k = static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), est.threshold) - v.begin());
            if (k == split)
                break;
            split = k;
            est.low_centroid = prefix[k] / static_cast<double>(k);
            est.high_centroid = (prefix.back() - prefix[k]) / static_cast<double>(v.size() - k);
            est.threshold = 0.5 * (est.low_centroid + est.high_centroid);
        }
        return est;
    }

    Demodulated demodulate(const Waveform &received, const ModulationScheme &scheme, double symbol_rate,
                           std::size_t n_bits, std::optional<double> reference_phase, std::size_t offset)
    {
        scheme.validate();
        if (n_bits == 0)
            throw std::invalid_argument("nothing to demodulate");
        const std::size_t sps = samples_per_symbol(scheme, symbol_rate, received.sample_rate);
        if (offset > received.samples.size() || n_bits * sps > received.samples.size() - offset)
            throw std::invalid_argument("received waveform is shorter than the requested symbols");

        const cplx *y = received.samples.data() + offset;
        Demodulated out;
        out.bits.resize(n_bits);
        out.statistics.resize(n_bits);

        auto slot_energy = [&](std::size_t i, std::size_t from, std::size_t to) {
            double e = 0.0;
            for (std::size_t k = from; k < to; ++k)
                e += std::norm(y[i * sps + k]);
            return e;
        };

        switch (scheme.kind)
        {
        case SchemeKind::cw_ask:
        case SchemeKind::ir_ook:
        {
            for (std::size_t i = 0; i < n_bits; ++i)
                out.statistics[i] = std::sqrt(2.0 * slot_energy(i, 0, sps));
            const auto est = estimate_threshold(out.statistics);
            out.threshold = est.threshold;
            for (std::size_t i = 0; i < n_bits; ++i)
                out.bits[i] = out.statistics[i] > est.threshold ? 1 : 0;
            break;
        }
        case SchemeKind::ir_ppm:
        {
            const std::size_t shift = shift_samples(scheme, sps);
            for (std::size_t i = 0; i < n_bits; ++i)
            {
                const double e0 = slot_energy(i, 0, shift);
                const double e1 = slot_energy(i, shift, sps);
                out.statistics[i] = std::sqrt(2.0 * e1) - std::sqrt(2.0 * e0);
                out.bits[i] = out.statistics[i] > 0.0 ? 1 : 0;
            }
            break;
        }
        case SchemeKind::bpsk:
        {
            const cplx rot = std::polar(1.0, -reference_phase.value_or(0.0));
            const double scale = std::sqrt(2.0 / static_cast<double>(sps));
            for (std::size_t i = 0; i < n_bits; ++i)
            {
                double acc = 0.0;
                for (std::size_t k = 0; k < sps; ++k)
                    acc += (y[i * sps + k] * rot).real();
                out.statistics[i] = scale * acc;
                out.bits[i] = out.statistics[i] > 0.0 ? 1 : 0;
            }
            break;
        }
        }
        return out;
    }

} // namespace trsim
