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

#include "trsim/channel.hpp"
#include "trsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <tuple>

namespace trsim
{
    double distance(const Position &a, const Position &b) { return std::hypot(a.x - b.x, a.y - b.y); }

    bool CavityModel::contains(const Position &p) const
    {
        return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
    }

    void CavityModel::validate() const
    {
        if (!(width > 0.0) || !(height > 0.0))
            throw domain_error("cavity width and height must be positive");
        if (!(wall_reflection_coefficient >= 0.0 && wall_reflection_coefficient <= 1.0))
            throw domain_error("wall reflection coefficient must lie in [0, 1]");
        if (max_image_order < 0 || max_image_order > 64)
            throw domain_error("max image order must lie in [0, 64]");
        if (!(relative_permittivity >= 1.0))
            throw domain_error("relative permittivity must be >= 1");
        if (!std::isfinite(path_loss_exponent) || path_loss_exponent < 0.0)
            throw domain_error("path loss exponent must be finite and >= 0");
        if (!std::isfinite(attenuation_np_per_m) || attenuation_np_per_m < 0.0)
            throw domain_error("attenuation must be finite and >= 0");
    }

    double propagation_velocity(double relative_permittivity)
    {
        if (!(relative_permittivity >= 1.0))
            throw domain_error("relative permittivity must be >= 1");
        return speed_of_light / std::sqrt(relative_permittivity);
    }

    double monopole_length(double frequency, double relative_permittivity)
    {
        if (!(frequency > 0.0))
            throw domain_error("frequency must be positive");
        return propagation_velocity(relative_permittivity) / (4.0 * frequency);
    }

    double wavelength(double frequency, double relative_permittivity)
    {
        if (!(frequency > 0.0))
            throw domain_error("frequency must be positive");
        return propagation_velocity(relative_permittivity) / frequency;
    }

    std::vector<MultipathTap> image_source_taps(const CavityModel &cavity, const Position &tx, const Position &rx,
                                                double carrier_frequency)
    {
        cavity.validate();
        if (!cavity.contains(tx) || !cavity.contains(rx))
            throw geometry_error("transmitter and receiver must lie inside the cavity");
        if (tx == rx)
            throw geometry_error("transmitter and receiver coincide; direct path has zero length");
        if (!(carrier_frequency >= 0.0))
            throw domain_error("carrier frequency must be >= 0");

        const double vp = propagation_velocity(cavity.relative_permittivity);
        const int order = cavity.max_image_order;
        const double r = cavity.wall_reflection_coefficient;

        // Image of the source along one axis: q = 0 keeps the orientation, q = 1 mirrors it.
        // The offset to the receiver is written so swapping tx and rx negates it exactly,
        // which keeps reciprocal channels bit-identical.
        auto offset = [](double s, double d, double size, int n, int q) {
            const double shift = 2.0 * n * size;
            return q == 0 ? (s - d) + shift : shift - (s + d);
        };

        std::vector<MultipathTap> taps;
        taps.reserve(static_cast<std::size_t>(2 * order * order + 2 * order + 1));
        const int nmax = order / 2 + 1;
        for (int nx = -nmax; nx <= nmax; ++nx)
            for (int qx = 0; qx <= 1; ++qx)
            {
                const int rx_count = std::abs(2 * nx - qx);
                if (rx_count > order)
                    continue;
                const double dx = offset(tx.x, rx.x, cavity.width, nx, qx);
                for (int ny = -nmax; ny <= nmax; ++ny)
                    for (int qy = 0; qy <= 1; ++qy)
                    {
                        const int reflections = rx_count + std::abs(2 * ny - qy);
                        if (reflections > order)
                            continue;
                        const double dy = offset(tx.y, rx.y, cavity.height, ny, qy);
                        const double d = std::hypot(dx, dy);
                        MultipathTap tap;
                        tap.delay = d / vp;
                        tap.amplitude = std::pow(r, reflections) * std::pow(d, -cavity.path_loss_exponent);
                        if (cavity.attenuation_np_per_m > 0.0)
                            tap.amplitude *= std::exp(-cavity.attenuation_np_per_m * d);
                        double ph = std::fmod(-2.0 * pi * carrier_frequency * tap.delay, 2.0 * pi);
                        if (ph < 0.0)
                            ph += 2.0 * pi;
                        if (ph >= 2.0 * pi)
                            ph = 0.0;
                        tap.phase = ph;
                        taps.push_back(tap);
                    }
            }

        std::sort(taps.begin(), taps.end(), [](const MultipathTap &a, const MultipathTap &b) {
            return std::tie(a.delay, a.amplitude, a.phase) < std::tie(b.delay, b.amplitude, b.phase);
        });
        return taps;
    }

    samples_t discretize(std::span<const MultipathTap> taps, double sample_rate)
    {
        if (taps.empty())
            throw std::invalid_argument("cannot discretize an empty tap list");
        if (!(sample_rate > 0.0))
            throw domain_error("sample rate must be positive");
        double max_delay = 0.0;
        for (const auto &t : taps)
        {
            if (!(t.delay >= 0.0) || !(t.amplitude >= 0.0))
                throw std::invalid_argument("taps need nonnegative delay and amplitude");
            max_delay = std::max(max_delay, t.delay);
        }
        samples_t out(static_cast<std::size_t>(std::llround(max_delay * sample_rate)) + 1, cplx{0.0, 0.0});
        for (const auto &t : taps)
        {
            const auto idx = static_cast<std::size_t>(std::llround(t.delay * sample_rate));
            out[idx] += std::polar(t.amplitude, t.phase);
        }
        return out;
    }

    ChannelImpulseResponse synth_cavity_cir(const CavityModel &cavity, const Position &tx, const Position &rx,
                                            const BasebandGrid &grid)
    {
        ChannelImpulseResponse cir;
        cir.taps = image_source_taps(cavity, tx, rx, grid.carrier_frequency);
        cir.samples = discretize(cir.taps, grid.sample_rate);
        cir.sample_rate = grid.sample_rate;
        cir.carrier_frequency = grid.carrier_frequency;
        cir.tx_position = tx;
        cir.rx_position = rx;
        std::ostringstream id;
        id.precision(6);
        id << "cavity(" << tx.x * 1e3 << "mm," << tx.y * 1e3 << "mm)->(" << rx.x * 1e3 << "mm," << rx.y * 1e3 << "mm)";
        cir.id = id.str();
        return cir;
    }

    namespace
    {
        template <class PowerAt, class DelayAt>
        double delay_spread(std::size_t n, PowerAt power, DelayAt delay)
        {
            double p_sum = 0.0, p_tau = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                p_sum += power(i);
                p_tau += power(i) * delay(i);
            }
            if (!(p_sum > 0.0))
                throw zero_energy_error("delay spread of a zero-energy channel is undefined");
            const double mean = p_tau / p_sum;
            double var = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                const double dt = delay(i) - mean;
                var += power(i) * dt * dt;
            }
            return std::sqrt(var / p_sum);
        }
    } // namespace

    double rms_delay_spread(std::span<const MultipathTap> taps)
    {
        return delay_spread(
            taps.size(), [&](std::size_t i) { return taps[i].amplitude * taps[i].amplitude; },
            [&](std::size_t i) { return taps[i].delay; });
    }

    double rms_delay_spread(const ChannelImpulseResponse &cir)
    {
        if (!cir.taps.empty())
            return rms_delay_spread(cir.taps);
        if (!(cir.sample_rate > 0.0))
            throw domain_error("sample rate must be positive");
        return delay_spread(
            cir.samples.size(), [&](std::size_t i) { return std::norm(cir.samples[i]); },
            [&](std::size_t i) { return static_cast<double>(i) / cir.sample_rate; });
    }

    ChannelImpulseResponse make_sampled_cir(samples_t samples, double sample_rate, double carrier_frequency)
    {
        if (samples.empty())
            throw std::invalid_argument("a channel needs at least one sample");
        if (!(sample_rate > 0.0))
            throw domain_error("sample rate must be positive");
        ChannelImpulseResponse cir;
        cir.samples = std::move(samples);
        cir.sample_rate = sample_rate;
        cir.carrier_frequency = carrier_frequency;
        return cir;
    }

} // namespace trsim
