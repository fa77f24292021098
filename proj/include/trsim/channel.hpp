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

#ifndef TRSIM_CHANNEL_HPP
#define TRSIM_CHANNEL_HPP

#include "trsim/signal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trsim
{
    // One propagation path: gain, carrier phase in [0, 2pi) and delay in seconds.
    struct MultipathTap
    {
        double amplitude = 0.0;
        double phase = 0.0;
        double delay = 0.0;

        friend bool operator==(const MultipathTap &, const MultipathTap &) = default;
    };

    struct Position
    {
        double x = 0.0; // m
        double y = 0.0; // m

        friend bool operator==(const Position &, const Position &) = default;
    };

    double distance(const Position &a, const Position &b);

    // Multipath channel between two points. `taps` is empty for channels read from
    // sampled traces; `samples` is always populated.
    struct ChannelImpulseResponse
    {
        std::vector<MultipathTap> taps; // sorted by delay
        samples_t samples;
        double sample_rate = 0.0;       // Hz
        double carrier_frequency = 0.0; // Hz
        std::optional<Position> tx_position;
        std::optional<Position> rx_position;
        std::string id;

        double energy() const { return trsim::energy(samples); }
        double norm() const { return trsim::norm(samples); }
    };

    // Rectangular reverberant cavity standing in for a flip-chip package. Paths are
    // traced with the 2D image-source method; every wall has the same reflection
    // coefficient. Amplitudes fall as distance^-path_loss_exponent, so 0.5 is
    // cylindrical spreading (power ~ 1/d). attenuation_np_per_m adds an optional
    // in-plane material loss exp(-alpha * d); zero models lossless silicon.
    struct CavityModel
    {
        double width = 10e-3;  // m
        double height = 10e-3; // m
        double wall_reflection_coefficient = 0.85;
        int max_image_order = 8;
        double relative_permittivity = 11.9;
        double path_loss_exponent = 0.5;
        double attenuation_np_per_m = 0.0;

        bool contains(const Position &p) const;
        void validate() const;

        friend bool operator==(const CavityModel &, const CavityModel &) = default;
    };

    // Sample grid the synthesizer discretizes onto.
    struct BasebandGrid
    {
        double sample_rate = 960e9;      // Hz
        double carrier_frequency = 60e9; // Hz

        friend bool operator==(const BasebandGrid &, const BasebandGrid &) = default;
    };

    // Phase velocity in a dielectric, c0 / sqrt(eps_r).
    double propagation_velocity(double relative_permittivity);

    // Quarter-wavelength monopole length for a carrier frequency inside the dielectric.
    double monopole_length(double frequency, double relative_permittivity);

    // In-medium wavelength at the carrier.
    double wavelength(double frequency, double relative_permittivity);

    // All image-source paths of reflection order <= cavity.max_image_order, sorted by delay.
    std::vector<MultipathTap> image_source_taps(const CavityModel &cavity, const Position &tx, const Position &rx,
                                                double carrier_frequency);

    // Image-source taps plus their discretized baseband samples.
    ChannelImpulseResponse synth_cavity_cir(const CavityModel &cavity, const Position &tx, const Position &rx,
                                            const BasebandGrid &grid = {});

    // Deposits each tap at the nearest sample round(delay * fs); colliding taps add coherently.
    // Nearest-sample placement carries up to half a sample of delay error. The sample rate
    // should be at least 4x the bandwidth of the waveforms that later pass through the channel.
    samples_t discretize(std::span<const MultipathTap> taps, double sample_rate);

    // Power-weighted standard deviation of the delay profile. Uses the tap list when present,
    // otherwise the sampled response.
    double rms_delay_spread(const ChannelImpulseResponse &cir);
    double rms_delay_spread(std::span<const MultipathTap> taps);

    // Builds a trace-only CIR (no taps) from samples.
    ChannelImpulseResponse make_sampled_cir(samples_t samples, double sample_rate, double carrier_frequency = 0.0);

} // namespace trsim

#endif
