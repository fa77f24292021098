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

#ifndef TRSIM_SIGNAL_HPP
#define TRSIM_SIGNAL_HPP

#include <complex>
#include <span>
#include <vector>

namespace trsim
{
    using cplx = std::complex<double>;
    using samples_t = std::vector<cplx>;

    inline constexpr double speed_of_light = 299792458.0; // m/s
    inline constexpr double pi = 3.14159265358979323846;

    // Uniformly sampled complex baseband signal.
    // carrier_frequency is metadata only (0 for carrierless impulse radio).
    struct Waveform
    {
        samples_t samples;
        double sample_rate = 0.0;       // Hz
        double carrier_frequency = 0.0; // Hz
    };

    double energy(std::span<const cplx> x);
    double norm(std::span<const cplx> x);
    double mean_power(std::span<const cplx> x);

    // Index of the first sample with maximal magnitude (0 for an empty span).
    std::size_t argmax_abs(std::span<const cplx> x);

    // Two sample rates are considered equal within 1e-9 relative.
    bool same_rate(double a, double b);

} // namespace trsim

#endif
