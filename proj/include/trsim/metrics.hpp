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

#ifndef TRSIM_METRICS_HPP
#define TRSIM_METRICS_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace trsim
{
    struct BerResult;

    // Gaussian tail probability, 0.5 * erfc(x / sqrt(2)).
    double q_function(double x);

    struct TheoreticalBerInput
    {
        double delta_a = 0.0; // centroid separation of the two decision clusters
        double sigma = 0.0;   // noise standard deviation of the decision statistic
    };

    // 0.5 * Q(delta_a / sigma), as used to extend measured BER curves below the Monte-Carlo floor.
    double theoretical_ber(const TheoreticalBerInput &input);

    // Q(delta_a / (2 sigma)): error rate of a midpoint threshold between two equiprobable
    // Gaussian clusters delta_a apart.
    double midpoint_ber(const TheoreticalBerInput &input);

    enum class BerFormula
    {
        half_q,  // theoretical_ber
        midpoint // midpoint_ber
    };

    double ber_from(BerFormula formula, const TheoreticalBerInput &input);

    // Scales delta_a by 10^(offset/20) at fixed sigma (transmit-power sweep) and maps each point
    // through the chosen formula. Returns (offset_db, ber) pairs in input order.
    std::vector<std::pair<double, double>> extrapolate_ber_curve(double delta_a_at_ref, double sigma_at_ref,
                                                                 std::span<const double> snr_offsets_db,
                                                                 BerFormula formula = BerFormula::half_q);

    // Same, taking the reference from a measured trial; needs at least min_reference_bits counted bits.
    inline constexpr std::size_t min_reference_bits = 1000;
    std::vector<std::pair<double, double>> extrapolate_ber_curve(const BerResult &reference,
                                                                 std::span<const double> snr_offsets_db,
                                                                 BerFormula formula = BerFormula::half_q);

    // 10 log10(intended / max(victims)).
    double suppression_ratio_db(double intended_peak_power, std::span<const double> victim_peak_powers);

    // Binomial helpers for error counts.
    double binomial_std(double p, std::size_t n);

    // Upper end of a one-sided 95 % interval: 3/n (rule of three) for zero errors,
    // otherwise the upper Wilson score bound at z = 1.96.
    double ber_upper_bound(std::size_t n_errors, std::size_t n_bits);

    // True when the observed count is within k binomial standard deviations of the expected rate p.
    bool within_binomial_ci(std::size_t n_errors, std::size_t n_bits, double p, double k = 3.0);

} // namespace trsim

#endif
