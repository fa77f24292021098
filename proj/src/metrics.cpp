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

#include "trsim/metrics.hpp"
#include "trsim/errors.hpp"
#include "trsim/link.hpp"

#include <algorithm>
#include <cmath>

namespace trsim
{
    double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

    namespace
    {
        void check(const TheoreticalBerInput &in)
        {
            if (!(in.sigma > 0.0) || !std::isfinite(in.sigma))
                throw domain_error("sigma must be positive");
            if (!(in.delta_a >= 0.0) || !std::isfinite(in.delta_a))
                throw domain_error("delta_a must be finite and >= 0");
        }
    } // namespace

    double theoretical_ber(const TheoreticalBerInput &input)
    {
        check(input);
        return 0.5 * q_function(input.delta_a / input.sigma);
    }

    double midpoint_ber(const TheoreticalBerInput &input)
    {
        check(input);
        return q_function(input.delta_a / (2.0 * input.sigma));
    }

    double ber_from(BerFormula formula, const TheoreticalBerInput &input)
    {
        return formula == BerFormula::half_q ? theoretical_ber(input) : midpoint_ber(input);
    }

    std::vector<std::pair<double, double>> extrapolate_ber_curve(double delta_a_at_ref, double sigma_at_ref,
                                                                 std::span<const double> snr_offsets_db,
                                                                 BerFormula formula)
    {
        check({delta_a_at_ref, sigma_at_ref});
        if (!(delta_a_at_ref > 0.0))
            throw domain_error("reference delta_a must be positive");
        std::vector<std::pair<double, double>> out;
        out.reserve(snr_offsets_db.size());
        for (double off : snr_offsets_db)
        {
            if (!std::isfinite(off))
                throw domain_error("SNR offsets must be finite");
            const double da = delta_a_at_ref * std::pow(10.0, off / 20.0);
            out.emplace_back(off, ber_from(formula, {da, sigma_at_ref}));
        }
        return out;
    }

    std::vector<std::pair<double, double>> extrapolate_ber_curve(const BerResult &reference,
                                                                 std::span<const double> snr_offsets_db,
                                                                 BerFormula formula)
    {
        if (reference.n_bits < min_reference_bits)
            throw std::invalid_argument("reference trial needs at least 1000 counted bits");
        return extrapolate_ber_curve(reference.delta_a, reference.noise_sigma, snr_offsets_db, formula);
    }

    double suppression_ratio_db(double intended_peak_power, std::span<const double> victim_peak_powers)
    {
        if (victim_peak_powers.empty())
            throw std::invalid_argument("no victim powers given");
        if (!(intended_peak_power > 0.0))
            throw domain_error("intended peak power must be positive");
        double worst = 0.0;
        for (double p : victim_peak_powers)
        {
            if (!(p > 0.0))
                throw domain_error("victim peak powers must be positive");
            worst = std::max(worst, p);
        }
        return 10.0 * std::log10(intended_peak_power / worst);
    }

    double binomial_std(double p, std::size_t n)
    {
        if (n == 0)
            throw std::invalid_argument("binomial std needs n > 0");
        return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    }

    double ber_upper_bound(std::size_t n_errors, std::size_t n_bits)
    {
        if (n_bits == 0)
            throw std::invalid_argument("upper bound needs n_bits > 0");
        if (n_errors > n_bits)
            throw std::invalid_argument("more errors than bits");
        const double n = static_cast<double>(n_bits);
        if (n_errors == 0)
            return std::min(1.0, 3.0 / n);
        const double z = 1.96;
        const double p = static_cast<double>(n_errors) / n;
        const double denom = 1.0 + z * z / n;
        const double center = p + z * z / (2.0 * n);
        const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
        return std::min(1.0, (center + half) / denom);
    }

    bool within_binomial_ci(std::size_t n_errors, std::size_t n_bits, double p, double k)
    {
        const double observed = static_cast<double>(n_errors) / static_cast<double>(n_bits);
        return std::abs(observed - p) <= k * binomial_std(p, n_bits);
    }

} // namespace trsim
