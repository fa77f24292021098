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

// Reference implementations used only by the tests. They are written independently of the
// library code (different algorithms or arithmetic) so that agreement means something.

#ifndef TRSIM_TESTS_ORACLES_HPP
#define TRSIM_TESTS_ORACLES_HPP

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <set>
#include <tuple>
#include <vector>

namespace oracle
{
    using cplx = std::complex<double>;

    // Textbook convolution sum accumulated in long double.
    inline std::vector<cplx> convolve(const std::vector<cplx> &a, const std::vector<cplx> &b)
    {
        if (a.empty() || b.empty())
            return {};
        std::vector<cplx> out(a.size() + b.size() - 1);
        for (std::size_t n = 0; n < out.size(); ++n)
        {
            long double re = 0.0L, im = 0.0L;
            const std::size_t k0 = n >= b.size() - 1 ? n - (b.size() - 1) : 0;
            const std::size_t k1 = std::min(n, a.size() - 1);
            for (std::size_t k = k0; k <= k1; ++k)
            {
                const cplx x = a[k], y = b[n - k];
                re += static_cast<long double>(x.real()) * y.real() - static_cast<long double>(x.imag()) * y.imag();
                im += static_cast<long double>(x.real()) * y.imag() + static_cast<long double>(x.imag()) * y.real();
            }
            out[n] = cplx(static_cast<double>(re), static_cast<double>(im));
        }
        return out;
    }

    // max |a - b| / max |b|
    inline double rel_error(const std::vector<cplx> &a, const std::vector<cplx> &b)
    {
        if (a.size() != b.size())
            return HUGE_VAL;
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            num = std::max(num, std::abs(a[i] - b[i]));
            den = std::max(den, std::abs(b[i]));
        }
        return den > 0.0 ? num / den : num;
    }

    inline std::vector<cplx> random_signal(std::mt19937_64 &rng, std::size_t n)
    {
        std::normal_distribution<double> g(0.0, 1.0);
        std::vector<cplx> v(n);
        for (auto &x : v)
            x = cplx(g(rng), g(rng));
        return v;
    }

    // Gaussian tail by numerical integration of the density.
    inline double gaussian_tail(double x)
    {
        const double pi = 3.141592653589793238462643383279502884;
        auto pdf = [pi](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * pi); };
        if (x >= 0.0)
        {
            boost::math::quadrature::exp_sinh<double> integrator;
            return integrator.integrate([&](double u) { return pdf(x + u); }, 0.0, std::numeric_limits<double>::infinity());
        }
        boost::math::quadrature::tanh_sinh<double> finite;
        return 0.5 + finite.integrate(pdf, x, 0.0);
    }

    // Inverse of gaussian_tail on (0, 0.5) by bisection.
    inline double gaussian_tail_inverse(double p)
    {
        double lo = 0.0, hi = 40.0;
        for (int i = 0; i < 200; ++i)
        {
            const double mid = 0.5 * (lo + hi);
            (gaussian_tail(mid) > p ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    // Images of a point source in a rectangle found by repeatedly mirroring across the four
    // walls; each image is tagged with the number of mirrorings needed to reach it.
    struct Image
    {
        double x, y;
        int reflections;
    };

    inline std::vector<Image> mirror_images(double W, double H, double sx, double sy, int order)
    {
        auto key = [](double x, double y) { return std::make_pair(std::llround(x * 1e12), std::llround(y * 1e12)); };
        std::set<std::pair<long long, long long>> seen{key(sx, sy)};
        std::vector<Image> all{{sx, sy, 0}};
        std::vector<Image> frontier = all;
        for (int k = 1; k <= order; ++k)
        {
            std::vector<Image> next;
            for (const auto &im : frontier)
            {
                const Image cand[4] = {{-im.x, im.y, k}, {2 * W - im.x, im.y, k}, {im.x, -im.y, k}, {im.x, 2 * H - im.y, k}};
                for (const auto &c : cand)
                    if (seen.insert(key(c.x, c.y)).second)
                        next.push_back(c);
            }
            all.insert(all.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
        return all;
    }

    // Power-delay-profile statistics in long double.
    inline double rms_spread(const std::vector<double> &power, const std::vector<double> &delay)
    {
        long double p = 0, m1 = 0, m2 = 0;
        for (std::size_t i = 0; i < power.size(); ++i)
        {
            p += power[i];
            m1 += static_cast<long double>(power[i]) * delay[i];
            m2 += static_cast<long double>(power[i]) * delay[i] * delay[i];
        }
        const long double mean = m1 / p;
        return static_cast<double>(std::sqrt(std::max(0.0L, m2 / p - mean * mean)));
    }

} // namespace oracle

#endif
