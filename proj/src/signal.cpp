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

#include "trsim/signal.hpp"

#include <algorithm>
#include <cmath>

namespace trsim
{
    double energy(std::span<const cplx> x)
    {
        double e = 0.0;
        for (const auto &v : x)
            e += std::norm(v);
        return e;
    }

    double norm(std::span<const cplx> x) { return std::sqrt(energy(x)); }

    double mean_power(std::span<const cplx> x)
    {
        return x.empty() ? 0.0 : energy(x) / static_cast<double>(x.size());
    }

    std::size_t argmax_abs(std::span<const cplx> x)
    {
        std::size_t best = 0;
        double best_v = -1.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            const double v = std::norm(x[i]);
            if (v > best_v)
            {
                best_v = v;
                best = i;
            }
        }
        return best;
    }

    bool same_rate(double a, double b)
    {
        return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
    }

} // namespace trsim
