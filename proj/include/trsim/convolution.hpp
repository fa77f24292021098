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

#ifndef TRSIM_CONVOLUTION_HPP
#define TRSIM_CONVOLUTION_HPP

#include "trsim/signal.hpp"

namespace trsim::dsp
{
    // Linear convolution, output length a.size() + b.size() - 1 (empty if either input is empty).
    //
    // Short outputs (<= 2048 samples) and products with a very short operand are evaluated
    // directly. Everything else goes through FFTW using overlap-add, with block sizes chosen
    // from the shorter operand so memory stays proportional to the output.
    samples_t convolve(std::span<const cplx> a, std::span<const cplx> b);

    // Plain O(n*m) sum.
    samples_t convolve_direct(std::span<const cplx> a, std::span<const cplx> b);

    // Always transform based, regardless of size.
    samples_t convolve_fft(std::span<const cplx> a, std::span<const cplx> b);

    // Output length above which convolve() switches to the transform path.
    inline constexpr std::size_t direct_output_limit = 2048;

} // namespace trsim::dsp

#endif
