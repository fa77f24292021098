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

#include "trsim/convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <mutex>
#include <new>

namespace trsim::dsp
{
    namespace
    {
        // The FFTW planner is not reentrant; execution on distinct arrays is.
        std::mutex planner_mutex;

        class fft_buffer
        {
        public:
            explicit fft_buffer(std::size_t n)
                : data_(static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n))), n_(n)
            {
                if (!data_)
                    throw std::bad_alloc();
            }
            ~fft_buffer() { fftw_free(data_); }
            fft_buffer(const fft_buffer &) = delete;
            fft_buffer &operator=(const fft_buffer &) = delete;

            fftw_complex *get() { return data_; }
            cplx *begin() { return reinterpret_cast<cplx *>(data_); }
            cplx *end() { return begin() + n_; }
            cplx &operator[](std::size_t i) { return begin()[i]; }

        private:
            fftw_complex *data_;
            std::size_t n_;
        };

        class fft_plan
        {
        public:
            fft_plan(std::size_t n, fft_buffer &buf, int sign)
            {
                std::lock_guard lock(planner_mutex);
                plan_ = fftw_plan_dft_1d(static_cast<int>(n), buf.get(), buf.get(), sign, FFTW_ESTIMATE);
            }
            ~fft_plan()
            {
                std::lock_guard lock(planner_mutex);
                fftw_destroy_plan(plan_);
            }
            fft_plan(const fft_plan &) = delete;
            fft_plan &operator=(const fft_plan &) = delete;

            void execute(fft_buffer &buf) const { fftw_execute_dft(plan_, buf.get(), buf.get()); }

        private:
            fftw_plan plan_ = nullptr;
        };
    } // namespace

    samples_t convolve_direct(std::span<const cplx> a, std::span<const cplx> b)
    {
        if (a.empty() || b.empty())
            return {};
        samples_t out(a.size() + b.size() - 1, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            const cplx ai = a[i];
            if (ai == cplx{0.0, 0.0})
                continue;
            cplx *o = out.data() + i;
            for (std::size_t j = 0; j < b.size(); ++j)
                o[j] += ai * b[j];
        }
        return out;
    }

    samples_t convolve_fft(std::span<const cplx> a, std::span<const cplx> b)
    {
        if (a.empty() || b.empty())
            return {};
        std::span<const cplx> lng = a.size() >= b.size() ? a : b;
        std::span<const cplx> sht = a.size() >= b.size() ? b : a;

        const std::size_t out_len = lng.size() + sht.size() - 1;
        // Single transform when everything fits, otherwise overlap-add blocks of roughly 4x the kernel.
        std::size_t nfft = std::bit_ceil(out_len);
        const std::size_t block_fft = std::bit_ceil(std::max<std::size_t>(4 * sht.size(), 4096));
        if (nfft > block_fft)
            nfft = block_fft;
        const std::size_t block = nfft - sht.size() + 1;

        fft_buffer kernel(nfft), work(nfft);
        fft_plan fwd(nfft, work, FFTW_FORWARD), inv(nfft, work, FFTW_BACKWARD);

        std::fill(work.begin(), work.end(), cplx{0.0, 0.0});
        std::copy(sht.begin(), sht.end(), work.begin());
        fwd.execute(work);
        std::copy(work.begin(), work.end(), kernel.begin());

        samples_t out(out_len, cplx{0.0, 0.0});
        const double scale = 1.0 / static_cast<double>(nfft);
        for (std::size_t start = 0; start < lng.size(); start += block)
        {
            const std::size_t n = std::min(block, lng.size() - start);
            std::fill(work.begin(), work.end(), cplx{0.0, 0.0});
            std::copy(lng.begin() + static_cast<std::ptrdiff_t>(start),
                      lng.begin() + static_cast<std::ptrdiff_t>(start + n), work.begin());
            fwd.execute(work);
            for (std::size_t k = 0; k < nfft; ++k)
                work[k] *= kernel[k];
            inv.execute(work);
            const std::size_t m = std::min(nfft, out_len - start);
            for (std::size_t k = 0; k < m; ++k)
                out[start + k] += work[k] * scale;
        }
        return out;
    }

    samples_t convolve(std::span<const cplx> a, std::span<const cplx> b)
    {
        if (a.empty() || b.empty())
            return {};
        const std::size_t out_len = a.size() + b.size() - 1;
        if (out_len <= direct_output_limit || std::min(a.size(), b.size()) <= 8)
            return convolve_direct(a, b);
        return convolve_fft(a, b);
    }

} // namespace trsim::dsp
