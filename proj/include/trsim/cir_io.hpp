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

#ifndef TRSIM_CIR_IO_HPP
#define TRSIM_CIR_IO_HPP

#include "trsim/channel.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace trsim
{
    enum class TraceFormat
    {
        csv_time_real_imag // header `time_s,real,imag`, one sample per row
    };

    // Reads a time-domain trace exported by a field solver or by export_cir_trace.
    // The time grid must be uniform within 1 ppm of the first step; the sample rate is
    // (rows - 1) / (t_last - t_first). Needs at least two rows. Errors carry 1-based line numbers.
    ChannelImpulseResponse import_cir_trace(const std::filesystem::path &path,
                                            TraceFormat format = TraceFormat::csv_time_real_imag);
    ChannelImpulseResponse read_cir_trace(std::istream &in, TraceFormat format = TraceFormat::csv_time_real_imag);

    // Writes samples with 17 significant digits so a re-import is bit-exact.
    void export_cir_trace(const std::filesystem::path &path, std::span<const cplx> samples, double sample_rate);
    void write_cir_trace(std::ostream &out, std::span<const cplx> samples, double sample_rate);

} // namespace trsim

#endif
