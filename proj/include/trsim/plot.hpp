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

#ifndef TRSIM_PLOT_HPP
#define TRSIM_PLOT_HPP

#include "trsim/table.hpp"

#include <filesystem>
#include <string>

namespace trsim
{
    enum class PlotKind
    {
        ber_vs_rate, // rate_hz vs ber, one curve per (scheme, tr)
        ber_vs_snr,  // snr_db vs ber, one curve per (scheme, tr, source)
        heatmap,     // spatial map: x_m, y_m, relative_db
        time_trace   // time_s vs nontr_abs and tr_abs
    };

    std::string to_string(PlotKind kind);
    PlotKind parse_plot_kind(const std::string &name);

    // Picks the plot kind from the `experiment` column of a results table.
    PlotKind plot_kind_for(const Table &table);

    // Self-contained SVG document. Identical tables give identical bytes. On log-BER axes a zero
    // BER is drawn at the axis floor with a hollow marker. Throws on an empty table.
    std::string render_svg(const Table &table, PlotKind kind);

    // Renders first and writes only when rendering succeeded.
    void emit_plot(const Table &table, PlotKind kind, const std::filesystem::path &path);

} // namespace trsim

#endif
