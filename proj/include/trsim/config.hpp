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

#ifndef TRSIM_CONFIG_HPP
#define TRSIM_CONFIG_HPP

#include "trsim/channel.hpp"
#include "trsim/link.hpp"
#include "trsim/modem.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace trsim
{
    enum class ExperimentKind
    {
        sweep_rate,
        sweep_snr,
        spatial_map,
        temporal_focus,
        interference_probe
    };

    std::string to_string(ExperimentKind kind);
    ExperimentKind parse_experiment_kind(const std::string &name);

    // Everything an experiment run depends on. Defaults describe a 10 x 10 mm silicon package,
    // 60 GHz carrier, antennas 7.2 mm apart on the horizontal symmetry axis, 16 dB SNR, 1000 bits.
    struct ExperimentSpec
    {
        ExperimentKind experiment = ExperimentKind::sweep_rate;
        std::size_t n_bits = 1000;
        std::uint64_t master_seed = 1;
        std::size_t seeds_per_cell = 1;
        std::filesystem::path output_dir = "results";
        unsigned workers = 0;

        CavityModel cavity;
        BasebandGrid grid;
        Position tx{1.4e-3, 5.0e-3};
        Position rx{8.6e-3, 5.0e-3};
        std::vector<Position> victims{{7.6e-3, 5.0e-3}, {9.4e-3, 5.0e-3}, {8.6e-3, 4.0e-3}, {8.6e-3, 6.0e-3}};

        std::vector<SchemeKind> schemes{SchemeKind::cw_ask, SchemeKind::bpsk, SchemeKind::ir_ook, SchemeKind::ir_ppm};
        ModulationScheme modem; // kind is overridden per cell
        std::vector<double> rates{2e9, 3e9, 5e9, 10e9, 20e9, 40e9, 60e9};
        double snr_db = 16.0;
        SnrReference snr_reference = SnrReference::received_signal_power;

        std::vector<double> snr_grid{0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0};
        double snr_sweep_rate = 10e9;
        double theory_max_snr_db = 40.0;

        std::size_t spatial_grid_size = 21;
        std::optional<double> exclusion_radius; // default: half a wavelength at the carrier

        friend bool operator==(const ExperimentSpec &, const ExperimentSpec &) = default;
    };

    // Flat `section.key = value` text. `#` starts a comment, lists are written `[a, b]`, positions
    // `[x, y]` in meters, all quantities in SI units. Unknown keys, duplicates and out-of-range values
    // raise config_error naming the key and line. An empty file yields the defaults.
    ExperimentSpec parse_config(const std::filesystem::path &path);
    ExperimentSpec parse_config_text(const std::string &text);

    // Inverse of parse_config_text: parse_config_text(serialize(s)) == s.
    std::string serialize(const ExperimentSpec &spec);

    // Cross-field checks (positions inside the cavity, rates compatible with the sample rate, ...).
    void validate(const ExperimentSpec &spec);

} // namespace trsim

#endif
