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

#ifndef TRSIM_EXPERIMENTS_HPP
#define TRSIM_EXPERIMENTS_HPP

#include "trsim/config.hpp"
#include "trsim/table.hpp"

#include <string>
#include <vector>

namespace trsim
{
    // Written as the first column of every table.
    inline constexpr const char *csv_schema_version = "1";

    // Column layout shared by the rate and SNR sweeps (the SNR sweep appends `source`).
    std::vector<std::string> results_columns();

    // Channel between spec.tx and spec.rx in the configured cavity.
    ChannelImpulseResponse default_channel(const ExperimentSpec &spec);

    // Seed of trial `s` in sweep cell `cell` (TR and non-TR arms of a cell share it).
    std::uint64_t trial_seed(std::uint64_t master, std::size_t cell, std::size_t s, std::size_t seeds_per_cell);

    // Scheme x rate x {non-TR, TR} at spec.snr_db; one row per cell, errors summed over seeds.
    Table run_sweep_rate(const ExperimentSpec &spec, const ChannelImpulseResponse &channel);
    Table run_sweep_rate(const ExperimentSpec &spec);

    // Scheme x {non-TR, TR} x SNR grid at spec.snr_sweep_rate. Monte-Carlo rows plus theory rows
    // (both closed forms) extrapolated from a measured reference point up to spec.theory_max_snr_db.
    Table run_sweep_snr(const ExperimentSpec &spec, const ChannelImpulseResponse &channel);
    Table run_sweep_snr(const ExperimentSpec &spec);

    struct SpatialMap
    {
        std::size_t grid_size = 0;
        std::vector<Position> points;     // row-major, cell centered
        std::vector<double> peak_power;   // max |y|^2 per point
        std::vector<bool> near_tx;        // inside the exclusion radius of the transmitter
        double intended_peak_power = 0.0; // at spec.rx
        double exclusion_radius = 0.0;
        bool intended_is_global_max = false; // over all points outside the transmitter exclusion
        double max_power_near_tx = 0.0;      // largest excluded value, for reference
        double suppression_db = 0.0;         // intended vs points >= exclusion_radius from rx
        Table table;
        Table summary;
    };

    SpatialMap run_spatial_map(const ExperimentSpec &spec);

    struct TemporalFocus
    {
        double gain_db = 0.0;
        double tr_peak = 0.0;
        double nontr_peak = 0.0;
        double rms_delay_spread = 0.0;
        Table table;
        Table summary;
    };

    // Unit-energy impulse with and without TR; |y(t)| traces on a common time axis.
    TemporalFocus run_temporal_focus(const ExperimentSpec &spec, const ChannelImpulseResponse &channel);
    TemporalFocus run_temporal_focus(const ExperimentSpec &spec);

    struct ProbeResult
    {
        InterferenceReport report;
        double suppression_db = 0.0;
        Table table;
    };

    ProbeResult run_probe(const ExperimentSpec &spec);

} // namespace trsim

#endif
