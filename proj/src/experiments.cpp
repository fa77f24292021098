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

#include "trsim/experiments.hpp"
#include "trsim/errors.hpp"
#include "trsim/metrics.hpp"
#include "trsim/trcore.hpp"

#include <algorithm>
#include <cmath>

namespace trsim
{
    std::vector<std::string> results_columns()
    {
        return {"schema_version", "experiment", "scheme", "tr",    "rate_hz", "snr_db", "n_bits",
                "n_errors",       "ber",        "ber_ci_hi", "delta_a", "sigma", "seed"};
    }

    ChannelImpulseResponse default_channel(const ExperimentSpec &spec)
    {
        return synth_cavity_cir(spec.cavity, spec.tx, spec.rx, spec.grid);
    }

    std::uint64_t trial_seed(std::uint64_t master, std::size_t cell, std::size_t s, std::size_t seeds_per_cell)
    {
        return derive_seed(master, static_cast<std::uint64_t>(cell) * seeds_per_cell + s);
    }

    namespace
    {
        struct Aggregate
        {
            std::size_t n_bits = 0;
            std::size_t n_errors = 0;
            double delta_a = 0.0;
            double sigma = 0.0;
        };

        Aggregate aggregate(std::span<const BerResult> r)
        {
            Aggregate a;
            for (const auto &x : r)
            {
                a.n_bits += x.n_bits;
                a.n_errors += x.n_errors;
                a.delta_a += x.delta_a;
                a.sigma += x.noise_sigma;
            }
            a.delta_a /= static_cast<double>(r.size());
            a.sigma /= static_cast<double>(r.size());
            return a;
        }

        LinkConfig base_config(const ExperimentSpec &spec, const ChannelImpulseResponse &channel, SchemeKind kind)
        {
            LinkConfig c;
            c.scheme = spec.modem;
            c.scheme.kind = kind;
            c.scheme.carrier_frequency = spec.grid.carrier_frequency;
            c.n_bits = spec.n_bits;
            c.channel = channel;
            c.snr_reference = spec.snr_reference;
            c.interferer_positions = spec.victims;
            return c;
        }

        std::vector<std::string> result_row(const std::string &experiment, SchemeKind kind, bool tr, double rate,
                                            double snr, const Aggregate &a, std::uint64_t seed)
        {
            const double ber = static_cast<double>(a.n_errors) / static_cast<double>(a.n_bits);
            return {csv_schema_version,
                    experiment,
                    to_string(kind),
                    tr ? "1" : "0",
                    format_number(rate),
                    format_number(snr),
                    std::to_string(a.n_bits),
                    std::to_string(a.n_errors),
                    format_number(ber),
                    format_number(ber_upper_bound(a.n_errors, a.n_bits)),
                    format_number(a.delta_a),
                    format_number(a.sigma),
                    std::to_string(seed)};
        }

        double half_wavelength(const ExperimentSpec &spec)
        {
            return 0.5 * wavelength(spec.grid.carrier_frequency, spec.cavity.relative_permittivity);
        }

        Waveform unit_impulse(double sample_rate)
        {
            Waveform w;
            w.samples = {cplx{1.0, 0.0}};
            w.sample_rate = sample_rate;
            return w;
        }

        double peak_power(const samples_t &y)
        {
            double p = 0.0;
            for (const auto &v : y)
                p = std::max(p, std::norm(v));
            return p;
        }
    } // namespace

    Table run_sweep_rate(const ExperimentSpec &spec, const ChannelImpulseResponse &channel)
    {
        validate(spec);
        std::vector<LinkConfig> configs;
        for (std::size_t si = 0; si < spec.schemes.size(); ++si)
            for (std::size_t ri = 0; ri < spec.rates.size(); ++ri)
                for (int tr = 0; tr <= 1; ++tr)
                    for (std::size_t s = 0; s < spec.seeds_per_cell; ++s)
                    {
                        auto c = base_config(spec, channel, spec.schemes[si]);
                        c.symbol_rate = spec.rates[ri];
                        c.snr_db = spec.snr_db;
                        c.tr_enabled = tr == 1;
                        c.seed = trial_seed(spec.master_seed, si * spec.rates.size() + ri, s, spec.seeds_per_cell);
                        configs.push_back(std::move(c));
                    }
        const auto results = run_trials(configs, spec.workers);

        Table t;
        t.columns = results_columns();
        std::size_t k = 0;
        for (std::size_t si = 0; si < spec.schemes.size(); ++si)
            for (std::size_t ri = 0; ri < spec.rates.size(); ++ri)
                for (int tr = 0; tr <= 1; ++tr)
                {
                    const auto a = aggregate(std::span(results).subspan(k, spec.seeds_per_cell));
                    k += spec.seeds_per_cell;
                    t.add_row(result_row("sweep_rate", spec.schemes[si], tr == 1, spec.rates[ri], spec.snr_db, a,
                                         spec.master_seed));
                }
        return t;
    }

    Table run_sweep_rate(const ExperimentSpec &spec) { return run_sweep_rate(spec, default_channel(spec)); }

    Table run_sweep_snr(const ExperimentSpec &spec, const ChannelImpulseResponse &channel)
    {
        validate(spec);
        std::vector<LinkConfig> configs;
        const std::size_t n_snr = spec.snr_grid.size();
        for (std::size_t si = 0; si < spec.schemes.size(); ++si)
            for (int tr = 0; tr <= 1; ++tr)
                for (std::size_t qi = 0; qi < n_snr; ++qi)
                    for (std::size_t s = 0; s < spec.seeds_per_cell; ++s)
                    {
                        auto c = base_config(spec, channel, spec.schemes[si]);
                        c.symbol_rate = spec.snr_sweep_rate;
                        c.snr_db = spec.snr_grid[qi];
                        c.tr_enabled = tr == 1;
                        c.seed = trial_seed(spec.master_seed, si * n_snr + qi, s, spec.seeds_per_cell);
                        configs.push_back(std::move(c));
                    }
        const auto results = run_trials(configs, spec.workers);

        Table t;
        t.columns = results_columns();
        t.columns.push_back("source");
        std::size_t k = 0;
        for (std::size_t si = 0; si < spec.schemes.size(); ++si)
            for (int tr = 0; tr <= 1; ++tr)
            {
                std::vector<Aggregate> cells;
                for (std::size_t qi = 0; qi < n_snr; ++qi)
                {
                    cells.push_back(aggregate(std::span(results).subspan(k, spec.seeds_per_cell)));
                    k += spec.seeds_per_cell;
                    auto row = result_row("sweep_snr", spec.schemes[si], tr == 1, spec.snr_sweep_rate, spec.snr_grid[qi],
                                          cells.back(), spec.master_seed);
                    row.push_back("montecarlo");
                    t.add_row(std::move(row));
                }

                // Reference for the closed forms: highest SNR whose measured BER is still >= 1e-3,
                // otherwise the lowest SNR point. Needs enough bits and two separated clusters.
                auto usable = [&](std::size_t qi) {
                    const auto &c = cells[qi];
                    return c.n_bits >= min_reference_bits && c.delta_a > 0.0 && c.sigma > 0.0;
                };
                auto ber_at = [&](std::size_t qi) {
                    return static_cast<double>(cells[qi].n_errors) / static_cast<double>(cells[qi].n_bits);
                };
                std::size_t ref = n_snr;
                for (std::size_t qi = 0; qi < n_snr; ++qi)
                    if (usable(qi) && ber_at(qi) >= 1e-3 && (ref == n_snr || spec.snr_grid[qi] > spec.snr_grid[ref]))
                        ref = qi;
                if (ref == n_snr)
                    for (std::size_t qi = 0; qi < n_snr; ++qi)
                        if (usable(qi) && (ref == n_snr || spec.snr_grid[qi] < spec.snr_grid[ref]))
                            ref = qi;
                if (ref == n_snr)
                    continue;

                const double snr_ref = spec.snr_grid[ref];
                std::vector<double> offsets;
                for (double s = snr_ref; s <= spec.theory_max_snr_db + 1e-9; s += 1.0)
                    offsets.push_back(s - snr_ref);
                for (auto [formula, name] : {std::pair{BerFormula::half_q, "theory-paper"},
                                             std::pair{BerFormula::midpoint, "theory-midpoint"}})
                {
                    const auto curve = extrapolate_ber_curve(cells[ref].delta_a, cells[ref].sigma, offsets, formula);
                    for (const auto &[off, ber] : curve)
                        t.add_row({csv_schema_version, "sweep_snr", to_string(spec.schemes[si]), tr == 1 ? "1" : "0",
                                   format_number(spec.snr_sweep_rate), format_number(snr_ref + off), "0", "0",
                                   format_number(ber), "", format_number(cells[ref].delta_a * std::pow(10.0, off / 20.0)),
                                   format_number(cells[ref].sigma), std::to_string(spec.master_seed), name});
                }
            }
        return t;
    }

    Table run_sweep_snr(const ExperimentSpec &spec) { return run_sweep_snr(spec, default_channel(spec)); }

    SpatialMap run_spatial_map(const ExperimentSpec &spec)
    {
        validate(spec);
        const auto intended = default_channel(spec);
        const auto filter = build_tr_filter(intended);
        const auto impulse = unit_impulse(spec.grid.sample_rate);

        auto power_at = [&](const Position &p) {
            const auto cir = synth_cavity_cir(spec.cavity, spec.tx, p, spec.grid);
            return peak_power(spatial_response(filter, cir, impulse).samples);
        };

        SpatialMap m;
        m.grid_size = spec.spatial_grid_size;
        m.exclusion_radius = spec.exclusion_radius.value_or(half_wavelength(spec));
        m.intended_peak_power = peak_power(spatial_response(filter, intended, impulse).samples);

        const std::size_t n = spec.spatial_grid_size;
        for (std::size_t iy = 0; iy < n; ++iy)
            for (std::size_t ix = 0; ix < n; ++ix)
            {
                const Position p{(static_cast<double>(ix) + 0.5) * spec.cavity.width / static_cast<double>(n),
                                 (static_cast<double>(iy) + 0.5) * spec.cavity.height / static_cast<double>(n)};
                const bool near = distance(p, spec.tx) < m.exclusion_radius;
                m.points.push_back(p);
                m.near_tx.push_back(near);
                m.peak_power.push_back(p == spec.tx ? 0.0 : power_at(p));
            }

        double best_other = 0.0, worst_victim = 0.0;
        for (std::size_t i = 0; i < m.points.size(); ++i)
        {
            if (m.near_tx[i])
            {
                m.max_power_near_tx = std::max(m.max_power_near_tx, m.peak_power[i]);
                continue;
            }
            best_other = std::max(best_other, m.peak_power[i]);
            if (distance(m.points[i], spec.rx) >= m.exclusion_radius)
                worst_victim = std::max(worst_victim, m.peak_power[i]);
        }
        m.intended_is_global_max = m.intended_peak_power >= best_other;
        m.suppression_db = worst_victim > 0.0 ? 10.0 * std::log10(m.intended_peak_power / worst_victim)
                                              : std::numeric_limits<double>::infinity();

        m.table.columns = {"schema_version", "experiment", "x_m",      "y_m",     "peak_power",
                           "relative_db",    "distance_to_rx_m",     "near_tx", "intended"};
        auto add = [&](const Position &p, double power, bool near, bool is_intended) {
            const double rel = power > 0.0 ? 10.0 * std::log10(power / m.intended_peak_power) : -400.0;
            m.table.add_row({csv_schema_version, "spatial_map", format_number(p.x), format_number(p.y), format_number(power),
                             format_number(rel), format_number(distance(p, spec.rx)), near ? "1" : "0",
                             is_intended ? "1" : "0"});
        };
        for (std::size_t i = 0; i < m.points.size(); ++i)
            add(m.points[i], m.peak_power[i], m.near_tx[i], false);
        add(spec.rx, m.intended_peak_power, false, true);

        m.summary.columns = {"schema_version", "experiment", "metric", "value"};
        auto metric = [&](const std::string &name, double v) {
            m.summary.add_row({csv_schema_version, "spatial_map", name, format_number(v)});
        };
        metric("grid_size", static_cast<double>(n));
        metric("intended_peak_power", m.intended_peak_power);
        metric("exclusion_radius_m", m.exclusion_radius);
        metric("intended_is_global_max", m.intended_is_global_max ? 1.0 : 0.0);
        metric("suppression_db", m.suppression_db);
        metric("max_power_near_tx_db", m.max_power_near_tx > 0.0 ? 10.0 * std::log10(m.max_power_near_tx / m.intended_peak_power)
                                                                : -400.0);
        return m;
    }

    TemporalFocus run_temporal_focus(const ExperimentSpec &spec, const ChannelImpulseResponse &channel)
    {
        const auto g = effective_channel(channel);
        const auto &h = channel.samples;

        TemporalFocus tf;
        tf.gain_db = temporal_focusing_gain(channel);
        tf.rms_delay_spread = rms_delay_spread(channel);
        for (const auto &v : h)
            tf.nontr_peak = std::max(tf.nontr_peak, std::abs(v));
        for (const auto &v : g)
            tf.tr_peak = std::max(tf.tr_peak, std::abs(v));

        tf.table.columns = {"schema_version", "experiment", "time_s", "nontr_abs", "tr_abs"};
        for (std::size_t i = 0; i < g.size(); ++i)
            tf.table.add_row({csv_schema_version, "temporal_focus", format_number(static_cast<double>(i) / channel.sample_rate),
                              format_number(i < h.size() ? std::abs(h[i]) : 0.0), format_number(std::abs(g[i]))});

        tf.summary.columns = {"schema_version", "experiment", "metric", "value"};
        auto metric = [&](const std::string &name, double v) {
            tf.summary.add_row({csv_schema_version, "temporal_focus", name, format_number(v)});
        };
        metric("focusing_gain_db", tf.gain_db);
        metric("tr_peak", tf.tr_peak);
        metric("nontr_peak", tf.nontr_peak);
        metric("rms_delay_spread_s", tf.rms_delay_spread);
        metric("taps", static_cast<double>(channel.taps.size()));
        (void)spec;
        return tf;
    }

    TemporalFocus run_temporal_focus(const ExperimentSpec &spec)
    {
        validate(spec);
        return run_temporal_focus(spec, default_channel(spec));
    }

    ProbeResult run_probe(const ExperimentSpec &spec)
    {
        validate(spec);
        if (spec.victims.empty())
            throw config_error("geometry.victims", 0, "the interference probe needs at least one victim");
        LinkConfig c;
        c.channel = default_channel(spec);
        c.tr_enabled = true;
        std::vector<ChannelImpulseResponse> victims;
        for (const auto &p : spec.victims)
            victims.push_back(synth_cavity_cir(spec.cavity, spec.tx, p, spec.grid));

        ProbeResult r;
        r.report = run_interference_probe(c, victims);
        r.suppression_db = suppression_ratio_db(r.report.intended_peak_power, r.report.victim_peak_powers);

        r.table.columns = {"schema_version", "experiment", "role", "x_m", "y_m", "peak_power", "center_power", "relative_db"};
        auto add = [&](const std::string &role, const Position &p, double peak, double center) {
            r.table.add_row({csv_schema_version, "interference_probe", role, format_number(p.x), format_number(p.y),
                             format_number(peak), format_number(center),
                             format_number(10.0 * std::log10(peak / r.report.intended_peak_power))});
        };
        add("intended", spec.rx, r.report.intended_peak_power, r.report.intended_center_power);
        for (std::size_t i = 0; i < victims.size(); ++i)
            add("victim", spec.victims[i], r.report.victim_peak_powers[i], r.report.victim_center_powers[i]);
        return r;
    }

} // namespace trsim
