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

#include <catch2/catch_amalgamated.hpp>

#include "trsim/experiments.hpp"
#include "trsim/trcore.hpp"

#include <cmath>
#include <sstream>

using namespace trsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    std::string csv(const Table &t)
    {
        std::ostringstream out;
        write_csv(out, t);
        return out.str();
    }

    ExperimentSpec small_spec()
    {
        ExperimentSpec s;
        s.schemes = {SchemeKind::cw_ask, SchemeKind::ir_ppm};
        s.rates = {5e9, 20e9};
        s.n_bits = 1000;
        s.workers = 2;
        return s;
    }
}

TEST_CASE("Experiments - seeds")
{
    CHECK(trial_seed(1, 0, 0, 1) == derive_seed(1, 0));
    CHECK(trial_seed(1, 2, 1, 3) == derive_seed(1, 7));
    CHECK(trial_seed(1, 2, 1, 3) != trial_seed(2, 2, 1, 3));
}

TEST_CASE("Experiments - rate sweep layout")
{
    const auto spec = small_spec();
    const auto t = run_sweep_rate(spec);
    CHECK(t.columns == results_columns());
    REQUIRE(t.rows.size() == 2 * 2 * 2);
    for (const auto &r : t.rows)
    {
        CHECK(r[0] == "1");
        CHECK(r[1] == "sweep_rate");
        CHECK(r[5] == "16");
    }
    const auto bits = t.numbers("n_bits");
    const auto errs = t.numbers("n_errors");
    const auto ber = t.numbers("ber");
    const auto hi = t.numbers("ber_ci_hi");
    for (std::size_t i = 0; i < t.rows.size(); ++i)
    {
        CHECK(bits[i] == 1000.0);
        CHECK_THAT(ber[i], WithinRel(errs[i] / bits[i], 1e-11));
        CHECK(hi[i] >= ber[i]);
    }
}

TEST_CASE("Experiments - reruns are byte identical")
{
    auto spec = small_spec();
    const auto a = csv(run_sweep_rate(spec));
    spec.workers = 1;
    CHECK(csv(run_sweep_rate(spec)) == a);
    spec.master_seed = 2;
    CHECK(csv(run_sweep_rate(spec)) != a);
}

TEST_CASE("Experiments - single tap: TR and non-TR rows agree")
{
    auto spec = small_spec();
    spec.snr_db = 3.0;
    const auto h = make_sampled_cir({cplx{1.0, 0.0}}, spec.grid.sample_rate);
    const auto t = run_sweep_rate(spec, h);
    const auto tr = t.column("tr");
    for (std::size_t i = 0; i + 1 < t.rows.size(); i += 2)
    {
        REQUIRE(t.rows[i][tr] == "0");
        REQUIRE(t.rows[i + 1][tr] == "1");
        for (const char *col : {"n_bits", "n_errors", "ber", "delta_a", "sigma"})
            CHECK(t.rows[i][t.column(col)] == t.rows[i + 1][t.column(col)]);
    }
}

TEST_CASE("Experiments - SNR sweep theory rows")
{
    ExperimentSpec spec;
    spec.schemes = {SchemeKind::bpsk, SchemeKind::cw_ask};
    spec.snr_grid = {0.0, 3.0, 6.0};
    spec.snr_sweep_rate = 10e9;
    spec.n_bits = 2000;
    const auto h = make_sampled_cir({cplx{1.0, 0.0}}, spec.grid.sample_rate);
    const auto t = run_sweep_snr(spec, h);
    CHECK(t.columns.back() == "source");

    const auto src = t.column("source");
    const auto snr = t.numbers("snr_db");
    const auto ber = t.numbers("ber");
    std::size_t mc = 0;
    for (const std::string name : {"theory-paper", "theory-midpoint"})
    {
        std::string key;
        double last_ber = 1.0, last_snr = -1e9;
        std::size_t curves = 0;
        for (std::size_t i = 0; i < t.rows.size(); ++i)
        {
            if (t.rows[i][src] != name)
                continue;
            const std::string k = t.rows[i][2] + t.rows[i][3];
            if (k != key)
            {
                key = k;
                last_ber = 1.0;
                last_snr = -1e9;
                ++curves;
            }
            CHECK(snr[i] > last_snr);
            // Strictly decreasing until the tail underflows to zero.
            CHECK((ber[i] < last_ber || (ber[i] == 0.0 && last_ber == 0.0)));
            CHECK(t.rows[i][t.column("ber_ci_hi")].empty());
            last_ber = ber[i];
            last_snr = snr[i];
            if (snr[i] == spec.theory_max_snr_db)
                CHECK(ber[i] <= 1e-15);
        }
        CHECK(curves == 4);
    }
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        mc += t.rows[i][src] == "montecarlo";
    CHECK(mc == 2 * 2 * 3);
}

TEST_CASE("Experiments - spatial map")
{
    ExperimentSpec spec;
    spec.spatial_grid_size = 9;
    const auto m = run_spatial_map(spec);
    REQUIRE(m.points.size() == 81);
    CHECK(m.table.rows.size() == 82);
    CHECK(m.table.rows.back()[m.table.column("intended")] == "1");
    CHECK(m.intended_is_global_max);
    CHECK(m.suppression_db > 0.0);
    CHECK_THAT(m.exclusion_radius, WithinRel(0.5 * wavelength(60e9, 11.9), 1e-12));

    // tx and rx sit on the horizontal symmetry axis, so the map is mirror symmetric in y.
    for (std::size_t iy = 0; iy < 9; ++iy)
        for (std::size_t ix = 0; ix < 9; ++ix)
        {
            const double a = m.peak_power[iy * 9 + ix];
            const double b = m.peak_power[(8 - iy) * 9 + ix];
            CHECK_THAT(a, WithinRel(b, 1e-9));
        }
}

TEST_CASE("Experiments - temporal focusing")
{
    ExperimentSpec spec;
    const auto tf = run_temporal_focus(spec);
    CHECK(tf.gain_db > 0.0);
    CHECK(tf.tr_peak >= tf.nontr_peak);
    CHECK(tf.rms_delay_spread > 0.0);
    CHECK(tf.table.rows.size() == 2 * default_channel(spec).samples.size() - 1);

    samples_t h(64, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < 16; ++k)
        h[4 * k] = std::polar(0.3, 0.7 * static_cast<double>(k));
    const auto flat = run_temporal_focus(spec, make_sampled_cir(h, 960e9));
    CHECK_THAT(flat.gain_db, WithinAbs(10.0 * std::log10(16.0), 0.1));
}

TEST_CASE("Experiments - interference probe")
{
    ExperimentSpec spec;
    const auto r = run_probe(spec);
    CHECK(r.table.rows.size() == 1 + spec.victims.size());
    CHECK(r.suppression_db > 0.0);
    spec.victims.clear();
    CHECK_THROWS(run_probe(spec));
}
