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

#include "trsim/cir_io.hpp"
#include "trsim/errors.hpp"
#include "trsim/experiments.hpp"
#include "trsim/plot.hpp"
#include "trsim/trcore.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace trsim;

namespace
{
    constexpr int exit_config = 2;
    constexpr int exit_runtime = 3;

    struct CommonOptions
    {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<std::string> out;
        std::optional<std::size_t> bits;
        std::optional<unsigned> workers;
        bool no_plot = false;
    };

    void add_common(CLI::App *cmd, CommonOptions &o)
    {
        cmd->add_option("--config", o.config, "experiment config file (defaults when omitted)");
        cmd->add_option("--seed", o.seed, "master seed");
        cmd->add_option("--out", o.out, "output directory");
        cmd->add_option("--bits", o.bits, "bits per trial")->check(CLI::PositiveNumber);
        cmd->add_option("--workers", o.workers, "worker threads (0: all cores)");
        cmd->add_flag("--no-plot", o.no_plot, "skip SVG output");
    }

    ExperimentSpec load_spec(const CommonOptions &o)
    {
        ExperimentSpec spec = o.config.empty() ? ExperimentSpec{} : parse_config(o.config);
        if (o.seed)
            spec.master_seed = *o.seed;
        if (o.out)
            spec.output_dir = *o.out;
        if (o.bits)
            spec.n_bits = *o.bits;
        if (o.workers)
            spec.workers = *o.workers;
        validate(spec);
        return spec;
    }

    fs::path prepare_output(const ExperimentSpec &spec)
    {
        fs::create_directories(spec.output_dir);
        std::ofstream(spec.output_dir / "spec.conf") << serialize(spec);
        return spec.output_dir;
    }

    void save(const fs::path &dir, const std::string &stem, const Table &t, bool plot)
    {
        write_csv(dir / (stem + ".csv"), t);
        std::cout << "wrote " << (dir / (stem + ".csv")).string() << '\n';
        if (plot)
        {
            emit_plot(t, plot_kind_for(t), dir / (stem + ".svg"));
            std::cout << "wrote " << (dir / (stem + ".svg")).string() << '\n';
        }
    }

    void print_channel(const ChannelImpulseResponse &cir)
    {
        const double tau = rms_delay_spread(cir);
        std::printf("channel    %s\n", cir.id.c_str());
        std::printf("samples    %zu at %.6g Hz\n", cir.samples.size(), cir.sample_rate);
        if (!cir.taps.empty())
            std::printf("taps       %zu\n", cir.taps.size());
        std::printf("energy     %.6g\n", cir.energy());
        std::printf("tau_rms    %.6g s (1/tau_rms = %.6g Hz)\n", tau, 1.0 / tau);
        std::printf("TR gain    %.4f dB\n", temporal_focusing_gain(cir));
    }

    void write_channel(const fs::path &dir, const std::string &stem, const ChannelImpulseResponse &cir)
    {
        export_cir_trace(dir / (stem + ".csv"), cir.samples, cir.sample_rate);
        export_tr_filter(dir / (stem + "_tr_filter.csv"), build_tr_filter(cir));
        std::cout << "wrote " << (dir / (stem + ".csv")).string() << " and " << stem << "_tr_filter.csv\n";
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"trsim: time-reversal link simulator for in-package wireless channels"};
    app.require_subcommand(1);

    CommonOptions o;
    auto *synth = app.add_subcommand("synth-channel", "synthesize the cavity channel between tx and rx");
    auto *import = app.add_subcommand("import-cir", "read a sampled CIR trace (time,real,imag)");
    auto *rate = app.add_subcommand("sweep-rate", "BER versus symbol rate at fixed SNR");
    auto *snr = app.add_subcommand("sweep-snr", "BER versus SNR with closed-form extrapolation");
    auto *spatial = app.add_subcommand("spatial-map", "peak received power over a receiver grid");
    auto *temporal = app.add_subcommand("temporal-focus", "impulse response with and without TR");
    auto *probe = app.add_subcommand("interference-probe", "TR power at the intended receiver and at victims");
    auto *plot = app.add_subcommand("plot", "render a results CSV to SVG");
    for (auto *c : {synth, import, rate, snr, spatial, temporal, probe})
        add_common(c, o);

    std::string trace;
    import->add_option("trace", trace, "CIR trace file")->required();

    std::string plot_in, plot_out, plot_kind;
    plot->add_option("table", plot_in, "results CSV")->required();
    plot->add_option("--out", plot_out, "SVG path (default: next to the CSV)");
    plot->add_option("--kind", plot_kind, "ber-rate, ber-snr, heatmap or time-trace (default: from the table)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try
    {
        if (plot->parsed())
        {
            const Table t = read_csv(fs::path(plot_in));
            const PlotKind kind = plot_kind.empty() ? plot_kind_for(t) : parse_plot_kind(plot_kind);
            const fs::path out = plot_out.empty() ? fs::path(plot_in).replace_extension(".svg") : fs::path(plot_out);
            emit_plot(t, kind, out);
            std::cout << "wrote " << out.string() << '\n';
            return 0;
        }

        const ExperimentSpec spec = load_spec(o);
        const bool draw = !o.no_plot;

        if (synth->parsed())
        {
            const auto cir = default_channel(spec);
            print_channel(cir);
            write_channel(prepare_output(spec), "channel", cir);
        }
        else if (import->parsed())
        {
            const auto cir = import_cir_trace(trace);
            print_channel(cir);
            write_channel(prepare_output(spec), "imported_channel", cir);
        }
        else if (rate->parsed())
            save(prepare_output(spec), "sweep_rate", run_sweep_rate(spec), draw);
        else if (snr->parsed())
            save(prepare_output(spec), "sweep_snr", run_sweep_snr(spec), draw);
        else if (spatial->parsed())
        {
            const auto m = run_spatial_map(spec);
            const auto dir = prepare_output(spec);
            save(dir, "spatial_map", m.table, draw);
            write_csv(dir / "spatial_map_summary.csv", m.summary);
            std::printf("intended is global max: %s\nsuppression: %.2f dB\n", m.intended_is_global_max ? "yes" : "no",
                        m.suppression_db);
        }
        else if (temporal->parsed())
        {
            const auto f = run_temporal_focus(spec);
            const auto dir = prepare_output(spec);
            save(dir, "temporal_focus", f.table, draw);
            write_csv(dir / "temporal_focus_summary.csv", f.summary);
            std::printf("focusing gain: %.4f dB\n", f.gain_db);
        }
        else if (probe->parsed())
        {
            const auto r = run_probe(spec);
            const auto dir = prepare_output(spec);
            write_csv(dir / "interference_probe.csv", r.table);
            std::cout << "wrote " << (dir / "interference_probe.csv").string() << '\n';
            std::printf("suppression: %.2f dB\n", r.suppression_db);
        }
        return 0;
    }
    catch (const config_error &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }
}
