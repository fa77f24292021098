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

#include "trsim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace trsim
{
    std::string to_string(PlotKind kind)
    {
        switch (kind)
        {
        case PlotKind::ber_vs_rate:
            return "ber-rate";
        case PlotKind::ber_vs_snr:
            return "ber-snr";
        case PlotKind::heatmap:
            return "heatmap";
        case PlotKind::time_trace:
            return "time-trace";
        }
        return "unknown";
    }

    PlotKind parse_plot_kind(const std::string &name)
    {
        for (auto k : {PlotKind::ber_vs_rate, PlotKind::ber_vs_snr, PlotKind::heatmap, PlotKind::time_trace})
            if (name == to_string(k))
                return k;
        throw std::invalid_argument("unknown plot kind '" + name + "'");
    }

    PlotKind plot_kind_for(const Table &table)
    {
        if (table.empty() || !table.has_column("experiment"))
            throw std::invalid_argument("cannot infer the plot kind of an empty or unlabeled table");
        const std::string e = table.rows.front()[table.column("experiment")];
        if (e == "sweep_rate")
            return PlotKind::ber_vs_rate;
        if (e == "sweep_snr")
            return PlotKind::ber_vs_snr;
        if (e == "spatial_map")
            return PlotKind::heatmap;
        if (e == "temporal_focus")
            return PlotKind::time_trace;
        throw std::invalid_argument("no plot is defined for experiment '" + e + "'");
    }

    namespace
    {
        constexpr double W = 820, H = 480, ML = 80, MR = 260, MT = 40, MB = 60;
        constexpr double PW = W - ML - MR, PH = H - MT - MB;

        const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                 "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

        std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.2f", v);
            return buf;
        }

        std::string header(const std::string &title)
        {
            return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                   "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) + "\" height=\"" + num(H) +
                   "\" viewBox=\"0 0 " + num(W) + " " + num(H) + "\" font-family=\"sans-serif\" font-size=\"12\">\n"
                   "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
                   "<text x=\"" + num(ML + PW / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" + title +
                   "</text>\n";
        }

        std::string frame(const std::string &xlabel, const std::string &ylabel)
        {
            return "<rect x=\"" + num(ML) + "\" y=\"" + num(MT) + "\" width=\"" + num(PW) + "\" height=\"" + num(PH) +
                   "\" fill=\"none\" stroke=\"black\"/>\n"
                   "<text x=\"" + num(ML + PW / 2) + "\" y=\"" + num(H - 15) + "\" text-anchor=\"middle\">" + xlabel +
                   "</text>\n"
                   "<text x=\"20\" y=\"" + num(MT + PH / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
                   num(MT + PH / 2) + ")\">" + ylabel + "</text>\n";
        }

        struct Axis
        {
            double lo, hi;
            bool log;
            double map(double v, double p0, double p1) const
            {
                const double a = log ? std::log10(v) : v;
                return p0 + (a - lo) / (hi - lo) * (p1 - p0);
            }
        };

        std::string ticks_x(const Axis &ax, const std::vector<std::pair<double, std::string>> &t)
        {
            std::string s;
            for (const auto &[v, label] : t)
            {
                const double x = ax.map(v, ML, ML + PW);
                s += "<line x1=\"" + num(x) + "\" y1=\"" + num(MT + PH) + "\" x2=\"" + num(x) + "\" y2=\"" + num(MT + PH + 5) +
                     "\" stroke=\"black\"/>\n<text x=\"" + num(x) + "\" y=\"" + num(MT + PH + 20) +
                     "\" text-anchor=\"middle\">" + label + "</text>\n";
            }
            return s;
        }

        std::string ticks_y(const Axis &ax, const std::vector<std::pair<double, std::string>> &t)
        {
            std::string s;
            for (const auto &[v, label] : t)
            {
                const double y = ax.map(v, MT + PH, MT);
                s += "<line x1=\"" + num(ML - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(ML + PW) + "\" y2=\"" + num(y) +
                     "\" stroke=\"#dddddd\"/>\n<text x=\"" + num(ML - 8) + "\" y=\"" + num(y + 4) +
                     "\" text-anchor=\"end\">" + label + "</text>\n";
            }
            return s;
        }

        std::string fmt_tick(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%g", v);
            return buf;
        }

        struct Series
        {
            std::string name;
            std::vector<std::pair<double, double>> pts;
            bool dashed = false;
        };

        // Log-BER line plot shared by the two sweep kinds.
        std::string ber_plot(const Table &t, const std::string &xcol, bool log_x, double x_scale, const std::string &xlabel,
                             const std::string &title)
        {
            const auto xs = t.numbers(xcol);
            const auto ber = t.numbers("ber");
            const std::size_t cs = t.column("scheme"), ctr = t.column("tr");
            const bool has_source = t.has_column("source");

            std::vector<Series> series;
            std::map<std::string, std::size_t> index;
            for (std::size_t i = 0; i < t.rows.size(); ++i)
            {
                const auto &r = t.rows[i];
                std::string name = r[cs] + (r[ctr] == "1" ? " TR" : " non-TR");
                bool dashed = false;
                if (has_source)
                {
                    const std::string src = r[t.column("source")];
                    if (src != "montecarlo")
                    {
                        name += " (" + src + ")";
                        dashed = true;
                    }
                }
                auto it = index.find(name);
                if (it == index.end())
                {
                    it = index.emplace(name, series.size()).first;
                    series.push_back({name, {}, dashed});
                }
                series[it->second].pts.emplace_back(xs[i] * x_scale, ber[i]);
            }

            double min_pos = 1.0, xmin = HUGE_VAL, xmax = -HUGE_VAL;
            for (std::size_t i = 0; i < ber.size(); ++i)
            {
                if (ber[i] > 0.0)
                    min_pos = std::min(min_pos, ber[i]);
                xmin = std::min(xmin, xs[i] * x_scale);
                xmax = std::max(xmax, xs[i] * x_scale);
            }
            // theory curves run far below anything measurable; stop the axis at 1e-16
            const double floor_dec = std::max(-16.0, std::floor(std::log10(min_pos)) - 1.0);
            const double floor_val = std::pow(10.0, floor_dec);
            if (xmax == xmin)
                xmax = xmin + 1.0;
            Axis ax{log_x ? std::log10(xmin) : xmin, log_x ? std::log10(xmax) : xmax, log_x};
            if (log_x)
            {
                const double pad = 0.05 * (ax.hi - ax.lo);
                ax.lo -= pad;
                ax.hi += pad;
            }
            Axis ay{floor_dec, 0.0, true};

            std::string s = header(title);
            std::vector<std::pair<double, std::string>> yt;
            const int step = static_cast<int>(std::ceil(-floor_dec / 10.0));
            for (int d = 0; d >= static_cast<int>(floor_dec); d -= std::max(1, step))
                yt.emplace_back(std::pow(10.0, d), "1e" + std::to_string(d));
            s += ticks_y(ay, yt);
            std::vector<std::pair<double, std::string>> xt;
            std::vector<double> seen;
            for (double x : xs)
                if (std::find(seen.begin(), seen.end(), x * x_scale) == seen.end() && seen.size() < 40)
                    seen.push_back(x * x_scale);
            std::sort(seen.begin(), seen.end());
            const std::size_t every = seen.size() > 12 ? (seen.size() + 11) / 12 : 1;
            for (std::size_t i = 0; i < seen.size(); i += every)
                xt.emplace_back(seen[i], fmt_tick(seen[i]));
            s += ticks_x(ax, xt);
            s += frame(xlabel, "BER");

            bool off_axis = false;
            for (std::size_t k = 0; k < series.size(); ++k)
            {
                const char *color = palette[k % 10];
                auto pts = series[k].pts;
                std::stable_sort(pts.begin(), pts.end(), [](auto &a, auto &b) { return a.first < b.first; });
                std::string path;
                for (const auto &[x, y] : pts)
                {
                    if (series[k].dashed && y < floor_val)
                        break;
                    const double px = ax.map(x, ML, ML + PW);
                    const double py = ay.map(std::max(y, floor_val), MT + PH, MT);
                    path += (path.empty() ? "M" : " L") + num(px) + " " + num(py);
                }
                if (!path.empty())
                    s += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"" +
                         (series[k].dashed ? " stroke-dasharray=\"5 3\"" : "") + "/>\n";
                for (const auto &[x, y] : pts)
                {
                    if (series[k].dashed)
                        continue;
                    const double px = ax.map(x, ML, ML + PW);
                    const double py = ay.map(std::max(y, floor_val), MT + PH, MT);
                    if (y > 0.0)
                        s += "<circle cx=\"" + num(px) + "\" cy=\"" + num(py) + "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
                    else
                        s += "<circle cx=\"" + num(px) + "\" cy=\"" + num(py) + "\" r=\"4.5\" fill=\"white\" stroke=\"" +
                             color + "\" stroke-width=\"1.5\"/>\n";
                }
                const double ly = MT + 10 + 18 * static_cast<double>(k);
                s += "<line x1=\"" + num(ML + PW + 12) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(ML + PW + 32) + "\" y2=\"" +
                     num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"" +
                     (series[k].dashed ? " stroke-dasharray=\"5 3\"" : "") + "/>\n<text x=\"" + num(ML + PW + 38) +
                     "\" y=\"" + num(ly + 4) + "\" font-size=\"10\">" + series[k].name +
                     (path.empty() ? " *" : "") + "</text>\n";
                off_axis = off_axis || path.empty();
            }
            const double ly = MT + 10 + 18 * static_cast<double>(series.size());
            s += "<circle cx=\"" + num(ML + PW + 22) + "\" cy=\"" + num(ly) +
                 "\" r=\"4.5\" fill=\"white\" stroke=\"black\"/>\n<text x=\"" + num(ML + PW + 38) + "\" y=\"" +
                 num(ly + 4) + "\" font-size=\"10\">zero errors (at floor)</text>\n";
            if (off_axis)
                s += "<text x=\"" + num(ML + PW + 12) + "\" y=\"" + num(ly + 22) + "\" font-size=\"10\">* entirely below 1e" +
                     std::to_string(static_cast<int>(floor_dec)) + "</text>\n";
            return s + "</svg>\n";
        }

        std::string heat_color(double db)
        {
            // -40 dB (dark blue) .. 0 dB (yellow)
            const double t = std::clamp((db + 40.0) / 40.0, 0.0, 1.0);
            const double stops[4][3] = {{20, 20, 90}, {40, 120, 160}, {90, 190, 90}, {250, 230, 40}};
            const double pos = t * 3.0;
            const int i = std::min(2, static_cast<int>(pos));
            const double f = pos - i;
            char buf[16];
            std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(stops[i][0] + f * (stops[i + 1][0] - stops[i][0])),
                          static_cast<int>(stops[i][1] + f * (stops[i + 1][1] - stops[i][1])),
                          static_cast<int>(stops[i][2] + f * (stops[i + 1][2] - stops[i][2])));
            return buf;
        }

        std::string heatmap_plot(const Table &t)
        {
            const auto x = t.numbers("x_m"), y = t.numbers("y_m"), db = t.numbers("relative_db");
            const bool has_intended = t.has_column("intended");
            const bool has_near = t.has_column("near_tx");
            std::vector<double> ux, uy;
            for (std::size_t i = 0; i < t.rows.size(); ++i)
            {
                if (has_intended && t.rows[i][t.column("intended")] == "1")
                    continue;
                if (std::find(ux.begin(), ux.end(), x[i]) == ux.end())
                    ux.push_back(x[i]);
                if (std::find(uy.begin(), uy.end(), y[i]) == uy.end())
                    uy.push_back(y[i]);
            }
            if (ux.empty())
                throw std::invalid_argument("heatmap needs grid rows");
            std::sort(ux.begin(), ux.end());
            std::sort(uy.begin(), uy.end());
            const double dx = ux.size() > 1 ? ux[1] - ux[0] : 1.0;
            const double dy = uy.size() > 1 ? uy[1] - uy[0] : 1.0;
            const double x0 = ux.front() - dx / 2, x1 = ux.back() + dx / 2;
            const double y0 = uy.front() - dy / 2, y1 = uy.back() + dy / 2;
            const double side = std::min(PW, PH);
            const double sx = side / (x1 - x0), sy = side / (y1 - y0);

            std::string s = header("Peak received power relative to the intended receiver (dB)");
            for (std::size_t i = 0; i < t.rows.size(); ++i)
            {
                const bool intended = has_intended && t.rows[i][t.column("intended")] == "1";
                const double px = ML + (x[i] - x0) * sx;
                const double py = MT + side - (y[i] - y0) * sy;
                if (intended)
                {
                    s += "<path d=\"M" + num(px - 6) + " " + num(py - 6) + " L" + num(px + 6) + " " + num(py + 6) + " M" +
                         num(px - 6) + " " + num(py + 6) + " L" + num(px + 6) + " " + num(py - 6) +
                         "\" stroke=\"red\" stroke-width=\"2\"/>\n";
                    continue;
                }
                const bool near = has_near && t.rows[i][t.column("near_tx")] == "1";
                s += "<rect x=\"" + num(px - dx * sx / 2) + "\" y=\"" + num(py - dy * sy / 2) + "\" width=\"" + num(dx * sx) +
                     "\" height=\"" + num(dy * sy) + "\" fill=\"" + (near ? std::string("#bbbbbb") : heat_color(db[i])) +
                     "\"/>\n";
            }
            s += "<rect x=\"" + num(ML) + "\" y=\"" + num(MT) + "\" width=\"" + num(side) + "\" height=\"" + num(side) +
                 "\" fill=\"none\" stroke=\"black\"/>\n";
            // Color bar spanning the map height, 40 slices from -40 dB (bottom) to 0 dB (top).
            const double slice = side / 40.0;
            for (int k = 0; k < 40; ++k)
                s += "<rect x=\"" + num(ML + side + 30) + "\" y=\"" + num(MT + side - slice * (k + 1)) +
                     "\" width=\"20\" height=\"" + num(slice + 0.5) + "\" fill=\"" + heat_color(-40.0 + k + 0.5) + "\"/>\n";
            for (int k = 0; k <= 4; ++k)
            {
                const double ly = MT + side - side * k / 4.0;
                s += "<text x=\"" + num(ML + side + 56) + "\" y=\"" + num(ly + 4) + "\">" + fmt_tick(-40.0 + 10.0 * k) +
                     " dB</text>\n";
            }
            s += "<text x=\"" + num(ML) + "\" y=\"" + num(H - 15) +
                 "\" font-size=\"11\">grey: within the exclusion radius of the transmitter; red cross: intended receiver</text>\n";
            return s + "</svg>\n";
        }

        std::string time_plot(const Table &t)
        {
            const auto tt = t.numbers("time_s"), a = t.numbers("nontr_abs"), b = t.numbers("tr_abs");
            double vmax = 0.0;
            for (std::size_t i = 0; i < tt.size(); ++i)
                vmax = std::max({vmax, a[i], b[i]});
            if (!(vmax > 0.0))
                vmax = 1.0;
            const double tmax = std::max(tt.back(), 1e-30) * 1e9;
            Axis ax{0.0, tmax, false}, ay{0.0, vmax * 1.05, false};
            std::string s = header("Received amplitude for a unit-energy impulse");
            std::vector<std::pair<double, std::string>> xt, yt;
            for (int k = 0; k <= 5; ++k)
                xt.emplace_back(tmax * k / 5.0, fmt_tick(std::round(tmax * k / 5.0 * 100) / 100));
            for (int k = 0; k <= 4; ++k)
                yt.emplace_back(vmax * k / 4.0, fmt_tick(std::round(vmax * k / 4.0 * 1000) / 1000));
            s += ticks_x(ax, xt) + ticks_y(ay, yt) + frame("time (ns)", "|y(t)|");
            const std::vector<double> *cols[2] = {&a, &b};
            const char *names[2] = {"non-TR", "TR"};
            for (int k = 0; k < 2; ++k)
            {
                std::string path;
                for (std::size_t i = 0; i < tt.size(); ++i)
                    path += (i ? " L" : "M") + num(ax.map(tt[i] * 1e9, ML, ML + PW)) + " " + num(ay.map((*cols[k])[i], MT + PH, MT));
                if (!path.empty())
                    s += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + palette[k] + "\" stroke-width=\"1\"/>\n";
                const double ly = MT + 10 + 18 * k;
                s += "<line x1=\"" + num(ML + PW + 12) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(ML + PW + 32) + "\" y2=\"" +
                     num(ly) + "\" stroke=\"" + palette[k] + "\" stroke-width=\"2\"/>\n<text x=\"" + num(ML + PW + 38) +
                     "\" y=\"" + num(ly + 4) + "\">" + names[k] + "</text>\n";
            }
            return s + "</svg>\n";
        }
    } // namespace

    std::string render_svg(const Table &table, PlotKind kind)
    {
        if (table.empty())
            throw std::invalid_argument("cannot plot an empty table");
        switch (kind)
        {
        case PlotKind::ber_vs_rate:
            return ber_plot(table, "rate_hz", true, 1e-9, "symbol rate (Gbaud)", "BER vs symbol rate");
        case PlotKind::ber_vs_snr:
            return ber_plot(table, "snr_db", false, 1.0, "SNR (dB)", "BER vs SNR");
        case PlotKind::heatmap:
            return heatmap_plot(table);
        case PlotKind::time_trace:
            return time_plot(table);
        }
        throw std::invalid_argument("unknown plot kind");
    }

    void emit_plot(const Table &table, PlotKind kind, const std::filesystem::path &path)
    {
        const std::string svg = render_svg(table, kind);
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write '" + path.string() + "'");
        out << svg;
        if (!out)
            throw std::runtime_error("write to '" + path.string() + "' failed");
    }

} // namespace trsim
