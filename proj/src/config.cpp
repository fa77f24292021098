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

#include "trsim/config.hpp"
#include "trsim/errors.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace trsim
{
    std::string to_string(ExperimentKind kind)
    {
        switch (kind)
        {
        case ExperimentKind::sweep_rate:
            return "sweep_rate";
        case ExperimentKind::sweep_snr:
            return "sweep_snr";
        case ExperimentKind::spatial_map:
            return "spatial_map";
        case ExperimentKind::temporal_focus:
            return "temporal_focus";
        case ExperimentKind::interference_probe:
            return "interference_probe";
        }
        return "unknown";
    }

    ExperimentKind parse_experiment_kind(const std::string &name)
    {
        std::string s = name;
        for (auto &c : s)
            if (c == '-')
                c = '_';
        for (auto k : {ExperimentKind::sweep_rate, ExperimentKind::sweep_snr, ExperimentKind::spatial_map,
                       ExperimentKind::temporal_focus, ExperimentKind::interference_probe})
            if (s == to_string(k))
                return k;
        throw std::invalid_argument("unknown experiment '" + name + "'");
    }

    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        struct bad_value
        {
            std::string what;
        };

        double to_double(const std::string &s)
        {
            const std::string t = trim(s);
            char *end = nullptr;
            errno = 0;
            const double v = std::strtod(t.c_str(), &end);
            if (t.empty() || errno != 0 || end != t.c_str() + t.size() || !std::isfinite(v))
                throw bad_value{"expected a finite number, got '" + t + "'"};
            return v;
        }

        std::uint64_t to_u64(const std::string &s)
        {
            const std::string t = trim(s);
            char *end = nullptr;
            errno = 0;
            if (t.empty() || t[0] == '-' || t[0] == '+')
                throw bad_value{"expected a nonnegative integer, got '" + t + "'"};
            const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
            if (errno != 0 || end != t.c_str() + t.size())
                throw bad_value{"expected a nonnegative integer, got '" + t + "'"};
            return v;
        }

        // Splits "[a, b, [c, d]]" into top-level elements.
        std::vector<std::string> to_list(const std::string &s)
        {
            const std::string t = trim(s);
            if (t.size() < 2 || t.front() != '[' || t.back() != ']')
                throw bad_value{"expected a list in brackets, got '" + t + "'"};
            std::vector<std::string> out;
            const std::string body = trim(t.substr(1, t.size() - 2));
            if (body.empty())
                return out;
            int depth = 0;
            std::string cur;
            for (char c : body)
            {
                if (c == '[')
                    ++depth;
                else if (c == ']')
                    --depth;
                if (depth < 0)
                    throw bad_value{"unbalanced brackets"};
                if (c == ',' && depth == 0)
                {
                    out.push_back(trim(cur));
                    cur.clear();
                }
                else
                    cur += c;
            }
            if (depth != 0)
                throw bad_value{"unbalanced brackets"};
            out.push_back(trim(cur));
            for (const auto &e : out)
                if (e.empty())
                    throw bad_value{"empty list element"};
            return out;
        }

        std::vector<double> to_doubles(const std::string &s)
        {
            std::vector<double> out;
            for (const auto &e : to_list(s))
                out.push_back(to_double(e));
            return out;
        }

        Position to_position(const std::string &s)
        {
            const auto v = to_doubles(s);
            if (v.size() != 2)
                throw bad_value{"a position needs two coordinates [x, y]"};
            return {v[0], v[1]};
        }

        std::string unquote(const std::string &s)
        {
            const std::string t = trim(s);
            if (t.size() >= 2 && ((t.front() == '"' && t.back() == '"') || (t.front() == '\'' && t.back() == '\'')))
                return t.substr(1, t.size() - 2);
            return t;
        }

        std::string fmt(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            return buf;
        }

        std::string fmt(const Position &p) { return "[" + fmt(p.x) + ", " + fmt(p.y) + "]"; }

        template <class T, class F>
        std::string fmt_list(const std::vector<T> &v, F f)
        {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i)
                s += (i ? ", " : "") + f(v[i]);
            return s + "]";
        }

        void require(bool ok, const char *what)
        {
            if (!ok)
                throw bad_value{what};
        }

        struct key_def
        {
            std::string name;
            std::function<void(ExperimentSpec &, const std::string &)> parse;
            std::function<std::string(const ExperimentSpec &)> print;
        };

        const std::vector<key_def> &keys()
        {
            using S = ExperimentSpec;
            using V = const std::string &;
            static const std::vector<key_def> defs = {
                {"experiment.kind",
                 [](S &s, V v) {
                     try
                     {
                         s.experiment = parse_experiment_kind(unquote(v));
                     }
                     catch (const std::invalid_argument &e)
                     {
                         throw bad_value{e.what()};
                     }
                 },
                 [](const S &s) { return to_string(s.experiment); }},
                {"experiment.n_bits",
                 [](S &s, V v) {
                     s.n_bits = to_u64(v);
                     require(s.n_bits >= 1 && s.n_bits <= 100000000, "n_bits must lie in [1, 1e8]");
                 },
                 [](const S &s) { return std::to_string(s.n_bits); }},
                {"experiment.seed", [](S &s, V v) { s.master_seed = to_u64(v); },
                 [](const S &s) { return std::to_string(s.master_seed); }},
                {"experiment.seeds_per_cell",
                 [](S &s, V v) {
                     s.seeds_per_cell = to_u64(v);
                     require(s.seeds_per_cell >= 1 && s.seeds_per_cell <= 10000, "seeds_per_cell must lie in [1, 10000]");
                 },
                 [](const S &s) { return std::to_string(s.seeds_per_cell); }},
                {"experiment.output_dir",
                 [](S &s, V v) {
                     s.output_dir = unquote(v);
                     require(!s.output_dir.empty(), "output_dir must not be empty");
                 },
                 [](const S &s) { return s.output_dir.string(); }},
                {"experiment.workers",
                 [](S &s, V v) {
                     const auto w = to_u64(v);
                     require(w <= 1024, "workers must lie in [0, 1024]");
                     s.workers = static_cast<unsigned>(w);
                 },
                 [](const S &s) { return std::to_string(s.workers); }},

                {"cavity.width",
                 [](S &s, V v) {
                     s.cavity.width = to_double(v);
                     require(s.cavity.width > 0.0, "width must be positive");
                 },
                 [](const S &s) { return fmt(s.cavity.width); }},
                {"cavity.height",
                 [](S &s, V v) {
                     s.cavity.height = to_double(v);
                     require(s.cavity.height > 0.0, "height must be positive");
                 },
                 [](const S &s) { return fmt(s.cavity.height); }},
                {"cavity.wall_reflection",
                 [](S &s, V v) {
                     s.cavity.wall_reflection_coefficient = to_double(v);
                     require(s.cavity.wall_reflection_coefficient >= 0.0 && s.cavity.wall_reflection_coefficient <= 1.0,
                             "reflection coefficient must lie in [0, 1]");
                 },
                 [](const S &s) { return fmt(s.cavity.wall_reflection_coefficient); }},
                {"cavity.max_image_order",
                 [](S &s, V v) {
                     const auto n = to_u64(v);
                     require(n <= 64, "image order must lie in [0, 64]");
                     s.cavity.max_image_order = static_cast<int>(n);
                 },
                 [](const S &s) { return std::to_string(s.cavity.max_image_order); }},
                {"cavity.relative_permittivity",
                 [](S &s, V v) {
                     s.cavity.relative_permittivity = to_double(v);
                     require(s.cavity.relative_permittivity >= 1.0, "relative permittivity must be >= 1");
                 },
                 [](const S &s) { return fmt(s.cavity.relative_permittivity); }},
                {"cavity.path_loss_exponent",
                 [](S &s, V v) {
                     s.cavity.path_loss_exponent = to_double(v);
                     require(s.cavity.path_loss_exponent >= 0.0, "path loss exponent must be >= 0");
                 },
                 [](const S &s) { return fmt(s.cavity.path_loss_exponent); }},
                {"cavity.attenuation_np_per_m",
                 [](S &s, V v) {
                     s.cavity.attenuation_np_per_m = to_double(v);
                     require(s.cavity.attenuation_np_per_m >= 0.0, "attenuation must be >= 0");
                 },
                 [](const S &s) { return fmt(s.cavity.attenuation_np_per_m); }},

                {"signal.sample_rate",
                 [](S &s, V v) {
                     s.grid.sample_rate = to_double(v);
                     require(s.grid.sample_rate > 0.0, "sample rate must be positive");
                 },
                 [](const S &s) { return fmt(s.grid.sample_rate); }},
                {"signal.carrier_frequency",
                 [](S &s, V v) {
                     s.grid.carrier_frequency = to_double(v);
                     require(s.grid.carrier_frequency > 0.0, "carrier frequency must be positive");
                     s.modem.carrier_frequency = s.grid.carrier_frequency;
                 },
                 [](const S &s) { return fmt(s.grid.carrier_frequency); }},

                {"geometry.tx", [](S &s, V v) { s.tx = to_position(v); }, [](const S &s) { return fmt(s.tx); }},
                {"geometry.rx", [](S &s, V v) { s.rx = to_position(v); }, [](const S &s) { return fmt(s.rx); }},
                {"geometry.victims",
                 [](S &s, V v) {
                     s.victims.clear();
                     for (const auto &e : to_list(v))
                         s.victims.push_back(to_position(e));
                 },
                 [](const S &s) { return fmt_list(s.victims, [](const Position &p) { return fmt(p); }); }},

                {"link.schemes",
                 [](S &s, V v) {
                     s.schemes.clear();
                     for (const auto &e : to_list(v))
                     {
                         try
                         {
                             s.schemes.push_back(parse_scheme_kind(unquote(e)));
                         }
                         catch (const std::invalid_argument &err)
                         {
                             throw bad_value{err.what()};
                         }
                     }
                     require(!s.schemes.empty(), "scheme list must not be empty");
                 },
                 [](const S &s) { return fmt_list(s.schemes, [](SchemeKind k) { return to_string(k); }); }},
                {"link.rates",
                 [](S &s, V v) {
                     s.rates = to_doubles(v);
                     require(!s.rates.empty(), "rate grid must not be empty");
                     for (double r : s.rates)
                         require(r > 0.0, "rates must be positive");
                 },
                 [](const S &s) { return fmt_list(s.rates, [](double r) { return fmt(r); }); }},
                {"link.snr_db", [](S &s, V v) { s.snr_db = to_double(v); }, [](const S &s) { return fmt(s.snr_db); }},
                {"link.snr_reference",
                 [](S &s, V v) {
                     const auto t = unquote(v);
                     if (t == "received")
                         s.snr_reference = SnrReference::received_signal_power;
                     else if (t == "transmit")
                         s.snr_reference = SnrReference::transmit_power;
                     else
                         throw bad_value{"expected 'received' or 'transmit'"};
                 },
                 [](const S &s) {
                     return std::string(s.snr_reference == SnrReference::received_signal_power ? "received" : "transmit");
                 }},

                {"modem.ask_amplitude_ratio",
                 [](S &s, V v) {
                     s.modem.ask_amplitude_ratio = to_double(v);
                     require(s.modem.ask_amplitude_ratio > 0.0 && s.modem.ask_amplitude_ratio < 1.0,
                             "amplitude ratio must lie in (0, 1)");
                 },
                 [](const S &s) { return fmt(s.modem.ask_amplitude_ratio); }},
                {"modem.ppm_shift_fraction",
                 [](S &s, V v) {
                     s.modem.ppm_shift_fraction = to_double(v);
                     require(s.modem.ppm_shift_fraction > 0.0 && s.modem.ppm_shift_fraction < 1.0,
                             "shift fraction must lie in (0, 1)");
                 },
                 [](const S &s) { return fmt(s.modem.ppm_shift_fraction); }},
                {"modem.pulse_width",
                 [](S &s, V v) {
                     if (unquote(v) == "auto")
                         s.modem.pulse_width.reset();
                     else
                     {
                         s.modem.pulse_width = to_double(v);
                         require(*s.modem.pulse_width > 0.0, "pulse width must be positive");
                     }
                 },
                 [](const S &s) { return s.modem.pulse_width ? fmt(*s.modem.pulse_width) : std::string("auto"); }},

                {"snr_sweep.grid",
                 [](S &s, V v) {
                     s.snr_grid = to_doubles(v);
                     require(!s.snr_grid.empty(), "SNR grid must not be empty");
                 },
                 [](const S &s) { return fmt_list(s.snr_grid, [](double r) { return fmt(r); }); }},
                {"snr_sweep.rate",
                 [](S &s, V v) {
                     s.snr_sweep_rate = to_double(v);
                     require(s.snr_sweep_rate > 0.0, "rate must be positive");
                 },
                 [](const S &s) { return fmt(s.snr_sweep_rate); }},
                {"snr_sweep.theory_max_db", [](S &s, V v) { s.theory_max_snr_db = to_double(v); },
                 [](const S &s) { return fmt(s.theory_max_snr_db); }},

                {"spatial.grid_size",
                 [](S &s, V v) {
                     s.spatial_grid_size = to_u64(v);
                     require(s.spatial_grid_size >= 2 && s.spatial_grid_size <= 401, "grid size must lie in [2, 401]");
                 },
                 [](const S &s) { return std::to_string(s.spatial_grid_size); }},
                {"spatial.exclusion_radius",
                 [](S &s, V v) {
                     if (unquote(v) == "auto")
                         s.exclusion_radius.reset();
                     else
                     {
                         s.exclusion_radius = to_double(v);
                         require(*s.exclusion_radius >= 0.0, "exclusion radius must be >= 0");
                     }
                 },
                 [](const S &s) { return s.exclusion_radius ? fmt(*s.exclusion_radius) : std::string("auto"); }},
            };
            return defs;
        }

        void check_spec(const ExperimentSpec &s, const std::map<std::string, std::size_t> &lines)
        {
            auto fail = [&](const std::string &key, const std::string &what) {
                const auto it = lines.find(key);
                throw config_error(key, it == lines.end() ? 0 : it->second, what);
            };
            try
            {
                s.cavity.validate();
            }
            catch (const std::exception &e)
            {
                fail("cavity", e.what());
            }
            if (!s.cavity.contains(s.tx))
                fail("geometry.tx", "transmitter lies outside the cavity");
            if (!s.cavity.contains(s.rx))
                fail("geometry.rx", "receiver lies outside the cavity");
            if (s.tx == s.rx)
                fail("geometry.rx", "transmitter and receiver coincide");
            for (const auto &v : s.victims)
                if (!s.cavity.contains(v) || v == s.tx)
                    fail("geometry.victims", "victim positions must lie inside the cavity and away from the transmitter");
            if (s.experiment == ExperimentKind::interference_probe && s.victims.empty())
                fail("geometry.victims", "the interference probe needs at least one victim");

            auto check_rate = [&](const std::string &key, double rate) {
                try
                {
                    (void)samples_per_symbol(ModulationScheme{}, rate, s.grid.sample_rate);
                }
                catch (const std::exception &e)
                {
                    fail(key, std::string(e.what()) + " (rate " + fmt(rate) + " Hz)");
                }
            };
            if (s.rates.empty())
                fail("link.rates", "rate grid must not be empty");
            for (double r : s.rates)
                check_rate("link.rates", r);
            check_rate("snr_sweep.rate", s.snr_sweep_rate);
            if (s.snr_grid.empty())
                fail("snr_sweep.grid", "SNR grid must not be empty");
            if (s.schemes.empty())
                fail("link.schemes", "scheme list must not be empty");
        }
    } // namespace

    void validate(const ExperimentSpec &spec) { check_spec(spec, {}); }

    ExperimentSpec parse_config_text(const std::string &text)
    {
        ExperimentSpec spec;
        std::map<std::string, std::size_t> seen;
        std::istringstream in(text);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            if (line_no == 1 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
                line.erase(0, 3);
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw config_error("", line_no, "expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            const auto &defs = keys();
            const auto it = std::find_if(defs.begin(), defs.end(), [&](const key_def &d) { return d.name == key; });
            if (it == defs.end())
                throw config_error(key, line_no, "unknown key");
            if (seen.count(key))
                throw config_error(key, line_no, "duplicate key");
            seen[key] = line_no;
            if (value.empty())
                throw config_error(key, line_no, "missing value");
            try
            {
                it->parse(spec, value);
            }
            catch (const bad_value &b)
            {
                throw config_error(key, line_no, b.what);
            }
        }
        check_spec(spec, seen);
        return spec;
    }

    ExperimentSpec parse_config(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw config_error("", 0, "cannot open config file '" + path.string() + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config_text(ss.str());
    }

    std::string serialize(const ExperimentSpec &spec)
    {
        std::string out;
        std::string section;
        for (const auto &d : keys())
        {
            const std::string sec = d.name.substr(0, d.name.find('.'));
            if (!section.empty() && sec != section)
                out += '\n';
            section = sec;
            out += d.name + " = " + d.print(spec) + '\n';
        }
        return out;
    }

} // namespace trsim
