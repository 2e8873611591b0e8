// SPDX-License-Identifier: Apache-2.0
//
// pops: ping-pong optimized pulse shaping for multicarrier waveforms
// Copyright (C) 2026 The pops authors
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

#include "pops/scenario.hpp"

#include "pops/errors.hpp"
#include "pops/hash.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace pops
{

namespace
{

const std::map<std::string, std::set<std::string>> &known_keys()
{
    static const std::map<std::string, std::set<std::string>> keys = {
        {"scenario", {"name", "snr"}},
        {"lattice", {"Q", "N", "FT", "Ts", "Dphi", "Dpsi"}},
        {"channel", {"type", "spread_product", "K", "b", "delay_spread", "doppler", "delays", "powers", "doppler_hz"}},
        {"pops",
         {"solver", "epsilon", "max_iterations", "acceleration", "paper_literal_gep", "init", "hermite",
          "gaussian_mean", "gaussian_sigma", "rrc_rolloff"}},
        {"upperbound", {"cap"}},
        {"psd", {"oversample", "subcarriers", "waveform"}},
        {"sweep",
         {"ft", "durations", "doppler_grid", "cp", "max_delay", "sync_cp", "offsets", "time_unit", "freq_unit",
          "optimize_at", "evaluate_over", "spread_product"}},
        {"montecarlo", {"trials", "extent", "alphabet", "doppler_grid", "seed", "waveform"}},
        {"output", {"dir"}},
    };
    return keys;
}

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    return s;
}

void check_key(const std::string &key)
{
    const auto dot = key.find('.');
    if (dot == std::string::npos)
        throw InvalidArgument(key + ": keys must be written as section.key");
    const std::string section = key.substr(0, dot), name = key.substr(dot + 1);
    const auto it = known_keys().find(section);
    if (it == known_keys().end())
        throw InvalidArgument(key + ": unknown section [" + section + "]");
    if (!it->second.count(name))
        throw InvalidArgument(key + ": unknown key in [" + section + "]");
}

std::vector<std::string> split(const std::string &text, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep))
        out.push_back(trim(cur));
    return out;
}

long parse_integer(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    long v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty())
        throw InvalidArgument(key + ": expected an integer, got '" + text + "'");
    return v;
}

bool parse_bool(const std::string &key, const std::string &text)
{
    const std::string t = lower(trim(text));
    if (t == "true" || t == "1" || t == "yes" || t == "on")
        return true;
    if (t == "false" || t == "0" || t == "no" || t == "off")
        return false;
    throw InvalidArgument(key + ": expected true or false, got '" + text + "'");
}

// Comma-separated reals; an item "start:step:stop" expands to an inclusive range.
std::vector<double> parse_real_list(const std::string &key, const std::string &text)
{
    std::vector<double> out;
    for (const auto &item : split(text, ','))
    {
        if (item.empty())
            throw InvalidArgument(key + ": empty list item in '" + text + "'");
        const auto parts = split(item, ':');
        if (parts.size() == 1)
        {
            out.push_back(parse_real(key, item));
            continue;
        }
        if (parts.size() != 3)
            throw InvalidArgument(key + ": ranges are written start:step:stop, got '" + item + "'");
        const double a = parse_real(key, parts[0]), step = parse_real(key, parts[1]), b = parse_real(key, parts[2]);
        if (!std::isfinite(a) || !std::isfinite(b) || !(step > 0.0) || !std::isfinite(step) || b < a)
            throw InvalidArgument(key + ": range '" + item + "' needs finite start <= stop and a positive step");
        const long count = long(std::floor((b - a) / step + 1e-9)) + 1;
        if (count > 1000000)
            throw InvalidArgument(key + ": range '" + item + "' has too many points");
        for (long i = 0; i < count; ++i)
            out.push_back(a + double(i) * step);
    }
    return out;
}

std::vector<int> parse_int_list(const std::string &key, const std::string &text)
{
    std::vector<int> out;
    for (const auto &item : split(text, ','))
        out.push_back(int(parse_integer(key, item)));
    return out;
}

std::string format_real(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Typed view over the entry map with key-named errors.
class Reader
{
public:
    explicit Reader(const std::map<std::string, std::string> &e) : e_(e) {}

    bool has(const std::string &k) const { return e_.count(k) != 0; }
    std::string text(const std::string &k, const std::string &def) const { return has(k) ? e_.at(k) : def; }
    double real(const std::string &k, double def) const { return has(k) ? parse_real(k, e_.at(k)) : def; }
    long integer(const std::string &k, long def) const { return has(k) ? parse_integer(k, e_.at(k)) : def; }
    bool boolean(const std::string &k, bool def) const { return has(k) ? parse_bool(k, e_.at(k)) : def; }
    std::vector<double> reals(const std::string &k, std::vector<double> def) const
    {
        return has(k) ? parse_real_list(k, e_.at(k)) : def;
    }
    std::vector<int> ints(const std::string &k, std::vector<int> def) const
    {
        return has(k) ? parse_int_list(k, e_.at(k)) : def;
    }

    double positive(const std::string &k, double def) const
    {
        const double v = real(k, def);
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidArgument(k + ": must be a positive finite number");
        return v;
    }
    long at_least(const std::string &k, long def, long lo) const
    {
        const long v = integer(k, def);
        if (v < lo)
            throw InvalidArgument(k + ": must be >= " + std::to_string(lo));
        return v;
    }

private:
    const std::map<std::string, std::string> &e_;
};

// Runs a validation routine and prefixes its message with the key it concerns.
template <typename F>
void checked(const std::string &key, F &&f)
{
    try
    {
        f();
    }
    catch (const InvalidArgument &e)
    {
        const std::string msg = e.what();
        if (msg.rfind(key, 0) == 0)
            throw;
        throw InvalidArgument(key + ": " + msg);
    }
}

ChannelRecipe parse_channel(const Reader &r, const LatticeConfig &lat)
{
    ChannelRecipe rc;
    rc.num_paths = int(r.at_least("channel.K", 8, 1));
    rc.decay = r.real("channel.b", 0.5);
    if (!(rc.decay > 0.0 && rc.decay < 1.0))
        throw InvalidArgument("channel.b: must lie in (0, 1)");
    const std::string type = r.text("channel.type", "balanced");
    const std::map<std::string, std::set<std::string>> relevant = {
        {"balanced", {"spread_product", "K", "b"}},
        {"separable", {"delay_spread", "doppler", "K", "b"}},
        {"ideal", {}},
        {"paths", {"delays", "powers", "doppler_hz"}},
    };
    const auto it = relevant.find(type);
    if (it == relevant.end())
        throw InvalidArgument("channel.type: unknown channel type '" + type +
                              "' (expected balanced, separable, ideal or paths)");
    for (const std::string k : {"spread_product", "delay_spread", "doppler", "delays", "powers", "doppler_hz"})
        if (r.has("channel." + k) && !it->second.count(k))
            throw InvalidArgument("channel." + k + ": not used by channel.type = " + type);

    if (type == "balanced")
    {
        rc.balanced = true;
        rc.spread_product = r.real("channel.spread_product", 0.01);
        if (!(rc.spread_product >= 0.0) || !std::isfinite(rc.spread_product))
            throw InvalidArgument("channel.spread_product: must be a nonnegative finite number");
        checked("channel", [&] { validate(rc.realize(lat)); });
        return rc;
    }
    rc.balanced = false;
    if (type == "ideal")
    {
        rc.fixed = ideal_channel();
        return rc;
    }
    if (type == "separable")
    {
        const long spread = r.at_least("channel.delay_spread", 0, 0);
        const double doppler = r.real("channel.doppler", 0.0);
        if (!(doppler >= 0.0) || !std::isfinite(doppler))
            throw InvalidArgument("channel.doppler: must be a nonnegative finite Bd*Ts");
        checked("channel", [&] {
            rc.fixed = make_separable(spread, doppler, rc.num_paths, rc.decay, lat.sample_period);
            validate(rc.fixed);
        });
        return rc;
    }
    const auto delays = r.ints("channel.delays", {});
    const auto pw = r.reals("channel.powers", {});
    if (delays.empty())
        throw InvalidArgument("channel.delays: required for channel.type = paths");
    if (pw.size() != delays.size())
        throw InvalidArgument("channel.powers: expected " + std::to_string(delays.size()) + " values, got " +
                              std::to_string(pw.size()));
    auto dop = r.reals("channel.doppler_hz", std::vector<double>(delays.size(), 0.0));
    if (dop.size() != delays.size())
        throw InvalidArgument("channel.doppler_hz: expected " + std::to_string(delays.size()) + " values");
    PathList pl;
    for (std::size_t i = 0; i < delays.size(); ++i)
        pl.paths.push_back({delays[i], dop[i], pw[i]});
    checked("channel.paths", [&] { pl.validate(); });
    rc.fixed = pl;
    return rc;
}

Scenario build(std::map<std::string, std::string> entries)
{
    Scenario s;
    s.entries = std::move(entries);
    const Reader r(s.entries);

    s.name = r.text("scenario.name", "scenario");
    s.snr = r.real("scenario.snr", std::numeric_limits<double>::infinity());
    if (!(s.snr > 0.0))
        throw InvalidArgument("scenario.snr: must be positive or inf");

    LatticeConfig &lat = s.lattice;
    if (!r.has("lattice.Q"))
        throw InvalidArgument("lattice.Q: required");
    lat.num_subcarriers = int(r.at_least("lattice.Q", 0, 1));
    if (r.has("lattice.N") && r.has("lattice.FT"))
        throw InvalidArgument("lattice.FT: give either lattice.N or lattice.FT, not both");
    if (r.has("lattice.FT"))
    {
        const double ft = r.positive("lattice.FT", 1.0);
        const double n = ft * double(lat.num_subcarriers);
        if (std::abs(n - std::round(n)) > 1e-9 * n)
            throw InvalidArgument("lattice.FT: FT * Q = " + format_real(n) + " is not an integer");
        lat.symbol_len = int(std::lround(n));
    }
    else
        lat.symbol_len = int(r.at_least("lattice.N", lat.num_subcarriers, 1));
    lat.sample_period = r.positive("lattice.Ts", 1.0);
    lat.tx_symbols = int(r.at_least("lattice.Dphi", 1, 1));
    lat.rx_symbols = int(r.at_least("lattice.Dpsi", 1, 1));
    checked("lattice", [&] { lat.validate(); });

    s.channel = parse_channel(r, lat);

    PopsOptions &po = s.pops;
    checked("pops.solver", [&] { po.approach = solver_from_string(r.text("pops.solver", "rayleigh")); });
    po.epsilon = r.positive("pops.epsilon", 1e-10);
    po.max_iterations = int(r.at_least("pops.max_iterations", 200, 1));
    checked("pops.acceleration",
            [&] { po.acceleration = acceleration_from_string(r.text("pops.acceleration", "anderson")); });
    po.paper_literal_gep = r.boolean("pops.paper_literal_gep", false);
    checked("pops.init", [&] { po.init.kind = init_kind_from_string(r.text("pops.init", "auto")); });
    po.init.hermite_coefficients = r.reals("pops.hermite", {1.0});
    po.init.gaussian_mean = r.real("pops.gaussian_mean", -1.0);
    po.init.gaussian_sigma = r.real("pops.gaussian_sigma", -1.0);
    po.init.rrc_rolloff = r.real("pops.rrc_rolloff", 0.5);
    checked("pops.init", [&] { (void)po.init.make(lat); });
    checked("pops", [&] { po.make(lat, s.snr).validate(lat); });

    s.bound_cap = std::size_t(r.at_least("upperbound.cap", long(default_kronecker_cap), 1));

    s.psd_oversample = int(r.at_least("psd.oversample", 16, 2));
    s.psd_subcarriers = int(r.at_least("psd.subcarriers", 64, 1));
    s.psd_waveform = r.text("psd.waveform", "pops_tx");
    if (s.psd_waveform != "pops_tx" && s.psd_waveform != "pops_rx" && s.psd_waveform != "conventional_tx" &&
        s.psd_waveform != "conventional_rx")
        throw InvalidArgument("psd.waveform: expected pops_tx, pops_rx, conventional_tx or conventional_rx");

    SweepSettings &sw = s.sweep;
    sw.ft_values = r.reals("sweep.ft", sw.ft_values);
    if (r.has("sweep.durations"))
    {
        sw.durations.clear();
        for (const auto &item : split(r.text("sweep.durations", ""), ','))
        {
            const auto x = item.find('x');
            if (x == std::string::npos)
                throw InvalidArgument("sweep.durations: items are written DphixDpsi, got '" + item + "'");
            const int a = int(parse_integer("sweep.durations", item.substr(0, x)));
            const int b = int(parse_integer("sweep.durations", item.substr(x + 1)));
            if (a < 1 || b < 1)
                throw InvalidArgument("sweep.durations: durations must be >= 1");
            sw.durations.emplace_back(a, b);
        }
    }
    sw.bd_over_f = r.reals("sweep.doppler_grid", sw.bd_over_f);
    sw.cp_samples = r.ints("sweep.cp", sw.cp_samples);
    sw.max_delay = r.integer("sweep.max_delay", long(lat.num_subcarriers));
    sw.sync_cp_samples = r.ints("sweep.sync_cp", sw.sync_cp_samples);
    for (const auto &[key, list] : {std::pair{"sweep.cp", &sw.cp_samples}, std::pair{"sweep.sync_cp", &sw.sync_cp_samples}})
        for (int cp : *list)
            if (cp < 0)
                throw InvalidArgument(std::string(key) + ": cyclic prefix lengths must be >= 0");
    if (sw.max_delay < 0)
        throw InvalidArgument("sweep.max_delay: must be >= 0");
    sw.offsets = r.reals("sweep.offsets", {});
    const std::string tu = r.text("sweep.time_unit", "samples"), fu = r.text("sweep.freq_unit", "subcarriers");
    if (tu != "samples" && tu != "symbols")
        throw InvalidArgument("sweep.time_unit: expected samples or symbols");
    if (fu != "subcarriers" && fu != "hertz")
        throw InvalidArgument("sweep.freq_unit: expected subcarriers or hertz");
    sw.time_unit = tu == "samples" ? TimeUnit::samples : TimeUnit::symbols;
    sw.freq_unit = fu == "subcarriers" ? FrequencyUnit::subcarriers : FrequencyUnit::hertz;
    sw.optimize_at = r.reals("sweep.optimize_at", sw.optimize_at);
    sw.evaluate_over = r.reals("sweep.evaluate_over", sw.evaluate_over);
    for (const auto &[key, list] : {std::pair{"sweep.optimize_at", &sw.optimize_at},
                                    std::pair{"sweep.evaluate_over", &sw.evaluate_over},
                                    std::pair{"sweep.doppler_grid", &sw.bd_over_f}})
        for (double v : *list)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw InvalidArgument(std::string(key) + ": values must be nonnegative and finite");
    if (r.has("sweep.spread_product"))
        s.channel.spread_product = r.positive("sweep.spread_product", 0.01);

    McConfig &mc = s.montecarlo;
    mc.trials = r.at_least("montecarlo.trials", 100000, 1);
    mc.lattice_extent = int(r.at_least("montecarlo.extent", -1, -1));
    checked("montecarlo.alphabet", [&] { mc.alphabet = alphabet_from_string(r.text("montecarlo.alphabet", "gaussian")); });
    mc.doppler_grid_size = int(r.at_least("montecarlo.doppler_grid", 64, 1));
    mc.seed = std::uint64_t(r.at_least("montecarlo.seed", 1, 0));
    s.montecarlo_waveform = r.text("montecarlo.waveform", "pops");
    if (s.montecarlo_waveform != "pops" && s.montecarlo_waveform != "conventional")
        throw InvalidArgument("montecarlo.waveform: expected pops or conventional");

    s.output_dir = r.text("output.dir", "pops_out");
    if (s.output_dir.empty())
        throw InvalidArgument("output.dir: must not be empty");
    return s;
}

} // namespace

double parse_real(const std::string &key, const std::string &text)
{
    const std::string t = lower(trim(text));
    if (t == "inf" || t == "+inf" || t == "infinity")
        return std::numeric_limits<double>::infinity();
    if (t == "-inf" || t == "-infinity")
        return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const char *b = t.data();
    if (!t.empty() && t[0] == '+')
        ++b;
    const auto [p, ec] = std::from_chars(b, t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size() || !std::isfinite(v))
        throw InvalidArgument(key + ": expected a number or inf, got '" + text + "'");
    return v;
}

std::string Scenario::hash() const
{
    std::uint64_t h = fnv1a64(std::string_view("pops-scenario-v1\n"));
    for (const auto &[k, v] : entries)
        if (k != "output.dir")
            h = fnv1a64(k + "=" + v + "\n", h);
    return to_hex(h);
}

std::string Scenario::to_ini(const std::vector<std::pair<std::string, std::string>> &provenance) const
{
    std::string out;
    std::string section;
    for (const auto &[k, v] : entries)
    {
        const auto dot = k.find('.');
        const std::string sec = k.substr(0, dot);
        if (sec != section)
        {
            out += (out.empty() ? "[" : "\n[") + sec + "]\n";
            section = sec;
        }
        out += k.substr(dot + 1) + " = " + v + "\n";
    }
    if (!provenance.empty())
    {
        out += "\n[provenance]\n";
        for (const auto &[k, v] : provenance)
            out += k + " = " + v + "\n";
    }
    return out;
}

std::vector<double> Scenario::time_offsets() const
{
    if (!sweep.offsets.empty())
        return sweep.offsets;
    std::vector<double> out;
    if (sweep.time_unit == TimeUnit::symbols)
        for (int i = -10; i <= 10; ++i)
            out.push_back(0.05 * i);
    else
        for (long t = -lattice.symbol_len / 2; t <= lattice.symbol_len / 2; ++t)
            out.push_back(double(t));
    return out;
}

std::vector<double> Scenario::frequency_offsets() const
{
    if (!sweep.offsets.empty())
        return sweep.offsets;
    std::vector<double> out;
    const double unit = sweep.freq_unit == FrequencyUnit::subcarriers
                            ? 1.0
                            : 1.0 / (double(lattice.num_subcarriers) * lattice.sample_period);
    for (int i = -10; i <= 10; ++i)
        out.push_back(0.05 * i * unit);
    return out;
}

Scenario parse_scenario(const std::string &text, const std::vector<std::string> &overrides)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try
    {
        std::istringstream in(text);
        pt::ini_parser::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error &e)
    {
        throw InvalidArgument("scenario: " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }

    std::map<std::string, std::string> entries;
    for (const auto &[section, body] : tree)
    {
        if (body.empty())
            throw InvalidArgument(section + ": key outside of any section");
        if (section == "provenance")
            continue;
        for (const auto &[name, value] : body)
        {
            const std::string key = section + "." + name;
            check_key(key);
            entries[key] = trim(value.data());
        }
    }
    for (const auto &o : overrides)
    {
        const auto eq = o.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument(o + ": overrides are written section.key=value");
        const std::string key = trim(o.substr(0, eq));
        check_key(key);
        const std::string value = trim(o.substr(eq + 1));
        if (value.empty())
            entries.erase(key);
        else
            entries[key] = value;
    }
    return build(std::move(entries));
}

Scenario load_scenario(const std::filesystem::path &path, const std::vector<std::string> &overrides)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("scenario: cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), overrides);
}

} // namespace pops
