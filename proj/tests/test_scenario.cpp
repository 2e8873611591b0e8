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

#include "pops/errors.hpp"
#include "pops/io.hpp"
#include "pops/scenario.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

using namespace pops;

namespace
{
const char *base_text = R"(# headline scenario
[scenario]
name = headline
snr = inf

[lattice]
Q = 128
FT = 1.25

[channel]
type = balanced
spread_product = 0.01
K = 8
b = 0.5
)";

// Reference FNV-1a, written out independently of the library helper.
std::string reference_hash(const std::map<std::string, std::string> &entries)
{
    std::string text = "pops-scenario-v1\n";
    for (const auto &[k, v] : entries)
        if (k != "output.dir")
            text += k + "=" + v + "\n";
    unsigned long long h = 14695981039346656037ULL;
    for (unsigned char c : text)
    {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}
} // namespace

TEST_SUITE("scenario")
{
    TEST_CASE("parses a scenario with defaults")
    {
        const Scenario s = parse_scenario(base_text);
        CHECK(s.name == "headline");
        CHECK(std::isinf(s.snr));
        CHECK(s.lattice.num_subcarriers == 128);
        CHECK(s.lattice.symbol_len == 160);
        CHECK(s.lattice.tx_symbols == 1);
        CHECK(s.channel.balanced);
        CHECK(s.channel.num_paths == 8);
        CHECK(s.pops.max_iterations == 200);
        CHECK(s.pops.epsilon == 1e-10);
        CHECK(s.psd_oversample == 16);
        CHECK(s.psd_subcarriers == 64);
        CHECK(s.montecarlo.trials == 100000);
        CHECK(s.bound_cap == default_kronecker_cap);
        CHECK(s.output_dir == "pops_out");
        CHECK(s.time_offsets().front() == -80.0);
        CHECK(s.time_offsets().size() == 161);
    }

    TEST_CASE("errors name the offending key")
    {
        auto fails_with = [](const std::string &text, const std::vector<std::string> &ov, const std::string &key) {
            CAPTURE(key);
            CHECK_THROWS_WITH_AS(parse_scenario(text, ov), doctest::Contains(key.c_str()), InvalidArgument);
        };
        const std::string t = base_text;
        fails_with(t + "[pops]\nbogus = 1\n", {}, "pops.bogus");
        fails_with(t, {"lattice.bogus=1"}, "lattice.bogus");
        fails_with(t, {"extras.x=1"}, "extras.x");
        fails_with(t, {"lattice.N=160"}, "lattice.FT");
        fails_with(t, {"lattice.FT=1.3"}, "lattice.FT");
        fails_with(t, {"scenario.snr=0"}, "scenario.snr");
        fails_with(t, {"scenario.snr=ten"}, "scenario.snr");
        fails_with(t, {"pops.max_iterations=2.5"}, "pops.max_iterations");
        fails_with(t, {"pops.solver=newton"}, "pops.solver");
        fails_with(t, {"pops.init=sinc"}, "pops.init");
        fails_with(t, {"channel.b=1.5"}, "channel.b");
        fails_with(t, {"channel.delays=0,3"}, "channel.delays");
        fails_with(t, {"channel.type=paths", "channel.spread_product=0.01", "channel.delays=0,3"}, "channel.spread_product");
        fails_with("[lattice]\nQ=8\n[channel]\ntype=paths\ndelays=0,3\npowers=1\n", {}, "channel.powers");
        fails_with("[lattice]\nN=8\n", {}, "lattice.Q");
        fails_with("[lattice]\nQ=8\nN=4\n", {}, "lattice");
        fails_with(t, {"psd.oversample=1"}, "psd.oversample");
        fails_with(t, {"sweep.durations=1by3"}, "sweep.durations");
        fails_with(t, {"sweep.ft=2:0.1:1"}, "sweep.ft");
        fails_with(t, {"montecarlo.alphabet=bpsk"}, "montecarlo.alphabet");
        fails_with(t, {"lattice.Q"}, "lattice.Q");
        CHECK_THROWS_AS(parse_scenario("[lattice]\nQ=8\nQ=9\n"), InvalidArgument);
    }

    TEST_CASE("overrides, lists and channel types")
    {
        const Scenario s = parse_scenario(base_text, {"scenario.snr=100", "sweep.ft=1.25:0.25:2, 3",
                                                      "sweep.durations=1x1,1x3", "channel.type=separable",
                                                      "channel.spread_product=", "sweep.offsets=-1,0,1"});
        CHECK(s.snr == 100.0);
        CHECK(s.sweep.ft_values == std::vector<double>{1.25, 1.5, 1.75, 2.0, 3.0});
        CHECK(s.sweep.durations == std::vector<std::pair<int, int>>{{1, 1}, {1, 3}});
        CHECK(s.time_offsets() == std::vector<double>{-1.0, 0.0, 1.0});
        CHECK_FALSE(s.channel.balanced);

        const Scenario p = parse_scenario("[lattice]\nQ=16\nN=20\n[channel]\ntype=paths\ndelays=0, 3\n"
                                          "powers=0.75,0.25\ndoppler_hz=0,0.001\n");
        const auto &pl = std::get<PathList>(p.channel.fixed);
        REQUIRE(pl.paths.size() == 2);
        CHECK(pl.paths[1].delay == 3);
        CHECK(pl.paths[1].doppler_hz == 0.001);

        const Scenario sep = parse_scenario("[lattice]\nQ=16\nN=20\n[channel]\ntype=separable\ndelay_spread=6\n"
                                            "doppler=0.002\nK=3\n");
        const auto &sc = std::get<SeparableChannel>(sep.channel.fixed);
        CHECK(sc.max_delay() == 6);
        CHECK(sc.normalized_doppler() == doctest::Approx(0.002));

        const Scenario ideal = parse_scenario("[lattice]\nQ=16\n[channel]\ntype=ideal\n");
        CHECK(ideal.lattice.symbol_len == 16);
    }

    TEST_CASE("hash and round trip")
    {
        const Scenario s = parse_scenario(base_text, {"pops.solver=gep"});
        CHECK(s.hash() == reference_hash(s.entries));
        CHECK(s.hash() != parse_scenario(base_text).hash());
        CHECK(parse_scenario(base_text, {"pops.solver=gep", "output.dir=elsewhere"}).hash() == s.hash());
        // Comments, spacing and key order do not change the hash.
        const Scenario reordered = parse_scenario("[channel]\nb=0.5\nK = 8\nspread_product=0.01\ntype=balanced\n"
                                                  "[lattice]\nFT=1.25\nQ=128\n[scenario]\nsnr=inf\nname=headline\n"
                                                  "; note\n[pops]\nsolver=gep\n");
        CHECK(reordered.hash() == s.hash());

        const std::string ini = s.to_ini({{"hash", s.hash()}, {"command", "optimize"}});
        const Scenario back = parse_scenario(ini);
        CHECK(back.entries == s.entries);
        CHECK(back.hash() == s.hash());
    }

    TEST_CASE("loads from a file")
    {
        const auto path = std::filesystem::temp_directory_path() / "pops_scenario_test.ini";
        write_text_file(path, base_text);
        CHECK(load_scenario(path).lattice.symbol_len == 160);
        std::filesystem::remove(path);
        CHECK_THROWS_WITH_AS(load_scenario(path), doctest::Contains("scenario"), InvalidArgument);
    }
}

TEST_SUITE("io")
{
    TEST_CASE("full precision number text")
    {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int i = 0; i < 1000; ++i)
        {
            const double v = u(rng) * std::pow(10.0, double(int(rng() % 40) - 20));
            CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
        }
        CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
        CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
        CHECK(format_double(std::nan("")) == "nan");
    }

    TEST_CASE("sweep CSV layout")
    {
        SweepResult r;
        r.name = "t";
        r.axis_name = "ft";
        r.axis_values = {1.25, 2.0};
        r.add_series("a_db", {1.0, std::numeric_limits<double>::infinity()});
        r.add_series("b_db", {0.1, std::nan("")});
        CHECK(sweep_to_csv(r) == "ft,a_db,b_db\n1.25,1,0.10000000000000001\n2,inf,nan\n");
        CHECK(sweep_to_csv(r, "abc").rfind("# scenario abc\nft,", 0) == 0);
        r.series[1].second.pop_back();
        CHECK_THROWS_AS(sweep_to_csv(r), InvalidArgument);
    }

    TEST_CASE("waveform CSV and result JSON")
    {
        const Waveform w({cplx(0.5, -0.25), cplx(1.0, 0.0)}, -3);
        CHECK(waveform_to_csv(w) == "index,re,im\n-3,0.5,-0.25\n-2,1,0\n");
        const auto path = std::filesystem::temp_directory_path() / "pops_waveform_test.csv";
        write_text_file(path, waveform_to_csv(w, "abc"));
        CHECK(read_waveform_csv(path) == w);
        write_text_file(path, "index,re,im\n0,1,0\n2,1,0\n");
        CHECK_THROWS_WITH_AS(read_waveform_csv(path), doctest::Contains(":3"), InvalidArgument);
        std::filesystem::remove(path);

        PopsResult r;
        r.tx_opt = w;
        r.rx_opt = shift(w, 3);
        r.converged = true;
        r.iterations_used = 7;
        r.report.ps = 1.0;
        r.report.sinr = r.report.sir = r.report.snr = std::numeric_limits<double>::infinity();
        r.sinr_trajectory = {{0, HalfStepKind::ping, 2.0}, {0, HalfStepKind::pong, 3.0}};
        const auto j = nlohmann::json::parse(pops_result_to_json(r, "feed"));
        CHECK(j["scenario_hash"] == "feed");
        CHECK(j["converged"] == true);
        CHECK(j["iterations_used"] == 7);
        CHECK(j["report"]["sinr"] == "inf");
        CHECK(j["trajectory"].size() == 2);
        CHECK(j["trajectory"][1]["half"] == "pong");
        CHECK(j["trajectory"][1]["sinr"] == 3.0);
        CHECK(j["rx"]["offset"] == 0);
        CHECK(j["tx"]["fingerprint"] == fingerprint(w));
    }

    TEST_CASE("file writes create directories and are repeatable")
    {
        const auto dir = std::filesystem::temp_directory_path() / "pops_io_test" / "nested";
        std::filesystem::remove_all(dir.parent_path());
        write_text_file(dir / "x.csv", "a\n1\n");
        write_text_file(dir / "x.csv", "a\n1\n");
        std::ifstream in(dir / "x.csv");
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(ss.str() == "a\n1\n");
        std::filesystem::remove_all(dir.parent_path());
    }
}
