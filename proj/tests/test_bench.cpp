// SPDX-License-Identifier: Apache-2.0
//
// risopt: reflection optimization for RIS-aided links with coupled
// phase shift and amplitude.
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

#include <map>
#include <sstream>

#include "oracles.hpp"
#include "risopt/bench.hpp"

using namespace risopt;

namespace {

/// CSV text with the wall-clock rows blanked out (they legitimately differ
/// between runs).
std::string stable_csv(const std::vector<ResultRow> &rows)
{
    std::vector<ResultRow> filtered;
    for (const auto &row : rows)
        if (row.metric != "elapsed_ns")
            filtered.push_back(row);
    std::ostringstream out;
    write_csv(filtered, out);
    return out.str();
}

double mean_capacity(const std::vector<ResultRow> &rows, const std::string &method, int n)
{
    double sum = 0.0;
    int count = 0;
    for (const auto &row : rows)
        if (row.method == method && row.n == n && row.metric == "capacity_bits_per_s") {
            sum += row.value;
            ++count;
        }
    REQUIRE(count > 0);
    return sum / count;
}

} // namespace

TEST_CASE("gen_realization is deterministic and scales magnitudes exactly")
{
    const std::uint64_t key = rng::split(123, 7);
    const ChannelRealization a = gen_realization(key, 16, mag_db_to_linear(-140.0), 1e-7, 0.0);
    const ChannelRealization b = gen_realization(key, 16, mag_db_to_linear(-140.0), 1e-7, 0.0);
    REQUIRE(a.elements() == 16);
    for (int e = 0; e < 16; ++e) {
        CHECK(a.v[static_cast<std::size_t>(e)] == b.v[static_cast<std::size_t>(e)]);
        CHECK(std::abs(a.v[static_cast<std::size_t>(e)]) <= 1e-7 * (1 + 1e-15));
    }
    CHECK(mag_db_to_linear(-140.0) == 1e-7);
    CHECK(power_db_to_linear(100.0) == 1e10);
    CHECK(a.h0 == std::complex<double>(1e-7, 0.0));
}

TEST_CASE("different replicates and elements draw independent phases")
{
    const ChannelRealization a = gen_realization(rng::split(1, 0), 8, 1.0, 0.0, 0.0);
    const ChannelRealization b = gen_realization(rng::split(1, 1), 8, 1.0, 0.0, 0.0);
    int equal = 0;
    for (int e = 0; e < 8; ++e)
        equal += a.v[static_cast<std::size_t>(e)] == b.v[static_cast<std::size_t>(e)];
    CHECK(equal == 0);
}

TEST_CASE("sampled phases pass a uniformity test")
{
    std::vector<double> phases;
    phases.reserve(100000);
    for (int rep = 0; rep < 1000; ++rep) {
        const ChannelRealization r = gen_realization(rng::split(99, rep), 100, 1.0, 0.0, 0.0);
        for (const auto &z : r.v)
            phases.push_back(phase(z));
    }
    // 1% critical value of the two-sided KS statistic at n = 1e5
    CHECK(oracles::ks_uniform_statistic(std::move(phases)) < 0.0051469863652432576);
}

TEST_CASE("experiment configs are validated")
{
    ExperimentConfig config = make_recipe("cap-vs-n-k2");
    config.methods.clear();
    CHECK_THROWS_AS(run_experiment(config), config_error);

    config = make_recipe("cap-vs-n-k2");
    config.methods = {"optimize", "warp-drive"};
    CHECK_THROWS_AS(run_experiment(config), config_error);

    config = make_recipe("cap-vs-n-k2");
    config.sweep.clear();
    CHECK_THROWS_AS(run_experiment(config), config_error);

    CHECK_THROWS_AS(make_recipe("no-such-recipe"), config_error);

    for (const auto &[name, description] : recipe_catalog()) {
        CHECK(!description.empty());
        CHECK(make_recipe(name).experiment == name);
    }
}

TEST_CASE("optimize matches exhaustive search inside an experiment")
{
    ExperimentConfig config = make_recipe("cap-vs-n-k2");
    config.sweep = {4, 8};
    config.r = 40;
    config.methods = {"optimize", "exhaustive"};
    const auto rows = run_experiment(config);

    std::map<std::pair<int, int>, double> by_key; // (N, replicate) -> optimize value
    for (const auto &row : rows)
        if (row.method == "optimize")
            by_key[{row.n, row.replicate}] = row.value;
    int compared = 0;
    for (const auto &row : rows)
        if (row.method == "exhaustive") {
            CHECK_THAT(row.value, Catch::Matchers::WithinRel(by_key.at({row.n, row.replicate}), 1e-9));
            ++compared;
        }
    CHECK(compared == 80);
}

TEST_CASE("the exhaustive method is skipped once K^N leaves the cap")
{
    ExperimentConfig config = make_recipe("cap-vs-n-k2");
    config.sweep = {4, 64};
    config.r = 5;
    config.methods = {"exhaustive"};
    const auto rows = run_experiment(config);
    for (const auto &row : rows)
        CHECK(row.n == 4); // N = 64 at K = 2 exceeds 1e7 combinations
    CHECK(rows.size() == 5);
}

TEST_CASE("SSC roughly halves the searched options")
{
    ExperimentConfig config = make_recipe("select-count-vs-m");
    config.sweep = {10, 14, 17, 20};
    const auto rows = run_experiment(config);
    std::map<std::pair<std::string, int>, double> counts;
    for (const auto &row : rows)
        if (row.metric == "options_examined")
            counts[{row.method, row.m}] = row.value;
    for (int m : {10, 14, 17, 20}) {
        const double ratio = counts.at({"imb_ssc", m}) / counts.at({"imb", m});
        CHECK(ratio >= 0.5);
        CHECK(ratio <= 0.56);
    }
}

TEST_CASE("runs are byte-identical across repeats and thread counts")
{
    ExperimentConfig config = make_recipe("select-cap-vs-n");
    config.sweep = {8};
    config.m = 6;
    config.r = 16;

    config.threads = 1;
    const std::string serial_a = stable_csv(run_experiment(config));
    const std::string serial_b = stable_csv(run_experiment(config));
    config.threads = 4;
    const std::string threaded = stable_csv(run_experiment(config));
    CHECK(serial_a == serial_b);
    CHECK(serial_a == threaded);

    ExperimentConfig cap = make_recipe("cap-vs-n-k4");
    cap.sweep = {6, 10};
    cap.r = 25;
    cap.threads = 1;
    const std::string cap_serial = stable_csv(run_experiment(cap));
    cap.threads = 3;
    const std::string cap_threaded = stable_csv(run_experiment(cap));
    CHECK(cap_serial == cap_threaded);
}

TEST_CASE("rows come out in sweep, method, replicate order")
{
    ExperimentConfig config = make_recipe("cap-vs-n-k2");
    config.sweep = {4, 6};
    config.r = 3;
    config.methods = {"optimize", "cpp"};
    const auto rows = run_experiment(config);
    REQUIRE(rows.size() == 12);
    std::size_t idx = 0;
    for (int n : {4, 6})
        for (const std::string method : {"optimize", "cpp"})
            for (int rep = 0; rep < 3; ++rep) {
                CHECK(rows[idx].n == n);
                CHECK(rows[idx].method == method);
                CHECK(rows[idx].replicate == rep);
                ++idx;
            }
}

TEST_CASE("average optimized capacity is non-decreasing in N")
{
    ExperimentConfig config = make_recipe("cap-vs-n-k2");
    config.methods = {"optimize"};
    config.r = 1000;
    const auto rows = run_experiment(config);
    double prev = 0.0;
    for (int n : {16, 32, 64, 128}) {
        const double mean = mean_capacity(rows, "optimize", n);
        CHECK(mean >= prev);
        prev = mean;
    }
}

TEST_CASE("the optimize advantage over improved_cpp shrinks as h0 grows")
{
    ExperimentConfig config = make_recipe("cap-vs-h0");
    config.r = 300;
    config.methods = {"optimize", "improved_cpp"};
    const auto rows = run_experiment(config);

    std::map<std::string, std::pair<double, int>> sums;
    for (const auto &row : rows)
        if (row.metric == "capacity_bits_per_s") {
            auto &slot = sums[row.experiment + "/" + row.method];
            slot.first += row.value;
            slot.second += 1;
        }
    double prev_gap = 1.0;
    for (const char *level : {"-140", "-130", "-120", "-110"}) {
        const std::string key = std::string("cap-vs-h0/h0_db=") + level;
        const auto [opt_sum, opt_n] = sums.at(key + "/optimize");
        const auto [icpp_sum, icpp_n] = sums.at(key + "/improved_cpp");
        const double gap = (opt_sum / opt_n - icpp_sum / icpp_n) / (opt_sum / opt_n);
        CHECK(gap <= prev_gap + 1e-12);
        prev_gap = gap;
    }
}

TEST_CASE("CSV output carries the fixed header and full precision")
{
    ExperimentConfig config = make_recipe("cap-vs-n-k2");
    config.sweep = {4};
    config.r = 1;
    config.methods = {"optimize"};
    const auto rows = run_experiment(config);
    std::ostringstream out;
    write_csv(rows, out);
    const std::string text = out.str();
    CHECK(text.rfind("experiment,method,N,K,M,seed,replicate,metric,value\n", 0) == 0);
    CHECK(text.find("cap-vs-n-k2,optimize,4,2,20,1,0,capacity_bits_per_s,") != std::string::npos);

    // 17 significant digits round-trip the double exactly
    char expect[64];
    std::snprintf(expect, sizeof expect, "%.17g", rows[0].value);
    CHECK(text.find(expect) != std::string::npos);
}
