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
//
// Experiment runner: seeded channel generation, named experiment recipes,
// and CSV emission. Rows are computed from pure per-replicate functions
// and buffered in a fixed (sweep point, method, replicate) order, so a run
// is byte-reproducible for a given seed regardless of thread count; only
// elapsed_ns rows vary between runs.

#pragma once

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "risopt/channel.hpp"
#include "risopt/optimize.hpp"
#include "risopt/rng.hpp"
#include "risopt/select.hpp"

namespace risopt {

/// Thrown for invalid experiment configurations (CLI exit code 2).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Field-magnitude decibels to linear scale.
inline double mag_db_to_linear(double db)
{
    return std::pow(10.0, db / 20.0);
}

/// Power-ratio decibels to linear scale.
inline double power_db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

/// One channel draw: every cascaded coefficient has the given magnitude and
/// an independent uniform phase from the per-element substream of
/// stream_key; the direct channel is fixed as configured. Same key, same
/// realization, bit for bit.
inline ChannelRealization gen_realization(std::uint64_t stream_key, int elements, double v_mag,
                                          double h0_mag, double h0_phase)
{
    if (elements < 1)
        throw std::invalid_argument("gen_realization: at least one element required");
    std::vector<std::complex<double>> v;
    v.reserve(static_cast<std::size_t>(elements));
    for (int e = 0; e < elements; ++e)
        v.push_back(std::polar(v_mag, rng::uniform01(rng::split(stream_key, static_cast<std::uint64_t>(e))) * kTwoPi));
    return ChannelRealization(std::polar(h0_mag, h0_phase), std::move(v));
}

/// Which parameter an experiment sweeps.
enum class SweepAxis { elements, h0_db, choices, grid, beta_min, kappa };

struct ExperimentConfig {
    std::string experiment = "custom";
    SweepAxis axis = SweepAxis::elements;
    std::vector<double> sweep{64};                  ///< values along the axis
    int k = 2;                                      ///< K unless swept
    int m = 20;                                     ///< grid size unless swept
    int n = 64;                                     ///< N unless swept
    int r = 1000;                                   ///< replicates per sweep point
    std::uint64_t seed = 1;
    CouplingParams coupling{0.2, 0.43 * kPi, 1.6};
    LinkParams link{1e6, 1e10};                     ///< 1 MHz, 100 dB
    double v_mag_db = -140.0;
    double h0_mag_db = -140.0;
    double h0_phase = 0.0;
    std::vector<std::string> methods;
    std::uint64_t exhaustive_cap = 10'000'000;
    std::uint64_t option_cap = 10'000'000;
    double mcsb_budget = 1e9;
    int threads = 1;
};

/// One CSV record. metric is capacity_bits_per_s for per-replicate rows and
/// integral / options_examined / elapsed_ns for selection bookkeeping.
struct ResultRow {
    std::string experiment;
    std::string method;
    int n = 0;
    int k = 0;
    int m = 0;
    std::uint64_t seed = 0;
    int replicate = 0;
    std::string metric;
    double value = 0.0;
};

inline constexpr const char *kCsvHeader = "experiment,method,N,K,M,seed,replicate,metric,value";

inline void write_csv(const std::vector<ResultRow> &rows, std::ostream &out)
{
    out << kCsvHeader << '\n';
    char buf[160];
    for (const auto &row : rows) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%" PRIu64 ",%d,%s,%.17g", row.n, row.k, row.m, row.seed,
                      row.replicate, row.metric.c_str(), row.value);
        out << row.experiment << ',' << row.method << ',' << buf << '\n';
    }
}

namespace detail {

inline const std::vector<std::string> &capacity_methods()
{
    static const std::vector<std::string> names = {"optimize", "exhaustive", "cpp", "improved_cpp"};
    return names;
}

inline const std::vector<std::string> &selection_methods()
{
    static const std::vector<std::string> names = {"imb", "imb_ssc", "mcsb", "evenly_spaced"};
    return names;
}

inline bool contains(const std::vector<std::string> &names, const std::string &name)
{
    return std::find(names.begin(), names.end(), name) != names.end();
}

inline void validate(const ExperimentConfig &config)
{
    if (config.methods.empty())
        throw config_error("experiment config: method list is empty");
    for (const auto &method : config.methods)
        if (!contains(capacity_methods(), method) && !contains(selection_methods(), method))
            throw config_error("experiment config: unknown method '" + method + "'");
    if (config.sweep.empty())
        throw config_error("experiment config: sweep is empty");
    if (config.r < 1)
        throw config_error("experiment config: replicate count must be at least 1");
    if (config.threads < 1)
        throw config_error("experiment config: thread count must be at least 1");
    if (!std::isfinite(config.v_mag_db) || !std::isfinite(config.h0_mag_db) || !std::isfinite(config.h0_phase))
        throw config_error("experiment config: channel magnitudes must be finite");
    if (config.n < 1 || config.k < 1 || config.m < 2)
        throw config_error("experiment config: N, K, M out of range");
}

struct SweepPoint {
    std::string label; ///< experiment column entry
    int n;
    int k;
    int m;
    CouplingParams coupling;
    double h0_mag_db;
};

inline std::vector<SweepPoint> sweep_points(const ExperimentConfig &config)
{
    std::vector<SweepPoint> points;
    points.reserve(config.sweep.size());
    char label[96];
    for (double value : config.sweep) {
        SweepPoint pt{config.experiment, config.n, config.k, config.m, config.coupling, config.h0_mag_db};
        switch (config.axis) {
        case SweepAxis::elements:
            pt.n = static_cast<int>(value);
            break;
        case SweepAxis::choices:
            pt.k = static_cast<int>(value);
            break;
        case SweepAxis::grid:
            pt.m = static_cast<int>(value);
            break;
        case SweepAxis::h0_db:
            pt.h0_mag_db = value;
            std::snprintf(label, sizeof label, "%s/h0_db=%g", config.experiment.c_str(), value);
            pt.label = label;
            break;
        case SweepAxis::beta_min:
            pt.coupling = CouplingParams(value, config.coupling.phi, config.coupling.kappa);
            std::snprintf(label, sizeof label, "%s/beta_min=%g", config.experiment.c_str(), value);
            pt.label = label;
            break;
        case SweepAxis::kappa:
            pt.coupling = CouplingParams(config.coupling.beta_min, config.coupling.phi, value);
            std::snprintf(label, sizeof label, "%s/kappa=%g", config.experiment.c_str(), value);
            pt.label = label;
            break;
        }
        if (pt.n < 1 || pt.k < 1 || pt.m < 2)
            throw config_error("experiment config: swept N, K, M out of range");
        points.push_back(std::move(pt));
    }
    return points;
}

/// Runs fn(0..count-1) across the given number of threads. Results must be
/// written to disjoint slots; the partition is deterministic but irrelevant
/// because every fn(i) is a pure function of i.
inline void parallel_for(int count, int threads, const std::function<void(int)> &fn)
{
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }
    const int workers = std::min(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers)
                fn(i);
        });
    }
    for (auto &t : pool)
        t.join();
}

inline bool exhaustive_fits(int elements, int choices, std::uint64_t cap)
{
    std::uint64_t total = 1;
    for (int n = 0; n < elements; ++n) {
        if (total > cap / static_cast<std::uint64_t>(choices))
            return false;
        total *= static_cast<std::uint64_t>(choices);
    }
    return true;
}

inline void emit_capacity_rows(const ExperimentConfig &config, const SweepPoint &pt, const std::string &method,
                               std::vector<ResultRow> &rows)
{
    if (method == "exhaustive" && !exhaustive_fits(pt.n, pt.k, config.exhaustive_cap)) {
        std::cerr << "risopt: skipping exhaustive at N=" << pt.n << ", K=" << pt.k
                  << " (K^N exceeds cap " << config.exhaustive_cap << ")\n";
        return;
    }
    const ConfigurationSet set = evenly_spaced_set(pt.k, pt.coupling);
    const double v_mag = mag_db_to_linear(config.v_mag_db);
    const double h0_mag = mag_db_to_linear(pt.h0_mag_db);
    std::vector<double> values(static_cast<std::size_t>(config.r));
    parallel_for(config.r, config.threads, [&](int rep) {
        const ChannelRealization draw = gen_realization(rng::split(config.seed, static_cast<std::uint64_t>(rep)),
                                                        pt.n, v_mag, h0_mag, config.h0_phase);
        OptimizationResult res;
        if (method == "optimize")
            res = optimize(draw, set, config.link);
        else if (method == "exhaustive")
            res = exhaustive_optimize(draw, set, config.link, config.exhaustive_cap);
        else if (method == "cpp")
            res = cpp_optimize(draw, set, config.link);
        else
            res = improved_cpp_optimize(draw, set, config.link);
        values[static_cast<std::size_t>(rep)] = res.capacity_bits_per_s;
    });
    for (int rep = 0; rep < config.r; ++rep)
        rows.push_back({pt.label, method, pt.n, pt.k, pt.m, config.seed, rep, "capacity_bits_per_s",
                        values[static_cast<std::size_t>(rep)]});
}

inline void emit_selection_rows(const ExperimentConfig &config, const SweepPoint &pt, const std::string &method,
                                std::vector<ResultRow> &rows)
{
    const double v_mag = mag_db_to_linear(config.v_mag_db);
    const double h0_mag = mag_db_to_linear(pt.h0_mag_db);
    const std::complex<double> h0 = std::polar(h0_mag, config.h0_phase);

    const auto start = std::chrono::steady_clock::now();
    SelectionReport report;
    ConfigurationSet chosen = evenly_spaced_set(pt.k, pt.coupling); // placeholder, reassigned below
    if (method == "evenly_spaced") {
        report.options_examined = 1;
        report.best_score = envelope_integral(chosen);
    } else if (method == "mcsb") {
        McsbParams mc{config.link,
                      pt.n,
                      std::vector<double>(static_cast<std::size_t>(pt.n), v_mag),
                      h0,
                      config.r,
                      config.seed,
                      config.mcsb_budget};
        report = mcsb_select(pt.m, pt.k, pt.coupling, mc);
        chosen = option_set(report.best_option, candidate_grid(pt.m, pt.coupling), pt.coupling);
    } else {
        report = imb_select(pt.m, pt.k, pt.coupling, method == "imb_ssc", config.option_cap);
        chosen = option_set(report.best_option, candidate_grid(pt.m, pt.coupling), pt.coupling);
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;

    rows.push_back({pt.label, method, pt.n, pt.k, pt.m, config.seed, 0, "integral", envelope_integral(chosen)});
    rows.push_back({pt.label, method, pt.n, pt.k, pt.m, config.seed, 0, "options_examined",
                    static_cast<double>(report.options_examined)});
    rows.push_back({pt.label, method, pt.n, pt.k, pt.m, config.seed, 0, "elapsed_ns",
                    static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count())});

    std::vector<double> values(static_cast<std::size_t>(config.r));
    parallel_for(config.r, config.threads, [&](int rep) {
        const ChannelRealization draw = gen_realization(rng::split(config.seed, static_cast<std::uint64_t>(rep)),
                                                        pt.n, v_mag, h0_mag, config.h0_phase);
        values[static_cast<std::size_t>(rep)] = optimize(draw, chosen, config.link).capacity_bits_per_s;
    });
    for (int rep = 0; rep < config.r; ++rep)
        rows.push_back({pt.label, method, pt.n, pt.k, pt.m, config.seed, rep, "capacity_bits_per_s",
                        values[static_cast<std::size_t>(rep)]});
}

} // namespace detail

/// Runs one experiment; rows come out in (sweep point, method, replicate)
/// order independent of thread count.
inline std::vector<ResultRow> run_experiment(const ExperimentConfig &config)
{
    detail::validate(config);
    std::vector<ResultRow> rows;
    for (const auto &pt : detail::sweep_points(config)) {
        for (const auto &method : config.methods) {
            if (detail::contains(detail::capacity_methods(), method))
                detail::emit_capacity_rows(config, pt, method, rows);
            else
                detail::emit_selection_rows(config, pt, method, rows);
        }
    }
    return rows;
}

/// Named experiment recipes, one per reported figure.
inline std::vector<std::pair<std::string, std::string>> recipe_catalog()
{
    return {
        {"cap-vs-n-k2", "capacity vs element count, K=2: optimize, exhaustive (small N), cpp, improved_cpp"},
        {"cap-vs-n-k4", "capacity vs element count, K=4: optimize, exhaustive (small N), cpp, improved_cpp"},
        {"cap-vs-h0", "capacity vs direct-channel strength, K=4, N=64: optimize vs projection baselines"},
        {"select-cap-vs-n", "capacity vs element count for selected sets, M=8, K=2: imb, imb_ssc, mcsb, evenly_spaced"},
        {"select-cap-vs-k", "capacity vs choice count for selected sets, M=20, N=64: imb, evenly_spaced"},
        {"select-cap-vs-betamin", "capacity vs amplitude floor, K=4, M=20, N=64: imb, evenly_spaced"},
        {"select-cap-vs-kappa", "capacity vs loss exponent, K=4, M=20, N=64: imb, evenly_spaced"},
        {"select-time-vs-m", "selection wall time vs grid size, K=4: imb, imb_ssc"},
        {"select-count-vs-m", "searched option count vs grid size, K=4: imb, imb_ssc"},
    };
}

inline ExperimentConfig make_recipe(const std::string &name)
{
    ExperimentConfig config;
    config.experiment = name;
    if (name == "cap-vs-n-k2" || name == "cap-vs-n-k4") {
        config.axis = SweepAxis::elements;
        config.sweep = {16, 32, 64, 128};
        config.k = name == "cap-vs-n-k2" ? 2 : 4;
        config.methods = {"optimize", "exhaustive", "cpp", "improved_cpp"};
    } else if (name == "cap-vs-h0") {
        config.axis = SweepAxis::h0_db;
        config.sweep = {-140, -130, -120, -110};
        config.k = 4;
        config.methods = {"optimize", "improved_cpp", "cpp"};
    } else if (name == "select-cap-vs-n") {
        config.axis = SweepAxis::elements;
        config.sweep = {16, 32, 64, 128};
        config.k = 2;
        config.m = 8;   // Monte Carlo selection over the full M=20 grid is not desk scale
        config.r = 200;
        config.methods = {"imb", "imb_ssc", "mcsb", "evenly_spaced"};
    } else if (name == "select-cap-vs-k") {
        config.axis = SweepAxis::choices;
        config.sweep = {2, 3, 4, 6, 8};
        config.methods = {"imb", "evenly_spaced"};
    } else if (name == "select-cap-vs-betamin") {
        config.axis = SweepAxis::beta_min;
        config.sweep = {0.2, 0.4, 0.6, 0.8, 1.0};
        config.k = 4;
        config.methods = {"imb", "evenly_spaced"};
    } else if (name == "select-cap-vs-kappa") {
        config.axis = SweepAxis::kappa;
        config.sweep = {0.0, 0.4, 0.8, 1.2, 1.6, 2.0};
        config.k = 4;
        config.methods = {"imb", "evenly_spaced"};
    } else if (name == "select-time-vs-m" || name == "select-count-vs-m") {
        config.axis = SweepAxis::grid;
        config.sweep = {10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
        config.k = 4;
        config.r = 1;
        config.methods = {"imb", "imb_ssc"};
    } else {
        throw config_error("unknown recipe '" + name + "'");
    }
    return config;
}

} // namespace risopt
