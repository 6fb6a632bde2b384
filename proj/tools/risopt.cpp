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
// Command-line front end. All dB <-> linear conversion happens here; the
// library works in linear scale throughout.
//
// Exit codes: 0 success, 2 configuration/validation error, 3 budget
// exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "risopt/risopt.hpp"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

struct CouplingFlags {
    double beta_min = 0.2;
    double phi = 0.43 * risopt::kPi;
    double kappa = 1.6;

    void attach(CLI::App *cmd)
    {
        cmd->add_option("--beta-min", beta_min, "Amplitude floor of the coupling law")->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--phi", phi, "Phase offset of the coupling law, radians");
        cmd->add_option("--kappa", kappa, "Loss exponent of the coupling law")->check(CLI::NonNegativeNumber);
    }

    risopt::CouplingParams params() const { return {beta_min, phi, kappa}; }
};

struct LinkFlags {
    double bandwidth_hz = 1e6;
    double snr_db = 100.0;

    void attach(CLI::App *cmd)
    {
        cmd->add_option("--bandwidth-hz", bandwidth_hz, "Signal bandwidth B in Hz");
        cmd->add_option("--snr-db", snr_db, "Power ratio P/(B*N0) in dB");
    }

    risopt::LinkParams params() const { return {bandwidth_hz, risopt::power_db_to_linear(snr_db)}; }
};

double json_magnitude(const json &node)
{
    if (node.contains("mag_db"))
        return risopt::mag_db_to_linear(node.at("mag_db").get<double>());
    return node.at("mag").get<double>();
}

risopt::ChannelRealization load_realization(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw risopt::config_error("cannot open realization file '" + path + "'");
    json doc;
    in >> doc;
    const json &h0 = doc.at("h0");
    std::vector<std::complex<double>> v;
    for (const json &entry : doc.at("v"))
        v.push_back(std::polar(json_magnitude(entry), entry.value("phase", 0.0)));
    if (v.empty())
        throw risopt::config_error("realization file lists no cascaded coefficients");
    return {std::polar(json_magnitude(h0), h0.value("phase", 0.0)), std::move(v)};
}

void emit_rows(const std::vector<risopt::ResultRow> &rows, const std::string &out_path)
{
    if (out_path.empty() || out_path == "-") {
        risopt::write_csv(rows, std::cout);
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw risopt::config_error("cannot open output file '" + out_path + "'");
    risopt::write_csv(rows, out);
}

void apply_config_file(risopt::ExperimentConfig &config, const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw risopt::config_error("cannot open config file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception &e) {
        throw risopt::config_error(std::string("config file parse error: ") + e.what());
    }
    if (doc.contains("seed"))
        config.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("r"))
        config.r = doc.at("r").get<int>();
    if (doc.contains("k"))
        config.k = doc.at("k").get<int>();
    if (doc.contains("m"))
        config.m = doc.at("m").get<int>();
    if (doc.contains("threads"))
        config.threads = doc.at("threads").get<int>();
    if (doc.contains("methods"))
        config.methods = doc.at("methods").get<std::vector<std::string>>();
    if (doc.contains("n")) {
        const auto values = doc.at("n").get<std::vector<double>>();
        if (config.axis == risopt::SweepAxis::elements)
            config.sweep = values;
        else if (!values.empty())
            config.n = static_cast<int>(values.front());
    }
    if (doc.contains("sweep"))
        config.sweep = doc.at("sweep").get<std::vector<double>>();
    if (doc.contains("beta_min") || doc.contains("phi") || doc.contains("kappa"))
        config.coupling = risopt::CouplingParams(doc.value("beta_min", config.coupling.beta_min),
                                                 doc.value("phi", config.coupling.phi),
                                                 doc.value("kappa", config.coupling.kappa));
    if (doc.contains("bandwidth_hz") || doc.contains("snr_db"))
        config.link = risopt::LinkParams(
            doc.value("bandwidth_hz", config.link.bandwidth_hz),
            doc.contains("snr_db") ? risopt::power_db_to_linear(doc.at("snr_db").get<double>())
                                   : config.link.snr_scale);
    if (doc.contains("v_db"))
        config.v_mag_db = doc.at("v_db").get<double>();
    if (doc.contains("h0_db"))
        config.h0_mag_db = doc.at("h0_db").get<double>();
    if (doc.contains("h0_phase"))
        config.h0_phase = doc.at("h0_phase").get<double>();
}

void print_set(const risopt::ConfigurationSet &set)
{
    std::printf("configuration set (K = %d):\n", set.size());
    for (int k = 0; k < set.size(); ++k)
        std::printf("  [%d] phase %.10f rad  amplitude %.10f\n", k, set[k].phase_shift, set[k].amplitude);
}

int run_optimize(const std::string &realization_path, std::uint64_t seed, std::uint64_t replicate, int n,
                 double v_db, double h0_db, double h0_phase, int k, const std::vector<double> &phases,
                 const CouplingFlags &coupling, const LinkFlags &link_flags)
{
    const risopt::CouplingParams params = coupling.params();
    const risopt::LinkParams link = link_flags.params();
    const risopt::ConfigurationSet set =
        phases.empty() ? risopt::evenly_spaced_set(k, params)
                       : risopt::build_config_set(std::span<const double>(phases.data(), phases.size()), params);
    const risopt::ChannelRealization realization =
        realization_path.empty()
            ? risopt::gen_realization(risopt::rng::split(seed, replicate), n, risopt::mag_db_to_linear(v_db),
                                      risopt::mag_db_to_linear(h0_db), h0_phase)
            : load_realization(realization_path);

    const risopt::OptimizationResult res = risopt::optimize(realization, set, link);
    print_set(set);
    std::printf("elements: %d\n", realization.elements());
    std::printf("picks:");
    for (int p : res.picks)
        std::printf(" %d", p);
    std::printf("\n|h| = %.17g\nangle(h) = %.17g rad\ncapacity = %.17g bits/s\nregions examined = %zu\n",
                std::abs(res.h_opt), risopt::phase(res.h_opt), res.capacity_bits_per_s, res.regions_examined);
    return kExitOk;
}

int run_select(const std::string &method, int m, int k, const CouplingFlags &coupling,
               const LinkFlags &link_flags, int n, int r, std::uint64_t seed, double v_db, double h0_db,
               double h0_phase, double budget, const std::string &out_path)
{
    const risopt::CouplingParams params = coupling.params();
    risopt::SelectionReport report;
    risopt::ConfigurationSet chosen = risopt::evenly_spaced_set(k, params);
    if (method == "imb" || method == "imb-ssc") {
        report = risopt::imb_select(m, k, params, method == "imb-ssc");
        chosen = risopt::option_set(report.best_option, risopt::candidate_grid(m, params), params);
    } else if (method == "mcsb") {
        risopt::McsbParams mc{link_flags.params(),
                              n,
                              std::vector<double>(static_cast<std::size_t>(n), risopt::mag_db_to_linear(v_db)),
                              std::polar(risopt::mag_db_to_linear(h0_db), h0_phase),
                              r,
                              seed,
                              budget};
        report = risopt::mcsb_select(m, k, params, mc);
        chosen = risopt::option_set(report.best_option, risopt::candidate_grid(m, params), params);
    } else if (method == "even") {
        report.options_examined = 1;
        report.best_score = risopt::envelope_integral(chosen);
    } else {
        throw risopt::config_error("unknown selection method '" + method + "' (imb | imb-ssc | mcsb | even)");
    }

    if (!report.best_option.empty()) {
        std::printf("selected grid indices (1-based):");
        for (int j : report.best_option)
            std::printf(" %d", j);
        std::printf("\n");
    }
    print_set(chosen);
    std::printf("score = %.17g (%s)\n", report.best_score,
                method == "mcsb" ? "mean capacity, bits/s" : "envelope integral");
    std::printf("options examined = %llu\n", static_cast<unsigned long long>(report.options_examined));
    std::printf("envelope integral of selection = %.17g\n", risopt::envelope_integral(chosen));

    if (!out_path.empty()) {
        std::vector<risopt::ResultRow> rows;
        rows.push_back({"select-config", method, n, k, m, seed, 0, "integral", risopt::envelope_integral(chosen)});
        rows.push_back({"select-config", method, n, k, m, seed, 0, "options_examined",
                        static_cast<double>(report.options_examined)});
        rows.push_back({"select-config", method, n, k, m, seed, 0, "score", report.best_score});
        emit_rows(rows, out_path);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"reflection optimization and configuration set selection for RIS links"};
    app.require_subcommand(1);

    // ---- optimize ----
    auto *opt_cmd = app.add_subcommand("optimize", "optimize one channel realization and print the picks");
    std::string opt_realization;
    std::uint64_t opt_seed = 1, opt_replicate = 0;
    int opt_n = 64, opt_k = 4;
    double opt_v_db = -140.0, opt_h0_db = -140.0, opt_h0_phase = 0.0;
    std::vector<double> opt_phases;
    CouplingFlags opt_coupling;
    LinkFlags opt_link;
    opt_cmd->add_option("--realization", opt_realization,
                        "JSON realization file {h0:{mag|mag_db,phase}, v:[...]} (overrides --seed)");
    opt_cmd->add_option("--seed", opt_seed, "Seed for a generated realization");
    opt_cmd->add_option("--replicate", opt_replicate, "Replicate index within the seed's stream");
    opt_cmd->add_option("--n", opt_n, "Element count for a generated realization")->check(CLI::PositiveNumber);
    opt_cmd->add_option("--v-db", opt_v_db, "Cascaded magnitude |v_n| in dB");
    opt_cmd->add_option("--h0-db", opt_h0_db, "Direct channel magnitude in dB");
    opt_cmd->add_option("--h0-phase", opt_h0_phase, "Direct channel phase in radians");
    opt_cmd->add_option("--k", opt_k, "Evenly spaced choice count")->check(CLI::PositiveNumber);
    opt_cmd->add_option("--phases", opt_phases, "Explicit choice phase shifts (radians)")->delimiter(',');
    opt_coupling.attach(opt_cmd);
    opt_link.attach(opt_cmd);

    // ---- select-config ----
    auto *sel_cmd = app.add_subcommand("select-config", "select a configuration set from the candidate grid");
    std::string sel_method = "imb";
    int sel_m = 20, sel_k = 4, sel_n = 64, sel_r = 1000;
    std::uint64_t sel_seed = 1;
    double sel_v_db = -140.0, sel_h0_db = -140.0, sel_h0_phase = 0.0, sel_budget = 1e9;
    std::string sel_out;
    CouplingFlags sel_coupling;
    LinkFlags sel_link;
    sel_cmd->add_option("--method", sel_method, "imb | imb-ssc | mcsb | even")->required();
    sel_cmd->add_option("--m", sel_m, "Candidate grid size")->check(CLI::Range(2, 64));
    sel_cmd->add_option("--k", sel_k, "Choices per set")->check(CLI::PositiveNumber);
    sel_cmd->add_option("--n", sel_n, "Element count (mcsb)")->check(CLI::PositiveNumber);
    sel_cmd->add_option("--r", sel_r, "Realizations per option (mcsb)")->check(CLI::PositiveNumber);
    sel_cmd->add_option("--seed", sel_seed, "Seed (mcsb)");
    sel_cmd->add_option("--v-db", sel_v_db, "Cascaded magnitude in dB (mcsb)");
    sel_cmd->add_option("--h0-db", sel_h0_db, "Direct channel magnitude in dB (mcsb)");
    sel_cmd->add_option("--h0-phase", sel_h0_phase, "Direct channel phase (mcsb)");
    sel_cmd->add_option("--budget", sel_budget, "Work budget C(M,K)*R*N*K (mcsb)");
    sel_cmd->add_option("--out", sel_out, "Write a CSV summary to this path");
    sel_coupling.attach(sel_cmd);
    sel_link.attach(sel_cmd);

    // ---- bench ----
    auto *bench_cmd = app.add_subcommand("bench", "run a named experiment recipe and emit CSV");
    std::string bench_recipe, bench_out, bench_config_path;
    std::vector<double> bench_n;
    int bench_k = 0, bench_m = 0, bench_r = 0, bench_threads = 0;
    std::optional<std::uint64_t> bench_seed;
    std::vector<std::string> bench_methods;
    bench_cmd->add_option("recipe", bench_recipe, "Recipe name (see list-recipes)")->required();
    bench_cmd->add_option("--config", bench_config_path, "JSON config file overriding recipe parameters");
    bench_cmd->add_option("--out", bench_out, "CSV output path ('-' for stdout)");
    bench_cmd->add_option("--seed", [&bench_seed](const std::vector<std::string> &vals) {
        bench_seed = std::stoull(vals.front());
        return true;
    }, "Base seed")->expected(1);
    bench_cmd->add_option("--n", bench_n, "Element counts (element-axis recipes)")->delimiter(',');
    bench_cmd->add_option("--k", bench_k, "Choice count override");
    bench_cmd->add_option("--m", bench_m, "Grid size override");
    bench_cmd->add_option("--r", bench_r, "Replicates per sweep point");
    bench_cmd->add_option("--threads", bench_threads, "Worker threads for replicate evaluation");
    bench_cmd->add_option("--method", bench_methods, "Methods to run (repeatable)");

    // ---- list-recipes ----
    auto *list_cmd = app.add_subcommand("list-recipes", "list the named experiment recipes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (opt_cmd->parsed())
            return run_optimize(opt_realization, opt_seed, opt_replicate, opt_n, opt_v_db, opt_h0_db,
                                opt_h0_phase, opt_k, opt_phases, opt_coupling, opt_link);
        if (sel_cmd->parsed())
            return run_select(sel_method, sel_m, sel_k, sel_coupling, sel_link, sel_n, sel_r, sel_seed,
                              sel_v_db, sel_h0_db, sel_h0_phase, sel_budget, sel_out);
        if (list_cmd->parsed()) {
            for (const auto &[name, description] : risopt::recipe_catalog())
                std::printf("%-24s %s\n", name.c_str(), description.c_str());
            return kExitOk;
        }
        if (bench_cmd->parsed()) {
            risopt::ExperimentConfig config = risopt::make_recipe(bench_recipe);
            if (!bench_config_path.empty())
                apply_config_file(config, bench_config_path);
            if (bench_seed)
                config.seed = *bench_seed;
            if (!bench_n.empty()) {
                if (config.axis == risopt::SweepAxis::elements)
                    config.sweep = bench_n;
                else
                    config.n = static_cast<int>(bench_n.front());
            }
            if (bench_k > 0)
                config.k = bench_k;
            if (bench_m > 0)
                config.m = bench_m;
            if (bench_r > 0)
                config.r = bench_r;
            if (bench_threads > 0)
                config.threads = bench_threads;
            if (!bench_methods.empty())
                config.methods = bench_methods;
            emit_rows(risopt::run_experiment(config), bench_out);
            return kExitOk;
        }
    } catch (const risopt::budget_error &e) {
        std::cerr << "risopt: " << e.what() << "\n";
        return kExitBudget;
    } catch (const risopt::config_error &e) {
        std::cerr << "risopt: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        std::cerr << "risopt: " << e.what() << "\n";
        return kExitConfig;
    } catch (const json::exception &e) {
        std::cerr << "risopt: config error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
