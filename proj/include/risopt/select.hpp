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
// Configuration set selection: which K reflection coefficients should the
// hardware offer? Candidates are K-size subsets of an M-point phase grid
// laid symmetrically around the coupling curve's symmetry axis. The IMB
// selector scores a candidate set by the exact integral of its envelope
// S(x) = max_i amplitude_i * cos(x - phase_shift_i) over one period, which
// is proportional to the expected optimal |h| for weak direct channels and
// far cheaper than the Monte Carlo baseline (MCSB). Mirror-image candidate
// sets have equal integrals, which halves the search (SSC).

#pragma once

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "risopt/channel.hpp"
#include "risopt/interval.hpp"
#include "risopt/optimize.hpp"
#include "risopt/rng.hpp"

namespace risopt {

/// Envelope of the set's projection curves at phase x (element phase zero).
inline double envelope_value(double x, const ConfigurationSet &set)
{
    double best = curve_value(x, set[0], 0.0);
    for (int i = 1; i < set.size(); ++i)
        best = std::max(best, curve_value(x, set[i], 0.0));
    return best;
}

/// Exact integral of the envelope over [0, 2*pi): each choice contributes
/// the antiderivative of its cosine over its active interval. sin is
/// 2*pi-periodic, so the same two-point evaluation covers wraparound arcs.
/// A single cosine integrates to zero over a full period, hence K = 1
/// returns exactly 0; the result is never negative (each envelope point
/// at x is at least the negation of the envelope at x + pi).
inline double envelope_integral(const ConfigurationSet &set)
{
    if (set.size() == 1)
        return 0.0;
    double total = 0.0;
    for (int i = 0; i < set.size(); ++i) {
        if (const auto arc = active_interval(i, set, 0.0))
            total += set[i].amplitude
                     * (std::sin(arc->right - set[i].phase_shift) - std::sin(arc->left - set[i].phase_shift));
    }
    return total;
}

/// M candidate phase shifts placed symmetrically about the coupling curve's
/// symmetry axis phi + pi/2: axis - pi + (2j - 1) * pi / M for j = 1..M,
/// stored in that order normalized to [0, 2*pi). Grid points j and M+1-j
/// mirror each other and share the same coupled amplitude.
struct CandidateGrid {
    int size;
    double symmetry_axis;
    std::vector<double> phases;
};

inline CandidateGrid candidate_grid(int M, const CouplingParams &params)
{
    if (M < 2)
        throw std::invalid_argument("candidate_grid: M must be at least 2");
    CandidateGrid grid;
    grid.size = M;
    grid.symmetry_axis = params.phi + 0.5 * kPi;
    grid.phases.reserve(static_cast<std::size_t>(M));
    for (int j = 1; j <= M; ++j)
        grid.phases.push_back(wrap_two_pi(grid.symmetry_axis - kPi + (2.0 * j - 1.0) * kPi / M));
    return grid;
}

/// A K-size candidate: strictly increasing 1-based grid indices.
using OptionIndexSet = std::vector<int>;

/// Mirror image across the symmetry axis: index j maps to M + 1 - j.
/// An involution; mirrored candidates score the same envelope integral.
inline OptionIndexSet mirror_option(const OptionIndexSet &option, int M)
{
    OptionIndexSet mirrored;
    mirrored.reserve(option.size());
    for (auto it = option.rbegin(); it != option.rend(); ++it)
        mirrored.push_back(M + 1 - *it);
    return mirrored;
}

/// Number of K-subsets of an M-set, saturating at the cap sentinel.
inline std::uint64_t option_count(int M, int K)
{
    if (K < 0 || K > M)
        return 0;
    std::uint64_t result = 1;
    for (int j = 1; j <= K; ++j) {
        const std::uint64_t num = static_cast<std::uint64_t>(M - K + j);
        if (result > UINT64_MAX / num)
            return UINT64_MAX;
        result = result * num / static_cast<std::uint64_t>(j);
    }
    return result;
}

namespace detail {

/// Visits all K-subsets of {1..M} in lexicographic order.
template <typename Fn> void for_each_option(int M, int K, Fn &&fn)
{
    OptionIndexSet option(static_cast<std::size_t>(K));
    for (int j = 0; j < K; ++j)
        option[static_cast<std::size_t>(j)] = j + 1;
    for (;;) {
        fn(option);
        int j = K - 1;
        while (j >= 0 && option[static_cast<std::size_t>(j)] == M - K + j + 1)
            --j;
        if (j < 0)
            return;
        ++option[static_cast<std::size_t>(j)];
        for (int t = j + 1; t < K; ++t)
            option[static_cast<std::size_t>(t)] = option[static_cast<std::size_t>(t - 1)] + 1;
    }
}

inline bool is_canonical(const OptionIndexSet &option, int M)
{
    const OptionIndexSet mirrored = mirror_option(option, M);
    return !std::lexicographical_compare(mirrored.begin(), mirrored.end(), option.begin(), option.end());
}

} // namespace detail

/// Canonical candidates under mirror symmetry: exactly one of each
/// {option, mirror} pair, the lexicographically smaller (self-mirrored
/// candidates appear once). Lexicographic order.
inline std::vector<OptionIndexSet> ssc_enumerate(int M, int K)
{
    if (K < 1 || K > M)
        throw std::invalid_argument("ssc_enumerate: K must be in 1..M");
    std::vector<OptionIndexSet> canonical;
    detail::for_each_option(M, K, [&](const OptionIndexSet &option) {
        if (detail::is_canonical(option, M))
            canonical.push_back(option);
    });
    return canonical;
}

/// Result of a configuration set selection run. best_score is the envelope
/// integral for IMB and the mean optimized capacity (bits/s) for MCSB.
struct SelectionReport {
    OptionIndexSet best_option;
    double best_score = 0.0;
    std::uint64_t options_examined = 0;
    std::vector<std::pair<OptionIndexSet, double>> per_option; ///< filled only on request
};

/// Configuration set named by a grid option.
inline ConfigurationSet option_set(const OptionIndexSet &option, const CandidateGrid &grid,
                                   const CouplingParams &params)
{
    std::vector<double> phases;
    phases.reserve(option.size());
    for (int j : option)
        phases.push_back(grid.phases[static_cast<std::size_t>(j - 1)]);
    return build_config_set(phases, params);
}

/// Integral-maximization selection: scores every candidate (or only the
/// mirror-canonical half with use_ssc) by its exact envelope integral and
/// returns the argmax. Candidates are visited in lexicographic order and
/// ties keep the earliest, so the result is deterministic; with SSC the
/// winner can differ from the full sweep only by being the mirror partner.
inline SelectionReport imb_select(int M, int K, const CouplingParams &params, bool use_ssc,
                                  std::uint64_t option_cap = 10'000'000, bool dump_scores = false)
{
    if (K < 1 || K > M)
        throw std::invalid_argument("imb_select: K must be in 1..M");
    if (option_count(M, K) > option_cap)
        throw budget_error("imb_select: C(M, K) exceeds the option cap");
    const CandidateGrid grid = candidate_grid(M, params);
    SelectionReport report;
    double best = -1.0; // integral is >= 0, so any candidate beats this
    detail::for_each_option(M, K, [&](const OptionIndexSet &option) {
        if (use_ssc && !detail::is_canonical(option, M))
            return;
        ++report.options_examined;
        const double score = envelope_integral(option_set(option, grid, params));
        if (dump_scores)
            report.per_option.emplace_back(option, score);
        if (score > best) {
            best = score;
            report.best_option = option;
        }
    });
    report.best_score = best;
    return report;
}

/// Inputs of the Monte Carlo selection baseline.
struct McsbParams {
    LinkParams link;
    int elements;                   ///< N
    std::vector<double> magnitudes; ///< |v_n| per element, linear scale
    std::complex<double> h0{0.0, 0.0};
    int realizations;               ///< R
    std::uint64_t seed = 1;
    double budget = 1e9;            ///< guard on C(M,K) * R * N * K
};

/// Monte Carlo selection: every candidate set is scored by the mean
/// optimized capacity over R channel draws. All candidates share the same
/// draws (common random numbers), so desk-scale R already separates them.
inline SelectionReport mcsb_select(int M, int K, const CouplingParams &params, const McsbParams &mc,
                                   bool dump_scores = false)
{
    if (K < 1 || K > M)
        throw std::invalid_argument("mcsb_select: K must be in 1..M");
    if (mc.realizations < 1)
        throw std::invalid_argument("mcsb_select: at least one realization required");
    if (static_cast<int>(mc.magnitudes.size()) != mc.elements)
        throw std::invalid_argument("mcsb_select: one magnitude per element required");
    const double work = static_cast<double>(option_count(M, K)) * mc.realizations * mc.elements * K;
    if (work > mc.budget)
        throw budget_error("mcsb_select: C(M,K) * R * N * K exceeds the budget");

    std::vector<ChannelRealization> draws;
    draws.reserve(static_cast<std::size_t>(mc.realizations));
    for (int rep = 0; rep < mc.realizations; ++rep) {
        const std::uint64_t rep_key = rng::split(mc.seed, static_cast<std::uint64_t>(rep));
        std::vector<std::complex<double>> v;
        v.reserve(static_cast<std::size_t>(mc.elements));
        for (int e = 0; e < mc.elements; ++e)
            v.push_back(std::polar(mc.magnitudes[static_cast<std::size_t>(e)],
                                   rng::uniform01(rng::split(rep_key, static_cast<std::uint64_t>(e))) * kTwoPi));
        draws.emplace_back(mc.h0, std::move(v));
    }

    const CandidateGrid grid = candidate_grid(M, params);
    SelectionReport report;
    double best = -1.0;
    detail::for_each_option(M, K, [&](const OptionIndexSet &option) {
        ++report.options_examined;
        const ConfigurationSet set = option_set(option, grid, params);
        double sum = 0.0;
        for (const auto &draw : draws)
            sum += optimize(draw, set, mc.link).capacity_bits_per_s;
        const double mean = sum / mc.realizations;
        if (dump_scores)
            report.per_option.emplace_back(option, mean);
        if (mean > best) {
            best = mean;
            report.best_option = option;
        }
    });
    report.best_score = best;
    return report;
}

/// The literature's default: K evenly spaced phase shifts starting at zero,
/// amplitudes from the coupling law.
inline ConfigurationSet evenly_spaced_set(int K, const CouplingParams &params)
{
    if (K < 1)
        throw std::invalid_argument("evenly_spaced_set: K must be positive");
    std::vector<double> phases;
    phases.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
        phases.push_back(kTwoPi * k / K);
    return build_config_set(phases, params);
}

/// Closed-form expected capacity for N elements of common cascaded
/// magnitude c and a negligible direct channel: the optimal |h| approaches
/// c * N / (2*pi) times the envelope integral as N grows (Riemann sum of
/// the per-element envelope values at uniform phases).
inline double expected_capacity_estimate(const ConfigurationSet &set, double common_magnitude, int elements,
                                         const LinkParams &link)
{
    if (!(common_magnitude > 0.0))
        throw std::invalid_argument("expected_capacity_estimate: magnitude must be positive");
    const double h_mag = common_magnitude * elements / kTwoPi * envelope_integral(set);
    return capacity(std::complex<double>(h_mag, 0.0), link);
}

} // namespace risopt
