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
// Globally optimal per-realization reflection selection. The envelope
// breakpoints of all N elements partition the candidate channel phase into
// at most N*K regions; within a region every element's best choice is
// constant, so sweeping one representative phase per region finds the
// global optimum with complexity linear in N and K. Exhaustive search and
// the two direct-channel projection heuristics are provided as baselines.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "risopt/channel.hpp"
#include "risopt/interval.hpp"

namespace risopt {

/// Outcome of one optimization run on one channel realization.
struct OptimizationResult {
    std::vector<int> picks;            ///< chosen index per element
    std::complex<double> h_opt;        ///< resulting overall channel
    double capacity_bits_per_s = 0.0;  ///< capacity of h_opt
    std::size_t regions_examined = 0;  ///< phase regions swept; 0 for non-sweep methods
};

/// Best choice for an element when the overall channel phase is known:
/// argmax over i of amplitude_i * cos(target_phase - element_phase -
/// phase_shift_i). Ties go to the lowest index.
inline int best_choice_for_phase(double target_phase, double element_phase, const ConfigurationSet &set)
{
    int best = 0;
    double best_value = curve_value(target_phase, set[0], element_phase);
    for (int i = 1; i < set.size(); ++i) {
        const double value = curve_value(target_phase, set[i], element_phase);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }
    return best;
}

/// Envelope breakpoints of all N elements, merged and sorted. The curves of
/// element m are those of element 0 shifted by angle(v_m) - angle(v_0), so
/// the breakpoints are computed once and shifted per element instead of
/// being recomputed from scratch. Duplicates within 1e-12 are collapsed;
/// K = 1 yields no breakpoints at all.
inline std::vector<double> all_element_intersections(const ChannelRealization &r, const ConfigurationSet &set)
{
    std::vector<double> boundaries;
    const double base_phase = phase(r.v[0]);
    const ActiveIntersectionList base = active_intersections(set, base_phase);
    if (base.full_circle)
        return boundaries;
    boundaries.reserve(base.entries.size() * static_cast<std::size_t>(r.elements()));
    for (int m = 0; m < r.elements(); ++m) {
        const double shift = phase(r.v[static_cast<std::size_t>(m)]) - base_phase;
        for (const auto &entry : base.entries)
            boundaries.push_back(wrap_two_pi(entry.boundary + shift));
    }
    std::sort(boundaries.begin(), boundaries.end());
    std::vector<double> merged;
    merged.reserve(boundaries.size());
    for (double b : boundaries) {
        if (!merged.empty() && b - merged.back() < kDuplicateTol)
            continue;
        merged.push_back(b);
    }
    while (merged.size() > 1 && circular_distance(merged.front(), merged.back()) < kDuplicateTol)
        merged.pop_back();
    return merged;
}

namespace detail {

inline OptimizationResult result_for_picks(std::vector<int> picks, const ChannelRealization &r,
                                           const ConfigurationSet &set, const LinkParams &link,
                                           std::size_t regions)
{
    OptimizationResult res;
    res.h_opt = overall_channel(r, set, picks);
    res.capacity_bits_per_s = capacity(res.h_opt, link);
    res.picks = std::move(picks);
    res.regions_examined = regions;
    return res;
}

} // namespace detail

/// Globally optimal reflection selection by the region sweep. Every region
/// is represented by its circular midpoint (boundaries themselves are
/// measure-zero ties and never evaluated); the direct channel contributes
/// no boundaries but always enters |h|. Regions are visited in order of
/// ascending left boundary and ties in |h| keep the earliest region.
inline OptimizationResult optimize(const ChannelRealization &r, const ConfigurationSet &set,
                                   const LinkParams &link)
{
    const std::vector<double> boundaries = all_element_intersections(r, set);
    std::vector<double> representatives;
    if (boundaries.empty()) {
        representatives.push_back(0.0);
    } else if (boundaries.size() == 1) {
        representatives.push_back(wrap_two_pi(boundaries[0] + kPi));
    } else {
        representatives.reserve(boundaries.size());
        for (std::size_t j = 0; j + 1 < boundaries.size(); ++j)
            representatives.push_back(AngularInterval{boundaries[j], boundaries[j + 1]}.midpoint());
        representatives.push_back(AngularInterval{boundaries.back(), boundaries.front()}.midpoint());
    }

    const int N = r.elements();
    std::vector<int> picks(static_cast<std::size_t>(N), 0);
    std::vector<int> best_picks;
    double best_norm = -1.0;
    std::complex<double> best_h;
    for (const double x : representatives) {
        std::complex<double> h = r.h0;
        for (int n = 0; n < N; ++n) {
            const int k = best_choice_for_phase(x, phase(r.v[static_cast<std::size_t>(n)]), set);
            picks[static_cast<std::size_t>(n)] = k;
            h += cascaded_gain(r.v[static_cast<std::size_t>(n)], set[k]);
        }
        if (std::norm(h) > best_norm) {
            best_norm = std::norm(h);
            best_picks = picks;
            best_h = h;
        }
    }

    OptimizationResult res;
    res.picks = std::move(best_picks);
    res.h_opt = best_h;
    res.capacity_bits_per_s = capacity(best_h, link);
    res.regions_examined = representatives.size();
    return res;
}

/// True global optimum by enumerating all K^N pick combinations. Test
/// oracle; guarded by a combination cap. The running channel sum is updated
/// incrementally as the odometer advances, so the cost is O(K^N) rather
/// than O(N * K^N). Enumeration is lexicographic with the last element
/// fastest; ties keep the first combination found.
inline OptimizationResult exhaustive_optimize(const ChannelRealization &r, const ConfigurationSet &set,
                                              const LinkParams &link, std::uint64_t combination_cap = 10'000'000)
{
    const int N = r.elements();
    const int K = set.size();
    std::uint64_t total = 1;
    for (int n = 0; n < N; ++n) {
        if (total > combination_cap / static_cast<std::uint64_t>(K))
            throw budget_error("exhaustive_optimize: K^N exceeds the combination cap");
        total *= static_cast<std::uint64_t>(K);
    }

    // per-element gain of each choice
    std::vector<std::vector<std::complex<double>>> gains(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) {
        gains[static_cast<std::size_t>(n)].reserve(static_cast<std::size_t>(K));
        for (int k = 0; k < K; ++k)
            gains[static_cast<std::size_t>(n)].push_back(cascaded_gain(r.v[static_cast<std::size_t>(n)], set[k]));
    }

    std::vector<int> picks(static_cast<std::size_t>(N), 0);
    std::complex<double> h = r.h0;
    for (int n = 0; n < N; ++n)
        h += gains[static_cast<std::size_t>(n)][0];

    std::vector<int> best_picks = picks;
    std::complex<double> best_h = h;
    double best_norm = std::norm(h);
    for (std::uint64_t it = 1; it < total; ++it) {
        int n = N - 1;
        while (picks[static_cast<std::size_t>(n)] == K - 1) {
            h -= gains[static_cast<std::size_t>(n)][static_cast<std::size_t>(K - 1)];
            h += gains[static_cast<std::size_t>(n)][0];
            picks[static_cast<std::size_t>(n)] = 0;
            --n;
        }
        const int k = picks[static_cast<std::size_t>(n)];
        h -= gains[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
        h += gains[static_cast<std::size_t>(n)][static_cast<std::size_t>(k + 1)];
        picks[static_cast<std::size_t>(n)] = k + 1;
        if (std::norm(h) > best_norm) {
            best_norm = std::norm(h);
            best_picks = picks;
            best_h = h;
        }
    }
    // recompute the winner's channel fresh: the incremental sum drifts by
    // rounding over long enumerations
    return detail::result_for_picks(std::move(best_picks), r, set, link, 0);
}

/// Closest-point projection baseline: aligns every element with the direct
/// channel by phase alone, argmax of cos(angle(h0) - angle(g_{n,i})).
/// Undefined without a direct channel.
inline OptimizationResult cpp_optimize(const ChannelRealization &r, const ConfigurationSet &set,
                                       const LinkParams &link)
{
    if (std::norm(r.h0) == 0.0)
        throw std::domain_error("cpp_optimize: direct channel is zero, its phase is undefined");
    const double h0_phase = phase(r.h0);
    std::vector<int> picks(static_cast<std::size_t>(r.elements()), 0);
    for (int n = 0; n < r.elements(); ++n) {
        const double element_phase = phase(r.v[static_cast<std::size_t>(n)]);
        int best = 0;
        double best_value = std::cos(h0_phase - element_phase - set[0].phase_shift);
        for (int i = 1; i < set.size(); ++i) {
            const double value = std::cos(h0_phase - element_phase - set[i].phase_shift);
            if (value > best_value) {
                best_value = value;
                best = i;
            }
        }
        picks[static_cast<std::size_t>(n)] = best;
    }
    return detail::result_for_picks(std::move(picks), r, set, link, 0);
}

/// Amplitude-aware variant: maximizes the projection of each element's gain
/// on the direct channel, i.e. the envelope value at angle(h0).
inline OptimizationResult improved_cpp_optimize(const ChannelRealization &r, const ConfigurationSet &set,
                                                const LinkParams &link)
{
    if (std::norm(r.h0) == 0.0)
        throw std::domain_error("improved_cpp_optimize: direct channel is zero, its phase is undefined");
    const double h0_phase = phase(r.h0);
    std::vector<int> picks(static_cast<std::size_t>(r.elements()), 0);
    for (int n = 0; n < r.elements(); ++n)
        picks[static_cast<std::size_t>(n)] =
            best_choice_for_phase(h0_phase, phase(r.v[static_cast<std::size_t>(n)]), set);
    return detail::result_for_picks(std::move(picks), r, set, link, 0);
}

} // namespace risopt
