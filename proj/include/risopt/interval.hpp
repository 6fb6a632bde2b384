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
// Circular-interval algebra on the phase axis [0, 2*pi). Each discrete
// choice i of an element traces the projection curve
//
//   amplitude_i * cos(x - element_phase - phase_shift_i)
//
// over the candidate channel phase x. The per-element optimum is the upper
// envelope of the K curves; this header computes where each curve is the
// envelope (its "active interval") and the envelope breakpoints ("active
// intersections").

#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "risopt/channel.hpp"

namespace risopt {

/// Comparison tolerance for interval boundaries.
inline constexpr double kBoundaryTol = 1e-9;

/// Closed arc of the circle [0, 2*pi). left < right denotes the contiguous
/// interval [left, right]; left > right denotes the wraparound union
/// [left, 2*pi) u [0, right]. left == right (a single point) only arises
/// from exactly touching inputs and is dropped by the callers here.
struct AngularInterval {
    double left;
    double right;

    bool wraps() const { return left > right; }

    double length() const { return wraps() ? kTwoPi - left + right : right - left; }

    bool contains(double x) const
    {
        return wraps() ? (x >= left || x <= right) : (x >= left && x <= right);
    }

    /// Circular midpoint of the arc.
    double midpoint() const
    {
        return wraps() ? wrap_two_pi(0.5 * (left + right + kTwoPi)) : 0.5 * (left + right);
    }
};

/// Value of the projection curve of one choice at candidate phase x.
inline double curve_value(double x, const ReflectionChoice &choice, double element_phase)
{
    return choice.amplitude * std::cos(x - element_phase - choice.phase_shift);
}

/// Solves amp_a*cos(x - g_a) = amp_b*cos(x - g_b) for x in [0, 2*pi), with
/// g = element_phase + phase_shift. The two roots are exactly pi apart and
/// are returned ascending. Uses the two-argument arctangent: the difference
/// of the curves is Re[(A_a - A_b) e^{-jx}] for A = amp*e^{jg}, so roots
/// exist whenever the curves are not coincident. Coincident curves (both
/// arctangent arguments below 1e-12) yield nullopt.
inline std::optional<std::pair<double, double>>
curve_intersections(const ReflectionChoice &choice_a, const ReflectionChoice &choice_b, double element_phase)
{
    const double ga = wrap_two_pi(element_phase + choice_a.phase_shift);
    const double gb = wrap_two_pi(element_phase + choice_b.phase_shift);
    const double num = choice_b.amplitude * std::cos(gb) - choice_a.amplitude * std::cos(ga);
    const double den = choice_a.amplitude * std::sin(ga) - choice_b.amplitude * std::sin(gb);
    if (std::fabs(num) < kDuplicateTol && std::fabs(den) < kDuplicateTol)
        return std::nullopt;
    double root = std::atan2(num, den);
    root = std::fmod(root, kPi);
    if (root < 0.0)
        root += kPi;
    if (root >= kPi)
        root = 0.0;
    return std::make_pair(root, root + kPi);
}

/// Common range of two arcs, the nine-case calculator. Exact boundary
/// equality is classified as overlap, so touching inputs can produce a
/// single-point result. Symmetric in its arguments.
inline std::optional<AngularInterval> common_range(const AngularInterval &a, const AngularInterval &b)
{
    const double l1 = a.left, r1 = a.right;
    const double l2 = b.left, r2 = b.right;
    if (l1 <= r1 && l2 <= r2) {
        // I / II: both contiguous
        const double lo = std::max(l1, l2);
        const double hi = std::min(r1, r2);
        if (lo > hi)
            return std::nullopt;
        return AngularInterval{lo, hi};
    }
    if (l1 > r1 && l2 > r2) {
        // III: both wrap; both contain the 0 crossing, so they always overlap
        return AngularInterval{std::max(l1, l2), std::min(r1, r2)};
    }
    if (l1 > r1) {
        // IV / V / VI: a wraps, b contiguous
        if (r2 >= l1)
            return AngularInterval{std::max(l1, l2), std::max(r1, r2)};
        if (l2 <= r1)
            return AngularInterval{std::min(l1, l2), std::min(r1, r2)};
        return std::nullopt;
    }
    // VII / VIII / IX: a contiguous, b wraps
    if (r1 >= l2)
        return AngularInterval{std::max(l1, l2), std::max(r1, r2)};
    if (l1 <= r2)
        return AngularInterval{std::min(l1, l2), std::min(r1, r2)};
    return std::nullopt;
}

/// Arc of candidate phases on which curve i strictly exceeds curve l. The
/// side is decided by evaluating both curves at the midpoint of one of the
/// two arcs between the intersections; at that point the curve difference
/// is at its extremum, so the comparison is never marginal. nullopt means
/// the curves are coincident (tied everywhere).
inline std::optional<AngularInterval>
dominance_interval(int i, int l, const ConfigurationSet &set, double element_phase)
{
    const auto roots = curve_intersections(set[i], set[l], element_phase);
    if (!roots)
        return std::nullopt;
    const auto [x1, x2] = *roots;
    const double mid = x1 + 0.5 * kPi;
    if (curve_value(mid, set[i], element_phase) > curve_value(mid, set[l], element_phase))
        return AngularInterval{x1, x2};
    return AngularInterval{x2, x1};
}

/// Active interval of curve i: the arc on which it is the upper envelope of
/// all K curves, obtained by folding common_range over its K-1 dominance
/// intervals. At most one such arc exists. nullopt means the curve is never
/// the envelope. Coincident curves survive dedup only off the library path;
/// when they do appear, the lower index keeps the arc and the higher index
/// yields, so exactly one of the pair remains.
inline std::optional<AngularInterval>
active_interval(int i, const ConfigurationSet &set, double element_phase)
{
    const int K = set.size();
    if (K < 2)
        throw std::invalid_argument("active_interval: needs K >= 2 (K = 1 is the full circle)");
    std::optional<AngularInterval> acc;
    bool constrained = false;
    for (int l = 0; l < K; ++l) {
        if (l == i)
            continue;
        const auto dom = dominance_interval(i, l, set, element_phase);
        if (!dom) {
            if (i < l)
                continue;
            return std::nullopt;
        }
        if (!constrained) {
            acc = dom;
            constrained = true;
            continue;
        }
        acc = common_range(*acc, *dom);
        if (!acc)
            return std::nullopt;
    }
    if (!constrained)
        return std::nullopt; // every rival was a yielded duplicate
    if (acc->length() < kDuplicateTol)
        return std::nullopt; // degenerate point, measure zero
    return acc;
}

/// Envelope breakpoint: the right boundary of a choice's active interval.
struct ActiveIntersection {
    int choice;
    double boundary;
};

/// Breakpoints of one element's envelope, sorted by boundary. For K = 1 the
/// single curve is the envelope everywhere; that is flagged as full_circle
/// with one sentinel entry rather than encoding it as a degenerate arc.
struct ActiveIntersectionList {
    bool full_circle = false;
    std::vector<ActiveIntersection> entries;
};

inline ActiveIntersectionList active_intersections(const ConfigurationSet &set, double element_phase)
{
    ActiveIntersectionList out;
    if (set.size() == 1) {
        out.full_circle = true;
        out.entries.push_back({0, 0.0});
        return out;
    }
    for (int i = 0; i < set.size(); ++i) {
        if (const auto arc = active_interval(i, set, element_phase))
            out.entries.push_back({i, arc->right});
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const ActiveIntersection &a, const ActiveIntersection &b) { return a.boundary < b.boundary; });
    return out;
}

} // namespace risopt
