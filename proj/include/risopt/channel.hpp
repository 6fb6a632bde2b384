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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace risopt {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Tolerance below which two phase shifts count as the same choice.
inline constexpr double kDuplicateTol = 1e-12;

/// Thrown when a combinatorial or Monte Carlo budget guard trips.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Maps any finite angle to [0, 2*pi).
inline double wrap_two_pi(double x)
{
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0)
        r += kTwoPi; // may round up to exactly 2*pi for tiny negatives
    if (r >= kTwoPi)
        r = 0.0;
    return r;
}

/// Phase of z in [0, 2*pi); arg(0) is taken as 0.
inline double phase(const std::complex<double> &z)
{
    return wrap_two_pi(std::arg(z));
}

/// Circular distance between two angles in [0, 2*pi), result in [0, pi].
inline double circular_distance(double a, double b)
{
    double d = std::fabs(wrap_two_pi(a) - wrap_two_pi(b));
    return d > kPi ? kTwoPi - d : d;
}

/// Parameters of the practical coupling law tying the reflection amplitude
/// to the phase shift:
///
///   beta(alpha) = (1 - beta_min) * ((sin(alpha - phi) + 1) / 2)^kappa + beta_min
///
/// beta_min is the amplitude floor of a lossy element, phi shifts the curve
/// horizontally, and kappa steepens it. beta_min = 1 or kappa = 0 both
/// degenerate to the uncoupled case beta == 1.
struct CouplingParams {
    double beta_min;
    double phi;
    double kappa;

    CouplingParams(double beta_min_, double phi_, double kappa_)
        : beta_min(beta_min_), phi(phi_), kappa(kappa_)
    {
        if (!(beta_min >= 0.0 && beta_min <= 1.0))
            throw std::invalid_argument("CouplingParams: beta_min must be in [0, 1]");
        if (!(kappa >= 0.0))
            throw std::invalid_argument("CouplingParams: kappa must be non-negative");
        if (!std::isfinite(phi))
            throw std::invalid_argument("CouplingParams: phi must be finite");
    }
};

/// Amplitude of the coupling law at phase shift alpha. Total on the reals;
/// the result is clamped to the closed-form range [beta_min, 1] to absorb
/// rounding at the curve extremes.
inline double coupled_amplitude(double alpha, const CouplingParams &params)
{
    const double a = wrap_two_pi(alpha);
    const double s = 0.5 * (std::sin(a - params.phi) + 1.0);
    const double b = (1.0 - params.beta_min) * std::pow(s, params.kappa) + params.beta_min;
    return std::min(1.0, std::max(params.beta_min, b));
}

/// One discrete reflection coefficient: amplitude * e^{j * phase_shift}.
struct ReflectionChoice {
    double phase_shift; ///< radians, stored in [0, 2*pi)
    double amplitude;   ///< unitless, in [0, 1]

    /// Raw constructor; the amplitude is not required to lie on any coupling
    /// curve (property tests need off-curve cases).
    ReflectionChoice(double phase_shift_, double amplitude_)
        : phase_shift(wrap_two_pi(phase_shift_)), amplitude(amplitude_)
    {
        if (!(amplitude >= 0.0 && amplitude <= 1.0))
            throw std::invalid_argument("ReflectionChoice: amplitude must be in [0, 1]");
    }

    /// A choice on the coupling curve: amplitude derived from the phase shift.
    static ReflectionChoice on_curve(double alpha, const CouplingParams &params)
    {
        const double a = wrap_two_pi(alpha);
        return ReflectionChoice(a, coupled_amplitude(a, params));
    }

    /// Complex reflection coefficient.
    std::complex<double> value() const
    {
        return std::polar(amplitude, phase_shift);
    }
};

/// The finite set of K reflection coefficients every element selects from.
/// Choices are stored sorted by phase shift; choices equal in both phase
/// (mod 2*pi) and amplitude within 1e-12 are collapsed at construction.
class ConfigurationSet {
public:
    explicit ConfigurationSet(std::vector<ReflectionChoice> choices)
        : choices_(std::move(choices))
    {
        if (choices_.empty())
            throw std::invalid_argument("ConfigurationSet: at least one choice required");
        std::sort(choices_.begin(), choices_.end(), [](const auto &a, const auto &b) {
            if (a.phase_shift != b.phase_shift)
                return a.phase_shift < b.phase_shift;
            return a.amplitude < b.amplitude;
        });
        std::vector<ReflectionChoice> kept;
        kept.reserve(choices_.size());
        for (const auto &c : choices_) {
            if (!kept.empty() && circular_distance(kept.back().phase_shift, c.phase_shift) < kDuplicateTol
                && std::fabs(kept.back().amplitude - c.amplitude) < kDuplicateTol)
                continue;
            kept.push_back(c);
        }
        // the sort is linear in phase; 0 and 2*pi - eps are also neighbours
        while (kept.size() > 1
               && circular_distance(kept.front().phase_shift, kept.back().phase_shift) < kDuplicateTol
               && std::fabs(kept.front().amplitude - kept.back().amplitude) < kDuplicateTol)
            kept.pop_back();
        choices_ = std::move(kept);
    }

    int size() const { return static_cast<int>(choices_.size()); }

    const ReflectionChoice &operator[](int i) const { return choices_[static_cast<std::size_t>(i)]; }

    const std::vector<ReflectionChoice> &choices() const & { return choices_; }

    std::vector<ReflectionChoice> choices() && { return std::move(choices_); }

private:
    std::vector<ReflectionChoice> choices_;
};

/// Builds a configuration set from phase shifts, with amplitudes from the
/// coupling law. Phases equal mod 2*pi within 1e-12 collapse to one choice.
inline ConfigurationSet build_config_set(std::span<const double> phases, const CouplingParams &params)
{
    if (phases.empty())
        throw std::invalid_argument("build_config_set: phase list is empty");
    std::vector<ReflectionChoice> choices;
    choices.reserve(phases.size());
    for (double a : phases)
        choices.push_back(ReflectionChoice::on_curve(a, params));
    return ConfigurationSet(std::move(choices));
}

inline ConfigurationSet build_config_set(std::initializer_list<double> phases, const CouplingParams &params)
{
    return build_config_set(std::span<const double>(phases.begin(), phases.size()), params);
}

/// One draw of the propagation environment: the direct channel h0 and the
/// cascaded coefficient v_n (transmitter -> element n -> receiver) for each
/// of the N elements. Only the products v_n are modelled, not the two hops.
struct ChannelRealization {
    std::complex<double> h0;
    std::vector<std::complex<double>> v;

    ChannelRealization(std::complex<double> h0_, std::vector<std::complex<double>> v_)
        : h0(h0_), v(std::move(v_))
    {
        if (v.empty())
            throw std::invalid_argument("ChannelRealization: at least one element required");
    }

    int elements() const { return static_cast<int>(v.size()); }
};

/// Link-budget constants of the capacity formula. snr_scale is the linear
/// power ratio P / (B * N0); combined with |h|^2 it yields the SNR.
struct LinkParams {
    double bandwidth_hz;
    double snr_scale;

    LinkParams(double bandwidth_hz_, double snr_scale_)
        : bandwidth_hz(bandwidth_hz_), snr_scale(snr_scale_)
    {
        if (!(bandwidth_hz > 0.0) || !(snr_scale > 0.0))
            throw std::invalid_argument("LinkParams: bandwidth and SNR scale must be positive");
    }
};

/// Gain contributed by one element: v scaled by the chosen reflection
/// coefficient. Magnitude |v| * amplitude, phase angle(v) + phase_shift.
inline std::complex<double> cascaded_gain(const std::complex<double> &v, const ReflectionChoice &choice)
{
    return std::polar(std::abs(v) * choice.amplitude, wrap_two_pi(phase(v) + choice.phase_shift));
}

/// Overall channel h0 + sum of per-element cascaded gains for the given
/// per-element choice indices.
inline std::complex<double> overall_channel(const ChannelRealization &r, const ConfigurationSet &set,
                                            std::span<const int> picks)
{
    if (static_cast<int>(picks.size()) != r.elements())
        throw std::invalid_argument("overall_channel: one pick per element required");
    std::complex<double> h = r.h0;
    for (int n = 0; n < r.elements(); ++n) {
        const int k = picks[static_cast<std::size_t>(n)];
        if (k < 0 || k >= set.size())
            throw std::out_of_range("overall_channel: choice index out of range");
        h += cascaded_gain(r.v[static_cast<std::size_t>(n)], set[k]);
    }
    return h;
}

/// Shannon capacity B * log2(1 + snr_scale * |h|^2) in bits/s. log1p keeps
/// precision in the low-SNR regime where the argument is near 1.
inline double capacity(const std::complex<double> &h, const LinkParams &link)
{
    return link.bandwidth_hz * std::log1p(link.snr_scale * std::norm(h)) / std::numbers::ln2;
}

} // namespace risopt
