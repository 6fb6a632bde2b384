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

#include "oracles.hpp"
#include "risopt/channel.hpp"

using namespace risopt;

namespace {
const CouplingParams kTableCoupling(0.2, 0.43 * kPi, 1.6);
const LinkParams kTableLink(1e6, 1e10); // 1 MHz, 100 dB power ratio
} // namespace

TEST_CASE("coupled_amplitude hits the curve extremes")
{
    CHECK_THAT(coupled_amplitude(kTableCoupling.phi + kPi / 2, kTableCoupling),
               Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(coupled_amplitude(kTableCoupling.phi - kPi / 2, kTableCoupling),
               Catch::Matchers::WithinAbs(0.2, 1e-12));
    // 0.2 + 0.8 * 0.5^1.6, evaluated at 30 significant digits
    CHECK_THAT(coupled_amplitude(kTableCoupling.phi, kTableCoupling),
               Catch::Matchers::WithinAbs(0.46390158215457885, 1e-13));
}

TEST_CASE("coupled_amplitude stays within [beta_min, 1] and is symmetric about the axis")
{
    oracles::TestRng rng(11);
    const double axis = kTableCoupling.phi + kPi / 2;
    for (int it = 0; it < 2000; ++it) {
        const double alpha = rng.uniform(-10.0, 10.0);
        const double b = coupled_amplitude(alpha, kTableCoupling);
        CHECK(b >= kTableCoupling.beta_min);
        CHECK(b <= 1.0);
        const double delta = rng.uniform(0.0, kPi);
        CHECK_THAT(coupled_amplitude(axis + delta, kTableCoupling),
                   Catch::Matchers::WithinAbs(coupled_amplitude(axis - delta, kTableCoupling), 1e-12));
    }
}

TEST_CASE("coupled_amplitude degenerates to 1 when beta_min is 1")
{
    const CouplingParams lossless(1.0, 0.43 * kPi, 1.6);
    for (double alpha = 0.0; alpha < kTwoPi; alpha += 0.1)
        CHECK(coupled_amplitude(alpha, lossless) == 1.0);
}

TEST_CASE("CouplingParams rejects out-of-range constants")
{
    CHECK_THROWS_AS(CouplingParams(-0.1, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CouplingParams(1.1, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CouplingParams(0.5, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("build_config_set pairs phases with coupled amplitudes")
{
    const ConfigurationSet set = build_config_set({0.0, kPi}, kTableCoupling);
    REQUIRE(set.size() == 2);
    CHECK(set[0].phase_shift == 0.0);
    CHECK(set[0].amplitude == coupled_amplitude(0.0, kTableCoupling));
    CHECK(set[1].phase_shift == kPi);
    CHECK(set[1].amplitude == coupled_amplitude(kPi, kTableCoupling));
}

TEST_CASE("build_config_set drops duplicate phases")
{
    CHECK(build_config_set({0.0, 0.0, kPi}, kTableCoupling).size() == 2);
    CHECK(build_config_set({1.0, 1.0 + kTwoPi, 2.0}, kTableCoupling).size() == 2);
    // 0 and 2*pi - eps are duplicates across the wrap point
    CHECK(build_config_set({0.0, kTwoPi - 1e-14, kPi}, kTableCoupling).size() == 2);
}

TEST_CASE("build_config_set keeps the evenly spaced four-choice set")
{
    const ConfigurationSet set = build_config_set({0.0, kTwoPi / 4, 2 * kTwoPi / 4, 3 * kTwoPi / 4}, kTableCoupling);
    REQUIRE(set.size() == 4);
    for (int k = 0; k < 4; ++k)
        CHECK_THAT(set[k].phase_shift, Catch::Matchers::WithinAbs(k * kPi / 2, 1e-15));
}

TEST_CASE("build_config_set rejects an empty phase list")
{
    CHECK_THROWS_AS(build_config_set(std::span<const double>{}, kTableCoupling), std::invalid_argument);
}

TEST_CASE("raw choices keep off-curve amplitudes but not invalid ones")
{
    const ReflectionChoice raw(7.0, 0.37);
    CHECK_THAT(raw.phase_shift, Catch::Matchers::WithinAbs(7.0 - kTwoPi, 1e-15));
    CHECK(raw.amplitude == 0.37);
    CHECK_THROWS_AS(ReflectionChoice(0.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(ReflectionChoice(0.0, -0.1), std::invalid_argument);
}

TEST_CASE("cascaded_gain composes magnitude and phase")
{
    const std::complex<double> g = cascaded_gain({1.0, 0.0}, ReflectionChoice(kPi / 2, 0.5));
    CHECK_THAT(std::abs(g), Catch::Matchers::WithinAbs(0.5, 1e-15));
    CHECK_THAT(phase(g), Catch::Matchers::WithinAbs(kPi / 2, 1e-15));

    CHECK(cascaded_gain({0.0, 0.0}, ReflectionChoice(1.0, 0.9)) == std::complex<double>(0.0, 0.0));

    const std::complex<double> g2 = cascaded_gain(std::polar(1e-7, 1.0), ReflectionChoice(2.0, 0.8));
    CHECK_THAT(std::abs(g2), Catch::Matchers::WithinRel(0.8e-7, 1e-14));
    CHECK_THAT(phase(g2), Catch::Matchers::WithinAbs(3.0, 1e-14));
}

TEST_CASE("overall_channel sums the direct channel and element gains")
{
    std::vector<ReflectionChoice> id{{0.0, 1.0}};
    const ConfigurationSet set(id);

    const ChannelRealization single({0.0, 0.0}, {{1.0, 0.0}});
    const std::vector<int> one_pick{0};
    CHECK(overall_channel(single, set, one_pick) == std::complex<double>(1.0, 0.0));

    const ChannelRealization pair({0.0, 0.0}, {{1.0, 0.0}, {1.0, 0.0}});
    const std::vector<int> two_picks{0, 0};
    CHECK_THAT(std::abs(overall_channel(pair, set, two_picks)), Catch::Matchers::WithinAbs(2.0, 1e-15));
}

TEST_CASE("overall_channel matches an independent complex recomputation")
{
    oracles::TestRng rng(29);
    for (int it = 0; it < 200; ++it) {
        const int n = rng.uniform_int(1, 10);
        const int k = rng.uniform_int(1, 5);
        const ConfigurationSet set = oracles::random_raw_set(rng, k);
        std::vector<std::complex<double>> v;
        std::vector<int> picks;
        for (int e = 0; e < n; ++e) {
            v.push_back(std::polar(rng.uniform(0.0, 2.0), rng.uniform(0.0, kTwoPi)));
            picks.push_back(rng.uniform_int(0, set.size() - 1));
        }
        const std::complex<double> h0 = std::polar(rng.uniform(0.0, 1.0), rng.uniform(0.0, kTwoPi));
        const ChannelRealization r(h0, v);

        oracles::C2 expect{h0.real(), h0.imag()};
        for (int e = 0; e < n; ++e) {
            const auto &choice = set[picks[static_cast<std::size_t>(e)]];
            expect += oracles::C2::from_polar(std::abs(v[static_cast<std::size_t>(e)]) * choice.amplitude,
                                              phase(v[static_cast<std::size_t>(e)]) + choice.phase_shift);
        }
        const std::complex<double> h = overall_channel(r, set, picks);
        CHECK_THAT(h.real(), Catch::Matchers::WithinAbs(expect.re, 1e-12));
        CHECK_THAT(h.imag(), Catch::Matchers::WithinAbs(expect.im, 1e-12));
    }
}

TEST_CASE("overall_channel is invariant under permutation of element/pick pairs")
{
    oracles::TestRng rng(31);
    const ConfigurationSet set = oracles::random_raw_set(rng, 4);
    std::vector<std::complex<double>> v;
    std::vector<int> picks;
    for (int e = 0; e < 6; ++e) {
        v.push_back(std::polar(rng.uniform(0.1, 1.0), rng.uniform(0.0, kTwoPi)));
        picks.push_back(rng.uniform_int(0, 3));
    }
    const std::complex<double> base = overall_channel(ChannelRealization({0.3, -0.2}, v), set, picks);
    for (int it = 0; it < 20; ++it) {
        const int a = rng.uniform_int(0, 5), b = rng.uniform_int(0, 5);
        std::swap(v[static_cast<std::size_t>(a)], v[static_cast<std::size_t>(b)]);
        std::swap(picks[static_cast<std::size_t>(a)], picks[static_cast<std::size_t>(b)]);
        const std::complex<double> h = overall_channel(ChannelRealization({0.3, -0.2}, v), set, picks);
        CHECK_THAT(std::abs(h - base), Catch::Matchers::WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("overall_channel validates picks")
{
    std::vector<ReflectionChoice> id{{0.0, 1.0}};
    const ConfigurationSet set(id);
    const ChannelRealization r({0.0, 0.0}, {{1.0, 0.0}});
    const std::vector<int> bad_index{1};
    CHECK_THROWS_AS(overall_channel(r, set, bad_index), std::out_of_range);
    const std::vector<int> wrong_count{0, 0};
    CHECK_THROWS_AS(overall_channel(r, set, wrong_count), std::invalid_argument);
}

TEST_CASE("capacity evaluates the link formula")
{
    CHECK(capacity({0.0, 0.0}, kTableLink) == 0.0);
    // |h| = 1e-7, B = 1 MHz, 100 dB: closed form at 30 significant digits
    CHECK_THAT(capacity(std::polar(1e-7, 0.3), kTableLink),
               Catch::Matchers::WithinRel(144.26229109455418, 1e-12));
}

TEST_CASE("capacity is monotone in |h| and follows the closed form under doubling")
{
    oracles::TestRng rng(37);
    double prev = 0.0;
    for (int i = 1; i <= 50; ++i) {
        const double c = capacity(std::polar(i * 1e-8, rng.uniform(0.0, kTwoPi)), kTableLink);
        CHECK(c > prev);
        prev = c;
    }
    const double mag = 3e-8;
    const double s = kTableLink.snr_scale * mag * mag;
    const double want_ratio = std::log1p(4.0 * s) / std::log1p(s);
    const double got_ratio =
        capacity(std::polar(2 * mag, 1.0), kTableLink) / capacity(std::polar(mag, 2.0), kTableLink);
    CHECK_THAT(got_ratio, Catch::Matchers::WithinRel(want_ratio, 1e-12));
}

TEST_CASE("LinkParams rejects non-positive values")
{
    CHECK_THROWS_AS(LinkParams(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(LinkParams(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("ChannelRealization requires at least one element")
{
    CHECK_THROWS_AS(ChannelRealization({1.0, 0.0}, {}), std::invalid_argument);
}

TEST_CASE("wrap_two_pi lands in [0, 2*pi)")
{
    oracles::TestRng rng(41);
    for (int it = 0; it < 5000; ++it) {
        const double w = wrap_two_pi(rng.uniform(-1e3, 1e3));
        CHECK(w >= 0.0);
        CHECK(w < kTwoPi);
    }
    CHECK(wrap_two_pi(-1e-300) == 0.0);
    CHECK(wrap_two_pi(kTwoPi) == 0.0);
}
