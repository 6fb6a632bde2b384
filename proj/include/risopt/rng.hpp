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
// Counter-based splittable generator built on the SplitMix64 finalizer.
// Every draw is a pure function of (seed, child indices), so replicate r /
// element e substreams are independent of evaluation order and of which
// methods consume them: adding a method or a thread never perturbs the
// channel draws. Bump the version string if the mixing ever changes;
// regression CSVs depend on it.

#pragma once

#include <cstdint>

namespace risopt::rng {

inline constexpr const char *kGeneratorId = "splitmix64-substream-v1";

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 output finalizer.
inline std::uint64_t mix(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives the child stream key at the given index.
inline std::uint64_t split(std::uint64_t key, std::uint64_t index)
{
    return mix(key + (index + 1) * kGamma);
}

/// Uniform double in [0, 1) from the top 53 bits of a stream key's output.
inline double uniform01(std::uint64_t key)
{
    return static_cast<double>(mix(key) >> 11) * 0x1.0p-53;
}

} // namespace risopt::rng
