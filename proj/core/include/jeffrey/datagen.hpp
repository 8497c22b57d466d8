/*
 * Copyright 2026 The jeffrey Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "jeffrey/channel.hpp"
#include "jeffrey/dist.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace jeffrey
{

/// Engine behind every synthetic run. std::mt19937_64 output is fixed by the
/// standard, so streams are identical across toolchains.
using Engine = std::mt19937_64;
inline constexpr std::string_view kGeneratorId = "mt19937_64";

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(Engine& engine);

/// Inverse-CDF draw from normalized categorical weights. The last
/// bucket absorbs the rounding residue of the cumulative sum.
std::size_t sample_categorical(std::span<const double> weights, Engine& engine);

struct SyntheticRun
{
    Dist true_theta;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string generator{kGeneratorId};
    std::vector<std::size_t> xs;
    std::vector<std::size_t> ys;
};

/// Draws x_i ~ true_theta i.i.d. and y_i ~ C(.|x_i), i = 1..n. For each i the
/// input is drawn before its output from a single engine seeded with `seed`.
SyntheticRun sample_run(const Channel& c, const Dist& true_theta, std::size_t n, std::uint64_t seed);

/// Empirical distribution of the observed outputs over m symbols.
Dist observed_tau(const SyntheticRun& run, std::size_t m);

}  // namespace jeffrey
