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

#include "jeffrey/datagen.hpp"

#include <string>

namespace jeffrey
{

double uniform01(Engine& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

std::size_t sample_categorical(std::span<const double> weights, Engine& engine)
{
    if (weights.empty()) throw ValidationError("cannot sample from an empty categorical");
    const double u = uniform01(engine);
    double cumulative = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        cumulative += weights[i];
        if (u < cumulative) return i;
    }
    return weights.size() - 1;
}

SyntheticRun sample_run(const Channel& c, const Dist& true_theta, std::size_t n, std::uint64_t seed)
{
    if (n == 0) throw ValidationError("sample count must be positive");
    if (true_theta.size() != c.inputs()) {
        throw DimensionError("sample_run: true distribution has " + std::to_string(true_theta.size()) +
                             " entries, channel has " + std::to_string(c.inputs()) + " inputs");
    }
    SyntheticRun run{true_theta, n, seed, std::string(kGeneratorId), {}, {}};
    run.xs.reserve(n);
    run.ys.reserve(n);
    Engine engine(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t x = sample_categorical(true_theta.weights(), engine);
        run.xs.push_back(x);
        run.ys.push_back(sample_categorical(c.row(x), engine));
    }
    return run;
}

Dist observed_tau(const SyntheticRun& run, std::size_t m) { return empirical_from_samples(run.ys, m); }

}  // namespace jeffrey
