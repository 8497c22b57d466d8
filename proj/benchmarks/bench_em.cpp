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

#include "jeffrey/channel.hpp"
#include "jeffrey/datagen.hpp"
#include "jeffrey/em.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace
{

using namespace jeffrey;

Channel dense_channel(std::size_t n, std::size_t m, Engine& rng)
{
    std::vector<std::vector<double>> rows(n, std::vector<double>(m));
    for (auto& r : rows) {
        double total = 0.0;
        for (double& v : r) {
            v = 0.01 - std::log(1.0 - uniform01(rng));
            total += v;
        }
        for (double& v : r) v /= total;
    }
    return Channel(std::move(rows));
}

static void BM_JeffreyStep(benchmark::State& state)
{
    const auto size = static_cast<std::size_t>(state.range(0));
    Engine rng(1);
    const Channel c = dense_channel(size, size, rng);
    const Dist theta = Dist::uniform(size);
    const Dist tau = push_forward(c, Dist::point_mass(size, 0));
    for (auto _ : state) benchmark::DoNotOptimize(jeffrey_step(c, theta, tau));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JeffreyStep)->RangeMultiplier(2)->Range(4, 256)->Complexity(benchmark::oNSquared);

static void BM_RunFiftySteps(benchmark::State& state)
{
    const auto size = static_cast<std::size_t>(state.range(0));
    Engine rng(2);
    const Channel c = dense_channel(size, size, rng);
    const Dist tau = push_forward(c, Dist::point_mass(size, size / 2));
    StopCriteria stop;
    stop.max_iterations = 50;
    stop.theta_l1_tol.reset();
    stop.delta_l_tol.reset();
    stop.kl_tol.reset();
    for (auto _ : state) benchmark::DoNotOptimize(run(c, Dist::uniform(size), tau, stop));
}
BENCHMARK(BM_RunFiftySteps)->Arg(8)->Arg(32)->Arg(128);

static void BM_ArgmaxOracle(benchmark::State& state)
{
    Engine rng(3);
    const Channel c = dense_channel(3, 4, rng);
    const Dist tau = push_forward(c, Dist::point_mass(3, 1));
    for (auto _ : state) benchmark::DoNotOptimize(argmax_q_oracle(c, Dist::uniform(3), tau, state.range(0)));
}
BENCHMARK(BM_ArgmaxOracle)->Arg(100)->Arg(400);

static void BM_SampleRun(benchmark::State& state)
{
    Engine rng(4);
    const Channel c = dense_channel(8, 8, rng);
    const Dist truth = Dist::uniform(8);
    for (auto _ : state) benchmark::DoNotOptimize(sample_run(c, truth, static_cast<std::size_t>(state.range(0)), 5));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleRun)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
