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

#include "jeffrey/em.hpp"
#include "jeffrey/io.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <filesystem>

namespace jeffrey
{
namespace
{

const std::filesystem::path kFixtures = JEFFREY_FIXTURE_DIR;

TEST(SampleRun, PointMassThroughIdentityIsConstant)
{
    const SyntheticRun r = sample_run(Channel::identity(3), Dist::point_mass(3, 1), 50, 9);
    EXPECT_EQ(r.xs, std::vector<std::size_t>(50, 1));
    EXPECT_EQ(r.ys, std::vector<std::size_t>(50, 1));
    EXPECT_EQ(r.generator, "mt19937_64");
}

TEST(SampleRun, DeterministicUnderSeed)
{
    const Channel c = make_channel({{0.7, 0.2, 0.1}, {0.15, 0.7, 0.15}, {0.1, 0.3, 0.6}});
    const Dist truth = make_dist({0.2, 0.3, 0.5});
    const SyntheticRun a = sample_run(c, truth, 1000, 123);
    const SyntheticRun b = sample_run(c, truth, 1000, 123);
    EXPECT_EQ(a.xs, b.xs);
    EXPECT_EQ(a.ys, b.ys);
    EXPECT_NE(sample_run(c, truth, 1000, 124).ys, a.ys);
}

TEST(SampleRun, GoldenIdentityStream)
{
    const auto golden = io::parse_json(io::read_file(kFixtures / "golden_identity_seed42.json"), "golden");
    const SyntheticRun r = sample_run(Channel::identity(2), make_dist({0.5, 0.5}), 100000, 42);
    const Dist tau = observed_tau(r, 2);

    const auto counts = golden["counts"].get<std::vector<std::size_t>>();
    EXPECT_DOUBLE_EQ(tau[0], static_cast<double>(counts[0]) / 100000.0);
    EXPECT_DOUBLE_EQ(tau[1], static_cast<double>(counts[1]) / 100000.0);
    const auto first = golden["first_ys"].get<std::vector<std::size_t>>();
    EXPECT_TRUE(std::equal(first.begin(), first.end(), r.ys.begin()));

    // Law of large numbers at this n.
    EXPECT_LE(std::abs(tau[0] - 0.5), 0.01);
    EXPECT_LE(std::abs(tau[1] - 0.5), 0.01);
}

TEST(SampleRun, Errors)
{
    EXPECT_THROW(sample_run(Channel::identity(2), Dist::uniform(2), 0, 1), ValidationError);
    EXPECT_THROW(sample_run(Channel::identity(2), Dist::uniform(3), 5, 1), DimensionError);
}

TEST(ObservedTau, Examples)
{
    SyntheticRun r{Dist::uniform(2), 4, 0, "mt19937_64", {0, 0, 0, 0}, {0, 1, 0, 0}};
    EXPECT_EQ(observed_tau(r, 2), make_dist({0.75, 0.25}));
    r.ys = {1, 1, 1, 1};
    EXPECT_EQ(observed_tau(r, 3), make_dist({0.0, 1.0, 0.0}));
    r.ys = {0, 3, 1, 1};
    EXPECT_THROW(observed_tau(r, 3), ValidationError);
}

TEST(SampleCategorical, LastBucketAbsorbsResidue)
{
    Engine e(1);
    const std::vector<double> w{0.0, 0.0, 1.0};
    for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_categorical(w, e), 2u);
    const std::vector<double> first{1.0, 0.0};
    for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_categorical(first, e), 0u);
}

TEST(SampleCategorical, FrequenciesMatchWeights)
{
    Engine e(99);
    const std::vector<double> w{0.1, 0.2, 0.3, 0.4};
    std::vector<std::size_t> counts(4, 0);
    const int n = 200000;
    for (int i = 0; i < n; ++i) ++counts[sample_categorical(w, e)];
    for (std::size_t k = 0; k < w.size(); ++k) {
        // Five binomial standard deviations.
        const double sd = std::sqrt(w[k] * (1 - w[k]) / n);
        EXPECT_NEAR(static_cast<double>(counts[k]) / n, w[k], 5 * sd);
    }
}

TEST(Uniform01, RangeIsHalfOpen)
{
    Engine e(5);
    for (int i = 0; i < 10000; ++i) {
        const double u = uniform01(e);
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(Consistency, EstimateFitsSampleAtLeastAsWellAsTruth)
{
    Engine rng(31337);
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const Channel c = testing::random_positive_channel(rng, 3, 3, 0.05);
        const Dist truth = testing::random_dist(rng, 3, 0.05);
        const SyntheticRun r = sample_run(c, truth, 100000, seed);
        const Dist tau = observed_tau(r, 3);
        const Trace t = run(c, Dist::uniform(3), tau);
        const double fit = kl_divergence(tau, t.final().predictive).value();
        const double truth_fit = kl_divergence(tau, push_forward(c, truth)).value();
        EXPECT_LE(fit, truth_fit + 1e-9) << "seed " << seed;
    }
}

}  // namespace
}  // namespace jeffrey
