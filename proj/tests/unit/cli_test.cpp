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

#include "jeffrey_cli/commands.hpp"

#include "jeffrey/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

namespace jeffrey
{
namespace
{

namespace fs = std::filesystem;
const fs::path kFixtures = JEFFREY_FIXTURE_DIR;

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "jeffrey");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return (kFixtures / name).string(); }

class CliTest : public ::testing::Test
{
  protected:
    fs::path dir;

    void SetUp() override
    {
        dir = fs::temp_directory_path() /
              ("jeffrey_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    io::json theta_hat(const fs::path& out) const
    {
        return io::parse_json(io::read_file(out / cli::kThetaHat), "theta_hat");
    }
};

TEST_F(CliTest, EstimateIdentityFixture)
{
    const auto r = invoke({"estimate", "--channel", fixture("identity2.json"), "--tau", fixture("tau_75_25.json"),
                           "--out", dir.string()});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto est = theta_hat(dir);
    EXPECT_EQ(est["theta"].get<std::vector<double>>(), (std::vector<double>{0.75, 0.25}));
    EXPECT_EQ(est["kl"].get<double>(), 0.0);
    EXPECT_EQ(est["iterations"].get<int>(), 1);
    for (const char* f : {cli::kTraceJsonl, cli::kTraceCsv, cli::kCertification}) EXPECT_TRUE(fs::exists(dir / f));
    EXPECT_FALSE(fs::exists(dir / cli::kPlotData));
}

TEST_F(CliTest, EstimateNoisyFixtureReachesPreimage)
{
    const auto r = invoke({"estimate", "--channel", fixture("noisy2.csv"), "--tau", fixture("tau_half.json"),
                           "--delta-l-tol", "off", "--kl-tol", "off", "--out", dir.string(), "--plot-data"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto theta = theta_hat(dir)["theta"].get<std::vector<double>>();
    EXPECT_NEAR(theta[0], 3.0 / 7.0, 1e-8);
    EXPECT_NEAR(theta[1], 4.0 / 7.0, 1e-8);
    const auto predictive = theta_hat(dir)["predictive"].get<std::vector<double>>();
    EXPECT_NEAR(predictive[0], 0.5, 1e-8);
    EXPECT_TRUE(fs::exists(dir / cli::kPlotData));
}

TEST_F(CliTest, UnreachableObservationIsInputError)
{
    const auto r = invoke({"estimate", "--channel", fixture("unreachable3.json"), "--tau",
                           fixture("tau_unreachable.json"), "--out", dir.string()});
    EXPECT_EQ(r.code, cli::kInputError);
    EXPECT_NE(r.err.find("plausibility"), std::string::npos);
    EXPECT_NE(r.err.find("outputs: 2"), std::string::npos);
}

TEST_F(CliTest, ImplausibleExplicitPriorReportsOutputs)
{
    io::write_file_atomic(dir / "theta0.json", "[1, 0]");
    const auto r = invoke({"estimate", "--channel", fixture("identity2.json"), "--tau", fixture("tau_half.json"),
                           "--theta0", (dir / "theta0.json").string(), "--out", dir.string()});
    EXPECT_EQ(r.code, cli::kInputError);
    EXPECT_NE(r.err.find("outputs: 1"), std::string::npos);
}

TEST_F(CliTest, PrunedInputsAreFlaggedWithZeroMass)
{
    const auto r = invoke({"estimate", "--channel", fixture("prune3x2.json"), "--tau", fixture("tau_y1.json"),
                           "--out", dir.string()});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto est = theta_hat(dir);
    EXPECT_EQ(est["excluded"].get<std::vector<std::size_t>>(), (std::vector<std::size_t>{0}));
    EXPECT_EQ(est["excluded_mask"].get<std::vector<bool>>(), (std::vector<bool>{true, false, false}));
    EXPECT_EQ(est["theta"][0].get<double>(), 0.0);
}

TEST_F(CliTest, ObservationSourceMustBeUnique)
{
    EXPECT_EQ(invoke({"estimate", "--channel", fixture("identity2.json"), "--out", dir.string()}).code,
              cli::kInputError);
    io::write_file_atomic(dir / "s.txt", "0\n1\n");
    EXPECT_EQ(invoke({"estimate", "--channel", fixture("identity2.json"), "--tau", fixture("tau_half.json"),
                      "--samples", (dir / "s.txt").string(), "--out", dir.string()})
                  .code,
              cli::kInputError);
}

TEST_F(CliTest, BadArgumentsAreInputErrors)
{
    EXPECT_EQ(invoke({}).code, cli::kInputError);
    EXPECT_EQ(invoke({"estimate", "--channel", fixture("identity2.json"), "--tau", fixture("tau_half.json"),
                      "--theta-tol", "-3", "--out", dir.string()})
                  .code,
              cli::kInputError);
    EXPECT_EQ(invoke({"estimate", "--channel", (dir / "missing.json").string(), "--tau", fixture("tau_half.json"),
                      "--out", dir.string()})
                  .code,
              cli::kInputError);
    EXPECT_EQ(invoke({"simulate", "--channel", fixture("identity2.json"), "--true-theta", fixture("tau_half.json"),
                      "--n", "0", "--out", dir.string()})
                  .code,
              cli::kInputError);
    EXPECT_EQ(invoke({"simulate", "--channel", fixture("identity2.json"), "--true-theta",
                      fixture("theta_star3.json"), "--n", "5", "--out", dir.string()})
                  .code,
              cli::kInputError);
}

TEST_F(CliTest, EstimateThenVerifyPasses)
{
    ASSERT_EQ(invoke({"estimate", "--channel", fixture("positive3.json"), "--tau", fixture("theta_star3.json"),
                      "--out", dir.string()})
                  .code,
              cli::kSuccess);
    const auto r = invoke({"verify", (dir / cli::kTraceJsonl).string()});
    EXPECT_EQ(r.code, cli::kSuccess) << r.out << r.err;
    EXPECT_NE(r.out.find("pass"), std::string::npos);
}

TEST_F(CliTest, VerifyFlagsTamperedTrace)
{
    ASSERT_EQ(invoke({"estimate", "--channel", fixture("noisy2.json"), "--tau", fixture("tau_half.json"), "--out",
                      dir.string()})
                  .code,
              cli::kSuccess);
    auto records = io::records_from_jsonl(io::read_file(dir / cli::kTraceJsonl));
    ASSERT_GT(records.size(), 3u);
    records[3].kl = records[2].kl.value() + 0.01;
    std::string text;
    for (const auto& rec : records) text += io::to_json(rec).dump() + "\n";
    io::write_file_atomic(dir / "tampered.jsonl", text);

    const auto r = invoke({"verify", (dir / "tampered.jsonl").string()});
    EXPECT_EQ(r.code, cli::kCertificationFailed);
    EXPECT_NE(r.out.find("record 3"), std::string::npos) << r.out;
}

TEST_F(CliTest, VerifySingleRecordAndMalformed)
{
    ASSERT_EQ(invoke({"estimate", "--channel", fixture("identity2.json"), "--tau", fixture("tau_75_25.json"),
                      "--out", dir.string()})
                  .code,
              cli::kSuccess);
    const std::string text = io::read_file(dir / cli::kTraceJsonl);
    io::write_file_atomic(dir / "single.jsonl", text.substr(0, text.find('\n') + 1));
    EXPECT_EQ(invoke({"verify", (dir / "single.jsonl").string()}).code, cli::kSuccess);

    io::write_file_atomic(dir / "bad.jsonl", "{\"kl\": 1}\n");
    EXPECT_EQ(invoke({"verify", (dir / "bad.jsonl").string()}).code, cli::kInputError);
    io::write_file_atomic(dir / "empty.jsonl", "");
    EXPECT_EQ(invoke({"verify", (dir / "empty.jsonl").string()}).code, cli::kInputError);
}

TEST_F(CliTest, EstimateIsByteDeterministic)
{
    const auto a = dir / "a";
    const auto b = dir / "b";
    for (const auto& out : {a, b}) {
        ASSERT_EQ(invoke({"estimate", "--channel", fixture("positive3.json"), "--tau", fixture("theta_star3.json"),
                          "--out", out.string()})
                      .code,
                  cli::kSuccess);
    }
    for (const char* f : {cli::kTraceJsonl, cli::kTraceCsv, cli::kThetaHat, cli::kCertification}) {
        EXPECT_EQ(io::read_file(a / f), io::read_file(b / f)) << f;
    }
}

TEST_F(CliTest, SimulatePointMassIsConstant)
{
    io::write_file_atomic(dir / "point.json", "[0, 1]");
    ASSERT_EQ(invoke({"simulate", "--channel", fixture("identity2.json"), "--true-theta",
                      (dir / "point.json").string(), "--n", "10", "--out", dir.string()})
                  .code,
              cli::kSuccess);
    EXPECT_EQ(io::indices_from_text(io::read_file(dir / cli::kObservations)), std::vector<std::size_t>(10, 1));
}

TEST_F(CliTest, SimulateMatchesGoldenBytes)
{
    ASSERT_EQ(invoke({"simulate", "--channel", fixture("positive3.json"), "--true-theta",
                      fixture("theta_star3.json"), "--n", "20", "--seed", "7", "--out", dir.string()})
                  .code,
              cli::kSuccess);
    EXPECT_EQ(io::read_file(dir / cli::kSyntheticRun), io::read_file(kFixtures / "golden_simulate_positive3_seed7.json"));
    EXPECT_EQ(io::read_file(dir / cli::kObservations),
              io::read_file(kFixtures / "golden_observations_positive3_seed7.txt"));
}

TEST_F(CliTest, SimulateThenEstimateFitsAtLeastAsWellAsTruth)
{
    ASSERT_EQ(invoke({"simulate", "--channel", fixture("positive3.json"), "--true-theta",
                      fixture("theta_star3.json"), "--n", "100000", "--seed", "2026", "--out", dir.string()})
                  .code,
              cli::kSuccess);
    const auto est = dir / "est";
    ASSERT_EQ(invoke({"estimate", "--channel", fixture("positive3.json"), "--samples",
                      (dir / cli::kObservations).string(), "--out", est.string()})
                  .code,
              cli::kSuccess);

    const Channel c = io::load_channel(kFixtures / "positive3.json");
    const Dist truth = io::load_dist(kFixtures / "theta_star3.json");
    const Dist tau = empirical_from_samples(io::indices_from_text(io::read_file(dir / cli::kObservations)), 3);
    const Dist estimate = io::dist_from_json(theta_hat(est)["theta"]);
    EXPECT_LE(kl_divergence(tau, push_forward(c, estimate)).value(),
              kl_divergence(tau, push_forward(c, truth)).value() + 1e-9);
}

}  // namespace
}  // namespace jeffrey
