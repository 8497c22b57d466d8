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

#include "jeffrey/em.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace jeffrey::cli
{

enum ExitCode : int
{
    kSuccess = 0,
    kCertificationFailed = 1,
    kInputError = 2,
};

struct RunConfig
{
    std::filesystem::path channel_path;
    // estimate: exactly one of these
    std::optional<std::filesystem::path> tau_path;
    std::optional<std::filesystem::path> samples_path;
    /// "uniform" or a path to a JSON distribution over the inputs.
    std::string theta0 = "uniform";
    StopCriteria stop;
    std::filesystem::path output_dir = ".";
    std::optional<std::uint64_t> seed;
    bool emit_plot_data = false;

    // simulate
    std::optional<std::filesystem::path> true_theta_path;
    std::size_t n = 0;
};

/// Files written by cmd_estimate into output_dir.
inline constexpr const char* kTraceJsonl = "trace.jsonl";
inline constexpr const char* kTraceCsv = "trace.csv";
inline constexpr const char* kThetaHat = "theta_hat.json";
inline constexpr const char* kCertification = "certification.json";
inline constexpr const char* kPlotData = "plot_data.csv";

/// Files written by cmd_simulate into output_dir.
inline constexpr const char* kSyntheticRun = "synthetic_run.json";
inline constexpr const char* kObservations = "observations.txt";

int cmd_estimate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const std::filesystem::path& trace_path, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace jeffrey::cli
