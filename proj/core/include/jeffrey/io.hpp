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
#include "jeffrey/datagen.hpp"
#include "jeffrey/dist.hpp"
#include "jeffrey/em.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jeffrey::io
{

using nlohmann::json;

/// Malformed file contents. Distinct from ValidationError raised by value
/// invariants, but callers normally treat both as bad input.
class FormatError : public ValidationError
{
  public:
    using ValidationError::ValidationError;
};

/// "%.17g": round-trips every finite double exactly.
std::string format_double(double v);

json to_json(ExtendedReal v);
ExtendedReal extended_real_from_json(const json& j);

// A Dist is a plain JSON array of numbers.
json to_json(const Dist& d);
Dist dist_from_json(const json& j);

// {"n": N, "m": M, "rows": [[...], ...]}
json to_json(const Channel& c);
Channel channel_from_json(const json& j);

/// One row per input, comma separated. A first line that does not parse as
/// numbers is taken as a header and skipped.
Channel channel_from_csv(std::string_view text);

json to_json(const StepRecord& r);
StepRecord step_record_from_json(const json& j);

/// One StepRecord JSON object per line.
std::string trace_to_jsonl(const Trace& trace);
std::vector<StepRecord> records_from_jsonl(std::string_view text);

/// iteration,kl,log_lik,delta_q,delta_h,theta_0,...,theta_{N-1}. Absent
/// deltas are empty cells.
std::string trace_to_csv(const Trace& trace);

/// iteration,kl,log_lik
std::string plot_data_csv(const Trace& trace);

json to_json(const SyntheticRun& run);
SyntheticRun synthetic_run_from_json(const json& j);

json to_json(const CertificationReport& report);

/// Whitespace-separated non-negative integers; one per line on output.
std::string indices_to_text(std::span<const std::size_t> indices);
std::vector<std::size_t> indices_from_text(std::string_view text);

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

json parse_json(std::string_view text, std::string_view what);

Dist load_dist(const std::filesystem::path& path);
/// ".csv" files are read as CSV, anything else as JSON.
Channel load_channel(const std::filesystem::path& path);

}  // namespace jeffrey::io
