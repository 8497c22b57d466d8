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

#include "jeffrey/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace jeffrey::io
{

namespace
{

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double& out)
{
    s = trim(s);
    if (s.empty()) return false;
    // from_chars rejects a leading '+'.
    if (s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<double> numbers_from_json(const json& j, std::string_view what)
{
    if (!j.is_array()) throw FormatError(std::string(what) + ": expected a JSON array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw FormatError(std::string(what) + ": expected a JSON array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::optional<double> optional_from_json(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return extended_real_from_json(*it).value();
}

std::size_t index_from_json(const json& j, std::string_view what)
{
    if (!j.is_number_unsigned()) throw FormatError(std::string(what) + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

const json& member(const json& j, const char* key, std::string_view what)
{
    if (!j.is_object()) throw FormatError(std::string(what) + ": expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(std::string(what) + ": missing field \"" + key + "\"");
    return *it;
}

}  // namespace

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(ExtendedReal v)
{
    if (v.is_pos_inf()) return "inf";
    if (v.is_neg_inf()) return "-inf";
    return v.value();
}

ExtendedReal extended_real_from_json(const json& j)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "inf") return ExtendedReal::pos_inf();
        if (s == "-inf") return ExtendedReal::neg_inf();
    }
    throw FormatError("expected a number, \"inf\" or \"-inf\"");
}

json to_json(const Dist& d) { return json(std::vector<double>(d.begin(), d.end())); }

Dist dist_from_json(const json& j) { return Dist(numbers_from_json(j, "distribution")); }

json to_json(const Channel& c)
{
    return json{{"n", c.inputs()}, {"m", c.outputs()}, {"rows", c.rows()}};
}

Channel channel_from_json(const json& j)
{
    const std::size_t n = index_from_json(member(j, "n", "channel"), "channel.n");
    const std::size_t m = index_from_json(member(j, "m", "channel"), "channel.m");
    const json& rows_json = member(j, "rows", "channel");
    if (!rows_json.is_array()) throw FormatError("channel.rows: expected an array of rows");
    std::vector<std::vector<double>> rows;
    for (const auto& r : rows_json) rows.push_back(numbers_from_json(r, "channel row"));
    if (rows.size() != n) {
        throw FormatError("channel: n = " + std::to_string(n) + " but " + std::to_string(rows.size()) + " rows given");
    }
    for (std::size_t x = 0; x < rows.size(); ++x) {
        if (rows[x].size() != m) {
            throw FormatError("channel: m = " + std::to_string(m) + " but row " + std::to_string(x) + " has " +
                              std::to_string(rows[x].size()) + " entries");
        }
    }
    return Channel(std::move(rows));
}

Channel channel_from_csv(std::string_view text)
{
    std::vector<std::vector<double>> rows;
    bool first = true;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = trim(text.substr(0, eol));
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line.empty()) continue;

        std::vector<double> row;
        bool numeric = true;
        while (true) {
            const auto comma = line.find(',');
            double v = 0.0;
            if (!parse_double(line.substr(0, comma), v)) {
                numeric = false;
                break;
            }
            row.push_back(v);
            if (comma == std::string_view::npos) break;
            line = line.substr(comma + 1);
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue;
            }
            throw FormatError("channel csv line " + std::to_string(line_no) + ": expected comma-separated numbers");
        }
        first = false;
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw FormatError("channel csv: no rows");
    return Channel(std::move(rows));
}

json to_json(const StepRecord& r)
{
    return json{
        {"iteration", r.iteration},
        {"theta", to_json(r.theta)},
        {"predictive", to_json(r.predictive)},
        {"kl", to_json(r.kl)},
        {"log_lik", to_json(r.log_lik)},
        {"delta_q", r.delta_q ? to_json(ExtendedReal(*r.delta_q)) : json(nullptr)},
        {"delta_h", r.delta_h ? to_json(ExtendedReal(*r.delta_h)) : json(nullptr)},
    };
}

StepRecord step_record_from_json(const json& j)
{
    StepRecord r;
    r.iteration = index_from_json(member(j, "iteration", "trace record"), "iteration");
    r.theta = dist_from_json(member(j, "theta", "trace record"));
    r.predictive = dist_from_json(member(j, "predictive", "trace record"));
    r.kl = extended_real_from_json(member(j, "kl", "trace record"));
    r.log_lik = extended_real_from_json(member(j, "log_lik", "trace record"));
    r.delta_q = optional_from_json(j, "delta_q");
    r.delta_h = optional_from_json(j, "delta_h");
    return r;
}

std::string trace_to_jsonl(const Trace& trace)
{
    std::string out;
    for (const auto& r : trace.records) {
        out += to_json(r).dump();
        out += '\n';
    }
    return out;
}

std::vector<StepRecord> records_from_jsonl(std::string_view text)
{
    std::vector<StepRecord> records;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = trim(text.substr(0, eol));
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line.empty()) continue;
        try {
            records.push_back(step_record_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw FormatError("trace line " + std::to_string(line_no) + ": " + e.what());
        } catch (const ValidationError& e) {
            throw FormatError("trace line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

namespace
{

std::string cell(ExtendedReal v)
{
    if (v.is_pos_inf()) return "inf";
    if (v.is_neg_inf()) return "-inf";
    return format_double(v.value());
}

std::string cell(const std::optional<double>& v) { return v ? cell(ExtendedReal(*v)) : std::string(); }

}  // namespace

std::string trace_to_csv(const Trace& trace)
{
    std::string out = "iteration,kl,log_lik,delta_q,delta_h";
    const std::size_t n = trace.records.empty() ? 0 : trace.records.front().theta.size();
    for (std::size_t x = 0; x < n; ++x) out += ",theta_" + std::to_string(x);
    out += '\n';
    for (const auto& r : trace.records) {
        out += std::to_string(r.iteration) + ',' + cell(r.kl) + ',' + cell(r.log_lik) + ',' + cell(r.delta_q) + ',' +
               cell(r.delta_h);
        for (double w : r.theta) out += ',' + format_double(w);
        out += '\n';
    }
    return out;
}

std::string plot_data_csv(const Trace& trace)
{
    std::string out = "iteration,kl,log_lik\n";
    for (const auto& r : trace.records) {
        out += std::to_string(r.iteration) + ',' + cell(r.kl) + ',' + cell(r.log_lik) + '\n';
    }
    return out;
}

json to_json(const SyntheticRun& run)
{
    return json{
        {"generator", run.generator}, {"seed", run.seed}, {"n", run.n},
        {"true_theta", to_json(run.true_theta)}, {"xs", run.xs}, {"ys", run.ys},
    };
}

SyntheticRun synthetic_run_from_json(const json& j)
{
    SyntheticRun run{dist_from_json(member(j, "true_theta", "synthetic run")), 0, 0, {}, {}, {}};
    run.n = index_from_json(member(j, "n", "synthetic run"), "n");
    run.seed = member(j, "seed", "synthetic run").get<std::uint64_t>();
    run.generator = member(j, "generator", "synthetic run").get<std::string>();
    for (const auto& v : member(j, "xs", "synthetic run")) run.xs.push_back(index_from_json(v, "xs"));
    for (const auto& v : member(j, "ys", "synthetic run")) run.ys.push_back(index_from_json(v, "ys"));
    if (run.xs.size() != run.n || run.ys.size() != run.n) {
        throw FormatError("synthetic run: xs/ys length does not match n");
    }
    return run;
}

json to_json(const CertificationReport& report)
{
    return json{
        {"passed", report.passed},
        {"first_violation", report.first_violation ? json(*report.first_violation) : json(nullptr)},
        {"max_kl_increase", to_json(ExtendedReal(report.max_kl_increase))},
        {"max_log_lik_decrease", to_json(ExtendedReal(report.max_log_lik_decrease))},
        {"max_identity_gap", to_json(ExtendedReal(report.max_identity_gap))},
        {"records", report.records},
        {"message", report.message},
    };
}

std::string indices_to_text(std::span<const std::size_t> indices)
{
    std::string out;
    for (std::size_t i : indices) {
        out += std::to_string(i);
        out += '\n';
    }
    return out;
}

std::vector<std::size_t> indices_from_text(std::string_view text)
{
    std::vector<std::size_t> out;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    while (p != end) {
        if (std::isspace(static_cast<unsigned char>(*p))) {
            ++p;
            continue;
        }
        std::size_t v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc() || (next != end && !std::isspace(static_cast<unsigned char>(*next)))) {
            throw FormatError("expected non-negative integer sample indices");
        }
        out.push_back(v);
        p = next;
    }
    return out;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

json parse_json(std::string_view text, std::string_view what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string(what) + ": " + e.what());
    }
}

Dist load_dist(const std::filesystem::path& path)
{
    return dist_from_json(parse_json(read_file(path), path.string()));
}

Channel load_channel(const std::filesystem::path& path)
{
    const std::string text = read_file(path);
    if (path.extension() == ".csv") return channel_from_csv(text);
    return channel_from_json(parse_json(text, path.string()));
}

}  // namespace jeffrey::io
