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

#include "jeffrey/channel.hpp"
#include "jeffrey/datagen.hpp"
#include "jeffrey/io.hpp"

#include <CLI11.hpp>

#include <ostream>

namespace jeffrey::cli
{

namespace fs = std::filesystem;
using io::json;

namespace
{

std::string join(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i : v) s += (s.empty() ? "" : ", ") + std::to_string(i);
    return s;
}

void prepare_output_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
}

Dist load_observations(const RunConfig& config, const Channel& c)
{
    if (config.tau_path.has_value() == config.samples_path.has_value()) {
        throw ValidationError("estimate needs exactly one of --tau or --samples");
    }
    if (config.tau_path) {
        Dist tau = io::load_dist(*config.tau_path);
        if (tau.size() != c.outputs()) {
            throw DimensionError("observation distribution has " + std::to_string(tau.size()) +
                                 " entries, channel has " + std::to_string(c.outputs()) + " outputs");
        }
        return tau;
    }
    const auto samples = io::indices_from_text(io::read_file(*config.samples_path));
    return empirical_from_samples(samples, c.outputs());
}

Dist initial_prior(const RunConfig& config, const Channel& c, const Dist& tau)
{
    if (config.theta0 != "uniform") {
        Dist theta0 = io::load_dist(config.theta0);
        if (theta0.size() != c.inputs()) {
            throw DimensionError("initial prior has " + std::to_string(theta0.size()) + " entries, channel has " +
                                 std::to_string(c.inputs()) + " inputs");
        }
        return theta0;
    }
    // Uniform over every input first, so an output no input can reach is
    // reported as a plausibility failure rather than hidden by pruning.
    Dist full = Dist::uniform(c.inputs());
    if (auto bad = implausible_outputs(c, full, tau); !bad.empty()) {
        throw PlausibilityError("observed outputs {" + join(bad) + "} cannot be produced by any input", bad);
    }
    const PrunedChannel pruned = prune_inputs(c, tau);
    return pruned.embed(Dist::uniform(pruned.kept.size()));
}

template <typename Body>
int guarded(std::ostream& err, Body&& body)
{
    try {
        return body();
    } catch (const PlausibilityError& e) {
        err << "plausibility error: " << e.what() << " (outputs: " << join(e.outputs()) << ")\n";
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const io::json::exception& e) {
        err << "error: malformed JSON: " << e.what() << '\n';
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
    }
    return kInputError;
}

}  // namespace

int cmd_estimate(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Channel c = io::load_channel(config.channel_path);
        const Dist tau = load_observations(config, c);
        const Dist theta0 = initial_prior(config, c, tau);

        const Trace trace = run(c, theta0, tau, config.stop);
        const CertificationReport report = certify_monotone(trace);
        const StepRecord& last = trace.final();

        std::vector<bool> excluded_mask(c.inputs(), false);
        for (std::size_t x : trace.excluded) excluded_mask[x] = true;
        json estimate{
            {"theta", io::to_json(last.theta)},
            {"excluded", trace.excluded},
            {"excluded_mask", excluded_mask},
            {"predictive", io::to_json(last.predictive)},
            {"kl", io::to_json(last.kl)},
            {"log_lik", io::to_json(last.log_lik)},
            {"iterations", last.iteration},
            {"converged", trace.converged},
            {"stop_reason", std::string(to_string(trace.stop_reason))},
        };

        prepare_output_dir(config.output_dir);
        io::write_file_atomic(config.output_dir / kTraceJsonl, io::trace_to_jsonl(trace));
        io::write_file_atomic(config.output_dir / kTraceCsv, io::trace_to_csv(trace));
        io::write_file_atomic(config.output_dir / kThetaHat, estimate.dump(2) + "\n");
        io::write_file_atomic(config.output_dir / kCertification, io::to_json(report).dump(2) + "\n");
        if (config.emit_plot_data) {
            io::write_file_atomic(config.output_dir / kPlotData, io::plot_data_csv(trace));
        }

        out << "iterations: " << last.iteration << " (" << to_string(trace.stop_reason)
            << (trace.converged ? "" : ", not converged") << ")\n";
        out << "kl: " << io::format_double(last.kl.value()) << "\n";
        out << "theta:";
        for (double w : last.theta) out << ' ' << io::format_double(w);
        out << '\n';
        if (!trace.excluded.empty()) out << "excluded inputs: " << join(trace.excluded) << '\n';
        out << "certification: " << (report.passed ? "pass" : "FAIL") << " (" << report.message << ")\n";
        return report.passed ? kSuccess : kCertificationFailed;
    });
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (!config.true_theta_path) throw ValidationError("simulate needs --true-theta");
        if (config.n == 0) throw ValidationError("simulate needs a positive sample count (--n)");
        const Channel c = io::load_channel(config.channel_path);
        const Dist truth = io::load_dist(*config.true_theta_path);
        const std::uint64_t seed = config.seed.value_or(0);

        const SyntheticRun synthetic = sample_run(c, truth, config.n, seed);

        prepare_output_dir(config.output_dir);
        io::write_file_atomic(config.output_dir / kSyntheticRun, io::to_json(synthetic).dump() + "\n");
        io::write_file_atomic(config.output_dir / kObservations, io::indices_to_text(synthetic.ys));
        out << "wrote " << synthetic.n << " observations (seed " << seed << ", " << synthetic.generator << ")\n";
        return kSuccess;
    });
}

int cmd_verify(const fs::path& trace_path, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto records = io::records_from_jsonl(io::read_file(trace_path));
        if (records.empty()) throw io::FormatError("trace " + trace_path.string() + " has no records");
        const CertificationReport report = certify_monotone(records);
        if (report.passed) {
            out << "pass: " << report.message << '\n';
            return kSuccess;
        }
        out << "FAIL at record " << *report.first_violation << ": " << report.message << '\n';
        return kCertificationFailed;
    });
}

namespace
{

std::optional<double> parse_tolerance(const std::string& text, const char* flag)
{
    if (text == "off" || text == "none") return std::nullopt;
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !(v >= 0.0)) throw std::invalid_argument(text);
        return v;
    } catch (const std::logic_error&) {
        throw ValidationError(std::string(flag) + ": expected a non-negative number or \"off\", got \"" + text + "\"");
    }
}

}  // namespace

int main(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Jeffrey's update rule over discrete channels: estimate, simulate, verify"};
    app.require_subcommand(1);

    RunConfig config;
    std::string tau_path;
    std::string samples_path;
    std::string theta_tol = "1e-10";
    std::string delta_l_tol = "1e-12";
    std::string kl_tol = "1e-15";
    std::uint64_t seed = 0;
    std::string true_theta;
    std::string trace_path;

    auto* estimate = app.add_subcommand("estimate", "Estimate the input distribution from observations");
    estimate->add_option("--channel", config.channel_path, "Channel file (.json or .csv)")->required();
    auto* tau_opt = estimate->add_option("--tau", tau_path, "Observed output distribution (JSON array)");
    auto* samples_opt = estimate->add_option("--samples", samples_path, "Observed output indices, one per line");
    tau_opt->excludes(samples_opt);
    estimate->add_option("--theta0", config.theta0, "Initial prior: \"uniform\" or a JSON file")
        ->capture_default_str();
    estimate->add_option("--max-iters", config.stop.max_iterations, "Iteration cap")->capture_default_str();
    estimate->add_option("--theta-tol", theta_tol, "Stop when |theta_{t+1} - theta_t|_1 <= tol (\"off\" disables)")
        ->capture_default_str();
    estimate->add_option("--delta-l-tol", delta_l_tol, "Stop when the log-likelihood gain <= tol (\"off\" disables)")
        ->capture_default_str();
    estimate->add_option("--kl-tol", kl_tol, "Stop when D(tau || prediction) <= tol (\"off\" disables)")
        ->capture_default_str();
    estimate->add_option("--out", config.output_dir, "Output directory")->capture_default_str();
    estimate->add_option("--seed", seed, "Accepted for symmetry with simulate; estimation is deterministic");
    estimate->add_flag("--plot-data", config.emit_plot_data, "Also write plot_data.csv (iteration, kl, log_lik)");

    auto* simulate = app.add_subcommand("simulate", "Sample synthetic observations through a channel");
    simulate->add_option("--channel", config.channel_path, "Channel file (.json or .csv)")->required();
    simulate->add_option("--true-theta", true_theta, "True input distribution (JSON array)")->required();
    simulate->add_option("--n", config.n, "Number of observations")->required();
    simulate->add_option("--seed", seed, "Generator seed")->capture_default_str();
    simulate->add_option("--out", config.output_dir, "Output directory")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Check that a trace never increases the KL divergence");
    verify->add_option("trace", trace_path, "Trace file (JSON lines)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    if (*verify) return cmd_verify(trace_path, out, err);

    if (!tau_path.empty()) config.tau_path = tau_path;
    if (!samples_path.empty()) config.samples_path = samples_path;
    if (!true_theta.empty()) config.true_theta_path = true_theta;
    config.seed = seed;
    try {
        config.stop.theta_l1_tol = parse_tolerance(theta_tol, "--theta-tol");
        config.stop.delta_l_tol = parse_tolerance(delta_l_tol, "--delta-l-tol");
        config.stop.kl_tol = parse_tolerance(kl_tol, "--kl-tol");
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    if (*simulate) return cmd_simulate(config, out, err);
    return cmd_estimate(config, out, err);
}

}  // namespace jeffrey::cli
