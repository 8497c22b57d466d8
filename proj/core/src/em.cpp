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

#include "jeffrey/em.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace jeffrey
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_plausible(const Channel& c, const Dist& theta, const Dist& tau, const char* context)
{
    if (theta.size() != c.inputs()) {
        throw DimensionError(std::string(context) + ": prior has " + std::to_string(theta.size()) +
                             " entries, channel has " + std::to_string(c.inputs()) + " inputs");
    }
    auto bad = implausible_outputs(c, theta, tau);
    if (!bad.empty()) {
        std::string list;
        for (std::size_t y : bad) list += (list.empty() ? "" : ", ") + std::to_string(y);
        throw PlausibilityError(std::string(context) + ": observed outputs {" + list +
                                    "} have zero probability under the prior",
                                std::move(bad));
    }
}

// Q(theta | theta_t) with the posterior of theta_t already inverted.
double q_given_posterior(const Channel& c, const Dist& theta, const InverseChannel& post_t, const Dist& tau)
{
    double q = 0.0;
    for (std::size_t y = 0; y < c.outputs(); ++y) {
        if (tau[y] == 0.0) continue;
        auto post = post_t.row(y);
        for (std::size_t x = 0; x < c.inputs(); ++x) {
            const double w = tau[y] * post[x];
            if (w == 0.0) continue;
            const double pxy = theta[x] * c(x, y);
            if (pxy == 0.0) return -kInf;
            q += w * std::log(pxy);
        }
    }
    return q;
}

// Visits every composition of `total` into k.size() parts in lexicographic
// order of k.
template <typename Visit>
void for_each_composition(std::vector<std::size_t>& k, std::size_t pos, std::size_t remaining, Visit&& visit)
{
    if (pos + 1 == k.size()) {
        k[pos] = remaining;
        visit(k);
        return;
    }
    for (std::size_t v = 0; v <= remaining; ++v) {
        k[pos] = v;
        for_each_composition(k, pos + 1, remaining - v, visit);
    }
}

}  // namespace

Dist jeffrey_step(const Channel& c, const Dist& theta_t, const Dist& tau)
{
    require_plausible(c, theta_t, tau, "jeffrey_step");
    return apply_inverse(invert(c, theta_t), tau);
}

ExtendedReal q_function(const Channel& c, const Dist& theta, const Dist& theta_t, const Dist& tau)
{
    require_plausible(c, theta_t, tau, "q_function");
    if (theta.size() != c.inputs()) throw DimensionError("q_function: prior size does not match channel inputs");
    return q_given_posterior(c, theta, invert(c, theta_t), tau);
}

ExtendedReal h_function(const Channel& c, const Dist& theta, const Dist& theta_t, const Dist& tau)
{
    require_plausible(c, theta_t, tau, "h_function");
    require_plausible(c, theta, tau, "h_function");
    const InverseChannel post_t = invert(c, theta_t);
    const InverseChannel post = invert(c, theta);
    double h = 0.0;
    for (std::size_t y = 0; y < c.outputs(); ++y) {
        if (tau[y] == 0.0) continue;
        auto pt = post_t.row(y);
        auto p = post.row(y);
        for (std::size_t x = 0; x < c.inputs(); ++x) {
            const double w = tau[y] * pt[x];
            if (w == 0.0) continue;
            if (p[x] == 0.0) return ExtendedReal::pos_inf();
            h -= w * std::log(p[x]);
        }
    }
    return h;
}

double delta_l(const Channel& c, const Dist& theta_new, const Dist& theta_t, const Dist& tau)
{
    require_plausible(c, theta_new, tau, "delta_l");
    require_plausible(c, theta_t, tau, "delta_l");
    return log_likelihood(tau, push_forward(c, theta_new)).value() -
           log_likelihood(tau, push_forward(c, theta_t)).value();
}

double delta_q(const Channel& c, const Dist& theta_new, const Dist& theta_t, const Dist& tau)
{
    require_plausible(c, theta_t, tau, "delta_q");
    if (theta_new.size() != c.inputs()) throw DimensionError("delta_q: prior size does not match channel inputs");
    const InverseChannel post_t = invert(c, theta_t);
    return q_given_posterior(c, theta_new, post_t, tau) - q_given_posterior(c, theta_t, post_t, tau);
}

double delta_h(const Channel& c, const Dist& theta_new, const Dist& theta_t, const Dist& tau)
{
    require_plausible(c, theta_t, tau, "delta_h");
    require_plausible(c, theta_new, tau, "delta_h");
    const InverseChannel post_t = invert(c, theta_t);
    const InverseChannel post_new = invert(c, theta_new);
    double dh = 0.0;
    for (std::size_t y = 0; y < c.outputs(); ++y) {
        if (tau[y] == 0.0) continue;
        auto a = post_t.row(y);
        auto b = post_new.row(y);
        const ExtendedReal d = kl_divergence(Dist::normalized({a.begin(), a.end()}),
                                             Dist::normalized({b.begin(), b.end()}));
        if (d.is_pos_inf()) return kInf;
        dh += tau[y] * d.value();
    }
    return dh;
}

Dist argmax_q_oracle(const Channel& c, const Dist& theta_t, const Dist& tau, std::size_t grid_resolution)
{
    if (c.inputs() > kOracleMaxInputs) {
        throw ValidationError("argmax_q_oracle: " + std::to_string(c.inputs()) + " inputs exceeds the oracle limit of " +
                              std::to_string(kOracleMaxInputs));
    }
    if (grid_resolution == 0) throw ValidationError("argmax_q_oracle: grid resolution must be positive");
    require_plausible(c, theta_t, tau, "argmax_q_oracle");

    const InverseChannel post_t = invert(c, theta_t);
    const auto g = static_cast<double>(grid_resolution);
    std::vector<std::size_t> k(c.inputs(), 0);
    std::vector<std::size_t> best_k;
    double best = -kInf;
    bool found = false;

    for_each_composition(k, 0, grid_resolution, [&](const std::vector<std::size_t>& point) {
        std::vector<double> w(point.size());
        for (std::size_t i = 0; i < point.size(); ++i) w[i] = static_cast<double>(point[i]) / g;
        const double q = q_given_posterior(c, Dist::normalized(std::move(w)), post_t, tau);
        if (!found || q > best) {
            best = q;
            best_k = point;
            found = true;
        }
    });

    std::vector<double> w(best_k.size());
    for (std::size_t i = 0; i < best_k.size(); ++i) w[i] = static_cast<double>(best_k[i]) / g;
    return Dist::normalized(std::move(w));
}

void StopCriteria::validate() const
{
    if (max_iterations == 0) throw ValidationError("max_iterations must be positive");
    auto check = [](const std::optional<double>& v, const char* name) {
        if (v && !(*v >= 0.0)) throw ValidationError(std::string(name) + " must be non-negative");
    };
    check(theta_l1_tol, "theta_l1_tol");
    check(delta_l_tol, "delta_l_tol");
    check(kl_tol, "kl_tol");
}

std::string_view to_string(StopReason r)
{
    switch (r) {
        case StopReason::kl_tolerance: return "kl_tolerance";
        case StopReason::theta_fixed_point: return "theta_fixed_point";
        case StopReason::max_iterations: return "max_iterations";
        case StopReason::likelihood_plateau: return "likelihood_plateau";
    }
    return "unknown";
}

std::optional<StopReason> stop_reason_from_string(std::string_view s)
{
    for (auto r : {StopReason::kl_tolerance, StopReason::theta_fixed_point, StopReason::max_iterations,
                   StopReason::likelihood_plateau}) {
        if (to_string(r) == s) return r;
    }
    return std::nullopt;
}

Trace run(const Channel& c, const Dist& theta0, const Dist& tau, const StopCriteria& stop)
{
    stop.validate();
    require_plausible(c, theta0, tau, "run");

    const PrunedChannel pruned = prune_inputs(c, tau);
    const Channel& reduced = pruned.channel;
    // Plausibility of theta0 guarantees mass on some kept input.
    Dist theta = *pruned.restrict(theta0);

    Trace trace;
    trace.excluded = pruned.excluded();

    auto make_record = [&](std::size_t iteration, const Dist& th) {
        StepRecord r;
        r.iteration = iteration;
        r.theta = pruned.embed(th);
        r.predictive = push_forward(reduced, th);
        r.kl = kl_divergence(tau, r.predictive);
        r.log_lik = log_likelihood(tau, r.predictive);
        return r;
    };
    auto kl_reached = [&](const StepRecord& r) { return stop.kl_tol && r.kl.value() <= *stop.kl_tol; };

    trace.records.push_back(make_record(0, theta));
    if (kl_reached(trace.records.back())) {
        trace.converged = true;
        trace.stop_reason = StopReason::kl_tolerance;
        return trace;
    }

    for (std::size_t t = 1; t <= stop.max_iterations; ++t) {
        Dist next = jeffrey_step(reduced, theta, tau);
        StepRecord rec = make_record(t, next);
        rec.delta_q = delta_q(reduced, next, theta, tau);
        rec.delta_h = delta_h(reduced, next, theta, tau);

        const StepRecord& prev = trace.records.back();
        const double theta_move = l1_distance(next, theta);
        const double gain = rec.log_lik.value() - prev.log_lik.value();
        trace.records.push_back(std::move(rec));
        theta = std::move(next);

        const StepRecord& cur = trace.records.back();
        if (kl_reached(cur)) {
            trace.converged = true;
            trace.stop_reason = StopReason::kl_tolerance;
            return trace;
        }
        if (stop.theta_l1_tol && theta_move <= *stop.theta_l1_tol) {
            trace.converged = true;
            trace.stop_reason = StopReason::theta_fixed_point;
            return trace;
        }
        if (stop.delta_l_tol && gain <= *stop.delta_l_tol) {
            trace.converged = true;
            trace.stop_reason = StopReason::likelihood_plateau;
            return trace;
        }
    }
    trace.converged = false;
    trace.stop_reason = StopReason::max_iterations;
    return trace;
}

CertificationReport certify_monotone(const Trace& trace) { return certify_monotone(trace.records); }

CertificationReport certify_monotone(const std::vector<StepRecord>& records)
{
    CertificationReport report;
    report.records = records.size();
    if (records.empty()) {
        report.passed = false;
        report.message = "empty trace";
        return report;
    }

    // Signed change of an extended real; inf - inf counts as no change.
    auto change = [](ExtendedReal from, ExtendedReal to) {
        if (from == to) return 0.0;
        return to.value() - from.value();
    };

    for (std::size_t t = 1; t < records.size(); ++t) {
        const StepRecord& a = records[t - 1];
        const StepRecord& b = records[t];
        const double kl_up = change(a.kl, b.kl);
        const double ll_down = -change(a.log_lik, b.log_lik);
        double gap = 0.0;
        if (a.kl.is_finite() && b.kl.is_finite() && a.log_lik.is_finite() && b.log_lik.is_finite()) {
            gap = std::abs((a.kl.value() - b.kl.value()) - (b.log_lik.value() - a.log_lik.value()));
        }
        report.max_kl_increase = std::max(report.max_kl_increase, kl_up);
        report.max_log_lik_decrease = std::max(report.max_log_lik_decrease, ll_down);
        report.max_identity_gap = std::max(report.max_identity_gap, gap);

        if (report.first_violation) continue;
        std::string why;
        if (kl_up > kMonotoneTol) {
            why = "kl increased by " + std::to_string(kl_up);
        } else if (ll_down > kMonotoneTol) {
            why = "log-likelihood decreased by " + std::to_string(ll_down);
        } else if (gap > kIdentityTol) {
            why = "kl decrease and log-likelihood gain disagree by " + std::to_string(gap);
        }
        if (!why.empty()) {
            report.passed = false;
            report.first_violation = t;
            report.message = "record " + std::to_string(t) + " (iteration " + std::to_string(b.iteration) + "): " + why;
        }
    }
    if (report.passed) {
        report.message = records.size() == 1 ? "single record, nothing to compare"
                                              : "kl non-increasing over " + std::to_string(records.size()) + " records";
    }
    return report;
}

}  // namespace jeffrey
