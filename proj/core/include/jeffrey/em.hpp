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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jeffrey
{

/// Slack allowed on quantities that are non-negative in exact arithmetic
/// (KL decrease per step, Delta Q at the Jeffrey posterior, Delta H).
inline constexpr double kMonotoneTol = 1e-10;

/// Slack on the per-step identity kl[t] - kl[t+1] = L[t+1] - L[t].
inline constexpr double kIdentityTol = 1e-9;

/// theta_{t+1}(x) = sum_y tau(y) theta_t(x) C(y|x) / p_{theta_t}(y).
///
/// Throws PlausibilityError if tau charges an output theta_t cannot produce.
Dist jeffrey_step(const Channel& c, const Dist& theta_t, const Dist& tau);

/// Q(theta | theta_t) = sum_{x,y} tau(y) p_{theta_t}(x|y) log p_theta(x, y).
/// -inf when a positively weighted term has p_theta(x, y) = 0.
ExtendedReal q_function(const Channel& c, const Dist& theta, const Dist& theta_t, const Dist& tau);

/// H(theta | theta_t) = -sum_{x,y} tau(y) p_{theta_t}(x|y) log p_theta(x|y).
/// +inf when theta's posterior excludes an input theta_t's posterior charges.
ExtendedReal h_function(const Channel& c, const Dist& theta, const Dist& theta_t, const Dist& tau);

/// L(theta_new) - L(theta_t) for the scaled log-likelihood L.
double delta_l(const Channel& c, const Dist& theta_new, const Dist& theta_t, const Dist& tau);

/// Q(theta_new | theta_t) - Q(theta_t | theta_t). May be -inf.
double delta_q(const Channel& c, const Dist& theta_new, const Dist& theta_t, const Dist& tau);

/// sum_y tau(y) D(posterior_t(.|y) || posterior_new(.|y)). May be +inf.
double delta_h(const Channel& c, const Dist& theta_new, const Dist& theta_t, const Dist& tau);

/// Brute-force maximizer of Q(. | theta_t) over the simplex lattice
/// {k / grid_resolution : k in N^N, |k| = grid_resolution}. Ties go to the
/// lexicographically first lattice point. Only for N <= 4.
Dist argmax_q_oracle(const Channel& c, const Dist& theta_t, const Dist& tau, std::size_t grid_resolution);

inline constexpr std::size_t kOracleMaxInputs = 4;

/// Each threshold is optional so that any criterion can be switched off;
/// max_iterations always applies.
struct StopCriteria
{
    std::size_t max_iterations = 10'000;
    std::optional<double> theta_l1_tol = 1e-10;
    std::optional<double> delta_l_tol = 1e-12;
    /// Stop once D(tau || prediction) <= kl_tol. The default sits at the
    /// rounding floor of the KL sum, so it only fires on an exact fit.
    std::optional<double> kl_tol = 1e-15;

    void validate() const;
};

enum class StopReason
{
    kl_tolerance,
    theta_fixed_point,
    max_iterations,
    likelihood_plateau,
};

std::string_view to_string(StopReason r);
std::optional<StopReason> stop_reason_from_string(std::string_view s);

struct StepRecord
{
    std::size_t iteration = 0;
    Dist theta{std::vector<double>{1.0}};
    Dist predictive{std::vector<double>{1.0}};
    ExtendedReal kl;
    ExtendedReal log_lik;
    /// Change from the previous record; absent at iteration 0.
    std::optional<double> delta_q;
    std::optional<double> delta_h;
};

struct Trace
{
    std::vector<StepRecord> records;
    bool converged = false;
    StopReason stop_reason = StopReason::max_iterations;
    /// Inputs removed before iterating, as original indices. Their mass is
    /// exactly zero in every record.
    std::vector<std::size_t> excluded;

    const StepRecord& final() const { return records.back(); }
};

/// Iterates jeffrey_step from theta0 until a StopCriteria fires.
///
/// Inputs that cannot produce any observed output are pruned first; theta0 is
/// restricted to the remaining inputs and renormalized. Every record is
/// expressed over the original input domain.
Trace run(const Channel& c, const Dist& theta0, const Dist& tau, const StopCriteria& stop = {});

struct CertificationReport
{
    bool passed = true;
    /// Index of the first record whose transition from its predecessor broke
    /// a check.
    std::optional<std::size_t> first_violation;
    double max_kl_increase = 0.0;
    double max_log_lik_decrease = 0.0;
    double max_identity_gap = 0.0;
    std::size_t records = 0;
    std::string message;
};

/// Checks that kl never increases, log-likelihood never decreases and their
/// per-step changes agree. Non-strict within kMonotoneTol / kIdentityTol.
CertificationReport certify_monotone(const Trace& trace);
CertificationReport certify_monotone(const std::vector<StepRecord>& records);

}  // namespace jeffrey
