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

#include "jeffrey/dist.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace jeffrey
{

/// Row-stochastic N x M matrix C(y|x): row x is the output distribution of
/// input x. Stored row-major.
class Channel
{
  public:
    /// Validates non-negativity and per-row normalization (kSimplexTol).
    /// Rows are renormalized after validation.
    explicit Channel(std::vector<std::vector<double>> rows);

    static Channel identity(std::size_t n);
    static Channel uniform(std::size_t n, std::size_t m);

    std::size_t inputs() const noexcept { return inputs_; }
    std::size_t outputs() const noexcept { return outputs_; }

    double operator()(std::size_t x, std::size_t y) const { return entries_[x * outputs_ + y]; }
    std::span<const double> row(std::size_t x) const
    {
        return std::span<const double>(entries_).subspan(x * outputs_, outputs_);
    }

    std::vector<std::vector<double>> rows() const;

    friend bool operator==(const Channel&, const Channel&) = default;

  private:
    std::size_t inputs_ = 0;
    std::size_t outputs_ = 0;
    std::vector<double> entries_;
};

Channel make_channel(std::vector<std::vector<double>> rows);

/// Bayesian inversion of a channel against a prior theta: an M x N matrix
/// whose row y is the posterior over inputs after observing y.
///
/// Rows for outputs the prior deems impossible (predictive(y) == 0) have no
/// posterior and are marked undefined; reading them throws.
class InverseChannel
{
  public:
    InverseChannel(std::vector<double> entries, std::vector<bool> defined, Dist base_prior, Dist predictive);

    std::size_t inputs() const noexcept { return base_prior_.size(); }
    std::size_t outputs() const noexcept { return predictive_.size(); }

    bool defined(std::size_t y) const { return defined_.at(y); }
    double operator()(std::size_t y, std::size_t x) const;
    std::span<const double> row(std::size_t y) const;

    const Dist& base_prior() const noexcept { return base_prior_; }
    const Dist& predictive() const noexcept { return predictive_; }

  private:
    std::vector<double> entries_;
    std::vector<bool> defined_;
    Dist base_prior_;
    Dist predictive_;
};

/// p_theta(x, y) = theta(x) C(y|x), N x M row-major.
class Joint
{
  public:
    Joint(std::size_t inputs, std::size_t outputs, std::vector<double> entries);

    std::size_t inputs() const noexcept { return inputs_; }
    std::size_t outputs() const noexcept { return outputs_; }
    double operator()(std::size_t x, std::size_t y) const { return entries_[x * outputs_ + y]; }
    double total() const;

  private:
    std::size_t inputs_;
    std::size_t outputs_;
    std::vector<double> entries_;
};

/// Output distribution predicted by prior theta: sum_x theta(x) C(y|x).
Dist push_forward(const Channel& c, const Dist& theta);

/// x -> C(y|x), unnormalized.
std::vector<double> likelihood_column(const Channel& c, std::size_t y);

InverseChannel invert(const Channel& c, const Dist& theta);

/// x -> sum_y tau(y) inv(x|y). Throws PlausibilityError if tau charges an
/// undefined row.
Dist apply_inverse(const InverseChannel& inv, const Dist& tau);

Joint joint(const Channel& c, const Dist& theta);

bool has_full_image(const Channel& c, const Dist& theta);

/// Outputs y with tau(y) > 0 but push_forward(c, theta)(y) == 0.
std::vector<std::size_t> implausible_outputs(const Channel& c, const Dist& theta, const Dist& tau);

/// support(tau) is contained in support(push_forward(c, theta)).
bool is_plausible(const Channel& c, const Dist& theta, const Dist& tau);

struct PrunedChannel
{
    Channel channel;
    /// kept[i] is the original index of reduced input i.
    std::vector<std::size_t> kept;
    std::size_t original_inputs;

    std::vector<std::size_t> excluded() const;

    /// Maps a distribution over the reduced inputs back to the original
    /// domain, placing exact zeros at excluded inputs.
    Dist embed(const Dist& reduced) const;

    /// Restricts an original-domain distribution to the kept inputs and
    /// renormalizes. Returns nullopt when the kept inputs carry no mass.
    std::optional<Dist> restrict(const Dist& original) const;
};

/// Drops every input x with no observed output reachable from it, i.e. no y
/// with tau(y) > 0 and C(y|x) > 0. Throws ValidationError if nothing is left.
PrunedChannel prune_inputs(const Channel& c, const Dist& tau);

}  // namespace jeffrey
