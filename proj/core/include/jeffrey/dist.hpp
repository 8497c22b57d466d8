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

#include <compare>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jeffrey
{

/// Tolerance used when validating simplex points and row-stochastic rows.
inline constexpr double kSimplexTol = 1e-9;

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Input that violates a value invariant (negative mass, bad normalization).
class ValidationError : public Error
{
  public:
    using Error::Error;
};

/// Operands whose domain sizes do not line up.
class DimensionError : public Error
{
  public:
    using Error::Error;
};

/// An observation distribution charges outputs the current prior deems
/// impossible. Carries the offending output indices.
class PlausibilityError : public Error
{
  public:
    PlausibilityError(const std::string& what, std::vector<std::size_t> outputs)
        : Error(what), outputs_(std::move(outputs))
    {
    }

    const std::vector<std::size_t>& outputs() const noexcept { return outputs_; }

  private:
    std::vector<std::size_t> outputs_;
};

/// A real number in nats that may also be +inf or -inf.
///
/// KL divergence is +inf when absolute continuity fails and the
/// log-likelihood is -inf for implausible observations. Both are kept as
/// explicit markers instead of a large sentinel.
class ExtendedReal
{
  public:
    constexpr ExtendedReal() = default;
    constexpr ExtendedReal(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

    static constexpr ExtendedReal pos_inf() { return {std::numeric_limits<double>::infinity()}; }
    static constexpr ExtendedReal neg_inf() { return {-std::numeric_limits<double>::infinity()}; }

    constexpr double value() const noexcept { return value_; }
    constexpr bool is_finite() const noexcept
    {
        return value_ != std::numeric_limits<double>::infinity() &&
               value_ != -std::numeric_limits<double>::infinity();
    }
    constexpr bool is_pos_inf() const noexcept { return value_ == std::numeric_limits<double>::infinity(); }
    constexpr bool is_neg_inf() const noexcept { return value_ == -std::numeric_limits<double>::infinity(); }

    friend constexpr auto operator<=>(ExtendedReal, ExtendedReal) = default;

  private:
    double value_ = 0.0;
};

std::string to_string(ExtendedReal v);

/// A point on the probability simplex over {0, ..., size()-1}.
class Dist
{
  public:
    /// Validates and cleans `weights`: entries in [-kSimplexTol, 0) are
    /// clamped to zero and the vector is renormalized.
    explicit Dist(std::vector<double> weights);

    /// Builds a distribution from non-negative mass that is only known to be
    /// proportional to a simplex point (the result of arithmetic on other
    /// distributions). Rescales by the total. Throws if the total is zero.
    static Dist normalized(std::vector<double> mass);

    static Dist uniform(std::size_t size);
    static Dist point_mass(std::size_t size, std::size_t at);

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::span<const double> weights() const noexcept { return weights_; }
    auto begin() const noexcept { return weights_.begin(); }
    auto end() const noexcept { return weights_.end(); }

    friend bool operator==(const Dist&, const Dist&) = default;

  private:
    struct Trusted
    {
    };
    Dist(std::vector<double> weights, Trusted) : weights_(std::move(weights)) {}

    std::vector<double> weights_;
};

Dist make_dist(std::vector<double> weights);

/// Frequency vector of `samples` over a domain of `domain_size` symbols.
Dist empirical_from_samples(std::span<const std::size_t> samples, std::size_t domain_size);

/// D(p || q) in nats with the 0 log 0 = 0 convention; +inf when p charges a
/// symbol q excludes.
ExtendedReal kl_divergence(const Dist& p, const Dist& q);

/// Scaled log-likelihood sum_y tau(y) log predicted(y). Terms with tau(y) = 0
/// contribute nothing; -inf when tau(y) > 0 and predicted(y) = 0.
ExtendedReal log_likelihood(const Dist& tau, const Dist& predicted);

/// Shannon entropy in nats.
double entropy(const Dist& p);

/// Indices carrying positive mass, ascending.
std::vector<std::size_t> support(const Dist& p);

double l1_distance(const Dist& p, const Dist& q);

void require_same_size(const Dist& p, const Dist& q, const char* context);

}  // namespace jeffrey
