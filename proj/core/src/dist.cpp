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

#include "jeffrey/dist.hpp"

#include <cmath>
#include <numeric>

namespace jeffrey
{

std::string to_string(ExtendedReal v)
{
    if (v.is_pos_inf()) return "inf";
    if (v.is_neg_inf()) return "-inf";
    return std::to_string(v.value());
}

Dist::Dist(std::vector<double> weights)
{
    if (weights.empty()) {
        throw ValidationError("distribution must have at least one entry");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        double& w = weights[i];
        if (!std::isfinite(w)) {
            throw ValidationError("distribution entry " + std::to_string(i) + " is not finite");
        }
        if (w < -kSimplexTol) {
            throw ValidationError("distribution entry " + std::to_string(i) + " is negative (" +
                                  std::to_string(w) + ")");
        }
        if (w < 0.0) w = 0.0;
        total += w;
    }
    if (std::abs(total - 1.0) > kSimplexTol) {
        throw ValidationError("distribution sums to " + std::to_string(total) + ", expected 1");
    }
    for (double& w : weights) w /= total;
    weights_ = std::move(weights);
}

Dist Dist::normalized(std::vector<double> mass)
{
    if (mass.empty()) {
        throw ValidationError("distribution must have at least one entry");
    }
    double total = 0.0;
    for (double& m : mass) {
        if (!std::isfinite(m) || m < -kSimplexTol) {
            throw ValidationError("cannot normalize negative or non-finite mass");
        }
        if (m < 0.0) m = 0.0;
        total += m;
    }
    if (!(total > 0.0)) {
        throw ValidationError("cannot normalize zero total mass");
    }
    for (double& m : mass) m /= total;
    return Dist(std::move(mass), Trusted{});
}

Dist Dist::uniform(std::size_t size)
{
    if (size == 0) throw ValidationError("distribution must have at least one entry");
    return Dist(std::vector<double>(size, 1.0 / static_cast<double>(size)), Trusted{});
}

Dist Dist::point_mass(std::size_t size, std::size_t at)
{
    if (at >= size) throw ValidationError("point mass index out of range");
    std::vector<double> w(size, 0.0);
    w[at] = 1.0;
    return Dist(std::move(w), Trusted{});
}

Dist make_dist(std::vector<double> weights) { return Dist(std::move(weights)); }

Dist empirical_from_samples(std::span<const std::size_t> samples, std::size_t domain_size)
{
    if (samples.empty()) {
        throw ValidationError("empirical distribution needs at least one sample");
    }
    if (domain_size == 0) {
        throw ValidationError("domain size must be positive");
    }
    std::vector<std::size_t> counts(domain_size, 0);
    for (std::size_t s : samples) {
        if (s >= domain_size) {
            throw ValidationError("sample index " + std::to_string(s) + " outside domain of size " +
                                  std::to_string(domain_size));
        }
        ++counts[s];
    }
    const auto n = static_cast<double>(samples.size());
    std::vector<double> freq(domain_size);
    for (std::size_t i = 0; i < domain_size; ++i) freq[i] = static_cast<double>(counts[i]) / n;
    return Dist::normalized(std::move(freq));
}

void require_same_size(const Dist& p, const Dist& q, const char* context)
{
    if (p.size() != q.size()) {
        throw DimensionError(std::string(context) + ": domain sizes differ (" + std::to_string(p.size()) +
                             " vs " + std::to_string(q.size()) + ")");
    }
}

ExtendedReal kl_divergence(const Dist& p, const Dist& q)
{
    require_same_size(p, q, "kl_divergence");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) return ExtendedReal::pos_inf();
        sum += p[i] * std::log(p[i] / q[i]);
    }
    return sum;
}

ExtendedReal log_likelihood(const Dist& tau, const Dist& predicted)
{
    require_same_size(tau, predicted, "log_likelihood");
    double sum = 0.0;
    for (std::size_t y = 0; y < tau.size(); ++y) {
        if (tau[y] == 0.0) continue;
        if (predicted[y] == 0.0) return ExtendedReal::neg_inf();
        sum += tau[y] * std::log(predicted[y]);
    }
    return sum;
}

double entropy(const Dist& p)
{
    double h = 0.0;
    for (double w : p) {
        if (w > 0.0) h -= w * std::log(w);
    }
    return h;
}

std::vector<std::size_t> support(const Dist& p)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) out.push_back(i);
    }
    return out;
}

double l1_distance(const Dist& p, const Dist& q)
{
    require_same_size(p, q, "l1_distance");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
    return d;
}

}  // namespace jeffrey
