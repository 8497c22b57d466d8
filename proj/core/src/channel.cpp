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

#include "jeffrey/channel.hpp"

#include <cmath>
#include <string>

namespace jeffrey
{

namespace
{

void require_inputs(const Channel& c, const Dist& theta, const char* context)
{
    if (theta.size() != c.inputs()) {
        throw DimensionError(std::string(context) + ": prior has " + std::to_string(theta.size()) +
                             " entries, channel has " + std::to_string(c.inputs()) + " inputs");
    }
}

void require_outputs(const Channel& c, const Dist& tau, const char* context)
{
    if (tau.size() != c.outputs()) {
        throw DimensionError(std::string(context) + ": observation distribution has " +
                             std::to_string(tau.size()) + " entries, channel has " + std::to_string(c.outputs()) +
                             " outputs");
    }
}

}  // namespace

Channel::Channel(std::vector<std::vector<double>> rows)
{
    if (rows.empty()) throw ValidationError("channel needs at least one input row");
    inputs_ = rows.size();
    outputs_ = rows.front().size();
    if (outputs_ == 0) throw ValidationError("channel needs at least one output column");
    entries_.reserve(inputs_ * outputs_);
    for (std::size_t x = 0; x < inputs_; ++x) {
        if (rows[x].size() != outputs_) {
            throw ValidationError("channel row " + std::to_string(x) + " has " + std::to_string(rows[x].size()) +
                                  " entries, expected " + std::to_string(outputs_));
        }
        try {
            Dist r(std::move(rows[x]));
            entries_.insert(entries_.end(), r.begin(), r.end());
        } catch (const ValidationError& e) {
            throw ValidationError("channel row " + std::to_string(x) + ": " + e.what());
        }
    }
}

Channel Channel::identity(std::size_t n)
{
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0;
    return Channel(std::move(rows));
}

Channel Channel::uniform(std::size_t n, std::size_t m)
{
    return Channel(std::vector<std::vector<double>>(n, std::vector<double>(m, 1.0 / static_cast<double>(m))));
}

std::vector<std::vector<double>> Channel::rows() const
{
    std::vector<std::vector<double>> out;
    out.reserve(inputs_);
    for (std::size_t x = 0; x < inputs_; ++x) {
        auto r = row(x);
        out.emplace_back(r.begin(), r.end());
    }
    return out;
}

Channel make_channel(std::vector<std::vector<double>> rows) { return Channel(std::move(rows)); }

InverseChannel::InverseChannel(std::vector<double> entries, std::vector<bool> defined, Dist base_prior,
                               Dist predictive)
    : entries_(std::move(entries)),
      defined_(std::move(defined)),
      base_prior_(std::move(base_prior)),
      predictive_(std::move(predictive))
{
}

double InverseChannel::operator()(std::size_t y, std::size_t x) const { return row(y)[x]; }

std::span<const double> InverseChannel::row(std::size_t y) const
{
    if (!defined(y)) {
        throw PlausibilityError("inverse channel row " + std::to_string(y) + " is undefined (zero predictive mass)",
                                {y});
    }
    return std::span<const double>(entries_).subspan(y * inputs(), inputs());
}

Joint::Joint(std::size_t inputs, std::size_t outputs, std::vector<double> entries)
    : inputs_(inputs), outputs_(outputs), entries_(std::move(entries))
{
}

double Joint::total() const
{
    double t = 0.0;
    for (double v : entries_) t += v;
    return t;
}

Dist push_forward(const Channel& c, const Dist& theta)
{
    require_inputs(c, theta, "push_forward");
    std::vector<double> out(c.outputs(), 0.0);
    for (std::size_t x = 0; x < c.inputs(); ++x) {
        const double w = theta[x];
        if (w == 0.0) continue;
        auto r = c.row(x);
        for (std::size_t y = 0; y < c.outputs(); ++y) out[y] += w * r[y];
    }
    return Dist::normalized(std::move(out));
}

std::vector<double> likelihood_column(const Channel& c, std::size_t y)
{
    if (y >= c.outputs()) {
        throw DimensionError("likelihood_column: output " + std::to_string(y) + " out of range");
    }
    std::vector<double> col(c.inputs());
    for (std::size_t x = 0; x < c.inputs(); ++x) col[x] = c(x, y);
    return col;
}

InverseChannel invert(const Channel& c, const Dist& theta)
{
    require_inputs(c, theta, "invert");
    const std::size_t n = c.inputs();
    const std::size_t m = c.outputs();

    // Unnormalized predictive mass; the Bayes quotient uses it directly so
    // that inv(x|y) * p(y) reproduces theta(x) C(y|x) without a rescale.
    std::vector<double> mass(m, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < m; ++y) mass[y] += theta[x] * c(x, y);
    }

    std::vector<double> entries(m * n, 0.0);
    std::vector<bool> defined(m, false);
    for (std::size_t y = 0; y < m; ++y) {
        if (!(mass[y] > 0.0)) continue;
        defined[y] = true;
        double row_total = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            const double v = theta[x] * c(x, y) / mass[y];
            entries[y * n + x] = v;
            row_total += v;
        }
        for (std::size_t x = 0; x < n; ++x) entries[y * n + x] /= row_total;
    }
    return InverseChannel(std::move(entries), std::move(defined), theta, Dist::normalized(std::move(mass)));
}

Dist apply_inverse(const InverseChannel& inv, const Dist& tau)
{
    if (tau.size() != inv.outputs()) {
        throw DimensionError("apply_inverse: observation distribution has " + std::to_string(tau.size()) +
                             " entries, inverse channel has " + std::to_string(inv.outputs()) + " outputs");
    }
    std::vector<std::size_t> bad;
    for (std::size_t y = 0; y < tau.size(); ++y) {
        if (tau[y] > 0.0 && !inv.defined(y)) bad.push_back(y);
    }
    if (!bad.empty()) {
        throw PlausibilityError("observations charge outputs with zero predicted probability", std::move(bad));
    }
    std::vector<double> out(inv.inputs(), 0.0);
    for (std::size_t y = 0; y < tau.size(); ++y) {
        if (tau[y] == 0.0) continue;
        auto r = inv.row(y);
        for (std::size_t x = 0; x < out.size(); ++x) out[x] += tau[y] * r[x];
    }
    return Dist::normalized(std::move(out));
}

Joint joint(const Channel& c, const Dist& theta)
{
    require_inputs(c, theta, "joint");
    std::vector<double> entries(c.inputs() * c.outputs());
    for (std::size_t x = 0; x < c.inputs(); ++x) {
        for (std::size_t y = 0; y < c.outputs(); ++y) entries[x * c.outputs() + y] = theta[x] * c(x, y);
    }
    return Joint(c.inputs(), c.outputs(), std::move(entries));
}

bool has_full_image(const Channel& c, const Dist& theta)
{
    const Dist p = push_forward(c, theta);
    for (double v : p) {
        if (!(v > 0.0)) return false;
    }
    return true;
}

std::vector<std::size_t> implausible_outputs(const Channel& c, const Dist& theta, const Dist& tau)
{
    require_outputs(c, tau, "is_plausible");
    const Dist p = push_forward(c, theta);
    std::vector<std::size_t> bad;
    for (std::size_t y = 0; y < tau.size(); ++y) {
        if (tau[y] > 0.0 && !(p[y] > 0.0)) bad.push_back(y);
    }
    return bad;
}

bool is_plausible(const Channel& c, const Dist& theta, const Dist& tau)
{
    return implausible_outputs(c, theta, tau).empty();
}

std::vector<std::size_t> PrunedChannel::excluded() const
{
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t x = 0; x < original_inputs; ++x) {
        if (k < kept.size() && kept[k] == x) {
            ++k;
        } else {
            out.push_back(x);
        }
    }
    return out;
}

Dist PrunedChannel::embed(const Dist& reduced) const
{
    if (reduced.size() != kept.size()) {
        throw DimensionError("embed: reduced distribution has " + std::to_string(reduced.size()) +
                             " entries, expected " + std::to_string(kept.size()));
    }
    std::vector<double> full(original_inputs, 0.0);
    for (std::size_t i = 0; i < kept.size(); ++i) full[kept[i]] = reduced[i];
    return Dist::normalized(std::move(full));
}

std::optional<Dist> PrunedChannel::restrict(const Dist& original) const
{
    if (original.size() != original_inputs) {
        throw DimensionError("restrict: distribution has " + std::to_string(original.size()) +
                             " entries, expected " + std::to_string(original_inputs));
    }
    std::vector<double> reduced(kept.size());
    double total = 0.0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        reduced[i] = original[kept[i]];
        total += reduced[i];
    }
    if (!(total > 0.0)) return std::nullopt;
    return Dist::normalized(std::move(reduced));
}

PrunedChannel prune_inputs(const Channel& c, const Dist& tau)
{
    require_outputs(c, tau, "prune_inputs");
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> kept;
    for (std::size_t x = 0; x < c.inputs(); ++x) {
        bool reaches_observed = false;
        for (std::size_t y = 0; y < c.outputs() && !reaches_observed; ++y) {
            reaches_observed = tau[y] > 0.0 && c(x, y) > 0.0;
        }
        if (reaches_observed) {
            auto r = c.row(x);
            rows.emplace_back(r.begin(), r.end());
            kept.push_back(x);
        }
    }
    if (kept.empty()) {
        throw ValidationError("every input contradicts the observations; nothing left after pruning");
    }
    return PrunedChannel{Channel(std::move(rows)), std::move(kept), c.inputs()};
}

}  // namespace jeffrey
