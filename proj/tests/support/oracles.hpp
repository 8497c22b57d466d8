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

// Reference formulas evaluated directly on nested vectors. Nothing here calls
// into the library, so tests can compare two independent routes.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace jeffrey::oracle
{

using Vec = std::vector<double>;
using Mat = std::vector<std::vector<double>>;  // Mat[x][y] = C(y|x)

inline double kl(const Vec& p, const Vec& q)
{
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
        s += p[i] * (std::log(p[i]) - std::log(q[i]));
    }
    return s;
}

inline Vec push(const Mat& c, const Vec& theta)
{
    Vec p(c.front().size(), 0.0);
    for (std::size_t y = 0; y < p.size(); ++y) {
        for (std::size_t x = 0; x < c.size(); ++x) p[y] += theta[x] * c[x][y];
    }
    return p;
}

// post[y][x] = theta(x) C(y|x) / sum_x' theta(x') C(y|x')
inline Mat posterior(const Mat& c, const Vec& theta)
{
    const Vec p = push(c, theta);
    Mat post(p.size(), Vec(c.size(), 0.0));
    for (std::size_t y = 0; y < p.size(); ++y) {
        if (p[y] <= 0.0) continue;
        for (std::size_t x = 0; x < c.size(); ++x) post[y][x] = theta[x] * c[x][y] / p[y];
    }
    return post;
}

// theta'(x) = theta(x) * sum_y tau(y) C(y|x) / p(y): the multiplicative form
// of the update, a different evaluation order from the library's.
inline Vec jeffrey(const Mat& c, const Vec& theta, const Vec& tau)
{
    const Vec p = push(c, theta);
    Vec out(theta.size(), 0.0);
    for (std::size_t x = 0; x < theta.size(); ++x) {
        double ratio = 0.0;
        for (std::size_t y = 0; y < tau.size(); ++y) {
            if (tau[y] > 0.0) ratio += tau[y] * c[x][y] / p[y];
        }
        out[x] = theta[x] * ratio;
    }
    return out;
}

inline double log_lik(const Mat& c, const Vec& theta, const Vec& tau)
{
    const Vec p = push(c, theta);
    double s = 0.0;
    for (std::size_t y = 0; y < tau.size(); ++y) {
        if (tau[y] > 0.0) s += tau[y] * std::log(p[y]);
    }
    return s;
}

inline double q(const Mat& c, const Vec& theta, const Vec& theta_t, const Vec& tau)
{
    const Mat post = posterior(c, theta_t);
    double s = 0.0;
    for (std::size_t y = 0; y < tau.size(); ++y) {
        for (std::size_t x = 0; x < theta.size(); ++x) {
            const double w = tau[y] * post[y][x];
            if (w == 0.0) continue;
            s += w * std::log(theta[x] * c[x][y]);
        }
    }
    return s;
}

inline double h(const Mat& c, const Vec& theta, const Vec& theta_t, const Vec& tau)
{
    const Mat post_t = posterior(c, theta_t);
    const Mat post = posterior(c, theta);
    double s = 0.0;
    for (std::size_t y = 0; y < tau.size(); ++y) {
        for (std::size_t x = 0; x < theta.size(); ++x) {
            const double w = tau[y] * post_t[y][x];
            if (w == 0.0) continue;
            s -= w * std::log(post[y][x]);
        }
    }
    return s;
}

inline double l1(const Vec& a, const Vec& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

}  // namespace jeffrey::oracle
