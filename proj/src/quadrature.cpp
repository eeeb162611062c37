// Copyright 2026 The gkpforge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gkpforge/quadrature.hpp"
#include "gkpforge/error.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace gkpforge {

namespace {

// Newton iteration on P_n from the Chebyshev initial guess.
GaussLegendreRule build_rule(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            dp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -z;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

} // namespace

const GaussLegendreRule &gauss_legendre(int n) {
    require(n >= 1 && n <= 4096, ErrorCode::Configuration, "Gauss-Legendre order must be in [1, 4096]");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
    const std::lock_guard lock(mutex);
    auto &slot = cache[n];
    if (!slot) {
        slot = std::make_unique<GaussLegendreRule>(build_rule(n));
    }
    return *slot;
}

MappedRule gauss_legendre_on(double lo, double hi, int nodes, int panels) {
    require(panels >= 1, ErrorCode::Configuration, "need at least one panel");
    const GaussLegendreRule &ref = gauss_legendre(nodes);
    MappedRule out;
    out.x.reserve(static_cast<std::size_t>(nodes * panels));
    out.w.reserve(static_cast<std::size_t>(nodes * panels));
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * width;
        const double mid = a + 0.5 * width;
        for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
            out.x.push_back(mid + 0.5 * width * ref.nodes[i]);
            out.w.push_back(0.5 * width * ref.weights[i]);
        }
    }
    return out;
}

} // namespace gkpforge
