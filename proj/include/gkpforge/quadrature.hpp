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

#pragma once

#include <span>
#include <vector>

namespace gkpforge {

struct GaussLegendreRule {
    std::vector<double> nodes;   // on [-1, 1], ascending
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; cached, thread-safe.
const GaussLegendreRule &gauss_legendre(int n);

/// Maps the reference rule onto [lo, hi] split into `panels` equal panels.
struct MappedRule {
    std::vector<double> x;
    std::vector<double> w;
};
MappedRule gauss_legendre_on(double lo, double hi, int nodes, int panels = 1);

} // namespace gkpforge
