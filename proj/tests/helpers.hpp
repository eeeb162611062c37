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

#include <cstdint>
#include <random>

#include "gkpforge/fock.hpp"

namespace gkpforge::testing {

inline FockVector random_state(int cutoff, std::uint64_t seed, int support = -1) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cutoff);
    const int n = support > 0 ? support : cutoff;
    for (int k = 0; k < n; ++k) {
        v[k] = {normal(rng), normal(rng)};
    }
    return FockVector(v).normalized();
}

inline double max_abs(const DenseOperator &m) { return m.cwiseAbs().maxCoeff(); }

} // namespace gkpforge::testing
