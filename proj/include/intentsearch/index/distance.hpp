// Copyright 2026 the intentsearch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "intentsearch/core/unit_vector.hpp"

namespace isearch {

/// Shared inner kernel: float inputs, double accumulation in four fixed
/// lanes. Every search path (tree, scans, oracle) goes through this so
/// distances agree bit-for-bit.
inline double
dot_kernel(const float* a, const float* b, std::size_t dim) {
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= dim; i += 4) {
        s0 += static_cast<double>(a[i]) * static_cast<double>(b[i]);
        s1 += static_cast<double>(a[i + 1]) * static_cast<double>(b[i + 1]);
        s2 += static_cast<double>(a[i + 2]) * static_cast<double>(b[i + 2]);
        s3 += static_cast<double>(a[i + 3]) * static_cast<double>(b[i + 3]);
    }
    for (; i < dim; ++i) {
        s0 += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    }
    return (s0 + s1) + (s2 + s3);
}

/// 1 - dot clamped to [0, 2].
inline double
distance_from_dot(double d) {
    return std::clamp(1.0 - d, 0.0, 2.0);
}

/// Cosine distance between unit vectors. Throws Error(kDimensionMismatch).
double cosine_distance(const UnitVector& u, const UnitVector& v);

struct Neighbor {
    std::string id;
    double distance = 0.0;  // cosine distance in [0, 2]

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Ascending distance, ties by ascending id.
inline bool
neighbor_before(double da, const std::string& ia, double db, const std::string& ib) {
    if (da != db) {
        return da < db;
    }
    return ia < ib;
}

struct VectorRecord {
    std::string id;
    UnitVector vector;
};

}  // namespace isearch
