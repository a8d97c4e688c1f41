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

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "intentsearch/core/unit_vector.hpp"
#include "intentsearch/index/distance.hpp"

namespace isearch::testing {

inline UnitVector
random_unit(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> raw(dim);
    for (auto& x : raw) {
        x = g(rng);
    }
    return UnitVector::normalize(std::span<const double>(raw));
}

/// Ids zero-padded so lexicographic and numeric order agree.
inline std::string
padded_id(std::size_t i, const char* prefix = "r") {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%07zu", prefix, i);
    return buf;
}

inline std::vector<VectorRecord>
random_records(std::size_t n, std::size_t dim, std::mt19937_64& rng) {
    std::vector<VectorRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back({padded_id(i), random_unit(dim, rng)});
    }
    return out;
}

/// Points scattered around `clusters` random centers with per-coordinate
/// noise `spread`, then projected onto the sphere. Embedding galleries look
/// like this far more than a uniform sphere does.
inline std::vector<VectorRecord>
clustered_records(std::size_t n, std::size_t dim, std::size_t clusters, double spread,
                  std::mt19937_64& rng) {
    std::vector<UnitVector> centers;
    for (std::size_t c = 0; c < clusters; ++c) {
        centers.push_back(random_unit(dim, rng));
    }
    std::normal_distribution<double> g(0.0, spread);
    std::uniform_int_distribution<std::size_t> pick(0, clusters - 1);
    std::vector<VectorRecord> out;
    out.reserve(n);
    std::vector<double> raw(dim);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = centers[pick(rng)];
        for (std::size_t d = 0; d < dim; ++d) {
            raw[d] = c[d] + g(rng);
        }
        out.push_back({padded_id(i), UnitVector::normalize(std::span<const double>(raw))});
    }
    return out;
}

inline double
norm_of(const UnitVector& v) {
    double s = 0.0;
    for (float x : v.components()) {
        s += static_cast<double>(x) * x;
    }
    return std::sqrt(s);
}

}  // namespace isearch::testing
