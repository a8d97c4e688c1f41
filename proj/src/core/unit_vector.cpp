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

#include "intentsearch/core/unit_vector.hpp"

#include <cfloat>
#include <cmath>
#include <string>
#include <type_traits>

#include "intentsearch/core/error.hpp"

namespace isearch {

namespace {

// A float vector rounded from an exact unit vector has |norm^2 - 1| well
// under this bound; anything within it is accepted as already normalized.
constexpr double kUnitNormSqSlack = 4.0 * FLT_EPSILON;

template <typename T>
std::vector<float>
normalize_impl(std::span<const T> raw) {
    double sq = 0.0;
    for (T x : raw) {
        sq += static_cast<double>(x) * static_cast<double>(x);
    }
    if (!(sq > 0.0) || !std::isfinite(sq)) {
        throw Error(ErrorCode::kZeroVector, "cannot normalize a zero or non-finite vector");
    }
    std::vector<float> out(raw.size());
    if constexpr (std::is_same_v<T, float>) {
        if (std::abs(sq - 1.0) <= kUnitNormSqSlack) {
            out.assign(raw.begin(), raw.end());
            return out;
        }
    }
    const double inv = 1.0 / std::sqrt(sq);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[i] = static_cast<float>(static_cast<double>(raw[i]) * inv);
    }
    return out;
}

}  // namespace

UnitVector
UnitVector::normalize(std::span<const float> raw) {
    UnitVector v;
    v.components_ = normalize_impl(raw);
    return v;
}

UnitVector
UnitVector::normalize(std::span<const double> raw) {
    UnitVector v;
    v.components_ = normalize_impl(raw);
    return v;
}

UnitVector
UnitVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw Error(ErrorCode::kInvalidArgument,
                    "basis index " + std::to_string(index) + " out of range for dim " +
                        std::to_string(dim));
    }
    UnitVector v;
    v.components_.assign(dim, 0.0F);
    v.components_[index] = 1.0F;
    return v;
}

double
dot(const UnitVector& a, const UnitVector& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()));
    }
    double s = 0.0;
    auto x = a.components();
    auto y = b.components();
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += static_cast<double>(x[i]) * static_cast<double>(y[i]);
    }
    return s;
}

UnitVector
mean_direction(std::span<const UnitVector> vectors) {
    if (vectors.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "mean_direction of no vectors");
    }
    const std::size_t dim = vectors.front().dim();
    std::vector<double> acc(dim, 0.0);
    for (const auto& v : vectors) {
        if (v.dim() != dim) {
            throw Error(ErrorCode::kDimensionMismatch, "mixed dimensions in mean_direction");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            acc[i] += v[i];
        }
    }
    for (auto& x : acc) {
        x /= static_cast<double>(vectors.size());
    }
    return UnitVector::normalize(std::span<const double>(acc));
}

}  // namespace isearch
