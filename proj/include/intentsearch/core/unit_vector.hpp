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

#include <cstddef>
#include <span>
#include <vector>

namespace isearch {

inline constexpr std::size_t kDefaultEmbeddingDim = 512;

/// Fixed-dimension float32 embedding with unit L2 norm (within 1e-6).
/// Only constructible through normalize() or basis().
class UnitVector {
public:
    UnitVector() = default;

    /// v / ||v||. Inputs already within float rounding of unit length are
    /// returned unchanged, which makes normalize idempotent bit-for-bit.
    /// Throws Error(kZeroVector) for zero or non-finite norms.
    static UnitVector
    normalize(std::span<const float> raw);
    static UnitVector
    normalize(std::span<const double> raw);

    /// One-hot vector e_i.
    static UnitVector
    basis(std::size_t dim, std::size_t index);

    std::size_t
    dim() const {
        return components_.size();
    }

    std::span<const float>
    components() const {
        return components_;
    }

    float
    operator[](std::size_t i) const {
        return components_[i];
    }

    bool
    empty() const {
        return components_.empty();
    }

    friend bool operator==(const UnitVector&, const UnitVector&) = default;

private:
    std::vector<float> components_;
};

/// Double-accumulated dot product. Throws Error(kDimensionMismatch).
double dot(const UnitVector& a, const UnitVector& b);

/// Cosine similarity of two unit vectors.
inline double
cosine_similarity(const UnitVector& a, const UnitVector& b) {
    return dot(a, b);
}

/// normalize(mean of inputs). Throws on empty input or dimension mismatch.
UnitVector mean_direction(std::span<const UnitVector> vectors);

}  // namespace isearch
