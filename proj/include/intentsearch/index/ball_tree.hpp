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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "intentsearch/index/distance.hpp"

namespace isearch {

namespace detail {
class TopKSelector;
}

inline constexpr std::size_t kDefaultLeafSize = 32;

/// Exact k-nearest-neighbor index over unit vectors.
///
/// On the unit sphere ||u - v||^2 = 2 (1 - u.v), so Euclidean ball bounds
/// prune the same candidates cosine distance would rank last. Nodes split on
/// the coordinate of maximal spread at the median; leaves hold at most
/// `leaf_size` points stored contiguously in tree order. Immutable after
/// build, so any number of threads may query concurrently.
class BallTreeIndex {
public:
    struct Node {
        double radius = 0.0;
        std::uint32_t begin = 0;  // range into tree-ordered points
        std::uint32_t end = 0;
        std::int32_t left = -1;
        std::int32_t right = -1;

        bool
        leaf() const {
            return left < 0;
        }
    };

    BallTreeIndex() = default;

    /// Throws Error(kDuplicateId) or Error(kDimensionMismatch).
    static BallTreeIndex
    build(std::span<const VectorRecord> records, std::size_t leaf_size = kDefaultLeafSize);

    std::size_t
    dim() const {
        return dim_;
    }
    std::size_t
    size() const {
        return ids_.size();
    }
    std::size_t
    leaf_size() const {
        return leaf_size_;
    }

    /// min(k, size()) nearest neighbors, ascending distance, ties by id.
    /// Throws Error(kDimensionMismatch) unless the index is empty.
    std::vector<Neighbor>
    knn(const UnitVector& q, std::size_t k) const;

    /// knn for many queries, parallel over queries.
    std::vector<std::vector<Neighbor>>
    knn_batch(std::span<const UnitVector> queries, std::size_t k) const;

    std::optional<UnitVector>
    vector_of(const std::string& id) const;

    bool
    contains(const std::string& id) const {
        return position_.contains(id);
    }

    // Structure access for invariant checks.
    std::span<const Node>
    nodes() const {
        return nodes_;
    }
    std::span<const double>
    centroid(std::size_t node) const {
        return {centroids_.data() + node * dim_, dim_};
    }
    std::span<const float>
    point(std::size_t pos) const {
        return {data_.data() + pos * dim_, dim_};
    }
    const std::string&
    id_at(std::size_t pos) const {
        return ids_[pos];
    }

private:
    std::int32_t
    build_node(std::vector<std::uint32_t>& perm, std::uint32_t begin, std::uint32_t end,
               std::span<const VectorRecord> records);
    void
    search(std::int32_t node, const float* q, double node_lb, detail::TopKSelector& top) const;
    double
    lower_bound(std::int32_t node, const float* q) const;

    std::size_t dim_ = 0;
    std::size_t leaf_size_ = kDefaultLeafSize;
    std::vector<std::string> ids_;
    std::vector<float> data_;
    std::vector<Node> nodes_;
    std::vector<double> centroids_;
    std::unordered_map<std::string, std::uint32_t> position_;
};

}  // namespace isearch
