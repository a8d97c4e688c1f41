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

#include "intentsearch/index/ball_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <omp.h>

#include "intentsearch/core/error.hpp"
#include "top_k.hpp"

namespace isearch {

namespace {

// Float storage breaks ||u - v||^2 = 2 (1 - u.v) by a few 1e-7 at worst;
// bounds are loosened by this much so pruning never drops a true neighbor.
constexpr double kPruneSlack = 1e-6;

}  // namespace

BallTreeIndex
BallTreeIndex::build(std::span<const VectorRecord> records, std::size_t leaf_size) {
    if (leaf_size == 0) {
        throw Error(ErrorCode::kInvalidArgument, "leaf_size must be at least 1");
    }
    BallTreeIndex index;
    index.leaf_size_ = leaf_size;
    if (records.empty()) {
        return index;
    }
    index.dim_ = records.front().vector.dim();
    index.position_.reserve(records.size());
    for (std::uint32_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.vector.dim() != index.dim_) {
            throw Error(ErrorCode::kDimensionMismatch,
                        "record '" + r.id + "' has dim " + std::to_string(r.vector.dim()) +
                            ", index dim is " + std::to_string(index.dim_));
        }
        if (!index.position_.emplace(r.id, i).second) {
            throw Error(ErrorCode::kDuplicateId, "duplicate id '" + r.id + "'");
        }
    }

    std::vector<std::uint32_t> perm(records.size());
    std::iota(perm.begin(), perm.end(), 0U);
    index.build_node(perm, 0, static_cast<std::uint32_t>(records.size()), records);

    index.ids_.reserve(records.size());
    index.data_.reserve(records.size() * index.dim_);
    for (std::uint32_t pos = 0; pos < perm.size(); ++pos) {
        const auto& r = records[perm[pos]];
        index.ids_.push_back(r.id);
        auto c = r.vector.components();
        index.data_.insert(index.data_.end(), c.begin(), c.end());
        index.position_[r.id] = pos;
    }
    return index;
}

std::int32_t
BallTreeIndex::build_node(std::vector<std::uint32_t>& perm, std::uint32_t begin,
                          std::uint32_t end, std::span<const VectorRecord> records) {
    const auto idx = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{0.0, begin, end, -1, -1});
    centroids_.resize(nodes_.size() * dim_, 0.0);

    const double count = static_cast<double>(end - begin);
    std::vector<double> c(dim_, 0.0);
    for (std::uint32_t p = begin; p < end; ++p) {
        auto v = records[perm[p]].vector.components();
        for (std::size_t d = 0; d < dim_; ++d) {
            c[d] += v[d];
        }
    }
    for (auto& x : c) {
        x /= count;
    }
    double radius = 0.0;
    for (std::uint32_t p = begin; p < end; ++p) {
        auto v = records[perm[p]].vector.components();
        double sq = 0.0;
        for (std::size_t d = 0; d < dim_; ++d) {
            const double diff = static_cast<double>(v[d]) - c[d];
            sq += diff * diff;
        }
        radius = std::max(radius, std::sqrt(sq));
    }
    std::copy(c.begin(), c.end(), centroids_.begin() + static_cast<std::ptrdiff_t>(idx * dim_));
    nodes_[idx].radius = radius;

    if (end - begin <= leaf_size_) {
        return idx;
    }

    std::size_t split_dim = 0;
    double best_spread = -1.0;
    for (std::size_t d = 0; d < dim_; ++d) {
        float lo = records[perm[begin]].vector[d];
        float hi = lo;
        for (std::uint32_t p = begin + 1; p < end; ++p) {
            const float x = records[perm[p]].vector[d];
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        const double spread = static_cast<double>(hi) - static_cast<double>(lo);
        if (spread > best_spread) {
            best_spread = spread;
            split_dim = d;
        }
    }
    if (best_spread <= 0.0) {
        return idx;  // all points coincide
    }

    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(perm.begin() + begin, perm.begin() + mid, perm.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                         const float va = records[a].vector[split_dim];
                         const float vb = records[b].vector[split_dim];
                         return va < vb || (va == vb && a < b);
                     });
    const std::int32_t left = build_node(perm, begin, mid, records);
    const std::int32_t right = build_node(perm, mid, end, records);
    nodes_[idx].left = left;
    nodes_[idx].right = right;
    return idx;
}

double
BallTreeIndex::lower_bound(std::int32_t node, const float* q) const {
    const double* c = centroids_.data() + static_cast<std::size_t>(node) * dim_;
    double sq = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) {
        const double diff = static_cast<double>(q[d]) - c[d];
        sq += diff * diff;
    }
    const double gap = std::sqrt(sq) - nodes_[node].radius;
    return gap > 0.0 ? 0.5 * gap * gap : 0.0;
}

void
BallTreeIndex::search(std::int32_t node, const float* q, double node_lb,
                      detail::TopKSelector& top) const {
    if (top.full() && node_lb - kPruneSlack > top.worst()) {
        return;
    }
    const Node& n = nodes_[node];
    if (n.leaf()) {
        for (std::uint32_t pos = n.begin; pos < n.end; ++pos) {
            top.offer(distance_from_dot(dot_kernel(q, data_.data() + pos * dim_, dim_)), pos);
        }
        return;
    }
    const double lb_left = lower_bound(n.left, q);
    const double lb_right = lower_bound(n.right, q);
    if (lb_left <= lb_right) {
        search(n.left, q, lb_left, top);
        search(n.right, q, lb_right, top);
    } else {
        search(n.right, q, lb_right, top);
        search(n.left, q, lb_left, top);
    }
}

std::vector<Neighbor>
BallTreeIndex::knn(const UnitVector& q, std::size_t k) const {
    if (ids_.empty() || k == 0) {
        return {};
    }
    if (q.dim() != dim_) {
        throw Error(ErrorCode::kDimensionMismatch, "query dim " + std::to_string(q.dim()) +
                                                       " vs index dim " + std::to_string(dim_));
    }
    detail::TopKSelector top(std::min(k, ids_.size()), ids_);
    search(0, q.components().data(), 0.0, top);
    return top.take_neighbors();
}

std::vector<std::vector<Neighbor>>
BallTreeIndex::knn_batch(std::span<const UnitVector> queries, std::size_t k) const {
    std::vector<std::vector<Neighbor>> out(queries.size());
    if (ids_.empty() || k == 0) {
        return out;
    }
    for (const auto& q : queries) {
        if (q.dim() != dim_) {
            throw Error(ErrorCode::kDimensionMismatch, "query dim " + std::to_string(q.dim()) +
                                                           " vs index dim " + std::to_string(dim_));
        }
    }
    const auto n = static_cast<std::int64_t>(queries.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = knn(queries[static_cast<std::size_t>(i)], k);
    }
    return out;
}

std::optional<UnitVector>
BallTreeIndex::vector_of(const std::string& id) const {
    auto it = position_.find(id);
    if (it == position_.end()) {
        return std::nullopt;
    }
    return UnitVector::normalize(point(it->second));
}

}  // namespace isearch
