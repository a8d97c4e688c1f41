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

#include "intentsearch/index/brute_force.hpp"

#include <algorithm>

#include <omp.h>

#include "intentsearch/core/error.hpp"
#include "top_k.hpp"

namespace isearch {

double
cosine_distance(const UnitVector& u, const UnitVector& v) {
    if (u.dim() != v.dim()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "cosine_distance: " + std::to_string(u.dim()) + " vs " +
                        std::to_string(v.dim()));
    }
    return distance_from_dot(dot_kernel(u.components().data(), v.components().data(), u.dim()));
}

std::vector<Neighbor>
brute_force_knn(std::span<const VectorRecord> records, const UnitVector& q, std::size_t k) {
    std::vector<Neighbor> all;
    all.reserve(records.size());
    for (const auto& r : records) {
        all.push_back({r.id, cosine_distance(q, r.vector)});
    }
    std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
        return neighbor_before(a.distance, a.id, b.distance, b.id);
    });
    if (all.size() > k) {
        all.resize(k);
    }
    return all;
}

VectorTable
VectorTable::from_records(std::span<const VectorRecord> records) {
    VectorTable t;
    if (records.empty()) {
        return t;
    }
    t.dim_ = records.front().vector.dim();
    t.ids_.reserve(records.size());
    t.data_.reserve(records.size() * t.dim_);
    for (const auto& r : records) {
        if (r.vector.dim() != t.dim_) {
            throw Error(ErrorCode::kDimensionMismatch, "record '" + r.id + "' has dim " +
                                                           std::to_string(r.vector.dim()) +
                                                           ", expected " + std::to_string(t.dim_));
        }
        t.ids_.push_back(r.id);
        auto c = r.vector.components();
        t.data_.insert(t.data_.end(), c.begin(), c.end());
    }
    return t;
}

namespace {

void
check_query(const VectorTable& table, const UnitVector& q) {
    if (table.size() > 0 && q.dim() != table.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "query dim " + std::to_string(q.dim()) +
                                                       " vs table dim " +
                                                       std::to_string(table.dim()));
    }
}


}  // namespace

std::vector<Neighbor>
scan_knn(const VectorTable& table, const UnitVector& q, std::size_t k) {
    check_query(table, q);
    std::vector<Neighbor> out;
    if (table.size() == 0 || k == 0) {
        return out;
    }
    const float* qp = q.components().data();
    const std::size_t dim = table.dim();
    std::vector<std::pair<double, std::uint32_t>> best;
    best.reserve(std::min(k, table.size()) + 1);
    auto before = [&](const std::pair<double, std::uint32_t>& a,
                      const std::pair<double, std::uint32_t>& b) {
        return neighbor_before(a.first, table.id(a.second), b.first, table.id(b.second));
    };
    for (std::size_t r = 0; r < table.size(); ++r) {
        std::pair<double, std::uint32_t> e{distance_from_dot(dot_kernel(qp, table.row(r), dim)),
                                           static_cast<std::uint32_t>(r)};
        if (best.size() < k) {
            best.push_back(e);
            std::push_heap(best.begin(), best.end(), before);
        } else if (before(e, best.front())) {
            std::pop_heap(best.begin(), best.end(), before);
            best.back() = e;
            std::push_heap(best.begin(), best.end(), before);
        }
    }
    std::sort(best.begin(), best.end(), before);
    out.reserve(best.size());
    for (const auto& [d, r] : best) {
        out.push_back({table.id(r), d});
    }
    return out;
}

std::vector<Neighbor>
scan_knn_parallel(const VectorTable& table, const UnitVector& q, std::size_t k) {
    check_query(table, q);
    if (table.size() == 0 || k == 0) {
        return {};
    }
    const auto& ids = table.ids();
    const float* qp = q.components().data();
    const std::size_t dim = table.dim();
    const auto n = static_cast<std::int64_t>(table.size());

    std::vector<std::vector<detail::TopKSelector::Entry>> partials;
#pragma omp parallel
    {
        detail::TopKSelector local(k, ids);
#pragma omp for schedule(static) nowait
        for (std::int64_t r = 0; r < n; ++r) {
            local.offer(distance_from_dot(dot_kernel(qp, table.row(static_cast<std::size_t>(r)), dim)),
                        static_cast<std::uint32_t>(r));
        }
        auto mine = local.take_sorted();
#pragma omp critical
        partials.push_back(std::move(mine));
    }

    detail::TopKSelector merged(k, ids);
    for (const auto& part : partials) {
        for (const auto& e : part) {
            merged.offer(e.distance, e.key);
        }
    }
    return merged.take_neighbors();
}

}  // namespace isearch
