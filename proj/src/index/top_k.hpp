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
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "intentsearch/index/distance.hpp"

namespace isearch::detail {

/// Bounded selection of the k best (distance, id) pairs. Keys index into an
/// id array owned by the caller; the worst kept entry sits at heap front.
class TopKSelector {
public:
    struct Entry {
        double distance;
        std::uint32_t key;
    };

    struct Better {
        const std::vector<std::string>* ids;
        bool
        operator()(const Entry& a, const Entry& b) const {
            return neighbor_before(a.distance, (*ids)[a.key], b.distance, (*ids)[b.key]);
        }
    };

    TopKSelector(std::size_t k, const std::vector<std::string>& ids) : k_(k), ids_(&ids) {
        heap_.reserve(k);
    }

    bool
    full() const {
        return heap_.size() >= k_;
    }

    /// Distance of the worst kept entry, +inf until full.
    double
    worst() const {
        return full() ? heap_.front().distance : std::numeric_limits<double>::infinity();
    }

    void
    offer(double distance, std::uint32_t key) {
        if (k_ == 0) {
            return;
        }
        Entry e{distance, key};
        if (heap_.size() < k_) {
            heap_.push_back(e);
            std::push_heap(heap_.begin(), heap_.end(), better());
        } else if (better()(e, heap_.front())) {
            std::pop_heap(heap_.begin(), heap_.end(), better());
            heap_.back() = e;
            std::push_heap(heap_.begin(), heap_.end(), better());
        }
    }

    std::vector<Entry>
    take_sorted() {
        std::sort(heap_.begin(), heap_.end(), better());
        return std::move(heap_);
    }

    std::vector<Neighbor>
    take_neighbors() {
        std::vector<Neighbor> out;
        for (const auto& e : take_sorted()) {
            out.push_back({(*ids_)[e.key], e.distance});
        }
        return out;
    }

private:
    Better
    better() const {
        return Better{ids_};
    }

    std::size_t k_;
    const std::vector<std::string>* ids_;
    std::vector<Entry> heap_;
};

}  // namespace isearch::detail
