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

#include <span>
#include <string>
#include <vector>

#include "intentsearch/index/distance.hpp"

namespace isearch {

/// Serial full scan over records. This is the reference the tree and the
/// parallel scan are tested against; keep it obviously correct.
std::vector<Neighbor> brute_force_knn(std::span<const VectorRecord> records, const UnitVector& q,
                                      std::size_t k);

/// Row-major contiguous copy of a record set, for scan kernels.
class VectorTable {
public:
    VectorTable() = default;

    /// Throws Error(kDimensionMismatch) on mixed dims.
    static VectorTable
    from_records(std::span<const VectorRecord> records);

    std::size_t
    dim() const {
        return dim_;
    }
    std::size_t
    size() const {
        return ids_.size();
    }
    const std::string&
    id(std::size_t row) const {
        return ids_[row];
    }
    const std::vector<std::string>&
    ids() const {
        return ids_;
    }
    const float*
    row(std::size_t r) const {
        return data_.data() + r * dim_;
    }

private:
    std::size_t dim_ = 0;
    std::vector<std::string> ids_;
    std::vector<float> data_;
};

/// Serial scan over a contiguous table.
std::vector<Neighbor> scan_knn(const VectorTable& table, const UnitVector& q, std::size_t k);

/// OpenMP scan: per-thread top-k over row blocks, merged. Same output as scan_knn.
std::vector<Neighbor> scan_knn_parallel(const VectorTable& table, const UnitVector& q,
                                        std::size_t k);

}  // namespace isearch
