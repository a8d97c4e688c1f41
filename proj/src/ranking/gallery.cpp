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

#include "intentsearch/ranking/gallery.hpp"

#include "intentsearch/core/error.hpp"

namespace isearch {

Gallery
Gallery::build(std::vector<ImageRecord> records, std::vector<UnitVector> vectors, std::size_t leaf_size) {
    if (records.size() != vectors.size()) {
        throw Error(ErrorCode::kInvalidArgument, std::to_string(records.size()) + " records but " +
                                                     std::to_string(vectors.size()) + " vectors");
    }
    Gallery g;
    std::vector<VectorRecord> vr;
    vr.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!g.position_.emplace(records[i].id, i).second) {
            throw Error(ErrorCode::kDuplicateId, "duplicate image id '" + records[i].id + "'");
        }
        vr.push_back({records[i].id, vectors[i]});
    }
    g.index_ = BallTreeIndex::build(vr, leaf_size);
    g.records_ = std::move(records);
    g.vectors_ = std::move(vectors);
    return g;
}

std::optional<std::size_t>
Gallery::position(const std::string& id) const {
    const auto it = position_.find(id);
    if (it == position_.end()) {
        return std::nullopt;
    }
    return it->second;
}

const ImageRecord&
Gallery::record(const std::string& id) const {
    const auto p = position(id);
    if (!p) {
        throw Error(ErrorCode::kNotFound, "unknown image id '" + id + "'");
    }
    return records_[*p];
}

const UnitVector&
Gallery::vector(const std::string& id) const {
    const auto p = position(id);
    if (!p) {
        throw Error(ErrorCode::kNotFound, "unknown image id '" + id + "'");
    }
    return vectors_[*p];
}

}  // namespace isearch
