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

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "intentsearch/core/records.hpp"
#include "intentsearch/core/unit_vector.hpp"
#include "intentsearch/index/ball_tree.hpp"

namespace isearch {

/// Records, their embeddings and the ball tree over them. Immutable once
/// built; safe to share across request threads.
class Gallery {
public:
    Gallery() = default;

    /// records[i] is embedded by vectors[i]. Throws Error(kInvalidArgument)
    /// on a count mismatch, Error(kDuplicateId), Error(kDimensionMismatch).
    static Gallery
    build(std::vector<ImageRecord> records, std::vector<UnitVector> vectors,
          std::size_t leaf_size = kDefaultLeafSize);

    std::size_t
    size() const {
        return records_.size();
    }
    std::size_t
    dim() const {
        return index_.dim();
    }
    bool
    empty() const {
        return records_.empty();
    }

    const std::vector<ImageRecord>&
    records() const {
        return records_;
    }
    const std::vector<UnitVector>&
    vectors() const {
        return vectors_;
    }
    const BallTreeIndex&
    index() const {
        return index_;
    }

    std::optional<std::size_t>
    position(const std::string& id) const;

    /// Throws Error(kNotFound).
    const ImageRecord&
    record(const std::string& id) const;
    const UnitVector&
    vector(const std::string& id) const;

private:
    std::vector<ImageRecord> records_;
    std::vector<UnitVector> vectors_;
    std::unordered_map<std::string, std::size_t> position_;
    BallTreeIndex index_;
};

}  // namespace isearch
