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

#include "intentsearch/visual/query.hpp"

#include "intentsearch/core/error.hpp"
#include "intentsearch/visual/composite.hpp"

namespace isearch {

UnitVector
visual_query_embedding(const Image& image, const RegionMask& mask, const EmbeddingProvider& embedder,
                       double alpha0, double alpha1) {
    const std::vector<Image> composites = {regularized_black_composite(image, mask, alpha0, alpha1),
                                           white_composite(image, mask)};
    const auto v = embedder.embed_images(composites);
    if (v.size() != 2) {
        throw Error(ErrorCode::kEmbedderUnavailable, "embedder returned the wrong number of vectors");
    }
    return mean_direction(v);
}

std::vector<UnitVector>
combine_selected_elements(std::span<const UnitVector> vectors, ElementRelation relation) {
    if (vectors.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "no selected elements to combine");
    }
    if (relation == ElementRelation::kUnion || vectors.size() == 1) {
        return {vectors.begin(), vectors.end()};
    }
    return {mean_direction(vectors)};
}

}  // namespace isearch
