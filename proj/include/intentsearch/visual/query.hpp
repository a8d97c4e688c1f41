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
#include <vector>

#include "intentsearch/core/ranking_config.hpp"
#include "intentsearch/core/unit_vector.hpp"
#include "intentsearch/embed/provider.hpp"

namespace isearch {

/// normalize(0.5 * (embed(mask_r(I)) + embed(mask_w(I)))). Throws
/// Error(kZeroVector) if the two composites embed to opposite directions.
UnitVector visual_query_embedding(const Image& image, const RegionMask& mask, const EmbeddingProvider& embedder,
                                  double alpha0 = 0.9, double alpha1 = 0.1);

enum class ElementRelation { kIntersection, kUnion };

/// Intersection: one vector, the normalized mean. Union: inputs unchanged.
/// Throws Error(kInvalidArgument) for an empty list.
std::vector<UnitVector> combine_selected_elements(std::span<const UnitVector> vectors, ElementRelation relation);

}  // namespace isearch
