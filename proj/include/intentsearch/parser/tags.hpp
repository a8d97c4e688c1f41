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

#include <string>
#include <vector>

#include "intentsearch/core/intent.hpp"
#include "intentsearch/embed/provider.hpp"

namespace isearch {

struct TagEntry {
    std::string collection;
    std::string tag;
};

struct TagSuggestion {
    std::string element_text;
    std::string tag;
    std::string collection;
    double similarity = 0.0;
};

/// For each element, the top_n vocabulary tags by text-embedding cosine
/// similarity (descending, ties by tag then collection). Non-visual elements
/// get an empty list. Throws Error(kInvalidArgument) for an empty vocabulary
/// or top_n == 0.
std::vector<std::vector<TagSuggestion>> match_elements_to_tags(const std::vector<IntentElement>& elements,
                                                               const std::vector<TagEntry>& vocab,
                                                               const EmbeddingProvider& embedder,
                                                               std::size_t top_n);

}  // namespace isearch
