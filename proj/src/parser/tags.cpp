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

#include "intentsearch/parser/tags.hpp"

#include <algorithm>

#include "intentsearch/core/error.hpp"

namespace isearch {

std::vector<std::vector<TagSuggestion>>
match_elements_to_tags(const std::vector<IntentElement>& elements, const std::vector<TagEntry>& vocab,
                       const EmbeddingProvider& embedder, std::size_t top_n) {
    if (vocab.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "tag vocabulary is empty");
    }
    if (top_n == 0) {
        throw Error(ErrorCode::kInvalidArgument, "top_n must be at least 1");
    }
    std::vector<std::string> texts;
    std::vector<std::size_t> element_slot(elements.size(), 0);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].kind == ElementKind::kVisual) {
            element_slot[i] = texts.size();
            texts.push_back(elements[i].text);
        }
    }
    std::vector<std::vector<TagSuggestion>> out(elements.size());
    if (texts.empty()) {
        return out;
    }
    const std::size_t first_tag = texts.size();
    for (const auto& t : vocab) {
        texts.push_back(t.tag);
    }
    const auto vecs = embedder.embed_texts(texts);

    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].kind != ElementKind::kVisual) {
            continue;
        }
        const auto& q = vecs[element_slot[i]];
        auto& list = out[i];
        for (std::size_t t = 0; t < vocab.size(); ++t) {
            list.push_back({elements[i].text, vocab[t].tag, vocab[t].collection, dot(q, vecs[first_tag + t])});
        }
        std::sort(list.begin(), list.end(), [](const TagSuggestion& a, const TagSuggestion& b) {
            if (a.similarity != b.similarity) {
                return a.similarity > b.similarity;
            }
            if (a.tag != b.tag) {
                return a.tag < b.tag;
            }
            return a.collection < b.collection;
        });
        if (list.size() > top_n) {
            list.resize(top_n);
        }
    }
    return out;
}

}  // namespace isearch
