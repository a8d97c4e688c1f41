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

#include "intentsearch/core/unit_vector.hpp"
#include "intentsearch/imaging/image.hpp"

namespace isearch {

/// Text and image encoder sharing one embedding space. Every returned vector
/// has dim() components and unit norm; implementations must tolerate
/// concurrent calls.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;

    virtual std::size_t
    dim() const = 0;

    virtual std::vector<UnitVector>
    embed_texts(std::span<const std::string> texts) const = 0;

    virtual std::vector<UnitVector>
    embed_images(std::span<const Image> images) const = 0;

    UnitVector
    embed_text(const std::string& text) const {
        return embed_texts(std::span<const std::string>(&text, 1)).front();
    }

    UnitVector
    embed_image(const Image& image) const {
        return embed_images(std::span<const Image>(&image, 1)).front();
    }
};

}  // namespace isearch
