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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "intentsearch/core/eth_price.hpp"
#include "intentsearch/embed/provider.hpp"

namespace isearch {

struct SyntheticRecord {
    std::string id;
    std::vector<std::size_t> attributes;  // indices into attribute_names
    std::string collection;
    EthPrice price;
};

/// A gallery whose images are solid rectangles, one per attribute, in
/// disjoint regions of a fixed canvas. Attribute i embeds to basis e_i and the
/// last dimension is reserved for "nothing recognized", which turns ranking
/// behavior into plain set arithmetic.
struct SyntheticGallerySpec {
    std::size_t dim = 0;
    std::uint32_t canvas_width = 0;
    std::uint32_t canvas_height = 0;
    std::vector<std::string> attribute_names;
    std::vector<PixelBox> regions;  // aligned with attribute_names
    std::vector<SyntheticRecord> records;

    /// Lays attributes out on a square grid of `cell`-pixel cells with a
    /// 2-pixel gutter. dim defaults to attributes + 1.
    static SyntheticGallerySpec
    grid(std::vector<std::string> attribute_names, std::uint32_t cell = 16,
         std::optional<std::size_t> dim = std::nullopt);

    std::size_t
    unknown_index() const {
        return dim - 1;
    }

    /// Throws Error(kInvalidArgument) listing the first broken invariant.
    void
    validate() const;

    nlohmann::json
    to_json() const;
    static SyntheticGallerySpec
    from_json(const nlohmann::json& j);
};

/// Fill color of attribute i: a saturated hue, never near white or black.
std::array<std::uint8_t, 3> attribute_color(std::size_t index);

/// Foreground = saturated and reasonably bright. Black, white and the 10%
/// dimmed pixels left outside a regularized mask all count as background.
bool is_foreground(const Image& image, std::uint32_t x, std::uint32_t y);

/// Black canvas with each listed attribute drawn in its region.
Image render_attributes(const SyntheticGallerySpec& spec, std::span<const std::size_t> attributes);

/// Attributes whose names occur as contiguous token runs of `text`
/// (case-folded, split on non-alphanumerics), in index order.
std::vector<std::size_t> match_attributes(const SyntheticGallerySpec& spec, std::string_view text);

/// normalize(sum of matched bases), or the unknown basis when nothing matches.
UnitVector embed_text_synthetic(const SyntheticGallerySpec& spec, std::string_view text);

/// An attribute is present when more than half of its region is foreground
/// and, if a mask is given, more than half of the region is mask-covered.
/// Throws Error(kDimensionMismatch) when the image is not canvas-sized.
UnitVector embed_image_synthetic(const SyntheticGallerySpec& spec, const Image& image,
                                 const RegionMask* mask = nullptr);

class SyntheticEmbedder final : public EmbeddingProvider {
public:
    explicit SyntheticEmbedder(SyntheticGallerySpec spec);

    std::size_t
    dim() const override {
        return spec_.dim;
    }
    std::vector<UnitVector>
    embed_texts(std::span<const std::string> texts) const override;
    std::vector<UnitVector>
    embed_images(std::span<const Image> images) const override;

    const SyntheticGallerySpec&
    spec() const {
        return spec_;
    }

private:
    SyntheticGallerySpec spec_;
};

}  // namespace isearch
