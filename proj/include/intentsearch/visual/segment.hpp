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

#include <memory>
#include <string>

#include "intentsearch/imaging/image.hpp"
#include "intentsearch/net/http_client.hpp"

namespace isearch {

/// Throws Error(kInvalidBox) unless the box has nonzero area and lies inside
/// the image.
void check_box(const Image& image, const PixelBox& box);

/// Box prompt -> binary mask. Returned masks always match the image size.
class SegmentationProvider {
public:
    virtual ~SegmentationProvider() = default;

    virtual RegionMask
    segment(const Image& image, const PixelBox& box) const = 0;
};

/// Mask = exactly the box interior. Deterministic; the test oracle.
class BoxFillSegmenter final : public SegmentationProvider {
public:
    RegionMask
    segment(const Image& image, const PixelBox& box) const override;
};

/// POST {endpoint}/segment {"image":b64png,"box":[x0,y0,x1,y1]} ->
/// {"mask":b64png}. Nonzero mask pixels (>= 128) are selected; masks larger
/// than the image are clipped.
class RemoteSegmenter final : public SegmentationProvider {
public:
    RemoteSegmenter(const std::string& endpoint, HttpOptions options = {});

    RegionMask
    segment(const Image& image, const PixelBox& box) const override;

private:
    Endpoint endpoint_;
    HttpOptions options_;
};

/// Validates the box, runs the provider and checks the mask it returns.
RegionMask segment(const Image& image, const PixelBox& box, const SegmentationProvider& provider);

}  // namespace isearch
