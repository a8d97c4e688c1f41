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

#include "intentsearch/visual/segment.hpp"

#include "intentsearch/core/error.hpp"

namespace isearch {

void
check_box(const Image& image, const PixelBox& box) {
    if (box.area() == 0) {
        throw Error(ErrorCode::kInvalidBox, "box must have nonzero width and height");
    }
    if (box.x1 > image.width || box.y1 > image.height) {
        throw Error(ErrorCode::kInvalidBox, "box (" + std::to_string(box.x0) + "," + std::to_string(box.y0) + "," +
                                                std::to_string(box.x1) + "," + std::to_string(box.y1) +
                                                ") exceeds the " + std::to_string(image.width) + "x" +
                                                std::to_string(image.height) + " image");
    }
}

RegionMask
BoxFillSegmenter::segment(const Image& image, const PixelBox& box) const {
    return RegionMask::from_box(image.width, image.height, box);
}

RemoteSegmenter::RemoteSegmenter(const std::string& endpoint, HttpOptions options)
    : endpoint_(Endpoint::parse(endpoint)), options_(std::move(options)) {}

RegionMask
RemoteSegmenter::segment(const Image& image, const PixelBox& box) const {
    const nlohmann::json body = {{"image", base64_encode(encode_png(image))},
                                 {"box", {box.x0, box.y0, box.x1, box.y1}}};
    const auto reply = post_json(endpoint_, "/segment", body, ErrorCode::kSegmenterUnavailable, options_);
    if (!reply.is_object() || !reply.contains("mask") || !reply["mask"].is_string()) {
        throw Error(ErrorCode::kSegmenterUnavailable, "segment reply lacks \"mask\"");
    }
    Image m;
    try {
        m = decode_png(base64_decode(reply["mask"].get<std::string>()));
    } catch (const Error& e) {
        throw Error(ErrorCode::kSegmenterUnavailable, std::string("bad mask payload: ") + e.what());
    }
    if (m.width < image.width || m.height < image.height) {
        throw Error(ErrorCode::kSegmenterUnavailable, "segmenter returned a mask smaller than the image");
    }
    RegionMask mask;
    mask.width = image.width;
    mask.height = image.height;
    mask.source_box = box;
    mask.bits.assign(image.pixel_count(), 0);
    for (std::uint32_t y = 0; y < image.height; ++y) {
        for (std::uint32_t x = 0; x < image.width; ++x) {
            mask.bits[static_cast<std::size_t>(y) * image.width + x] = m.at(x, y)[0] >= 128 ? 1 : 0;
        }
    }
    if (mask.count() == 0) {
        throw Error(ErrorCode::kSegmenterUnavailable, "segmenter returned an empty mask");
    }
    return mask;
}

RegionMask
segment(const Image& image, const PixelBox& box, const SegmentationProvider& provider) {
    check_box(image, box);
    auto mask = provider.segment(image, box);
    if (mask.width != image.width || mask.height != image.height) {
        throw Error(ErrorCode::kSegmenterUnavailable, "mask dimensions differ from the image");
    }
    mask.validate();
    return mask;
}

}  // namespace isearch
