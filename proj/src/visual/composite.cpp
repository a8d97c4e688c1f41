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

#include "intentsearch/visual/composite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "intentsearch/core/error.hpp"

namespace isearch {

namespace {

void
check_mask(const Image& image, const RegionMask& mask) {
    if (mask.width != image.width || mask.height != image.height) {
        throw Error(ErrorCode::kDimensionMismatch, "mask is " + std::to_string(mask.width) + "x" +
                                                       std::to_string(mask.height) + ", image is " +
                                                       std::to_string(image.width) + "x" +
                                                       std::to_string(image.height));
    }
    mask.validate();
}

void
check_alphas(double alpha0, double alpha1) {
    if (!(alpha0 >= 0.0 && alpha1 >= 0.0) || std::abs(alpha0 + alpha1 - 1.0) > 1e-9) {
        throw Error(ErrorCode::kInvalidArgument, "alpha0 + alpha1 must equal 1");
    }
}

// 256-entry table of floor(alpha1 * v + 0.5), shared by both kernels.
std::array<std::uint8_t, 256>
scale_table(double alpha1) {
    std::array<std::uint8_t, 256> t{};
    for (int v = 0; v < 256; ++v) {
        const double s = std::floor(alpha1 * v + 0.5);
        t[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(std::min(255.0, s));
    }
    return t;
}

template <typename PixelFn>
Image
per_pixel(const Image& image, const RegionMask& mask, bool parallel, PixelFn fn) {
    Image out = image;
    const std::size_t c = image.channels;
    const auto h = static_cast<std::int64_t>(image.height);
    const std::size_t w = image.width;
#pragma omp parallel for schedule(static) if (parallel && image.pixel_count() >= 4096)
    for (std::int64_t y = 0; y < h; ++y) {
        const std::size_t row = static_cast<std::size_t>(y) * w;
        for (std::size_t x = 0; x < w; ++x) {
            const bool inside = mask.bits[row + x] != 0;
            std::uint8_t* p = out.pixels.data() + (row + x) * c;
            for (std::size_t k = 0; k < c; ++k) {
                p[k] = fn(inside, p[k], (row + x) * c + k);
            }
        }
    }
    return out;
}

Image
black_impl(const Image& image, const RegionMask& mask, double alpha0, double alpha1, bool parallel) {
    check_mask(image, mask);
    check_alphas(alpha0, alpha1);
    const auto table = scale_table(alpha1);
    return per_pixel(image, mask, parallel,
                     [&](bool inside, std::uint8_t v, std::size_t) { return inside ? v : table[v]; });
}

Image
white_impl(const Image& image, const RegionMask& mask, bool parallel) {
    check_mask(image, mask);
    return per_pixel(image, mask, parallel,
                     [](bool inside, std::uint8_t v, std::size_t) { return inside ? v : std::uint8_t{255}; });
}

Image
swap_impl(const Image& original, const Image& edited, const RegionMask& mask, bool parallel) {
    if (!original.same_shape(edited)) {
        throw Error(ErrorCode::kDimensionMismatch, "edited image shape differs from the original");
    }
    check_mask(original, mask);
    return per_pixel(original, mask, parallel, [&](bool inside, std::uint8_t v, std::size_t i) {
        return inside ? edited.pixels[i] : v;
    });
}

}  // namespace

Image
regularized_black_composite(const Image& image, const RegionMask& mask, double alpha0, double alpha1) {
    return black_impl(image, mask, alpha0, alpha1, true);
}

Image
white_composite(const Image& image, const RegionMask& mask) {
    return white_impl(image, mask, true);
}

Image
swap_element(const Image& original, const Image& edited, const RegionMask& mask) {
    return swap_impl(original, edited, mask, true);
}

namespace serial {

Image
regularized_black_composite(const Image& image, const RegionMask& mask, double alpha0, double alpha1) {
    return black_impl(image, mask, alpha0, alpha1, false);
}

Image
white_composite(const Image& image, const RegionMask& mask) {
    return white_impl(image, mask, false);
}

Image
swap_element(const Image& original, const Image& edited, const RegionMask& mask) {
    return swap_impl(original, edited, mask, false);
}

}  // namespace serial

}  // namespace isearch
