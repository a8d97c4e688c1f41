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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace isearch {

/// 8-bit grayscale (1 channel) or RGB (3 channels), row-major, interleaved.
struct Image {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t channels = 3;
    std::vector<std::uint8_t> pixels;

    static Image
    filled(std::uint32_t width, std::uint32_t height, std::uint32_t channels, std::uint8_t value);

    std::size_t
    pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }

    std::uint8_t*
    at(std::uint32_t x, std::uint32_t y) {
        return pixels.data() + (static_cast<std::size_t>(y) * width + x) * channels;
    }
    const std::uint8_t*
    at(std::uint32_t x, std::uint32_t y) const {
        return pixels.data() + (static_cast<std::size_t>(y) * width + x) * channels;
    }

    bool
    same_shape(const Image& other) const {
        return width == other.width && height == other.height && channels == other.channels;
    }

    friend bool operator==(const Image&, const Image&) = default;
};

/// Pixel rectangle, inclusive of (x0, y0), exclusive of (x1, y1).
struct PixelBox {
    std::uint32_t x0 = 0;
    std::uint32_t y0 = 0;
    std::uint32_t x1 = 0;
    std::uint32_t y1 = 0;

    std::size_t
    area() const {
        return x1 > x0 && y1 > y0 ? static_cast<std::size_t>(x1 - x0) * (y1 - y0) : 0;
    }
    bool
    contains(std::uint32_t x, std::uint32_t y) const {
        return x >= x0 && x < x1 && y >= y0 && y < y1;
    }

    friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

/// Binary selection mask (1 = selected element).
struct RegionMask {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::uint8_t> bits;  // one byte per pixel, 0 or 1
    PixelBox source_box;

    /// Mask whose set bits are exactly the box interior.
    static RegionMask
    from_box(std::uint32_t width, std::uint32_t height, PixelBox box);

    bool
    test(std::uint32_t x, std::uint32_t y) const {
        return bits[static_cast<std::size_t>(y) * width + x] != 0;
    }
    std::size_t
    count() const;

    /// Throws Error(kInvalidArgument) unless bits match the dimensions and at
    /// least one bit is set.
    void
    validate() const;

    friend bool operator==(const RegionMask&, const RegionMask&) = default;
};

/// PNG codec (libpng). Decoding yields 1 or 3 channels; alpha is composited
/// onto black. Throws Error(kInvalidArgument) for undecodable data.
std::vector<std::uint8_t> encode_png(const Image& image);
Image decode_png(std::span<const std::uint8_t> bytes);

Image read_png_file(const std::string& path);
void write_png_file(const std::string& path, const Image& image);

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws Error(kInvalidArgument) on malformed input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace isearch
