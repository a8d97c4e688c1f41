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

#include "intentsearch/imaging/image.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>

#include <openssl/evp.h>
#include <png.h>

#include "intentsearch/core/error.hpp"

namespace isearch {

Image
Image::filled(std::uint32_t width, std::uint32_t height, std::uint32_t channels,
              std::uint8_t value) {
    if (channels != 1 && channels != 3) {
        throw Error(ErrorCode::kInvalidArgument, "images have 1 or 3 channels");
    }
    Image img;
    img.width = width;
    img.height = height;
    img.channels = channels;
    img.pixels.assign(static_cast<std::size_t>(width) * height * channels, value);
    return img;
}

RegionMask
RegionMask::from_box(std::uint32_t width, std::uint32_t height, PixelBox box) {
    RegionMask m;
    m.width = width;
    m.height = height;
    m.source_box = box;
    m.bits.assign(static_cast<std::size_t>(width) * height, 0);
    for (std::uint32_t y = box.y0; y < std::min(box.y1, height); ++y) {
        for (std::uint32_t x = box.x0; x < std::min(box.x1, width); ++x) {
            m.bits[static_cast<std::size_t>(y) * width + x] = 1;
        }
    }
    return m;
}

std::size_t
RegionMask::count() const {
    return static_cast<std::size_t>(std::count_if(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; }));
}

void
RegionMask::validate() const {
    if (bits.size() != static_cast<std::size_t>(width) * height) {
        throw Error(ErrorCode::kInvalidArgument, "mask bit count does not match its dimensions");
    }
    if (count() == 0) {
        throw Error(ErrorCode::kInvalidArgument, "mask selects no pixels");
    }
}

namespace {

struct PngImageGuard {
    png_image image{};
    PngImageGuard() {
        image.version = PNG_IMAGE_VERSION;
    }
    ~PngImageGuard() {
        png_image_free(&image);
    }
};

}  // namespace

std::vector<std::uint8_t>
encode_png(const Image& img) {
    if (img.pixels.size() != img.pixel_count() * img.channels || img.width == 0 || img.height == 0) {
        throw Error(ErrorCode::kInvalidArgument, "cannot encode a malformed image");
    }
    PngImageGuard g;
    g.image.width = img.width;
    g.image.height = img.height;
    g.image.format = img.channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&g.image, nullptr, &size, 0, img.pixels.data(), 0, nullptr)) {
        throw Error(ErrorCode::kInvalidArgument, std::string("png encode: ") + g.image.message);
    }
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&g.image, out.data(), &size, 0, img.pixels.data(), 0, nullptr)) {
        throw Error(ErrorCode::kInvalidArgument, std::string("png encode: ") + g.image.message);
    }
    out.resize(size);
    return out;
}

Image
decode_png(std::span<const std::uint8_t> bytes) {
    PngImageGuard g;
    if (!png_image_begin_read_from_memory(&g.image, bytes.data(), bytes.size())) {
        throw Error(ErrorCode::kInvalidArgument, std::string("png decode: ") + g.image.message);
    }
    const bool gray = (g.image.format & PNG_FORMAT_FLAG_COLOR) == 0;
    g.image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    Image img;
    img.width = g.image.width;
    img.height = g.image.height;
    img.channels = gray ? 1 : 3;
    img.pixels.resize(PNG_IMAGE_SIZE(g.image));
    png_color black{0, 0, 0};
    if (!png_image_finish_read(&g.image, &black, img.pixels.data(), 0, nullptr)) {
        throw Error(ErrorCode::kInvalidArgument, std::string("png decode: ") + g.image.message);
    }
    return img;
}

Image
read_png_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::kIoError, "cannot open " + path);
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_png(bytes);
}

void
write_png_file(const std::string& path, const Image& image) {
    auto bytes = encode_png(image);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::kIoError, "cannot write " + path);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::string
base64_encode(std::span<const std::uint8_t> bytes) {
    std::string out(4 * ((bytes.size() + 2) / 3), '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                  static_cast<int>(bytes.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

std::vector<std::uint8_t>
base64_decode(std::string_view text) {
    std::string clean;
    clean.reserve(text.size());
    for (char c : text) {
        if (c != '\n' && c != '\r' && c != ' ') {
            clean.push_back(c);
        }
    }
    if (clean.size() % 4 != 0) {
        throw Error(ErrorCode::kInvalidArgument, "base64 length is not a multiple of 4");
    }
    std::vector<std::uint8_t> out(3 * clean.size() / 4);
    const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(clean.data()),
                                  static_cast<int>(clean.size()));
    if (n < 0) {
        throw Error(ErrorCode::kInvalidArgument, "malformed base64");
    }
    // EVP_DecodeBlock keeps the padding bytes; drop one per '='.
    std::size_t pad = 0;
    if (!clean.empty() && clean.back() == '=') {
        ++pad;
        if (clean.size() >= 2 && clean[clean.size() - 2] == '=') {
            ++pad;
        }
    }
    out.resize(static_cast<std::size_t>(n) - pad);
    return out;
}

}  // namespace isearch
