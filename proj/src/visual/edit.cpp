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

#include "intentsearch/visual/edit.hpp"

#include <array>
#include <string_view>

#include "intentsearch/core/error.hpp"
#include "intentsearch/embed/synthetic.hpp"
#include "intentsearch/parser/lexicon.hpp"
#include "intentsearch/core/intent.hpp"
#include "intentsearch/visual/composite.hpp"

namespace isearch {

namespace {

struct NamedColor {
    std::string_view name;
    std::array<std::uint8_t, 3> rgb;
};

constexpr NamedColor kColors[] = {
    {"red", {230, 0, 0}},     {"orange", {230, 115, 0}}, {"yellow", {230, 230, 0}}, {"green", {0, 200, 0}},
    {"blue", {0, 0, 230}},    {"purple", {128, 0, 200}}, {"pink", {230, 0, 140}},   {"brown", {140, 70, 0}},
    {"gold", {230, 180, 0}},  {"golden", {230, 180, 0}}, {"cyan", {0, 200, 230}},   {"magenta", {230, 0, 230}},
};

const NamedColor*
named_color(const std::string& instruction) {
    // last color mentioned wins: "turn the red cap blue"
    const NamedColor* found = nullptr;
    for (const auto& tok : tokenize_query(instruction)) {
        const auto t = fold_case(tok);
        for (const auto& c : kColors) {
            if (t == c.name) {
                found = &c;
            }
        }
    }
    return found;
}

Image
to_rgb(const Image& img) {
    if (img.channels == 3) {
        return img;
    }
    Image out = Image::filled(img.width, img.height, 3, 0);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        out.pixels[i * 3] = out.pixels[i * 3 + 1] = out.pixels[i * 3 + 2] = img.pixels[i];
    }
    return out;
}

}  // namespace

Image
StubEditProvider::edit(const Image& image, const std::string& instruction) const {
    Image out = image;
    const auto* color = named_color(instruction);
    for (std::uint32_t y = 0; y < image.height; ++y) {
        for (std::uint32_t x = 0; x < image.width; ++x) {
            std::uint8_t* p = out.at(x, y);
            if (image.channels == 1) {
                p[0] = static_cast<std::uint8_t>(255 - p[0]);
            } else if (color != nullptr) {
                if (is_foreground(image, x, y)) {
                    p[0] = color->rgb[0];
                    p[1] = color->rgb[1];
                    p[2] = color->rgb[2];
                }
            } else {
                const std::uint8_t r = p[0];
                p[0] = p[1];
                p[1] = p[2];
                p[2] = r;
            }
        }
    }
    return out;
}

RemoteEditProvider::RemoteEditProvider(const std::string& endpoint, HttpOptions options)
    : endpoint_(Endpoint::parse(endpoint)), options_(std::move(options)) {}

Image
RemoteEditProvider::edit(const Image& image, const std::string& instruction) const {
    const nlohmann::json body = {{"image", base64_encode(encode_png(image))}, {"instruction", instruction}};
    const auto reply = post_json(endpoint_, "/edit", body, ErrorCode::kEditorUnavailable, options_);
    if (!reply.is_object() || !reply.contains("image") || !reply["image"].is_string()) {
        throw Error(ErrorCode::kEditorUnavailable, "edit reply lacks \"image\"");
    }
    Image edited;
    try {
        edited = decode_png(base64_decode(reply["image"].get<std::string>()));
    } catch (const Error& e) {
        throw Error(ErrorCode::kEditorUnavailable, std::string("bad edited image: ") + e.what());
    }
    if (edited.width != image.width || edited.height != image.height) {
        throw Error(ErrorCode::kEditorUnavailable, "editor changed the image size");
    }
    if (edited.channels != image.channels) {
        edited = image.channels == 3 ? to_rgb(edited) : edited;
        if (edited.channels != image.channels) {
            throw Error(ErrorCode::kEditorUnavailable, "editor returned RGB for a grayscale image");
        }
    }
    return edited;
}

Image
preview_change(const Image& original, const RegionMask& mask, const std::string& instruction,
               const EditProvider& editor) {
    return swap_element(original, editor.edit(original, instruction), mask);
}

}  // namespace isearch
