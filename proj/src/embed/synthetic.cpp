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

#include "intentsearch/embed/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "intentsearch/core/error.hpp"
#include "intentsearch/core/intent.hpp"

namespace isearch {

namespace {

std::vector<std::string>
tokens_of(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || u >= 0x80) {
            cur.push_back(static_cast<char>(std::tolower(u)));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) {
        out.push_back(std::move(cur));
    }
    return out;
}

bool
contains_run(const std::vector<std::string>& hay, const std::vector<std::string>& needle) {
    if (needle.empty() || needle.size() > hay.size()) {
        return false;
    }
    for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
        if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<std::ptrdiff_t>(i))) {
            return true;
        }
    }
    return false;
}

UnitVector
sum_of_bases(std::size_t dim, const std::vector<std::size_t>& indices, std::size_t unknown) {
    if (indices.empty()) {
        return UnitVector::basis(dim, unknown);
    }
    std::vector<double> raw(dim, 0.0);
    for (auto i : indices) {
        raw[i] += 1.0;
    }
    return UnitVector::normalize(std::span<const double>(raw));
}

[[noreturn]] void
bad_spec(const std::string& why) {
    throw Error(ErrorCode::kInvalidArgument, "synthetic gallery spec: " + why);
}

}  // namespace

SyntheticGallerySpec
SyntheticGallerySpec::grid(std::vector<std::string> attribute_names, std::uint32_t cell,
                           std::optional<std::size_t> dim) {
    if (cell <= 4) {
        bad_spec("grid cells must be larger than 4 pixels");
    }
    SyntheticGallerySpec spec;
    const auto n = static_cast<std::uint32_t>(attribute_names.size());
    const auto cols = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(n)))));
    const auto rows = std::max<std::uint32_t>(1, (n + cols - 1) / cols);
    spec.canvas_width = cols * cell;
    spec.canvas_height = rows * cell;
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t col = i % cols;
        const std::uint32_t row = i / cols;
        spec.regions.push_back(PixelBox{col * cell + 2, row * cell + 2, (col + 1) * cell - 2, (row + 1) * cell - 2});
    }
    spec.dim = dim.value_or(attribute_names.size() + 1);
    spec.attribute_names = std::move(attribute_names);
    spec.validate();
    return spec;
}

void
SyntheticGallerySpec::validate() const {
    const std::size_t a = attribute_names.size();
    if (a == 0) {
        bad_spec("no attributes");
    }
    if (dim <= a) {
        bad_spec("dim must exceed the attribute count (last dimension is reserved)");
    }
    if (regions.size() != a) {
        bad_spec("one region per attribute required");
    }
    std::set<std::string> names;
    for (const auto& n : attribute_names) {
        if (trim(n).empty() || !names.insert(fold_case(n)).second) {
            bad_spec("attribute names must be non-empty and unique: '" + n + "'");
        }
    }
    for (std::size_t i = 0; i < a; ++i) {
        const auto& r = regions[i];
        if (r.area() == 0 || r.x1 > canvas_width || r.y1 > canvas_height) {
            bad_spec("region of '" + attribute_names[i] + "' is empty or off canvas");
        }
        for (std::size_t j = 0; j < i; ++j) {
            const auto& o = regions[j];
            const bool disjoint = r.x1 <= o.x0 || o.x1 <= r.x0 || r.y1 <= o.y0 || o.y1 <= r.y0;
            if (!disjoint) {
                bad_spec("regions of '" + attribute_names[i] + "' and '" + attribute_names[j] + "' overlap");
            }
        }
    }
    std::set<std::string> ids;
    for (const auto& rec : records) {
        if (rec.id.empty() || !ids.insert(rec.id).second) {
            bad_spec("record ids must be non-empty and unique: '" + rec.id + "'");
        }
        if (rec.attributes.empty()) {
            bad_spec("record '" + rec.id + "' has no attributes");
        }
        std::set<std::size_t> seen;
        for (auto idx : rec.attributes) {
            if (idx >= a || !seen.insert(idx).second) {
                bad_spec("record '" + rec.id + "' has a bad attribute index");
            }
        }
    }
}

nlohmann::json
SyntheticGallerySpec::to_json() const {
    nlohmann::json attrs = nlohmann::json::array();
    for (std::size_t i = 0; i < attribute_names.size(); ++i) {
        const auto& r = regions[i];
        attrs.push_back({{"name", attribute_names[i]}, {"region", {r.x0, r.y0, r.x1, r.y1}}});
    }
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& rec : records) {
        recs.push_back({{"id", rec.id},
                        {"attributes", rec.attributes},
                        {"collection", rec.collection},
                        {"price", rec.price.to_string()}});
    }
    return {{"dim", dim},
            {"canvas", {canvas_width, canvas_height}},
            {"attributes", attrs},
            {"records", recs}};
}

SyntheticGallerySpec
SyntheticGallerySpec::from_json(const nlohmann::json& j) {
    SyntheticGallerySpec spec;
    try {
        spec.dim = j.at("dim").get<std::size_t>();
        spec.canvas_width = j.at("canvas").at(0).get<std::uint32_t>();
        spec.canvas_height = j.at("canvas").at(1).get<std::uint32_t>();
        for (const auto& a : j.at("attributes")) {
            spec.attribute_names.push_back(a.at("name").get<std::string>());
            const auto& r = a.at("region");
            spec.regions.push_back(PixelBox{r.at(0).get<std::uint32_t>(), r.at(1).get<std::uint32_t>(),
                                            r.at(2).get<std::uint32_t>(), r.at(3).get<std::uint32_t>()});
        }
        if (j.contains("records")) {
            for (const auto& r : j.at("records")) {
                spec.records.push_back(SyntheticRecord{
                    r.at("id").get<std::string>(), r.at("attributes").get<std::vector<std::size_t>>(),
                    r.value("collection", std::string{}),
                    EthPrice::parse(r.value("price", std::string("0")))});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        bad_spec(e.what());
    }
    spec.validate();
    return spec;
}

std::array<std::uint8_t, 3>
attribute_color(std::size_t index) {
    const double hue = std::fmod(static_cast<double>(index) * 0.618033988749895, 1.0) * 6.0;
    const double v = 230.0;
    const int sector = static_cast<int>(hue) % 6;
    const double f = hue - std::floor(hue);
    const auto up = static_cast<std::uint8_t>(std::lround(v * f));
    const auto down = static_cast<std::uint8_t>(std::lround(v * (1.0 - f)));
    const auto hi = static_cast<std::uint8_t>(v);
    switch (sector) {
        case 0:
            return {hi, up, 0};
        case 1:
            return {down, hi, 0};
        case 2:
            return {0, hi, up};
        case 3:
            return {0, down, hi};
        case 4:
            return {up, 0, hi};
        default:
            return {hi, 0, down};
    }
}

bool
is_foreground(const Image& image, std::uint32_t x, std::uint32_t y) {
    const std::uint8_t* p = image.at(x, y);
    if (image.channels == 1) {
        return p[0] >= 128 && p[0] < 255;
    }
    const auto mx = std::max({p[0], p[1], p[2]});
    const auto mn = std::min({p[0], p[1], p[2]});
    return mx >= 128 && mn <= 127;
}

Image
render_attributes(const SyntheticGallerySpec& spec, std::span<const std::size_t> attributes) {
    Image img = Image::filled(spec.canvas_width, spec.canvas_height, 3, 0);
    for (auto a : attributes) {
        const auto color = attribute_color(a);
        const auto& r = spec.regions.at(a);
        for (std::uint32_t y = r.y0; y < r.y1; ++y) {
            for (std::uint32_t x = r.x0; x < r.x1; ++x) {
                std::uint8_t* p = img.at(x, y);
                p[0] = color[0];
                p[1] = color[1];
                p[2] = color[2];
            }
        }
    }
    return img;
}

std::vector<std::size_t>
match_attributes(const SyntheticGallerySpec& spec, std::string_view text) {
    const auto hay = tokens_of(text);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < spec.attribute_names.size(); ++i) {
        if (contains_run(hay, tokens_of(spec.attribute_names[i]))) {
            out.push_back(i);
        }
    }
    return out;
}

UnitVector
embed_text_synthetic(const SyntheticGallerySpec& spec, std::string_view text) {
    return sum_of_bases(spec.dim, match_attributes(spec, text), spec.unknown_index());
}

UnitVector
embed_image_synthetic(const SyntheticGallerySpec& spec, const Image& image, const RegionMask* mask) {
    if (image.width != spec.canvas_width || image.height != spec.canvas_height) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "image is " + std::to_string(image.width) + "x" + std::to_string(image.height) +
                        ", canvas is " + std::to_string(spec.canvas_width) + "x" +
                        std::to_string(spec.canvas_height));
    }
    if (mask != nullptr && (mask->width != image.width || mask->height != image.height)) {
        throw Error(ErrorCode::kDimensionMismatch, "mask does not match image dimensions");
    }
    std::vector<std::size_t> present;
    for (std::size_t i = 0; i < spec.regions.size(); ++i) {
        const auto& r = spec.regions[i];
        std::size_t fg = 0;
        std::size_t covered = 0;
        for (std::uint32_t y = r.y0; y < r.y1; ++y) {
            for (std::uint32_t x = r.x0; x < r.x1; ++x) {
                fg += is_foreground(image, x, y) ? 1 : 0;
                if (mask != nullptr) {
                    covered += mask->test(x, y) ? 1 : 0;
                }
            }
        }
        const std::size_t area = r.area();
        const bool visible = 2 * fg > area;
        const bool selected = mask == nullptr || 2 * covered > area;
        if (visible && selected) {
            present.push_back(i);
        }
    }
    return sum_of_bases(spec.dim, present, spec.unknown_index());
}

SyntheticEmbedder::SyntheticEmbedder(SyntheticGallerySpec spec) : spec_(std::move(spec)) {
    spec_.validate();
}

std::vector<UnitVector>
SyntheticEmbedder::embed_texts(std::span<const std::string> texts) const {
    std::vector<UnitVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
        out.push_back(embed_text_synthetic(spec_, t));
    }
    return out;
}

std::vector<UnitVector>
SyntheticEmbedder::embed_images(std::span<const Image> images) const {
    std::vector<UnitVector> out(images.size());
    const auto n = static_cast<std::int64_t>(images.size());
    // Workers must not throw across the parallel region; check shapes first.
    for (const auto& img : images) {
        if (img.width != spec_.canvas_width || img.height != spec_.canvas_height) {
            embed_image_synthetic(spec_, img);  // throws kDimensionMismatch
        }
    }
#pragma omp parallel for schedule(static) if (n > 16)
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = embed_image_synthetic(spec_, images[static_cast<std::size_t>(i)]);
    }
    return out;
}

}  // namespace isearch
