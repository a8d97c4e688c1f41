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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "intentsearch/core/error.hpp"
#include "intentsearch/embed/synthetic.hpp"
#include "intentsearch/visual/composite.hpp"
#include "intentsearch/visual/edit.hpp"
#include "intentsearch/visual/query.hpp"
#include "intentsearch/visual/segment.hpp"
#include "support/local_server.hpp"

using namespace isearch;

namespace {

Image
noise(std::uint32_t w, std::uint32_t h, std::uint32_t c, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> byte(0, 255);
    Image img = Image::filled(w, h, c, 0);
    for (auto& p : img.pixels) {
        p = static_cast<std::uint8_t>(byte(rng));
    }
    return img;
}

RegionMask
random_mask(std::uint32_t w, std::uint32_t h, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5);
    RegionMask m{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h), PixelBox{0, 0, w, h}};
    for (auto& b : m.bits) {
        b = coin(rng) ? 1 : 0;
    }
    m.bits[0] = 1;
    return m;
}

ErrorCode
code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::kInvalidArgument;
}

// Returns a fixed vector per image index within one call.
class SequenceEmbedder final : public EmbeddingProvider {
public:
    explicit SequenceEmbedder(std::vector<UnitVector> v) : v_(std::move(v)) {}
    std::size_t
    dim() const override {
        return v_.front().dim();
    }
    std::vector<UnitVector>
    embed_texts(std::span<const std::string>) const override {
        return {};
    }
    std::vector<UnitVector>
    embed_images(std::span<const Image> images) const override {
        return {v_.begin(), v_.begin() + static_cast<std::ptrdiff_t>(images.size())};
    }

private:
    std::vector<UnitVector> v_;
};

}  // namespace

TEST_CASE("box fill segmentation") {
    const auto img = Image::filled(10, 10, 3, 0);
    BoxFillSegmenter seg;
    const auto m = segment(img, {2, 2, 5, 5}, seg);
    CHECK(m.count() == 9);
    for (std::uint32_t y = 0; y < 10; ++y) {
        for (std::uint32_t x = 0; x < 10; ++x) {
            CHECK(m.test(x, y) == (x >= 2 && x < 5 && y >= 2 && y < 5));
        }
    }
    CHECK(segment(img, {0, 0, 10, 10}, seg).count() == 100);
    CHECK(code_of([&] { segment(img, {5, 5, 5, 9}, seg); }) == ErrorCode::kInvalidBox);
    CHECK(code_of([&] { segment(img, {5, 5, 11, 9}, seg); }) == ErrorCode::kInvalidBox);
    CHECK(code_of([&] { segment(img, {6, 5, 5, 9}, seg); }) == ErrorCode::kInvalidBox);
}

TEST_CASE("composite examples") {
    Image img = Image::filled(2, 1, 1, 200);
    img.pixels[1] = 17;
    const auto m = RegionMask::from_box(2, 1, {1, 0, 2, 1});
    const auto r = regularized_black_composite(img, m, 0.9, 0.1);
    CHECK(r.pixels[0] == 20);
    CHECK(r.pixels[1] == 17);
    const auto w = white_composite(img, m);
    CHECK(w.pixels[0] == 255);
    CHECK(w.pixels[1] == 17);

    std::mt19937_64 rng(1);
    const auto big = noise(9, 7, 3, rng);
    const auto all = RegionMask::from_box(9, 7, {0, 0, 9, 7});
    CHECK(regularized_black_composite(big, all, 0.9, 0.1) == big);
    CHECK(white_composite(big, all) == big);

    RegionMask none{9, 7, std::vector<std::uint8_t>(63, 0), {}};
    CHECK(code_of([&] { white_composite(big, none); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([&] { regularized_black_composite(big, all, 0.8, 0.1); }) == ErrorCode::kInvalidArgument);
    const auto small = RegionMask::from_box(3, 3, {0, 0, 1, 1});
    CHECK(code_of([&] { white_composite(big, small); }) == ErrorCode::kDimensionMismatch);
    CHECK(code_of([&] { swap_element(big, noise(9, 7, 1, rng), all); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("composite kernels on random fixtures") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 50; ++i) {
        const std::uint32_t c = i % 2 == 0 ? 3 : 1;
        const std::uint32_t side = i < 40 ? 32 : 97;
        const auto img = noise(side, side, c, rng);
        const auto mask = random_mask(side, side, rng);
        const auto r = regularized_black_composite(img, mask, 0.9, 0.1);
        const auto w = white_composite(img, mask);
        CHECK(r == serial::regularized_black_composite(img, mask, 0.9, 0.1));
        CHECK(w == serial::white_composite(img, mask));
        for (std::uint32_t y = 0; y < side; ++y) {
            for (std::uint32_t x = 0; x < side; ++x) {
                for (std::uint32_t k = 0; k < c; ++k) {
                    const int v = img.at(x, y)[k];
                    if (mask.test(x, y)) {
                        CHECK(r.at(x, y)[k] == v);
                        CHECK(w.at(x, y)[k] == v);
                    } else {
                        CHECK(std::abs(r.at(x, y)[k] - static_cast<int>(std::lround(0.1 * v))) <= 1);
                        CHECK(w.at(x, y)[k] == 255);
                    }
                }
            }
        }
    }
}

TEST_CASE("swap element") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 40; ++i) {
        const auto o = noise(32, 32, 3, rng);
        const auto e = noise(32, 32, 3, rng);
        const auto m = random_mask(32, 32, rng);
        const auto s = swap_element(o, e, m);
        CHECK(s == serial::swap_element(o, e, m));
        for (std::uint32_t y = 0; y < 32; ++y) {
            for (std::uint32_t x = 0; x < 32; ++x) {
                const auto* want = m.test(x, y) ? e.at(x, y) : o.at(x, y);
                CHECK(std::equal(want, want + 3, s.at(x, y)));
            }
        }
        CHECK(swap_element(s, o, m) == o);
        CHECK(swap_element(o, o, m) == o);
        CHECK(swap_element(o, e, RegionMask::from_box(32, 32, {0, 0, 32, 32})) == e);
    }
    // 2x2 checker, enumerated
    Image a = Image::filled(2, 2, 1, 0);
    Image b = Image::filled(2, 2, 1, 0);
    a.pixels = {1, 2, 3, 4};
    b.pixels = {5, 6, 7, 8};
    RegionMask checker{2, 2, {1, 0, 0, 1}, {0, 0, 2, 2}};
    CHECK(swap_element(a, b, checker).pixels == std::vector<std::uint8_t>{5, 2, 3, 8});
}

TEST_CASE("visual query embedding") {
    const auto spec = SyntheticGallerySpec::grid({"a0", "a1", "a2", "a3", "a4", "a5", "a6", "a7"});
    SyntheticEmbedder emb(spec);
    const std::vector<std::size_t> both = {0, 1};
    const auto img = render_attributes(spec, both);
    const auto m0 = RegionMask::from_box(img.width, img.height, spec.regions[0]);
    CHECK(visual_query_embedding(img, m0, emb) == UnitVector::basis(spec.dim, 0));

    const auto all = RegionMask::from_box(img.width, img.height, {0, 0, img.width, img.height});
    CHECK(visual_query_embedding(img, all, emb) == emb.embed_image(img));

    const SequenceEmbedder orth({UnitVector::basis(3, 0), UnitVector::basis(3, 1)});
    const auto v = visual_query_embedding(img, all, orth);
    CHECK(v[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(v[1] == doctest::Approx(1.0 / std::sqrt(2.0)));

    // box spanning exactly the regions of S on an image of S
    BoxFillSegmenter seg;
    for (unsigned s = 1; s < 256; s += 7) {
        std::vector<std::size_t> attrs;
        PixelBox box{~0U, ~0U, 0, 0};
        std::vector<double> want(spec.dim, 0.0);
        for (std::size_t i = 0; i < 8; ++i) {
            if ((s >> i) & 1U) {
                attrs.push_back(i);
                want[i] = 1.0;
                const auto& r = spec.regions[i];
                box = {std::min(box.x0, r.x0), std::min(box.y0, r.y0), std::max(box.x1, r.x1), std::max(box.y1, r.y1)};
            }
        }
        const auto image = render_attributes(spec, attrs);
        const auto q = visual_query_embedding(image, segment(image, box, seg), emb);
        const auto expect = UnitVector::normalize(std::span<const double>(want));
        for (std::size_t d = 0; d < spec.dim; ++d) {
            CHECK(std::abs(q[d] - expect[d]) <= 1e-6);
        }
    }
}

TEST_CASE("combine selected elements") {
    const std::vector<UnitVector> two = {UnitVector::basis(4, 0), UnitVector::basis(4, 1)};
    const auto inter = combine_selected_elements(two, ElementRelation::kIntersection);
    REQUIRE(inter.size() == 1);
    CHECK(inter[0][0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(inter[0][1] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(combine_selected_elements(two, ElementRelation::kUnion) == two);
    const std::vector<UnitVector> one = {UnitVector::basis(4, 2)};
    CHECK(combine_selected_elements(one, ElementRelation::kIntersection) == one);
    CHECK(combine_selected_elements(one, ElementRelation::kUnion) == one);
    CHECK(code_of([] { combine_selected_elements({}, ElementRelation::kUnion); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("stub edit and preview") {
    const auto spec = SyntheticGallerySpec::grid({"cap", "shirt"});
    const std::vector<std::size_t> attrs = {0, 1};
    const auto img = render_attributes(spec, attrs);
    StubEditProvider stub;
    const auto blue = stub.edit(img, "make the cap blue");
    const auto* p = blue.at(spec.regions[0].x0, spec.regions[0].y0);
    CHECK(p[0] == 0);
    CHECK(p[1] == 0);
    CHECK(p[2] == 230);
    CHECK(blue.at(0, 0)[2] == 0);  // background untouched

    const auto mask = RegionMask::from_box(img.width, img.height, spec.regions[0]);
    const auto prev = preview_change(img, mask, "make the cap blue", stub);
    CHECK(std::equal(p, p + 3, prev.at(spec.regions[0].x0, spec.regions[0].y0)));
    const auto& r1 = spec.regions[1];
    CHECK(std::equal(img.at(r1.x0, r1.y0), img.at(r1.x0, r1.y0) + 3, prev.at(r1.x0, r1.y0)));

    const auto rotated = stub.edit(img, "make it fancy");
    const auto* o = img.at(spec.regions[0].x0, spec.regions[0].y0);
    const auto* q = rotated.at(spec.regions[0].x0, spec.regions[0].y0);
    CHECK(q[0] == o[1]);
    CHECK(q[1] == o[2]);
    CHECK(q[2] == o[0]);
}

TEST_CASE("remote segmenter and editor") {
    testing::LocalServer srv;
    srv.server().Post("/sam/segment", [](const httplib::Request& req, httplib::Response& res) {
        const auto body = nlohmann::json::parse(req.body);
        const auto img = decode_png(base64_decode(body["image"].get<std::string>()));
        const auto b = body["box"];
        // mask two pixels wider than the image to check clipping
        Image m = Image::filled(img.width + 2, img.height, 1, 0);
        for (std::uint32_t y = b[1]; y < b[3].get<std::uint32_t>(); ++y) {
            for (std::uint32_t x = b[0]; x < b[2].get<std::uint32_t>(); ++x) {
                m.at(x, y)[0] = 255;
            }
        }
        res.set_content(nlohmann::json{{"mask", base64_encode(encode_png(m))}}.dump(), "application/json");
    });
    srv.server().Post("/empty/segment", [](const httplib::Request& req, httplib::Response& res) {
        const auto img = decode_png(base64_decode(nlohmann::json::parse(req.body)["image"].get<std::string>()));
        res.set_content(nlohmann::json{{"mask", base64_encode(encode_png(Image::filled(img.width, img.height, 1, 0)))}}.dump(),
                        "application/json");
    });
    srv.server().Post("/broken/segment", [](const httplib::Request&, httplib::Response& res) { res.status = 500; });
    srv.server().Post("/p2p/edit", [](const httplib::Request& req, httplib::Response& res) {
        const auto body = nlohmann::json::parse(req.body);
        auto img = decode_png(base64_decode(body["image"].get<std::string>()));
        for (auto& v : img.pixels) {
            v = static_cast<std::uint8_t>(255 - v);
        }
        if (body["instruction"] == "shrink") {
            img = Image::filled(1, 1, img.channels, 0);
        }
        res.set_content(nlohmann::json{{"image", base64_encode(encode_png(img))}}.dump(), "application/json");
    });
    srv.start();

    std::mt19937_64 rng(4);
    const auto img = noise(12, 8, 3, rng);
    RemoteSegmenter sam(srv.url("/sam"));
    const auto m = segment(img, {1, 2, 4, 6}, sam);
    CHECK(m == RegionMask::from_box(12, 8, {1, 2, 4, 6}));
    CHECK(code_of([&] { segment(img, {1, 2, 4, 6}, RemoteSegmenter(srv.url("/empty"))); }) ==
          ErrorCode::kSegmenterUnavailable);
    CHECK(code_of([&] { segment(img, {1, 2, 4, 6}, RemoteSegmenter(srv.url("/broken"))); }) ==
          ErrorCode::kSegmenterUnavailable);

    RemoteEditProvider p2p(srv.url("/p2p"));
    const auto edited = p2p.edit(img, "invert");
    CHECK(edited.pixels[0] == 255 - img.pixels[0]);
    CHECK(code_of([&] { p2p.edit(img, "shrink"); }) == ErrorCode::kEditorUnavailable);
}
