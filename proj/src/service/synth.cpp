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

#include "intentsearch/service/synth.hpp"

#include <cstdio>
#include <fstream>
#include <random>

#include "intentsearch/core/error.hpp"
#include "intentsearch/service/store.hpp"

namespace isearch {

namespace fs = std::filesystem;

SyntheticGallerySpec
make_synthetic_gallery(const SynthOptions& options) {
    if (options.attributes == 0 || options.images == 0) {
        throw Error(ErrorCode::kInvalidArgument, "need at least one attribute and one image");
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < options.attributes; ++i) {
        names.push_back("attr" + std::to_string(i));
    }
    auto spec = SyntheticGallerySpec::grid(std::move(names), options.cell);
    std::mt19937_64 rng(options.seed);
    std::bernoulli_distribution coin(0.5);
    std::uniform_int_distribution<int> cents(1, 1000);
    for (std::size_t i = 0; i < options.images; ++i) {
        SyntheticRecord r;
        char id[32];
        std::snprintf(id, sizeof(id), "synth%05zu", i);
        r.id = id;
        while (r.attributes.empty()) {
            for (std::size_t a = 0; a < options.attributes; ++a) {
                if (coin(rng)) {
                    r.attributes.push_back(a);
                }
            }
        }
        r.collection = i % 2 == 0 ? "Synth A" : "Synth B";
        const int c = cents(rng);
        char price[32];
        std::snprintf(price, sizeof(price), "%d.%02d", c / 100, c % 100);
        r.price = EthPrice::parse(price);
        spec.records.push_back(std::move(r));
    }
    spec.validate();
    return spec;
}

std::vector<ImageRecord>
synthetic_records(const SyntheticGallerySpec& spec) {
    std::vector<ImageRecord> out;
    for (std::size_t i = 0; i < spec.records.size(); ++i) {
        const auto& s = spec.records[i];
        ImageRecord r;
        r.id = s.id;
        r.image_path = "images/" + s.id + ".png";
        r.contract = "0x0";
        r.token_id = std::to_string(i);
        r.chain = "synthetic";
        r.collection = s.collection;
        r.price = s.price;
        for (auto a : s.attributes) {
            r.tags["trait" + std::to_string(a)] = spec.attribute_names[a];
        }
        out.push_back(std::move(r));
    }
    return out;
}

void
write_synthetic_gallery(const SyntheticGallerySpec& spec, const fs::path& out_dir) {
    spec.validate();
    fs::create_directories(out_dir / "images");
    const auto records = synthetic_records(spec);
    for (std::size_t i = 0; i < records.size(); ++i) {
        write_png_file((out_dir / records[i].image_path).string(),
                       render_attributes(spec, spec.records[i].attributes));
    }
    write_meta(out_dir / "meta.jsonl", records);
    std::ofstream out(out_dir / "spec.json", std::ios::trunc);
    out << spec.to_json().dump(1) << '\n';
    if (!out) {
        throw Error(ErrorCode::kIoError, "cannot write " + (out_dir / "spec.json").string());
    }
}

SyntheticGallerySpec
read_synthetic_spec(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::kIoError, "cannot open " + path.string());
    }
    try {
        return SyntheticGallerySpec::from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kInvalidArgument, path.string() + ": " + e.what());
    }
}

}  // namespace isearch
