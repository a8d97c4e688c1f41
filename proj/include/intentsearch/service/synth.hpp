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

#include <cstdint>
#include <filesystem>
#include <vector>

#include "intentsearch/core/records.hpp"
#include "intentsearch/embed/synthetic.hpp"

namespace isearch {

struct SynthOptions {
    std::size_t attributes = 8;
    std::size_t images = 64;
    std::uint64_t seed = 0;
    std::uint32_t cell = 16;
};

/// Attributes "attr0".."attrN-1" on a grid. Every attribute appears in each
/// image with probability 1/2 (empty draws are redrawn), prices are
/// 0.01..10.00 ETH, collections alternate "Synth A" / "Synth B".
SyntheticGallerySpec make_synthetic_gallery(const SynthOptions& options);

/// Metadata records for a SyntheticGallerySpec: image_path "images/<id>.png", one tag per
/// attribute present.
std::vector<ImageRecord> synthetic_records(const SyntheticGallerySpec& spec);

/// out/images/*.png, out/meta.jsonl and out/spec.json.
void write_synthetic_gallery(const SyntheticGallerySpec& spec, const std::filesystem::path& out_dir);

/// Reads out/spec.json back.
SyntheticGallerySpec read_synthetic_spec(const std::filesystem::path& path);

}  // namespace isearch
