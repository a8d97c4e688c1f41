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
#include <string>
#include <vector>

#include <json.hpp>

#include "intentsearch/core/records.hpp"
#include "intentsearch/core/unit_vector.hpp"
#include "intentsearch/embed/provider.hpp"
#include "intentsearch/ranking/gallery.hpp"

namespace isearch {

inline constexpr char kEmbeddingsMagic[4] = {'I', 'E', 'M', 'B'};
inline constexpr std::uint32_t kEmbeddingsVersion = 1;

/// One metadata line. Field names: id, image_path, contract, token_id,
/// chain, collection, price, tags. Price is written as a decimal string and
/// read from a string or a number.
nlohmann::json record_to_json(const ImageRecord& r);
/// Throws Error(kMetaParseError).
ImageRecord record_from_json(const nlohmann::json& j);

/// JSON Lines, one record per non-blank line. Errors carry the 1-based line
/// number: Error(kMetaParseError, "meta.jsonl:3: ...").
std::vector<ImageRecord> read_meta(const std::filesystem::path& path);
void write_meta(const std::filesystem::path& path, const std::vector<ImageRecord>& records);

struct EmbeddingsFile {
    std::uint32_t dim = 0;
    std::vector<std::string> ids;
    std::vector<UnitVector> vectors;
};

/// "IEMB" | u32 version | u32 dim | u64 count | per record: u16 id length,
/// id bytes, dim little-endian float32. All integers little-endian.
std::vector<std::uint8_t> encode_embeddings(const EmbeddingsFile& file);
/// Throws Error(kCorruptEmbeddingsFile) on bad magic, version, dim 0,
/// truncation or trailing bytes.
EmbeddingsFile decode_embeddings(std::span<const std::uint8_t> bytes);

/// Written and read under flock (exclusive / shared), so a reader never sees
/// a half-written file from a concurrent ingest.
void write_embeddings(const std::filesystem::path& path, const EmbeddingsFile& file);
EmbeddingsFile read_embeddings(const std::filesystem::path& path);

struct GalleryManifest {
    std::filesystem::path root;
    std::vector<ImageRecord> records;
    std::filesystem::path embeddings_file;
};

/// Reads the metadata, embeds every image (batches of `batch`), writes the
/// embeddings file. Re-running overwrites it. Throws Error(kMissingImage),
/// Error(kMetaParseError), provider errors.
GalleryManifest ingest(const std::filesystem::path& gallery_dir, const std::filesystem::path& meta_path,
                       const EmbeddingProvider& embedder, const std::filesystem::path& out_path,
                       std::size_t batch = 64);

/// Reads the embeddings file and rebuilds the index. Ids must match the
/// manifest records one for one, in order; Error(kCorruptEmbeddingsFile)
/// otherwise.
Gallery load(const GalleryManifest& manifest, std::size_t leaf_size = kDefaultLeafSize);

GalleryManifest manifest_from_files(const std::filesystem::path& gallery_dir, const std::filesystem::path& meta_path,
                                    const std::filesystem::path& embeddings_path);

}  // namespace isearch
