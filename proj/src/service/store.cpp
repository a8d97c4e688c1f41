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

#include "intentsearch/service/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <set>

#include "intentsearch/core/error.hpp"
#include "intentsearch/core/intent.hpp"
#include "intentsearch/imaging/image.hpp"

namespace isearch {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void
meta_error(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::kMetaParseError, where + ": " + what);
}

std::string
string_field(const nlohmann::json& j, const char* key, bool required) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        if (required) {
            throw Error(ErrorCode::kMetaParseError, std::string("missing \"") + key + "\"");
        }
        return {};
    }
    if (!it->is_string()) {
        throw Error(ErrorCode::kMetaParseError, std::string("\"") + key + "\" must be a string");
    }
    return it->get<std::string>();
}

// RAII fd holding an flock.
class LockedFile {
public:
    LockedFile(const fs::path& path, int flags, int lock) {
        fd_ = ::open(path.c_str(), flags | O_CLOEXEC, 0644);
        if (fd_ < 0) {
            throw Error(ErrorCode::kIoError, "cannot open " + path.string() + ": " + std::strerror(errno));
        }
        while (::flock(fd_, lock) != 0) {
            if (errno != EINTR) {
                const int e = errno;
                ::close(fd_);
                throw Error(ErrorCode::kIoError, "cannot lock " + path.string() + ": " + std::strerror(e));
            }
        }
    }
    ~LockedFile() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    LockedFile(const LockedFile&) = delete;
    LockedFile& operator=(const LockedFile&) = delete;

    int
    fd() const {
        return fd_;
    }

private:
    int fd_ = -1;
};

template <typename T>
void
put_le(std::vector<std::uint8_t>& out, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFFU));
    }
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}

    template <typename T>
    T
    le() {
        need(sizeof(T));
        T v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            v |= static_cast<T>(static_cast<T>(b_[pos_ + i]) << (8 * i));
        }
        pos_ += sizeof(T);
        return v;
    }

    std::span<const std::uint8_t>
    bytes(std::size_t n) {
        need(n);
        auto s = b_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    std::size_t
    remaining() const {
        return b_.size() - pos_;
    }

private:
    void
    need(std::size_t n) const {
        if (b_.size() - pos_ < n) {
            throw Error(ErrorCode::kCorruptEmbeddingsFile, "embeddings file is truncated");
        }
    }

    std::span<const std::uint8_t> b_;
    std::size_t pos_ = 0;
};

}  // namespace

nlohmann::json
record_to_json(const ImageRecord& r) {
    nlohmann::json j;
    j["id"] = r.id;
    j["image_path"] = r.image_path;
    j["contract"] = r.contract;
    j["token_id"] = r.token_id;
    j["chain"] = r.chain;
    j["collection"] = r.collection;
    j["price"] = r.price.to_string();
    j["tags"] = r.tags;
    return j;
}

ImageRecord
record_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw Error(ErrorCode::kMetaParseError, "record must be a JSON object");
    }
    ImageRecord r;
    r.id = string_field(j, "id", true);
    if (r.id.empty()) {
        throw Error(ErrorCode::kMetaParseError, "\"id\" is empty");
    }
    r.image_path = string_field(j, "image_path", true);
    r.contract = string_field(j, "contract", false);
    r.token_id = string_field(j, "token_id", false);
    r.chain = string_field(j, "chain", false);
    r.collection = string_field(j, "collection", false);
    if (const auto p = j.find("price"); p != j.end() && !p->is_null()) {
        if (!p->is_string() && !p->is_number()) {
            throw Error(ErrorCode::kMetaParseError, "\"price\" must be a string or number");
        }
        if (p->is_number() && p->get<double>() < 0) {
            throw Error(ErrorCode::kMetaParseError, "\"price\" is negative");
        }
        try {
            r.price = EthPrice::parse(p->is_string() ? p->get<std::string>() : p->dump());
        } catch (const Error& e) {
            throw Error(ErrorCode::kMetaParseError, std::string("bad \"price\": ") + e.what());
        }
    }
    if (const auto t = j.find("tags"); t != j.end() && !t->is_null()) {
        if (!t->is_object()) {
            throw Error(ErrorCode::kMetaParseError, "\"tags\" must be an object");
        }
        for (const auto& [k, v] : t->items()) {
            if (!v.is_string()) {
                throw Error(ErrorCode::kMetaParseError, "tag \"" + k + "\" must be a string");
            }
            r.tags[k] = v.get<std::string>();
        }
    }
    return r;
}

std::vector<ImageRecord>
read_meta(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::kMetaParseError, "cannot open metadata file " + path.string());
    }
    const std::string name = path.filename().string();
    std::vector<ImageRecord> out;
    std::set<std::string> ids;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (trim(line).empty()) {
            continue;
        }
        const std::string where = name + ":" + std::to_string(n);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            meta_error(where, std::string("invalid JSON: ") + e.what());
        }
        try {
            out.push_back(record_from_json(j));
        } catch (const Error& e) {
            meta_error(where, e.what());
        }
        if (!ids.insert(out.back().id).second) {
            meta_error(where, "duplicate id '" + out.back().id + "'");
        }
    }
    return out;
}

void
write_meta(const fs::path& path, const std::vector<ImageRecord>& records) {
    std::ofstream out(path, std::ios::trunc);
    for (const auto& r : records) {
        out << record_to_json(r).dump() << '\n';
    }
    if (!out) {
        throw Error(ErrorCode::kIoError, "cannot write " + path.string());
    }
}

std::vector<std::uint8_t>
encode_embeddings(const EmbeddingsFile& file) {
    if (file.ids.size() != file.vectors.size()) {
        throw Error(ErrorCode::kInvalidArgument, "ids and vectors differ in count");
    }
    if (file.dim == 0) {
        throw Error(ErrorCode::kInvalidArgument, "embedding dim is 0");
    }
    std::vector<std::uint8_t> out(std::begin(kEmbeddingsMagic), std::end(kEmbeddingsMagic));
    put_le<std::uint32_t>(out, kEmbeddingsVersion);
    put_le<std::uint32_t>(out, file.dim);
    put_le<std::uint64_t>(out, file.ids.size());
    for (std::size_t i = 0; i < file.ids.size(); ++i) {
        const auto& id = file.ids[i];
        if (id.size() > 0xFFFF) {
            throw Error(ErrorCode::kInvalidArgument, "id longer than 65535 bytes");
        }
        if (file.vectors[i].dim() != file.dim) {
            throw Error(ErrorCode::kDimensionMismatch, "vector for '" + id + "' has the wrong dim");
        }
        put_le<std::uint16_t>(out, static_cast<std::uint16_t>(id.size()));
        out.insert(out.end(), id.begin(), id.end());
        for (float f : file.vectors[i].components()) {
            put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(f));
        }
    }
    return out;
}

EmbeddingsFile
decode_embeddings(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    const auto magic = r.bytes(4);
    if (!std::equal(magic.begin(), magic.end(), std::begin(kEmbeddingsMagic))) {
        throw Error(ErrorCode::kCorruptEmbeddingsFile, "bad magic");
    }
    const auto version = r.le<std::uint32_t>();
    if (version != kEmbeddingsVersion) {
        throw Error(ErrorCode::kCorruptEmbeddingsFile, "unsupported version " + std::to_string(version));
    }
    EmbeddingsFile f;
    f.dim = r.le<std::uint32_t>();
    if (f.dim == 0) {
        throw Error(ErrorCode::kCorruptEmbeddingsFile, "dim is 0");
    }
    const auto count = r.le<std::uint64_t>();
    // cheap sanity bound before reserving
    if (count > r.remaining() / (2 + 4ULL * f.dim)) {
        throw Error(ErrorCode::kCorruptEmbeddingsFile, "embeddings file is truncated");
    }
    f.ids.reserve(count);
    f.vectors.reserve(count);
    std::vector<float> buf(f.dim);
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto len = r.le<std::uint16_t>();
        const auto id = r.bytes(len);
        f.ids.emplace_back(id.begin(), id.end());
        for (auto& x : buf) {
            x = std::bit_cast<float>(r.le<std::uint32_t>());
        }
        try {
            f.vectors.push_back(UnitVector::normalize(std::span<const float>(buf)));
        } catch (const Error&) {
            throw Error(ErrorCode::kCorruptEmbeddingsFile, "record " + std::to_string(i) + " is not a usable vector");
        }
    }
    if (r.remaining() != 0) {
        throw Error(ErrorCode::kCorruptEmbeddingsFile, "trailing bytes after the last record");
    }
    return f;
}

void
write_embeddings(const fs::path& path, const EmbeddingsFile& file) {
    const auto bytes = encode_embeddings(file);
    LockedFile out(path, O_WRONLY | O_CREAT, LOCK_EX);
    if (::ftruncate(out.fd(), 0) != 0) {
        throw Error(ErrorCode::kIoError, "cannot truncate " + path.string());
    }
    std::size_t done = 0;
    while (done < bytes.size()) {
        const auto n = ::write(out.fd(), bytes.data() + done, bytes.size() - done);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw Error(ErrorCode::kIoError, "cannot write " + path.string() + ": " + std::strerror(errno));
        }
        done += static_cast<std::size_t>(n);
    }
    ::fsync(out.fd());
}

EmbeddingsFile
read_embeddings(const fs::path& path) {
    std::vector<std::uint8_t> bytes;
    {
        LockedFile in(path, O_RDONLY, LOCK_SH);
        struct stat st {};
        if (::fstat(in.fd(), &st) != 0) {
            throw Error(ErrorCode::kIoError, "cannot stat " + path.string());
        }
        bytes.resize(static_cast<std::size_t>(st.st_size));
        std::size_t done = 0;
        while (done < bytes.size()) {
            const auto n = ::read(in.fd(), bytes.data() + done, bytes.size() - done);
            if (n < 0 && errno == EINTR) {
                continue;
            }
            if (n <= 0) {
                throw Error(ErrorCode::kIoError, "cannot read " + path.string());
            }
            done += static_cast<std::size_t>(n);
        }
    }
    return decode_embeddings(bytes);
}

GalleryManifest
ingest(const fs::path& gallery_dir, const fs::path& meta_path, const EmbeddingProvider& embedder,
       const fs::path& out_path, std::size_t batch) {
    if (batch == 0) {
        throw Error(ErrorCode::kInvalidArgument, "batch must be positive");
    }
    GalleryManifest m{gallery_dir, read_meta(meta_path), out_path};
    // fail before any embedding work
    for (const auto& r : m.records) {
        if (!fs::is_regular_file(gallery_dir / r.image_path)) {
            throw Error(ErrorCode::kMissingImage, "image for '" + r.id + "' not found: " + r.image_path);
        }
    }
    EmbeddingsFile f;
    f.dim = static_cast<std::uint32_t>(embedder.dim());
    for (std::size_t start = 0; start < m.records.size(); start += batch) {
        const auto end = std::min(m.records.size(), start + batch);
        std::vector<Image> images;
        images.reserve(end - start);
        for (std::size_t i = start; i < end; ++i) {
            try {
                images.push_back(read_png_file((gallery_dir / m.records[i].image_path).string()));
            } catch (const Error& e) {
                throw Error(e.code(), "image for '" + m.records[i].id + "': " + e.what());
            }
        }
        auto vecs = embedder.embed_images(images);
        for (std::size_t i = start; i < end; ++i) {
            f.ids.push_back(m.records[i].id);
            f.vectors.push_back(std::move(vecs[i - start]));
        }
    }
    write_embeddings(out_path, f);
    return m;
}

Gallery
load(const GalleryManifest& manifest, std::size_t leaf_size) {
    auto f = read_embeddings(manifest.embeddings_file);
    if (f.ids.size() != manifest.records.size()) {
        throw Error(ErrorCode::kCorruptEmbeddingsFile,
                    "embeddings file has " + std::to_string(f.ids.size()) + " records, metadata has " +
                        std::to_string(manifest.records.size()));
    }
    for (std::size_t i = 0; i < f.ids.size(); ++i) {
        if (f.ids[i] != manifest.records[i].id) {
            throw Error(ErrorCode::kCorruptEmbeddingsFile,
                        "record " + std::to_string(i) + " is '" + f.ids[i] + "' in the embeddings file but '" +
                            manifest.records[i].id + "' in the metadata");
        }
    }
    return Gallery::build(manifest.records, std::move(f.vectors), leaf_size);
}

GalleryManifest
manifest_from_files(const fs::path& gallery_dir, const fs::path& meta_path, const fs::path& embeddings_path) {
    return {gallery_dir, read_meta(meta_path), embeddings_path};
}

}  // namespace isearch
