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

#include "intentsearch/embed/remote.hpp"

#include <exception>
#include <thread>

#include "intentsearch/core/error.hpp"

namespace isearch {

RemoteEmbedder::RemoteEmbedder(const std::string& endpoint, std::size_t expected_dim,
                               RemoteEmbedderOptions options)
    : endpoint_(Endpoint::parse(endpoint)), dim_(expected_dim), options_(std::move(options)) {
    if (dim_ == 0) {
        throw Error(ErrorCode::kInvalidArgument, "remote embedder needs a positive dim");
    }
    if (options_.max_batch == 0) {
        options_.max_batch = 1;
    }
    if (!options_.limiter) {
        options_.limiter = std::make_shared<RequestLimiter>(4);
    }
}

std::vector<UnitVector>
RemoteEmbedder::embed_texts(std::span<const std::string> texts) const {
    return run("texts", std::vector<std::string>(texts.begin(), texts.end()));
}

std::vector<UnitVector>
RemoteEmbedder::embed_images(std::span<const Image> images) const {
    std::vector<std::string> payload;
    payload.reserve(images.size());
    for (const auto& img : images) {
        payload.push_back(base64_encode(encode_png(img)));
    }
    return run("images", std::move(payload));
}

std::vector<UnitVector>
RemoteEmbedder::run(const std::string& field, std::vector<std::string> payload) const {
    if (payload.empty()) {
        return {};
    }
    const std::size_t batches = (payload.size() + options_.max_batch - 1) / options_.max_batch;
    std::vector<std::vector<UnitVector>> results(batches);
    std::vector<std::exception_ptr> errors(batches);

    HttpOptions http{options_.timeout, options_.limiter};
    auto do_batch = [&](std::size_t b) {
        try {
            const std::size_t begin = b * options_.max_batch;
            const std::size_t end = std::min(payload.size(), begin + options_.max_batch);
            nlohmann::json body = {{field, nlohmann::json(std::vector<std::string>(
                                               payload.begin() + static_cast<std::ptrdiff_t>(begin),
                                               payload.begin() + static_cast<std::ptrdiff_t>(end)))}};
            ++requests_;
            auto reply = post_json(endpoint_, "/embed", body, ErrorCode::kEmbedderUnavailable, http);
            if (!reply.is_object() || !reply.contains("dim") || !reply["dim"].is_number_integer() ||
                !reply.contains("vectors") || !reply["vectors"].is_array()) {
                throw Error(ErrorCode::kEmbedderUnavailable, "embed reply lacks dim/vectors");
            }
            const auto server_dim = reply["dim"].get<std::int64_t>();
            if (server_dim != static_cast<std::int64_t>(dim_)) {
                throw Error(ErrorCode::kDimensionMismatch,
                            "embedder returned dim " + std::to_string(server_dim) + ", index dim is " +
                                std::to_string(dim_));
            }
            const auto& vectors = reply["vectors"];
            if (vectors.size() != end - begin) {
                throw Error(ErrorCode::kEmbedderUnavailable,
                            "embedder returned " + std::to_string(vectors.size()) + " vectors for " +
                                std::to_string(end - begin) + " inputs");
            }
            auto& out = results[b];
            for (const auto& v : vectors) {
                if (!v.is_array() || v.size() != dim_) {
                    throw Error(ErrorCode::kDimensionMismatch, "embedder vector length differs from dim");
                }
                std::vector<double> raw;
                raw.reserve(dim_);
                for (const auto& x : v) {
                    if (!x.is_number()) {
                        throw Error(ErrorCode::kEmbedderUnavailable, "non-numeric vector component");
                    }
                    raw.push_back(x.get<double>());
                }
                try {
                    out.push_back(UnitVector::normalize(std::span<const double>(raw)));
                } catch (const Error&) {
                    throw Error(ErrorCode::kEmbedderUnavailable, "embedder returned a zero vector");
                }
            }
        } catch (...) {
            errors[b] = std::current_exception();
        }
    };

    const std::size_t workers = std::min(batches, options_.limiter->capacity());
    if (workers <= 1) {
        for (std::size_t b = 0; b < batches; ++b) {
            do_batch(b);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t b = next++; b < batches; b = next++) {
                    do_batch(b);
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    std::vector<UnitVector> out;
    out.reserve(payload.size());
    for (auto& r : results) {
        for (auto& v : r) {
            out.push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace isearch
