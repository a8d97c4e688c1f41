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

#include <atomic>
#include <chrono>
#include <memory>
#include <string>

#include "intentsearch/embed/provider.hpp"
#include "intentsearch/net/http_client.hpp"

namespace isearch {

struct RemoteEmbedderOptions {
    std::size_t max_batch = 64;
    std::chrono::milliseconds timeout{30000};
    std::shared_ptr<RequestLimiter> limiter = std::make_shared<RequestLimiter>(4);
};

/// Client for `POST {endpoint}/embed`:
///   request  {"texts":[..]} or {"images":[base64 PNG,..]}
///   response {"dim":int,"vectors":[[float,..],..]}
/// Payloads are split into batches of at most max_batch and issued
/// concurrently up to the limiter's capacity. Output order matches input
/// order and vectors are re-normalized here whatever the server sends.
class RemoteEmbedder final : public EmbeddingProvider {
public:
    RemoteEmbedder(const std::string& endpoint, std::size_t expected_dim,
                   RemoteEmbedderOptions options = {});

    std::size_t
    dim() const override {
        return dim_;
    }
    std::vector<UnitVector>
    embed_texts(std::span<const std::string> texts) const override;
    std::vector<UnitVector>
    embed_images(std::span<const Image> images) const override;

    /// Number of HTTP requests issued so far.
    std::size_t
    requests_sent() const {
        return requests_.load();
    }

private:
    std::vector<UnitVector>
    run(const std::string& field, std::vector<std::string> payload) const;

    Endpoint endpoint_;
    std::size_t dim_;
    RemoteEmbedderOptions options_;
    mutable std::atomic<std::size_t> requests_{0};
};

}  // namespace isearch
