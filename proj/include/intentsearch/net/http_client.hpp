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

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <memory>
#include <mutex>
#include <string>

#include <json.hpp>

#include "intentsearch/core/error.hpp"

namespace isearch {

/// "http://host:port/prefix" split into what the HTTP client needs.
struct Endpoint {
    std::string origin;     // "http://host:port"
    std::string base_path;  // "" or "/prefix", never a trailing slash

    /// Throws Error(kInvalidArgument) for anything but http URLs.
    static Endpoint
    parse(const std::string& url);
};

/// Caps in-flight requests across every remote provider sharing it.
class RequestLimiter {
public:
    explicit RequestLimiter(std::size_t capacity = 4);

    class Slot {
    public:
        explicit Slot(RequestLimiter& limiter);
        ~Slot();
        Slot(const Slot&) = delete;
        Slot& operator=(const Slot&) = delete;

    private:
        RequestLimiter& limiter_;
    };

    std::size_t
    capacity() const {
        return capacity_;
    }

private:
    std::size_t capacity_;
    std::size_t in_flight_ = 0;
    std::mutex mu_;
    std::condition_variable cv_;
};

struct HttpOptions {
    std::chrono::milliseconds timeout{30000};
    std::shared_ptr<RequestLimiter> limiter;
};

/// POST a JSON body and parse the JSON reply. Transport failures, non-200
/// statuses and unparsable bodies all throw Error(failure_code).
nlohmann::json post_json(const Endpoint& endpoint, const std::string& path,
                         const nlohmann::json& body, ErrorCode failure_code,
                         const HttpOptions& options);

}  // namespace isearch
