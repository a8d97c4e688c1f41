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

#include "intentsearch/net/http_client.hpp"

#include <httplib.h>

namespace isearch {

Endpoint
Endpoint::parse(const std::string& url) {
    const std::string scheme = "http://";
    if (url.rfind(scheme, 0) != 0) {
        throw Error(ErrorCode::kInvalidArgument, "only http:// endpoints are supported: " + url);
    }
    const auto slash = url.find('/', scheme.size());
    Endpoint ep;
    ep.origin = url.substr(0, slash);
    if (ep.origin.size() == scheme.size()) {
        throw Error(ErrorCode::kInvalidArgument, "endpoint has no host: " + url);
    }
    if (slash != std::string::npos) {
        ep.base_path = url.substr(slash);
        while (!ep.base_path.empty() && ep.base_path.back() == '/') {
            ep.base_path.pop_back();
        }
    }
    return ep;
}

RequestLimiter::RequestLimiter(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

RequestLimiter::Slot::Slot(RequestLimiter& limiter) : limiter_(limiter) {
    std::unique_lock lock(limiter_.mu_);
    limiter_.cv_.wait(lock, [&] { return limiter_.in_flight_ < limiter_.capacity_; });
    ++limiter_.in_flight_;
}

RequestLimiter::Slot::~Slot() {
    {
        std::lock_guard lock(limiter_.mu_);
        --limiter_.in_flight_;
    }
    limiter_.cv_.notify_one();
}

nlohmann::json
post_json(const Endpoint& endpoint, const std::string& path, const nlohmann::json& body,
          ErrorCode failure_code, const HttpOptions& options) {
    std::unique_ptr<RequestLimiter::Slot> slot;
    if (options.limiter) {
        slot = std::make_unique<RequestLimiter::Slot>(*options.limiter);
    }
    httplib::Client client(endpoint.origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    const std::string target = endpoint.base_path + path;
    auto res = client.Post(target, body.dump(), "application/json");
    if (!res) {
        throw Error(failure_code, "POST " + endpoint.origin + target + " failed: " +
                                      httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw Error(failure_code, "POST " + endpoint.origin + target + " returned HTTP " +
                                      std::to_string(res->status));
    }
    auto reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded()) {
        throw Error(failure_code, "POST " + endpoint.origin + target + " returned non-JSON body");
    }
    return reply;
}

}  // namespace isearch
