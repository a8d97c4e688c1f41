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

#include <memory>
#include <string>

#include "intentsearch/service/api.hpp"

namespace isearch {

/// HTTP front of SearchService. Every request goes through
/// SearchService::handle; responses carry CORS headers for the web UI.
class ApiServer {
public:
    explicit ApiServer(std::shared_ptr<const SearchService> service);
    ~ApiServer();
    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Port 0 picks a free port. Returns the bound port. Throws
    /// Error(kIoError) when binding fails.
    int
    bind(const std::string& host, int port);

    /// Blocks until stop().
    void
    listen();

    /// bind + listen on a background thread; returns once accepting.
    int
    start(const std::string& host = "127.0.0.1", int port = 0);

    void
    stop();

    int
    port() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace isearch
