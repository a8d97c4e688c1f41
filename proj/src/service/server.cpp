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

#include "intentsearch/service/server.hpp"

#include <thread>

#include <httplib.h>

namespace isearch {

struct ApiServer::Impl {
    std::shared_ptr<const SearchService> service;
    httplib::Server server;
    std::thread thread;
    int port = -1;
};

ApiServer::ApiServer(std::shared_ptr<const SearchService> service) : impl_(std::make_unique<Impl>()) {
    impl_->service = std::move(service);
    auto route = [svc = impl_->service](const httplib::Request& req, httplib::Response& res) {
        const auto out = svc->handle(req.method, req.path, req.body);
        res.status = out.status;
        res.set_content(out.body, out.content_type);
    };
    impl_->server.Get(".*", route);
    impl_->server.Post(".*", route);
    impl_->server.Put(".*", route);
    impl_->server.Delete(".*", route);
    impl_->server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    impl_->server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                       {"Access-Control-Allow-Headers", "Content-Type"},
                                       {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    impl_->server.set_payload_max_length(64ULL << 20);
}

ApiServer::~ApiServer() {
    stop();
}

int
ApiServer::bind(const std::string& host, int port) {
    const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) {
        throw Error(ErrorCode::kIoError, "cannot bind " + host + ":" + std::to_string(port));
    }
    impl_->port = bound;
    return bound;
}

void
ApiServer::listen() {
    impl_->server.listen_after_bind();
}

int
ApiServer::start(const std::string& host, int port) {
    const int bound = bind(host, port);
    impl_->thread = std::thread([this] { listen(); });
    impl_->server.wait_until_ready();
    return bound;
}

void
ApiServer::stop() {
    impl_->server.stop();
    if (impl_->thread.joinable()) {
        impl_->thread.join();
    }
}

int
ApiServer::port() const {
    return impl_->port;
}

}  // namespace isearch
