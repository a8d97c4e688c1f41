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

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "intentsearch/service/api.hpp"

namespace isearch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Flags shared by ingest, serve, query and eval.
struct GalleryFlags {
    std::string gallery = ".";
    std::string meta;        // default <gallery>/meta.jsonl
    std::string embeddings;  // default <gallery>/embeddings.iemb
    std::string synthetic_spec;  // default <gallery>/spec.json
    std::string embed_url;
    std::size_t embed_dim = kDefaultEmbeddingDim;
    std::string segment_url;
    std::string edit_url;
    std::string llm_url;
    std::size_t leaf_size = 32;
    std::size_t prefilter_k = 500;
    double exclusion_fraction = 0.4;
    int timeout_ms = 30000;
};

/// Fills in the defaults that depend on --gallery.
GalleryFlags resolved(GalleryFlags flags);

/// Embedder from --embed-url, else the synthetic spec file.
std::shared_ptr<const EmbeddingProvider> make_embedder(const GalleryFlags& flags,
                                                      std::shared_ptr<RequestLimiter> limiter = nullptr);

/// Loads metadata + embeddings and wires up the providers.
std::shared_ptr<const ServiceState> load_state(const GalleryFlags& flags);

/// The whole command line. Returns the exit code; never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isearch::cli
