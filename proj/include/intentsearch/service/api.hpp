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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "intentsearch/core/error.hpp"
#include "intentsearch/core/ranking_config.hpp"
#include "intentsearch/embed/provider.hpp"
#include "intentsearch/parser/lexicon.hpp"
#include "intentsearch/parser/tags.hpp"
#include "intentsearch/ranking/engine.hpp"
#include "intentsearch/service/llm.hpp"
#include "intentsearch/visual/edit.hpp"
#include "intentsearch/visual/query.hpp"
#include "intentsearch/visual/segment.hpp"

namespace isearch {

inline constexpr std::size_t kMaxResults = 200;
inline constexpr std::size_t kDefaultResults = 20;

/// Everything a request may touch. Built once, then shared read-only by
/// every handler thread.
struct ServiceState {
    Gallery gallery;
    std::filesystem::path root;  // image_path is relative to this
    std::shared_ptr<const EmbeddingProvider> embedder;
    std::shared_ptr<const SegmentationProvider> segmenter;
    std::shared_ptr<const EditProvider> editor;
    std::shared_ptr<const CompletionProvider> llm;  // may be null
    QueryLexicon lexicon;
    RankingConfig cfg;
    std::vector<TagEntry> tag_vocab;
    std::size_t tag_top_n = 3;
};

/// Unique (collection, tag value) pairs over all records, sorted.
std::vector<TagEntry> tag_vocabulary(const std::vector<ImageRecord>& records);

// Wire types. Boxes travel as [x0, y0, x1, y1].

nlohmann::json box_to_json(const PixelBox& box);
PixelBox box_from_json(const nlohmann::json& j);

struct SearchRequest {
    std::string query;
    std::size_t k = kDefaultResults;
    bool llm_mode = false;

    /// Throws Error(kInvalidArgument): missing query, k outside [1, 200].
    static SearchRequest
    from_json(const nlohmann::json& j);
    nlohmann::json
    to_json() const;
};

struct VisualNegative {
    std::optional<PixelBox> box;  // set: a region of the base image
    std::string text;             // otherwise: free text
};

struct VisualChange {
    PixelBox box;
    std::string instruction;  // edit the region, or
    std::string target;       // name what it should become; exactly one is set
};

struct VisualSearchRequest {
    std::string base_image;  // gallery id, or base64 PNG
    std::vector<PixelBox> selections;
    ElementRelation relation = ElementRelation::kIntersection;
    std::vector<VisualNegative> negatives;
    std::optional<VisualChange> change;
    std::string extra_text;
    std::size_t k = kDefaultResults;

    /// Throws Error(kInvalidArgument): no selection and no extra_text, k out
    /// of range, malformed boxes, unknown relation.
    static VisualSearchRequest
    from_json(const nlohmann::json& j);
    /// Echo form; inline images are reported as "inline".
    nlohmann::json
    to_json(bool base_is_id) const;
};

struct PreviewRequest {
    std::string image;  // gallery id, or base64 PNG
    PixelBox box;
    std::string instruction;

    static PreviewRequest
    from_json(const nlohmann::json& j);
};

struct ApiResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

/// 400 for validation, 404 for unknown ids, 502 for provider outages, 500
/// for everything else.
int http_status(ErrorCode code);
nlohmann::json error_body(ErrorCode code, const std::string& message);

/// The request handlers. Stateless: each call depends only on its input
/// and the shared ServiceState.
class SearchService {
public:
    explicit SearchService(std::shared_ptr<const ServiceState> state);

    /// Routes GET /healthz, POST /parse, POST /search, POST /search/visual,
    /// POST /preview, GET /images/{id}. Never throws.
    ApiResponse
    handle(const std::string& method, const std::string& path, const std::string& body) const;

    // The handlers below throw isearch::Error.
    nlohmann::json
    parse(const nlohmann::json& request) const;
    nlohmann::json
    search(const SearchRequest& request) const;
    nlohmann::json
    search_visual(const VisualSearchRequest& request) const;
    nlohmann::json
    preview(const PreviewRequest& request) const;
    std::vector<std::uint8_t>
    image_png(const std::string& id) const;

    /// Text path: grammar (or LLM) then execute.
    IntentExpression
    interpret(const std::string& query, bool llm_mode) const;

    /// Visual path compiled to the same plan the text path runs. `text_part`
    /// receives the parsed extra_text.
    QueryPlan
    compile_visual(const VisualSearchRequest& request, IntentExpression* text_part = nullptr) const;

    /// A gallery id or an inline base64 PNG. Throws Error(kNotFound) when
    /// it is neither.
    Image
    resolve_image(const std::string& ref, bool* is_id = nullptr) const;

    const ServiceState&
    state() const {
        return *state_;
    }

private:
    nlohmann::json
    results_json(const ExecuteResult& out) const;

    std::shared_ptr<const ServiceState> state_;
};

}  // namespace isearch
