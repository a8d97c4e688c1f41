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

#include "intentsearch/service/api.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>

#include "intentsearch/core/intent_json.hpp"
#include "intentsearch/parser/grammar.hpp"

namespace isearch {

namespace {

[[noreturn]] void
invalid(const std::string& message) {
    throw Error(ErrorCode::kInvalidArgument, message);
}

void
reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed, const char* what) {
    for (const auto& [key, value] : j.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            invalid(std::string(what) + ": unknown field \"" + key + "\"");
        }
    }
}

std::size_t
read_k(const nlohmann::json& j) {
    const auto it = j.find("k");
    if (it == j.end()) {
        return kDefaultResults;
    }
    if (!it->is_number_integer()) {
        invalid("\"k\" must be an integer");
    }
    const auto k = it->get<long long>();
    if (k < 1 || k > static_cast<long long>(kMaxResults)) {
        invalid("\"k\" must be in [1, " + std::to_string(kMaxResults) + "], got " + std::to_string(k));
    }
    return static_cast<std::size_t>(k);
}

std::string
read_string(const nlohmann::json& j, const char* key, bool required) {
    const auto it = j.find(key);
    if (it == j.end()) {
        if (required) {
            invalid(std::string("missing \"") + key + "\"");
        }
        return {};
    }
    if (!it->is_string()) {
        invalid(std::string("\"") + key + "\" must be a string");
    }
    return it->get<std::string>();
}

void
require_object(const nlohmann::json& j, const char* what) {
    if (!j.is_object()) {
        invalid(std::string(what) + " must be a JSON object");
    }
}

std::string
box_label(const PixelBox& b) {
    return "region[" + std::to_string(b.x0) + "," + std::to_string(b.y0) + "," + std::to_string(b.x1) + "," +
           std::to_string(b.y1) + "]";
}

// Texts collected first so a request costs one embed_texts call.
class TextBatch {
public:
    std::size_t
    add(const std::string& text) {
        texts_.push_back(text);
        return texts_.size() - 1;
    }
    void
    run(const EmbeddingProvider& embedder) {
        if (!texts_.empty()) {
            vectors_ = embedder.embed_texts(texts_);
        }
    }
    PlanElement
    element(std::size_t slot) const {
        return {texts_[slot], vectors_[slot]};
    }

private:
    std::vector<std::string> texts_;
    std::vector<UnitVector> vectors_;
};

UnitVector
mean_of(const std::vector<PlanElement>& elements) {
    std::vector<UnitVector> vs;
    for (const auto& e : elements) {
        vs.push_back(e.vector);
    }
    return mean_direction(vs);
}

std::string
join_labels(const std::vector<PlanElement>& elements) {
    std::string out;
    for (const auto& e : elements) {
        out += out.empty() ? "" : ", ";
        out += e.label;
    }
    return out;
}

ApiResponse
json_response(int status, const nlohmann::json& j) {
    return {status, "application/json", j.dump()};
}

ApiResponse
error_response(ErrorCode code, const std::string& message) {
    return json_response(http_status(code), error_body(code, message));
}

}  // namespace

std::vector<TagEntry>
tag_vocabulary(const std::vector<ImageRecord>& records) {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : records) {
        for (const auto& [key, value] : r.tags) {
            if (!trim(value).empty()) {
                seen.emplace(r.collection, value);
            }
        }
    }
    std::vector<TagEntry> out;
    for (const auto& [collection, tag] : seen) {
        out.push_back({collection, tag});
    }
    return out;
}

nlohmann::json
box_to_json(const PixelBox& box) {
    return nlohmann::json::array({box.x0, box.y0, box.x1, box.y1});
}

PixelBox
box_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 4) {
        invalid("a box is an array [x0, y0, x1, y1]");
    }
    std::uint32_t v[4];
    for (std::size_t i = 0; i < 4; ++i) {
        if (!j[i].is_number_integer() || j[i].get<long long>() < 0 ||
            j[i].get<long long>() > std::numeric_limits<std::uint32_t>::max()) {
            invalid("box coordinates must be non-negative integers");
        }
        v[i] = j[i].get<std::uint32_t>();
    }
    return {v[0], v[1], v[2], v[3]};
}

SearchRequest
SearchRequest::from_json(const nlohmann::json& j) {
    require_object(j, "search request");
    reject_unknown_keys(j, {"query", "k", "llm_mode"}, "search request");
    SearchRequest r;
    r.query = read_string(j, "query", true);
    r.k = read_k(j);
    if (const auto it = j.find("llm_mode"); it != j.end()) {
        if (!it->is_boolean()) {
            invalid("\"llm_mode\" must be a boolean");
        }
        r.llm_mode = it->get<bool>();
    }
    return r;
}

nlohmann::json
SearchRequest::to_json() const {
    return {{"query", query}, {"k", k}, {"llm_mode", llm_mode}};
}

VisualSearchRequest
VisualSearchRequest::from_json(const nlohmann::json& j) {
    require_object(j, "visual search request");
    reject_unknown_keys(j, {"base_image", "selections", "relation", "negatives", "change", "extra_text", "k"},
                        "visual search request");
    VisualSearchRequest r;
    r.base_image = read_string(j, "base_image", true);
    if (r.base_image.empty()) {
        invalid("\"base_image\" is empty");
    }
    if (const auto it = j.find("selections"); it != j.end()) {
        if (!it->is_array()) {
            invalid("\"selections\" must be an array of boxes");
        }
        for (const auto& b : *it) {
            r.selections.push_back(box_from_json(b));
        }
    }
    const auto relation = read_string(j, "relation", false);
    if (relation == "union") {
        r.relation = ElementRelation::kUnion;
    } else if (!relation.empty() && relation != "intersection") {
        invalid("\"relation\" must be \"intersection\" or \"union\"");
    }
    if (const auto it = j.find("negatives"); it != j.end()) {
        if (!it->is_array()) {
            invalid("\"negatives\" must be an array");
        }
        for (const auto& n : *it) {
            if (n.is_string()) {
                if (trim(n.get<std::string>()).empty()) {
                    invalid("negative text is empty");
                }
                r.negatives.push_back({std::nullopt, n.get<std::string>()});
            } else {
                r.negatives.push_back({box_from_json(n), {}});
            }
        }
    }
    if (const auto it = j.find("change"); it != j.end() && !it->is_null()) {
        require_object(*it, "\"change\"");
        reject_unknown_keys(*it, {"box", "instruction", "target"}, "change");
        if (!it->contains("box")) {
            invalid("change: missing \"box\"");
        }
        VisualChange c;
        c.box = box_from_json(it->at("box"));
        c.instruction = read_string(*it, "instruction", false);
        c.target = read_string(*it, "target", false);
        if (trim(c.instruction).empty() == trim(c.target).empty()) {
            invalid("change needs exactly one of \"instruction\" and \"target\"");
        }
        r.change = c;
    }
    r.extra_text = read_string(j, "extra_text", false);
    r.k = read_k(j);
    if (r.selections.empty() && trim(r.extra_text).empty()) {
        invalid("a visual search needs at least one selection or extra_text");
    }
    return r;
}

nlohmann::json
VisualSearchRequest::to_json(bool base_is_id) const {
    nlohmann::json j;
    j["base_image"] = base_is_id ? base_image : "inline";
    j["selections"] = nlohmann::json::array();
    for (const auto& b : selections) {
        j["selections"].push_back(box_to_json(b));
    }
    j["relation"] = relation == ElementRelation::kUnion ? "union" : "intersection";
    j["negatives"] = nlohmann::json::array();
    for (const auto& n : negatives) {
        j["negatives"].push_back(n.box ? box_to_json(*n.box) : nlohmann::json(n.text));
    }
    if (change) {
        nlohmann::json c{{"box", box_to_json(change->box)}};
        if (!change->instruction.empty()) {
            c["instruction"] = change->instruction;
        } else {
            c["target"] = change->target;
        }
        j["change"] = c;
    }
    j["extra_text"] = extra_text;
    j["k"] = k;
    return j;
}

PreviewRequest
PreviewRequest::from_json(const nlohmann::json& j) {
    require_object(j, "preview request");
    reject_unknown_keys(j, {"image", "box", "instruction"}, "preview request");
    PreviewRequest r;
    r.image = read_string(j, "image", true);
    if (!j.contains("box")) {
        invalid("missing \"box\"");
    }
    r.box = box_from_json(j.at("box"));
    r.instruction = read_string(j, "instruction", true);
    if (trim(r.instruction).empty()) {
        invalid("\"instruction\" is empty");
    }
    return r;
}

int
http_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument:
        case ErrorCode::kUnparsableQuery:
        case ErrorCode::kMalformedIntentJson:
        case ErrorCode::kDimensionMismatch:
        case ErrorCode::kZeroVector:
        case ErrorCode::kInvalidBox:
            return 400;
        case ErrorCode::kNotFound:
            return 404;
        case ErrorCode::kEmbedderUnavailable:
        case ErrorCode::kSegmenterUnavailable:
        case ErrorCode::kEditorUnavailable:
        case ErrorCode::kLlmUnavailable:
            return 502;
        default:
            return 500;
    }
}

nlohmann::json
error_body(ErrorCode code, const std::string& message) {
    return {{"error", {{"code", std::string(error_code_name(code))}, {"message", message}}}};
}

SearchService::SearchService(std::shared_ptr<const ServiceState> state) : state_(std::move(state)) {
    if (!state_ || !state_->embedder || !state_->segmenter || !state_->editor) {
        throw Error(ErrorCode::kInvalidArgument, "service state needs an embedder, a segmenter and an editor");
    }
    if (!state_->gallery.empty() && state_->gallery.dim() != state_->embedder->dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "gallery and embedder disagree on dim");
    }
}

IntentExpression
SearchService::interpret(const std::string& query, bool llm_mode) const {
    if (!llm_mode) {
        return parse_query(query, state_->lexicon);
    }
    if (!state_->llm) {
        throw Error(ErrorCode::kLlmUnavailable, "llm_mode requested but no LLM endpoint is configured");
    }
    return parse_with_llm(query, *state_->llm);
}

nlohmann::json
SearchService::parse(const nlohmann::json& request) const {
    require_object(request, "parse request");
    reject_unknown_keys(request, {"query", "llm_mode"}, "parse request");
    const auto query = read_string(request, "query", true);
    bool llm_mode = false;
    if (const auto it = request.find("llm_mode"); it != request.end()) {
        if (!it->is_boolean()) {
            invalid("\"llm_mode\" must be a boolean");
        }
        llm_mode = it->get<bool>();
    }
    const auto expr = interpret(query, llm_mode);

    // elements in first-appearance order, then negatives
    std::vector<IntentElement> elements;
    auto add = [&](const IntentElement& e) {
        if (std::none_of(elements.begin(), elements.end(),
                         [&](const IntentElement& x) { return x.kind == e.kind && same_text(x.text, e.text); })) {
            elements.push_back(e);
        }
    };
    for (const auto& o : expr.options) {
        for (const auto& e : o.elements) {
            add(e);
        }
    }
    for (const auto& n : expr.negatives) {
        add(n);
    }
    std::vector<std::vector<TagSuggestion>> tags(elements.size());
    if (!state_->tag_vocab.empty() && !elements.empty()) {
        tags = match_elements_to_tags(elements, state_->tag_vocab, *state_->embedder, state_->tag_top_n);
    }
    nlohmann::json suggestions = nlohmann::json::array();
    for (std::size_t i = 0; i < elements.size(); ++i) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& t : tags[i]) {
            list.push_back({{"tag", t.tag}, {"collection", t.collection}, {"similarity", t.similarity}});
        }
        suggestions.push_back({{"element", element_to_wire(elements[i])}, {"tags", list}});
    }
    return {{"intent", to_json(expr)}, {"suggestions", suggestions}};
}

nlohmann::json
SearchService::results_json(const ExecuteResult& out) const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& r : out.results) {
        const auto& rec = state_->gallery.record(r.image_id);
        list.push_back({{"id", r.image_id},
                        {"score", r.final_score},
                        {"collection", rec.collection},
                        {"price", rec.price.to_string()},
                        {"image_url", "/images/" + r.image_id}});
    }
    return list;
}

nlohmann::json
SearchService::search(const SearchRequest& request) const {
    const auto expr = interpret(request.query, request.llm_mode);
    const auto out = execute(expr, state_->gallery, *state_->embedder, state_->cfg, request.k);
    return {{"results", results_json(out)}, {"intent", to_json(expr)}};
}

Image
SearchService::resolve_image(const std::string& ref, bool* is_id) const {
    if (const auto pos = state_->gallery.position(ref)) {
        if (is_id != nullptr) {
            *is_id = true;
        }
        const auto path = state_->root / state_->gallery.records()[*pos].image_path;
        try {
            return read_png_file(path.string());
        } catch (const Error& e) {
            throw Error(ErrorCode::kMissingImage, "image for '" + ref + "' is unreadable: " + e.what());
        }
    }
    if (is_id != nullptr) {
        *is_id = false;
    }
    try {
        return decode_png(base64_decode(ref));
    } catch (const Error&) {
        const auto shown = ref.size() > 64 ? ref.substr(0, 64) + "..." : ref;
        throw Error(ErrorCode::kNotFound, "'" + shown + "' is neither a gallery id nor a base64 PNG");
    }
}

QueryPlan
SearchService::compile_visual(const VisualSearchRequest& req, IntentExpression* text_part) const {
    const auto& st = *state_;
    const Image image = resolve_image(req.base_image);
    auto region = [&](const PixelBox& box, RegionMask* mask_out = nullptr) {
        const auto mask = segment(image, box, *st.segmenter);
        if (mask_out != nullptr) {
            *mask_out = mask;
        }
        return PlanElement{box_label(box),
                           visual_query_embedding(image, mask, *st.embedder, st.cfg.alpha0, st.cfg.alpha1)};
    };

    const auto frag = parse_fragment(req.extra_text, st.lexicon);
    TextBatch batch;
    std::vector<std::vector<std::size_t>> frag_opts;
    for (const auto& o : frag.options) {
        std::vector<std::size_t> slots;
        for (const auto& e : o.elements) {
            slots.push_back(batch.add(e.text));
        }
        frag_opts.push_back(slots);
    }
    std::vector<std::size_t> neg_slots;
    for (const auto& n : req.negatives) {
        if (!n.box) {
            neg_slots.push_back(batch.add(n.text));
        }
    }
    for (const auto& n : frag.negatives) {
        neg_slots.push_back(batch.add(n.text));
    }
    std::vector<std::pair<std::size_t, std::size_t>> change_slots;
    for (const auto& c : frag.changes) {
        change_slots.emplace_back(batch.add(c.source.text), batch.add(c.target.text));
    }
    std::optional<std::size_t> target_slot;
    if (req.change && !req.change->target.empty()) {
        target_slot = batch.add(req.change->target);
    }
    batch.run(*st.embedder);

    // selections
    std::vector<PlanElement> picked;
    for (const auto& b : req.selections) {
        picked.push_back(region(b));
    }
    std::vector<std::vector<PlanElement>> groups;
    if (!picked.empty()) {
        if (req.relation == ElementRelation::kIntersection) {
            groups.push_back(picked);
        } else {
            for (const auto& p : picked) {
                groups.push_back({p});
            }
        }
    }

    QueryPlan plan;
    auto push_option = [&](std::vector<PlanElement> elements, std::optional<UnitVector> composed) {
        PlanOption o;
        o.label = join_labels(elements);
        o.composed = composed ? *composed : mean_of(elements);
        o.elements = std::move(elements);
        plan.options.push_back(std::move(o));
    };
    if (groups.empty()) {
        for (std::size_t i = 0; i < frag.options.size(); ++i) {
            std::vector<PlanElement> els;
            for (auto s : frag_opts[i]) {
                els.push_back(batch.element(s));
            }
            // same composed vector the text path uses
            push_option(std::move(els), composed_query_vector(frag.options[i], *st.embedder));
        }
    } else if (frag.options.empty()) {
        for (auto& g : groups) {
            push_option(g, std::nullopt);
        }
    } else {
        for (const auto& g : groups) {
            for (const auto& slots : frag_opts) {
                auto els = g;
                for (auto s : slots) {
                    els.push_back(batch.element(s));
                }
                push_option(std::move(els), std::nullopt);
            }
        }
    }

    for (const auto& n : req.negatives) {
        if (n.box) {
            plan.negatives.push_back(region(*n.box));
        }
    }
    for (auto s : neg_slots) {
        plan.negatives.push_back(batch.element(s));
    }

    if (req.change) {
        RegionMask mask;
        auto source = region(req.change->box, &mask);
        PlanElement target;
        if (target_slot) {
            target = batch.element(*target_slot);
        } else {
            const auto edited = preview_change(image, mask, req.change->instruction, *st.editor);
            target = {req.change->instruction,
                      visual_query_embedding(edited, mask, *st.embedder, st.cfg.alpha0, st.cfg.alpha1)};
        }
        plan.changes.push_back({std::move(source), std::move(target)});
    }
    for (const auto& [s, t] : change_slots) {
        plan.changes.push_back({batch.element(s), batch.element(t)});
    }
    if (plan.options.empty()) {
        if (plan.changes.empty()) {
            invalid("nothing to search for: select a region or describe an element");
        }
        std::vector<PlanElement> targets;
        for (const auto& c : plan.changes) {
            targets.push_back(c.target);
        }
        push_option(std::move(targets), std::nullopt);
    }
    plan.metadata = frag.metadata;
    if (text_part != nullptr) {
        *text_part = frag;
    }
    return plan;
}

nlohmann::json
SearchService::search_visual(const VisualSearchRequest& request) const {
    IntentExpression text_part;
    const auto plan = compile_visual(request, &text_part);
    const auto out = execute(plan, state_->gallery, state_->cfg, request.k);
    const bool is_id = state_->gallery.position(request.base_image).has_value();
    nlohmann::json intent = nullptr;
    if (!trim(request.extra_text).empty()) {
        intent = to_json(text_part);
    }
    return {{"results", results_json(out)}, {"intent", intent}, {"request", request.to_json(is_id)}};
}

nlohmann::json
SearchService::preview(const PreviewRequest& request) const {
    const Image image = resolve_image(request.image);
    const auto mask = segment(image, request.box, *state_->segmenter);
    const auto edited = preview_change(image, mask, request.instruction, *state_->editor);
    return {{"image", base64_encode(encode_png(edited))}, {"box", box_to_json(request.box)}};
}

std::vector<std::uint8_t>
SearchService::image_png(const std::string& id) const {
    const auto pos = state_->gallery.position(id);
    if (!pos) {
        throw Error(ErrorCode::kNotFound, "unknown image id '" + id + "'");
    }
    const auto path = state_->root / state_->gallery.records()[*pos].image_path;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::kMissingImage, "image for '" + id + "' not found: " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ApiResponse
SearchService::handle(const std::string& method, const std::string& path, const std::string& body) const {
    constexpr std::string_view kImages = "/images/";
    const bool is_get = method == "GET";
    const bool is_post = method == "POST";
    try {
        if (path == "/healthz") {
            if (!is_get) {
                return json_response(405, error_body(ErrorCode::kInvalidArgument, "use GET"));
            }
            return json_response(200, {{"status", "ok"}});
        }
        if (path.starts_with(kImages)) {
            if (!is_get) {
                return json_response(405, error_body(ErrorCode::kInvalidArgument, "use GET"));
            }
            const auto bytes = image_png(path.substr(kImages.size()));
            return {200, "image/png", std::string(bytes.begin(), bytes.end())};
        }
        if (path != "/parse" && path != "/search" && path != "/search/visual" && path != "/preview") {
            return error_response(ErrorCode::kNotFound, "no route for " + path);
        }
        if (!is_post) {
            return json_response(405, error_body(ErrorCode::kInvalidArgument, "use POST"));
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception&) {
            return error_response(ErrorCode::kInvalidArgument, "request body is not valid JSON");
        }
        if (path == "/parse") {
            return json_response(200, parse(j));
        }
        if (path == "/search") {
            return json_response(200, search(SearchRequest::from_json(j)));
        }
        if (path == "/search/visual") {
            return json_response(200, search_visual(VisualSearchRequest::from_json(j)));
        }
        return json_response(200, preview(PreviewRequest::from_json(j)));
    } catch (const Error& e) {
        return error_response(e.code(), e.what());
    } catch (const nlohmann::json::exception& e) {
        return error_response(ErrorCode::kInvalidArgument, e.what());
    } catch (const std::exception& e) {
        return json_response(500, {{"error", {{"code", "internal"}, {"message", e.what()}}}});
    }
}

}  // namespace isearch
