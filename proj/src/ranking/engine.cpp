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

#include "intentsearch/ranking/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "intentsearch/core/error.hpp"

namespace isearch {

namespace {

// Scores come from float32 vectors; sort on a 1e-9 grid so that values equal
// up to summation order tie deterministically and fall back to the id.
std::int64_t
sort_key(double score) {
    return std::llround(score * 1e9);
}

bool
ranked_before(const Candidate& a, const Candidate& b) {
    const auto ka = sort_key(a.final_score);
    const auto kb = sort_key(b.final_score);
    if (ka != kb) {
        return ka > kb;
    }
    return a.image_id < b.image_id;
}

void
check_dim(const UnitVector& v, const Gallery& g, const std::string& what) {
    if (v.dim() != g.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, what + " has dim " + std::to_string(v.dim()) +
                                                       ", gallery dim is " + std::to_string(g.dim()));
    }
}

std::string
element_text(const IntentElement& e) {
    return e.text;
}

}  // namespace

std::string
composed_query_text(const ComposedIntent& ci) {
    std::string out;
    for (const auto& e : ci.elements) {
        if (e.kind != ElementKind::kVisual && e.kind != ElementKind::kCollection) {
            continue;
        }
        if (!out.empty()) {
            out += ", ";
        }
        out += element_text(e);
    }
    return out;
}

UnitVector
composed_query_vector(const ComposedIntent& ci, const EmbeddingProvider& embedder) {
    return embedder.embed_text(composed_query_text(ci));
}

QueryPlan
compile_plan(const IntentExpression& expr, const EmbeddingProvider& embedder) {
    const auto problems = validate_expression(expr);
    if (!problems.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "invalid expression: " + problems.front());
    }
    std::vector<std::string> texts;
    for (const auto& o : expr.options) {
        texts.push_back(composed_query_text(o));
        for (const auto& e : o.elements) {
            texts.push_back(element_text(e));
        }
    }
    for (const auto& n : expr.negatives) {
        texts.push_back(element_text(n));
    }
    for (const auto& c : expr.changes) {
        texts.push_back(element_text(c.source));
        texts.push_back(element_text(c.target));
    }
    const auto vecs = embedder.embed_texts(texts);
    if (vecs.size() != texts.size()) {
        throw Error(ErrorCode::kEmbedderUnavailable, "embedder returned the wrong number of vectors");
    }
    std::size_t at = 0;
    QueryPlan plan;
    for (const auto& o : expr.options) {
        PlanOption po;
        po.label = texts[at];
        po.composed = vecs[at++];
        for (std::size_t i = 0; i < o.elements.size(); ++i, ++at) {
            po.elements.push_back({texts[at], vecs[at]});
        }
        plan.options.push_back(std::move(po));
    }
    for (std::size_t i = 0; i < expr.negatives.size(); ++i, ++at) {
        plan.negatives.push_back({texts[at], vecs[at]});
    }
    for (std::size_t i = 0; i < expr.changes.size(); ++i, at += 2) {
        plan.changes.push_back({{texts[at], vecs[at]}, {texts[at + 1], vecs[at + 1]}});
    }
    plan.metadata = expr.metadata;
    return plan;
}

double
score_eq5(double composed_sim, std::span<const double> element_sims, const RankingConfig& cfg) {
    double sum = 0.0;
    for (double s : element_sims) {
        sum += s;
    }
    return cfg.w * composed_sim + cfg.w_elem * sum;
}

double
score_change(double sim_to_original, double sim_to_target, double sim_to_source, const RankingConfig& cfg) {
    return cfg.change_w_original * sim_to_original + cfg.change_w_target * sim_to_target -
           cfg.change_w_source * sim_to_source;
}

std::vector<Candidate>
retrieve_option(const PlanOption& option, std::span<const PlanChange> changes, const Gallery& gallery,
                const RankingConfig& cfg, std::size_t option_index) {
    if (gallery.empty()) {
        throw Error(ErrorCode::kEmptyGallery, "gallery is empty");
    }
    check_dim(option.composed, gallery, "option vector");
    for (const auto& e : option.elements) {
        check_dim(e.vector, gallery, "element '" + e.label + "'");
    }
    for (const auto& c : changes) {
        check_dim(c.source.vector, gallery, "change source");
        check_dim(c.target.vector, gallery, "change target");
    }
    const std::size_t k = std::min(cfg.prefilter_k, gallery.size());

    // (1) prefilter pool
    std::vector<std::size_t> pool;
    std::unordered_set<std::size_t> seen;
    auto take = [&](const UnitVector& q) {
        for (const auto& n : gallery.index().knn(q, k)) {
            const auto pos = *gallery.position(n.id);
            if (seen.insert(pos).second) {
                pool.push_back(pos);
            }
        }
    };
    take(option.composed);
    for (const auto& c : changes) {
        take(c.target.vector);
    }

    // (2) similarities and (3) scores
    const std::size_t ne = option.elements.size();
    std::vector<Candidate> cands;
    cands.reserve(pool.size());
    std::vector<double> mean(ne, 0.0);
    for (auto pos : pool) {
        const auto& v = gallery.vectors()[pos];
        Candidate c;
        c.image_id = gallery.records()[pos].id;
        c.option = option_index;
        c.composed_sim = dot(option.composed, v);
        c.element_sims.reserve(ne);
        for (std::size_t i = 0; i < ne; ++i) {
            c.element_sims.push_back(dot(option.elements[i].vector, v));
            mean[i] += c.element_sims.back();
        }
        if (changes.empty()) {
            c.final_score = score_eq5(c.composed_sim, c.element_sims, cfg);
        } else {
            double score = cfg.change_w_original * c.composed_sim;
            for (const auto& ch : changes) {
                score += score_change(0.0, dot(ch.target.vector, v), dot(ch.source.vector, v), cfg);
            }
            c.final_score = score;
        }
        cands.push_back(std::move(c));
    }
    for (auto& m : mean) {
        m /= static_cast<double>(pool.size());
    }

    // (4) intersection threshold against the pool mean of each element
    std::erase_if(cands, [&](const Candidate& c) {
        for (std::size_t i = 0; i < ne; ++i) {
            if (c.element_sims[i] < mean[i] - 1e-12) {
                return true;
            }
        }
        return false;
    });
    std::sort(cands.begin(), cands.end(), ranked_before);
    return cands;
}

std::vector<Candidate>
merge_union(const std::vector<std::vector<Candidate>>& option_results) {
    std::vector<Candidate> out;
    std::unordered_set<std::string> seen;
    std::size_t longest = 0;
    for (const auto& r : option_results) {
        longest = std::max(longest, r.size());
    }
    for (std::size_t i = 0; i < longest; ++i) {
        for (const auto& r : option_results) {
            if (i < r.size() && seen.insert(r[i].image_id).second) {
                out.push_back(r[i]);
            }
        }
    }
    return out;
}

std::vector<std::size_t>
exclusion_removals(std::span<const double> neg_sims, double fraction) {
    const std::size_t n = neg_sims.size();
    // guard against 0.4 * n landing a hair above an integer
    const auto m = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (neg_sims[a] != neg_sims[b]) {
            return neg_sims[a] > neg_sims[b];
        }
        return a > b;
    });
    order.resize(std::min(m, n));
    std::sort(order.begin(), order.end());
    return order;
}

std::vector<double>
negative_similarities(std::span<const Candidate> candidates, std::span<const PlanElement> negatives,
                      const Gallery& gallery) {
    std::vector<double> out;
    out.reserve(candidates.size());
    for (const auto& n : negatives) {
        check_dim(n.vector, gallery, "negative '" + n.label + "'");
    }
    for (const auto& c : candidates) {
        const auto& v = gallery.vector(c.image_id);
        double s = 0.0;
        for (const auto& n : negatives) {
            s += dot(n.vector, v);
        }
        out.push_back(s / static_cast<double>(negatives.size()));
    }
    return out;
}

std::vector<Candidate>
apply_exclusion(const std::vector<Candidate>& candidates, std::span<const PlanElement> negatives,
                const Gallery& gallery, const RankingConfig& cfg, std::vector<Candidate>* removed) {
    if (negatives.empty() || candidates.empty()) {
        return candidates;
    }
    const auto sims = negative_similarities(candidates, negatives, gallery);
    const auto drop = exclusion_removals(sims, cfg.exclusion_fraction);
    std::vector<Candidate> kept;
    kept.reserve(candidates.size() - drop.size());
    std::size_t d = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (d < drop.size() && drop[d] == i) {
            ++d;
            if (removed != nullptr) {
                removed->push_back(candidates[i]);
            }
        } else {
            kept.push_back(candidates[i]);
        }
    }
    return kept;
}

std::vector<RankedResult>
apply_metadata(const std::vector<Candidate>& candidates, const MetadataConstraint& mc, const Gallery& gallery,
               std::vector<RankedResult>* dropped) {
    std::vector<RankedResult> out;
    std::vector<const ImageRecord*> recs;
    const auto want_collection = mc.collection ? std::optional(fold_case(trim(*mc.collection))) : std::nullopt;
    for (const auto& c : candidates) {
        const auto& rec = gallery.record(c.image_id);
        RankedResult r{c.image_id, c.final_score, c.option, false, {}};
        if (want_collection && fold_case(trim(rec.collection)) != *want_collection) {
            r.excluded = true;
            r.reason = "collection";
        } else if (mc.price_range && (rec.price < mc.price_range->low || mc.price_range->high < rec.price)) {
            r.excluded = true;
            r.reason = "price_range";
        }
        if (r.excluded) {
            if (dropped != nullptr) {
                dropped->push_back(std::move(r));
            }
            continue;
        }
        out.push_back(std::move(r));
        recs.push_back(&rec);
    }
    if (mc.price_order) {
        std::vector<std::size_t> order(out.size());
        std::iota(order.begin(), order.end(), 0);
        const bool desc = *mc.price_order == PriceOrder::kDesc;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return desc ? recs[b]->price < recs[a]->price : recs[a]->price < recs[b]->price;
        });
        std::vector<RankedResult> sorted;
        sorted.reserve(out.size());
        for (auto i : order) {
            sorted.push_back(std::move(out[i]));
        }
        out = std::move(sorted);
    }
    return out;
}

ExecuteResult
execute(const QueryPlan& plan, const Gallery& gallery, const RankingConfig& cfg, std::size_t k,
        ExecutionTrace* trace) {
    if (gallery.empty()) {
        throw Error(ErrorCode::kEmptyGallery, "gallery is empty");
    }
    if (k == 0) {
        throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
    }
    if (const auto bad = validate_config(cfg); !bad.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "ranking config: " + bad.front());
    }
    if (plan.options.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "plan has no options");
    }
    for (const auto& o : plan.options) {
        check_dim(o.composed, gallery, "option vector");
    }

    const auto n_opts = static_cast<std::int64_t>(plan.options.size());
    std::vector<std::vector<Candidate>> per_option(plan.options.size());
    std::vector<std::exception_ptr> errors(plan.options.size());
#pragma omp parallel for schedule(dynamic) if (n_opts > 1)
    for (std::int64_t i = 0; i < n_opts; ++i) {
        const auto o = static_cast<std::size_t>(i);
        try {
            per_option[o] = retrieve_option(plan.options[o], plan.changes, gallery, cfg, o);
        } catch (...) {
            errors[o] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    ExecuteResult result;
    auto merged = merge_union(per_option);
    std::vector<Candidate> removed;
    auto kept = apply_exclusion(merged, plan.negatives, gallery, cfg, &removed);
    for (const auto& c : removed) {
        result.excluded.push_back({c.image_id, c.final_score, c.option, true, "negative"});
    }
    result.results = apply_metadata(kept, plan.metadata, gallery, &result.excluded);
    if (result.results.size() > k) {
        result.results.resize(k);
    }
    if (trace != nullptr) {
        trace->per_option = std::move(per_option);
        trace->merged = std::move(merged);
        trace->after_exclusion = std::move(kept);
    }
    return result;
}

ExecuteResult
execute(const IntentExpression& expr, const Gallery& gallery, const EmbeddingProvider& embedder,
        const RankingConfig& cfg, std::size_t k, ExecutionTrace* trace) {
    if (gallery.empty()) {
        throw Error(ErrorCode::kEmptyGallery, "gallery is empty");
    }
    return execute(compile_plan(expr, embedder), gallery, cfg, k, trace);
}

}  // namespace isearch
