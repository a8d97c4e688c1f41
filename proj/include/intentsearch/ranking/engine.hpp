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

#include <span>
#include <string>
#include <vector>

#include "intentsearch/core/intent.hpp"
#include "intentsearch/core/ranking_config.hpp"
#include "intentsearch/core/records.hpp"
#include "intentsearch/embed/provider.hpp"
#include "intentsearch/ranking/gallery.hpp"

namespace isearch {

/// An element already embedded. `label` is for display and tracing only.
struct PlanElement {
    std::string label;
    UnitVector vector;
};

struct PlanOption {
    std::string label;
    UnitVector composed;
    std::vector<PlanElement> elements;
};

struct PlanChange {
    PlanElement source;
    PlanElement target;
};

/// Vector-level form of an expression. Text and visual requests both compile
/// to this and run through the same executor.
struct QueryPlan {
    std::vector<PlanOption> options;
    std::vector<PlanElement> negatives;
    std::vector<PlanChange> changes;
    MetadataConstraint metadata;
};

/// Element texts joined by ", " in element order (collections by name).
std::string composed_query_text(const ComposedIntent& ci);

UnitVector composed_query_vector(const ComposedIntent& ci, const EmbeddingProvider& embedder);

/// Embeds every text of a valid expression in one embed_texts call.
QueryPlan compile_plan(const IntentExpression& expr, const EmbeddingProvider& embedder);

/// w * composed + w_elem * sum(elements).
double score_eq5(double composed_sim, std::span<const double> element_sims, const RankingConfig& cfg);

/// w_o * original + w_t * target - w_s * source.
double score_change(double sim_to_original, double sim_to_target, double sim_to_source,
                    const RankingConfig& cfg = {});

/// Prefilter (knn of the composed vector, plus knn of each change target),
/// score, then drop candidates below the pool mean on any element. Sorted
/// by score descending, ties by id.
std::vector<Candidate> retrieve_option(const PlanOption& option, std::span<const PlanChange> changes,
                                       const Gallery& gallery, const RankingConfig& cfg,
                                       std::size_t option_index = 0);

/// Round-robin interleave; first occurrence of an id wins.
std::vector<Candidate> merge_union(const std::vector<std::vector<Candidate>>& option_results);

/// Indices (into neg_sims) of the ceil(fraction * n) most negative-similar
/// entries; among equal similarities the later entry goes first.
std::vector<std::size_t> exclusion_removals(std::span<const double> neg_sims, double fraction);

/// Similarity of each candidate to the combined negatives: the mean of its
/// similarities to each negative, which ranks identically to the normalized
/// mean negative vector.
std::vector<double> negative_similarities(std::span<const Candidate> candidates, std::span<const PlanElement> negatives,
                                          const Gallery& gallery);

/// Removes the most negative-similar fraction; survivors keep their order.
std::vector<Candidate> apply_exclusion(const std::vector<Candidate>& candidates,
                                       std::span<const PlanElement> negatives, const Gallery& gallery,
                                       const RankingConfig& cfg, std::vector<Candidate>* removed = nullptr);

struct RankedResult {
    std::string image_id;
    double final_score = 0.0;
    std::size_t option = 0;
    bool excluded = false;
    std::string reason;  // why it was excluded: "negative", "collection", "price_range"

    friend bool operator==(const RankedResult&, const RankedResult&) = default;
};

/// Collection filter (case-folded exact), inclusive price range, then a
/// stable price sort when an order is requested.
std::vector<RankedResult> apply_metadata(const std::vector<Candidate>& candidates, const MetadataConstraint& mc,
                                         const Gallery& gallery, std::vector<RankedResult>* dropped = nullptr);

/// Intermediate lists, for inspection.
struct ExecutionTrace {
    std::vector<std::vector<Candidate>> per_option;
    std::vector<Candidate> merged;
    std::vector<Candidate> after_exclusion;
};

struct ExecuteResult {
    std::vector<RankedResult> results;
    std::vector<RankedResult> excluded;
};

/// prefilter -> re-rank -> threshold -> union merge -> exclusion -> metadata
/// -> first k. Throws Error(kEmptyGallery), Error(kDimensionMismatch),
/// Error(kInvalidArgument).
ExecuteResult execute(const QueryPlan& plan, const Gallery& gallery, const RankingConfig& cfg, std::size_t k,
                      ExecutionTrace* trace = nullptr);

ExecuteResult execute(const IntentExpression& expr, const Gallery& gallery, const EmbeddingProvider& embedder,
                      const RankingConfig& cfg, std::size_t k, ExecutionTrace* trace = nullptr);

}  // namespace isearch
