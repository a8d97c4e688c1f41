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

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "intentsearch/ranking/gallery.hpp"
#include "intentsearch/service/api.hpp"

namespace isearch {

struct EvalQuery {
    std::string query;
    std::vector<std::string> ground_truth;  // a hit is any of these
};

/// JSON Lines: {"query":s,"ground_truth":"id"} or {"query":s,"ground_truth":["id",..]}.
/// Throws Error(kInvalidArgument) with the line number.
std::vector<EvalQuery> read_eval_queries(const std::filesystem::path& path);

struct EvalReport {
    std::size_t queries = 0;
    std::size_t failed = 0;        // unparsable queries; counted as misses
    std::vector<std::size_t> ks;   // ascending
    std::vector<double> top_k;     // fraction in [0, 1], aligned with ks
    double mrr = 0.0;              // supplementary, cut off at max(ks)
};

/// Ranked ids for a query, at most k of them.
using RankedSearch = std::function<std::vector<std::string>(const std::string& query, std::size_t k)>;

/// Top-K accuracy: the fraction of queries with a ground-truth id among the
/// first K results. Throws Error(kInvalidArgument) for an empty query list
/// or bad ks, Error(kUnknownGroundTruthId) for ids not in the gallery.
EvalReport eval_topk(const std::vector<EvalQuery>& queries, const Gallery& gallery, const RankedSearch& search,
                     std::vector<std::size_t> ks);

/// Grammar parse + execute against the service state.
EvalReport eval_topk(const std::vector<EvalQuery>& queries, const SearchService& service, std::vector<std::size_t> ks);

/// One "Top-K xx.xx%" row per K, then the MRR row marked as supplementary.
std::string format_report(const EvalReport& report);

}  // namespace isearch
