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

#include "intentsearch/service/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "intentsearch/core/error.hpp"

namespace isearch {

std::vector<EvalQuery>
read_eval_queries(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::kInvalidArgument, "cannot open query file " + path.string());
    }
    std::vector<EvalQuery> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (trim(line).empty()) {
            continue;
        }
        const std::string where = path.filename().string() + ":" + std::to_string(n) + ": ";
        try {
            const auto j = nlohmann::json::parse(line);
            EvalQuery q;
            q.query = j.at("query").get<std::string>();
            const auto& gt = j.at("ground_truth");
            if (gt.is_string()) {
                q.ground_truth.push_back(gt.get<std::string>());
            } else {
                q.ground_truth = gt.get<std::vector<std::string>>();
            }
            if (q.ground_truth.empty()) {
                throw Error(ErrorCode::kInvalidArgument, "ground_truth is empty");
            }
            out.push_back(std::move(q));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::kInvalidArgument, where + e.what());
        } catch (const Error& e) {
            throw Error(e.code(), where + e.what());
        }
    }
    return out;
}

EvalReport
eval_topk(const std::vector<EvalQuery>& queries, const Gallery& gallery, const RankedSearch& search,
          std::vector<std::size_t> ks) {
    if (queries.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "no evaluation queries");
    }
    if (ks.empty() || std::find(ks.begin(), ks.end(), 0) != ks.end()) {
        throw Error(ErrorCode::kInvalidArgument, "ks must be a non-empty list of positive integers");
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (const auto& q : queries) {
        for (const auto& id : q.ground_truth) {
            if (!gallery.position(id)) {
                throw Error(ErrorCode::kUnknownGroundTruthId, "ground truth '" + id + "' is not in the gallery");
            }
        }
    }
    EvalReport r;
    r.queries = queries.size();
    r.ks = ks;
    r.top_k.assign(ks.size(), 0.0);
    const std::size_t kmax = ks.back();
    for (const auto& q : queries) {
        std::vector<std::string> ranked;
        try {
            ranked = search(q.query, kmax);
        } catch (const Error& e) {
            // an unparsable query is a miss; outages are not
            if (e.code() != ErrorCode::kUnparsableQuery) {
                throw;
            }
            ++r.failed;
            continue;
        }
        std::size_t rank = 0;  // 1-based, 0 = miss
        for (std::size_t i = 0; i < ranked.size() && i < kmax && rank == 0; ++i) {
            if (std::find(q.ground_truth.begin(), q.ground_truth.end(), ranked[i]) != q.ground_truth.end()) {
                rank = i + 1;
            }
        }
        if (rank == 0) {
            continue;
        }
        for (std::size_t i = 0; i < ks.size(); ++i) {
            r.top_k[i] += rank <= ks[i] ? 1.0 : 0.0;
        }
        r.mrr += 1.0 / static_cast<double>(rank);
    }
    const auto n = static_cast<double>(queries.size());
    for (auto& t : r.top_k) {
        t /= n;
    }
    r.mrr /= n;
    return r;
}

EvalReport
eval_topk(const std::vector<EvalQuery>& queries, const SearchService& service, std::vector<std::size_t> ks) {
    const auto& st = service.state();
    auto search = [&](const std::string& query, std::size_t k) {
        const auto out = execute(service.interpret(query, false), st.gallery, *st.embedder, st.cfg, k);
        std::vector<std::string> ids;
        for (const auto& r : out.results) {
            ids.push_back(r.image_id);
        }
        return ids;
    };
    return eval_topk(queries, st.gallery, search, std::move(ks));
}

std::string
format_report(const EvalReport& report) {
    std::string out = "queries " + std::to_string(report.queries);
    if (report.failed > 0) {
        out += " (" + std::to_string(report.failed) + " unparsable, counted as misses)";
    }
    out += "\n";
    char buf[96];
    for (std::size_t i = 0; i < report.ks.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "Top-%zu %.2f%%\n", report.ks[i], 100.0 * report.top_k[i]);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "MRR@%zu %.4f (supplementary, not a Top-K figure)\n",
                  report.ks.empty() ? 0 : report.ks.back(), report.mrr);
    out += buf;
    return out;
}

}  // namespace isearch
