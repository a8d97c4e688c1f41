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

#include "intentsearch/service/llm.hpp"

#include "intentsearch/core/error.hpp"

namespace isearch {

RemoteCompletion::RemoteCompletion(const std::string& endpoint, HttpOptions options)
    : endpoint_(Endpoint::parse(endpoint)), options_(std::move(options)) {}

std::string
RemoteCompletion::complete(const std::string& prompt) const {
    const auto reply = post_json(endpoint_, "/complete", {{"prompt", prompt}}, ErrorCode::kLlmUnavailable, options_);
    const auto it = reply.find("text");
    if (it == reply.end() || !it->is_string()) {
        throw Error(ErrorCode::kLlmUnavailable, "completion reply has no \"text\" string");
    }
    return it->get<std::string>();
}

IntentExpression
parse_with_llm(const std::string& query, const CompletionProvider& llm, const PromptTemplate& tmpl) {
    if (trim(query).empty()) {
        throw Error(ErrorCode::kUnparsableQuery, "query is empty");
    }
    auto expr = adapt_llm_output(llm.complete(build_cot_prompt(tmpl, query)));
    expr.raw_query = query;
    return expr;
}

}  // namespace isearch
