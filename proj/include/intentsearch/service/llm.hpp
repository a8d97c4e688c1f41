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

#include <string>

#include "intentsearch/core/intent.hpp"
#include "intentsearch/net/http_client.hpp"
#include "intentsearch/parser/prompt.hpp"

namespace isearch {

/// Text completion backend for the optional LLM parsing path.
class CompletionProvider {
public:
    virtual ~CompletionProvider() = default;

    virtual std::string
    complete(const std::string& prompt) const = 0;
};

/// POST {endpoint}/complete {"prompt":s} -> {"text":s}. Failures throw
/// Error(kLlmUnavailable).
class RemoteCompletion final : public CompletionProvider {
public:
    RemoteCompletion(const std::string& endpoint, HttpOptions options = {});

    std::string
    complete(const std::string& prompt) const override;

private:
    Endpoint endpoint_;
    HttpOptions options_;
};

/// build_cot_prompt -> complete -> adapt_llm_output. raw_query is set to
/// the input text.
IntentExpression parse_with_llm(const std::string& query, const CompletionProvider& llm,
                                const PromptTemplate& tmpl = default_prompt_template());

}  // namespace isearch
