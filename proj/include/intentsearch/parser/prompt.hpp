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
#include <string_view>
#include <vector>

#include "intentsearch/core/intent.hpp"

namespace isearch {

struct FewShotExample {
    std::string query;
    std::string reasoning;
    std::string answer_json;
};

/// Q/P/R/A chain-of-thought template: per example the query, the
/// requirement statement, the reasoning and the answer.
class PromptTemplate {
public:
    /// Throws Error(kInvalidArgument) for an empty example list and
    /// Error(kMalformedIntentJson) for an answer that is not a valid expression.
    PromptTemplate(std::string instruction, std::vector<FewShotExample> examples);

    const std::string&
    instruction() const {
        return instruction_;
    }
    const std::vector<FewShotExample>&
    examples() const {
        return examples_;
    }

private:
    std::string instruction_;
    std::vector<FewShotExample> examples_;
};

/// Built-in template using the query patterns the grammar covers.
PromptTemplate default_prompt_template();

std::string build_cot_prompt(const PromptTemplate& tmpl, std::string_view query);

/// Accepts the canonical object or the bare [["a","b"],["c"]] shorthand,
/// optionally wrapped in a ``` fence. Throws Error(kMalformedIntentJson)
/// carrying the first problem found.
IntentExpression adapt_llm_output(std::string_view json_text);

}  // namespace isearch
