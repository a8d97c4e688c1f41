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

#include "intentsearch/parser/prompt.hpp"

#include <json.hpp>

#include "intentsearch/core/error.hpp"
#include "intentsearch/core/intent_json.hpp"

namespace isearch {

namespace {

[[noreturn]] void
malformed(const std::string& why) {
    throw Error(ErrorCode::kMalformedIntentJson, why);
}

std::string_view
strip_fence(std::string_view text) {
    text = trim(text);
    if (!text.starts_with("```")) {
        return text;
    }
    const auto nl = text.find('\n');
    if (nl == std::string_view::npos) {
        return text;
    }
    text.remove_prefix(nl + 1);
    text = trim(text);
    if (text.ends_with("```")) {
        text.remove_suffix(3);
    }
    return trim(text);
}

}  // namespace

PromptTemplate::PromptTemplate(std::string instruction, std::vector<FewShotExample> examples)
    : instruction_(std::move(instruction)), examples_(std::move(examples)) {
    if (examples_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "prompt template needs at least one example");
    }
    for (const auto& ex : examples_) {
        adapt_llm_output(ex.answer_json);
    }
}

PromptTemplate
default_prompt_template() {
    std::string instruction =
        "Extract the visual elements the user is searching for and the logic between them. "
        "Answer with one JSON object. \"options\" is a list of inner lists: elements in one inner "
        "list must appear together, different inner lists are alternatives. Put excluded elements "
        "in \"negatives\" and replacements in \"changes\" as {\"source\":..,\"target\":..}. Write a "
        "known NFT collection as \"C_<collection name>\". Price wishes go to \"metadata\" as "
        "\"price_order\" (\"asc\" or \"desc\") or \"price_range\" [low, high] in ETH.";
    std::vector<FewShotExample> examples = {
        {"woman in pixel style but no black hair or smoking",
         "The user wants a woman drawn in pixel style, so woman and pixel style appear together in "
         "one inner list. \"but no\" starts an exclusion and \"or\" inside it joins two things to "
         "avoid, so black hair and smoking are both negatives.",
         R"({"negatives":["black hair","smoking"],"options":[["woman","pixel style"]]})"},
        {"monkey with red hat or black shirt",
         "monkey must always be present. \"or\" offers red hat and black shirt as alternatives, so "
         "the Cartesian product [monkey] x [red hat | black shirt] gives two inner lists.",
         R"({"options":[["monkey","red hat"],["monkey","black shirt"]]})"},
        {"monkey in Bored Ape Yacht club with the highest price",
         "Bored Ape Yacht Club is a collection, so it becomes C_Bored Ape Yacht Club next to monkey. "
         "\"highest price\" asks for descending price order.",
         R"({"metadata":{"collection":"Bored Ape Yacht Club","price_order":"desc"},"options":[["monkey","C_Bored Ape Yacht Club"]]})"},
        {"penguin with a crown instead of a hat",
         "The user starts from a penguin with a hat and wants the hat replaced by a crown, so this is "
         "a change from hat to crown applied to penguin.",
         R"({"changes":[{"source":"hat","target":"crown"}],"options":[["penguin"]]})"},
    };
    return PromptTemplate(std::move(instruction), std::move(examples));
}

std::string
build_cot_prompt(const PromptTemplate& tmpl, std::string_view query) {
    std::string out;
    for (const auto& ex : tmpl.examples()) {
        out += "Q: " + ex.query + "\n";
        out += "P: " + tmpl.instruction() + "\n";
        out += "R: " + ex.reasoning + "\n";
        out += "A: " + ex.answer_json + "\n\n";
    }
    out += "Q: ";
    out += query;
    out += "\nP: " + tmpl.instruction() + "\nR:";
    return out;
}

IntentExpression
adapt_llm_output(std::string_view json_text) {
    const auto body = strip_fence(json_text);
    auto j = nlohmann::json::parse(body.begin(), body.end(), nullptr, false);
    if (j.is_discarded()) {
        malformed("not valid JSON");
    }
    if (j.is_array()) {
        // [["a","b"],["c"]] shorthand: options only
        j = nlohmann::json{{"options", std::move(j)}};
    }
    if (j.is_object() && j.contains("metadata") && j["metadata"].is_object() &&
        j["metadata"].contains("collection") && j["metadata"]["collection"].is_string()) {
        auto c = j["metadata"]["collection"].get<std::string>();
        if (c.starts_with(kCollectionPrefix)) {
            j["metadata"]["collection"] = std::string(trim(std::string_view(c).substr(kCollectionPrefix.size())));
        }
    }
    auto expr = from_json(j);
    const auto problems = validate_expression(expr);
    if (!problems.empty()) {
        malformed(problems.front());
    }
    return expr;
}

}  // namespace isearch
