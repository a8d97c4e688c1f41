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

#include "intentsearch/core/intent.hpp"

#include <cctype>
#include <string>

namespace isearch {

std::string_view
to_string(PriceOrder order) {
    return order == PriceOrder::kAsc ? "asc" : "desc";
}

std::string
fold_case(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        if (static_cast<unsigned char>(c) < 0x80) {
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    return out;
}

std::string_view
trim(std::string_view text) {
    auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!text.empty() && is_space(text.front())) {
        text.remove_prefix(1);
    }
    while (!text.empty() && is_space(text.back())) {
        text.remove_suffix(1);
    }
    return text;
}

bool
same_text(std::string_view a, std::string_view b) {
    return fold_case(a) == fold_case(b);
}

IntentElement
IntentElement::visual(std::string_view text) {
    return IntentElement{ElementKind::kVisual, std::string(trim(text)), std::nullopt, std::nullopt};
}

IntentElement
IntentElement::collection(std::string_view name) {
    return IntentElement{
        ElementKind::kCollection, std::string(trim(name)), std::nullopt, std::nullopt};
}

IntentElement
IntentElement::price_rank(std::string_view text, PriceOrder order) {
    return IntentElement{ElementKind::kPriceRank, std::string(trim(text)), order, std::nullopt};
}

IntentElement
IntentElement::price_range(std::string_view text, PriceBounds bounds) {
    return IntentElement{ElementKind::kPriceRange, std::string(trim(text)), std::nullopt, bounds};
}

namespace {

void
check_element(const IntentElement& e, const std::string& where, std::vector<std::string>& out) {
    if (e.text.empty()) {
        out.push_back(where + ": element text must be non-empty");
    } else if (trim(e.text).size() != e.text.size()) {
        out.push_back(where + ": element text must be trimmed");
    }
    if (e.direction.has_value() != (e.kind == ElementKind::kPriceRank)) {
        out.push_back(where + ": direction must be present exactly for price_rank elements");
    }
    if (e.bounds.has_value() != (e.kind == ElementKind::kPriceRange)) {
        out.push_back(where + ": bounds must be present exactly for price_range elements");
    }
    if (e.bounds && e.bounds->high < e.bounds->low) {
        out.push_back(where + ": price bounds low exceeds high");
    }
}

}  // namespace

std::vector<std::string>
validate_expression(const IntentExpression& expr) {
    std::vector<std::string> out;
    if (expr.options.empty()) {
        out.emplace_back("options must be non-empty");
    }
    for (std::size_t i = 0; i < expr.options.size(); ++i) {
        const auto& elements = expr.options[i].elements;
        const std::string where = "option " + std::to_string(i);
        if (elements.empty()) {
            out.push_back(where + " must be non-empty");
        }
        for (std::size_t j = 0; j < elements.size(); ++j) {
            const auto& e = elements[j];
            check_element(e, where, out);
            if (e.kind != ElementKind::kVisual && e.kind != ElementKind::kCollection) {
                out.push_back(where + ": only visual and collection elements may be composed");
            }
            for (std::size_t k = 0; k < j; ++k) {
                if (same_text(elements[k].text, e.text)) {
                    out.push_back(where + ": duplicate element '" + e.text + "'");
                    break;
                }
            }
        }
    }
    for (const auto& n : expr.negatives) {
        check_element(n, "negative", out);
    }
    for (const auto& c : expr.changes) {
        check_element(c.source, "change source", out);
        check_element(c.target, "change target", out);
        if (same_text(c.source.text, c.target.text)) {
            out.emplace_back("change source equals target");
        }
    }
    if (expr.metadata.price_range && expr.metadata.price_range->high < expr.metadata.price_range->low) {
        out.emplace_back("metadata price range low exceeds high");
    }
    if (expr.metadata.collection && trim(*expr.metadata.collection).empty()) {
        out.emplace_back("metadata collection must be non-empty");
    }
    return out;
}

}  // namespace isearch
