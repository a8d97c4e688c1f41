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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intentsearch/core/eth_price.hpp"

namespace isearch {

enum class ElementKind { kVisual, kCollection, kPriceRank, kPriceRange };

enum class PriceOrder { kAsc, kDesc };

std::string_view to_string(PriceOrder order);

/// Inclusive price interval.
struct PriceBounds {
    EthPrice low;
    EthPrice high;

    friend bool operator==(const PriceBounds&, const PriceBounds&) = default;
};

/// One recognized unit of user intent. Collection elements carry the bare
/// collection name in `text`; the "C_" prefix only exists on the wire.
struct IntentElement {
    ElementKind kind = ElementKind::kVisual;
    std::string text;
    std::optional<PriceOrder> direction;  // price_rank only
    std::optional<PriceBounds> bounds;    // price_range only

    static IntentElement
    visual(std::string_view text);
    static IntentElement
    collection(std::string_view name);
    static IntentElement
    price_rank(std::string_view text, PriceOrder order);
    static IntentElement
    price_range(std::string_view text, PriceBounds bounds);

    friend bool operator==(const IntentElement&, const IntentElement&) = default;
};

/// An inner list: every element must co-occur.
struct ComposedIntent {
    std::vector<IntentElement> elements;

    friend bool operator==(const ComposedIntent&, const ComposedIntent&) = default;
};

struct ChangeSpec {
    IntentElement source;
    IntentElement target;

    friend bool operator==(const ChangeSpec&, const ChangeSpec&) = default;
};

/// Range filtering applies before ordering when both are present.
struct MetadataConstraint {
    std::optional<std::string> collection;
    std::optional<PriceOrder> price_order;
    std::optional<PriceBounds> price_range;

    bool
    empty() const {
        return !collection && !price_order && !price_range;
    }

    friend bool operator==(const MetadataConstraint&, const MetadataConstraint&) = default;
};

/// Options are unioned; negatives and changes apply across all options.
struct IntentExpression {
    std::vector<ComposedIntent> options;
    std::vector<IntentElement> negatives;
    std::vector<ChangeSpec> changes;
    MetadataConstraint metadata;
    std::string raw_query;

    friend bool operator==(const IntentExpression&, const IntentExpression&) = default;
};

/// ASCII case fold; bytes outside ASCII pass through unchanged.
std::string fold_case(std::string_view text);

std::string_view trim(std::string_view text);

/// Case-insensitive text equality used for element dedupe.
bool same_text(std::string_view a, std::string_view b);

/// Every invariant violation found, in a fixed order. Empty means valid.
std::vector<std::string> validate_expression(const IntentExpression& expr);

}  // namespace isearch
