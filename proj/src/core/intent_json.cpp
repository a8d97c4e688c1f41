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

#include "intentsearch/core/intent_json.hpp"

#include "intentsearch/core/error.hpp"

namespace isearch {

using nlohmann::json;

namespace {

[[noreturn]] void
malformed(const std::string& why) {
    throw Error(ErrorCode::kMalformedIntentJson, why);
}

EthPrice
price_from_json(const json& v) {
    try {
        if (v.is_string()) {
            return EthPrice::parse(v.get<std::string>());
        }
        if (v.is_number()) {
            return EthPrice::parse(v.dump());
        }
    } catch (const Error& e) {
        malformed(e.what());
    }
    malformed("price must be a number or decimal string");
}

IntentElement
element_field(const json& v, const char* what) {
    if (!v.is_string()) {
        malformed(std::string(what) + " must be a string");
    }
    return element_from_wire(v.get<std::string>());
}

PriceOrder
order_from_json(const json& v) {
    if (v == "asc") {
        return PriceOrder::kAsc;
    }
    if (v == "desc") {
        return PriceOrder::kDesc;
    }
    malformed("price_order must be \"asc\" or \"desc\"");
}

}  // namespace

std::string
element_to_wire(const IntentElement& element) {
    if (element.kind == ElementKind::kCollection) {
        return std::string(kCollectionPrefix) + element.text;
    }
    return element.text;
}

IntentElement
element_from_wire(std::string_view wire) {
    wire = trim(wire);
    if (wire.starts_with(kCollectionPrefix)) {
        return IntentElement::collection(wire.substr(kCollectionPrefix.size()));
    }
    return IntentElement::visual(wire);
}

json
to_json(const IntentExpression& expr) {
    json j = json::object();
    json options = json::array();
    for (const auto& option : expr.options) {
        json inner = json::array();
        for (const auto& e : option.elements) {
            inner.push_back(element_to_wire(e));
        }
        options.push_back(std::move(inner));
    }
    j["options"] = std::move(options);
    if (!expr.negatives.empty()) {
        json negatives = json::array();
        for (const auto& e : expr.negatives) {
            negatives.push_back(element_to_wire(e));
        }
        j["negatives"] = std::move(negatives);
    }
    if (!expr.changes.empty()) {
        json changes = json::array();
        for (const auto& c : expr.changes) {
            changes.push_back({{"source", element_to_wire(c.source)},
                               {"target", element_to_wire(c.target)}});
        }
        j["changes"] = std::move(changes);
    }
    if (!expr.metadata.empty()) {
        json m = json::object();
        if (expr.metadata.collection) {
            m["collection"] = *expr.metadata.collection;
        }
        if (expr.metadata.price_order) {
            m["price_order"] = std::string(to_string(*expr.metadata.price_order));
        }
        if (expr.metadata.price_range) {
            m["price_range"] = json::array({expr.metadata.price_range->low.to_double(),
                                            expr.metadata.price_range->high.to_double()});
        }
        j["metadata"] = std::move(m);
    }
    if (!expr.raw_query.empty()) {
        j["raw_query"] = expr.raw_query;
    }
    return j;
}

std::string
serialize(const IntentExpression& expr) {
    return to_json(expr).dump();
}

IntentExpression
from_json(const json& j) {
    if (!j.is_object()) {
        malformed("intent expression must be a JSON object");
    }
    IntentExpression expr;
    for (const auto& [key, value] : j.items()) {
        if (key == "options") {
            if (!value.is_array()) {
                malformed("options must be an array of arrays");
            }
            for (const auto& inner : value) {
                if (!inner.is_array()) {
                    malformed("options must be an array of arrays");
                }
                ComposedIntent ci;
                for (const auto& e : inner) {
                    ci.elements.push_back(element_field(e, "option element"));
                }
                expr.options.push_back(std::move(ci));
            }
        } else if (key == "negatives") {
            if (!value.is_array()) {
                malformed("negatives must be an array");
            }
            for (const auto& e : value) {
                expr.negatives.push_back(element_field(e, "negative"));
            }
        } else if (key == "changes") {
            if (!value.is_array()) {
                malformed("changes must be an array");
            }
            for (const auto& c : value) {
                if (!c.is_object() || !c.contains("source") || !c.contains("target") ||
                    c.size() != 2) {
                    malformed("each change must be {\"source\":..,\"target\":..}");
                }
                expr.changes.push_back(
                    {element_field(c["source"], "change source"),
                     element_field(c["target"], "change target")});
            }
        } else if (key == "metadata") {
            if (!value.is_object()) {
                malformed("metadata must be an object");
            }
            for (const auto& [mkey, mval] : value.items()) {
                if (mkey == "collection") {
                    if (!mval.is_string()) {
                        malformed("metadata.collection must be a string");
                    }
                    expr.metadata.collection = mval.get<std::string>();
                } else if (mkey == "price_order") {
                    expr.metadata.price_order = order_from_json(mval);
                } else if (mkey == "price_range") {
                    if (!mval.is_array() || mval.size() != 2) {
                        malformed("metadata.price_range must be [low, high]");
                    }
                    expr.metadata.price_range =
                        PriceBounds{price_from_json(mval[0]), price_from_json(mval[1])};
                } else {
                    malformed("unknown metadata field '" + mkey + "'");
                }
            }
        } else if (key == "raw_query") {
            if (!value.is_string()) {
                malformed("raw_query must be a string");
            }
            expr.raw_query = value.get<std::string>();
        } else {
            malformed("unknown field '" + key + "'");
        }
    }
    return expr;
}

IntentExpression
deserialize(std::string_view text) {
    json j = json::parse(text.begin(), text.end(), nullptr, false);
    if (j.is_discarded()) {
        malformed("not valid JSON");
    }
    return from_json(j);
}

}  // namespace isearch
