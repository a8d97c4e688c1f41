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

#include <json.hpp>

#include "intentsearch/core/intent.hpp"

namespace isearch {

inline constexpr std::string_view kCollectionPrefix = "C_";

/// Wire form of a single element: "C_<name>" for collections, text otherwise.
std::string element_to_wire(const IntentElement& element);

/// Inverse of element_to_wire. Prefix match is case-sensitive.
IntentElement element_from_wire(std::string_view wire);

/// Canonical JSON object. Keys sorted, empty optional parts omitted:
/// {"changes":[{"source":..,"target":..}],"metadata":{"collection":..,
///  "price_order":"asc|desc","price_range":[lo,hi]},"negatives":[..],
///  "options":[[..],..],"raw_query":".."}
nlohmann::json to_json(const IntentExpression& expr);

/// Compact canonical serialization; byte-stable for a given expression.
std::string serialize(const IntentExpression& expr);

/// Parses the canonical shape. Structural problems throw
/// Error(kMalformedIntentJson); invariants are not checked here.
IntentExpression from_json(const nlohmann::json& j);

IntentExpression deserialize(std::string_view text);

}  // namespace isearch
