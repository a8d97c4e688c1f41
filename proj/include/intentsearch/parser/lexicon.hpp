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

#include <json.hpp>

namespace isearch {

/// Connective and marker phrases. Every entry is a phrase matched on whole
/// tokens, case-insensitively; "," is a token of its own.
struct ConnectiveLexicon {
    std::vector<std::string> intersection;
    std::vector<std::string> union_;
    std::vector<std::string> exclusion;
    /// Templates with {source} and {target} slots, e.g. "change {source} to
    /// {target}" or "{target} instead of {source}". A leading slot takes the
    /// phrase just before the literal.
    std::vector<std::string> change;
    std::vector<std::string> price_desc;
    std::vector<std::string> price_asc;
    std::vector<std::string> price_under;
    std::vector<std::string> price_over;
    std::vector<std::string> price_between;
    /// Intersection connectives that keep a negation going ("no A and B").
    std::vector<std::string> negation_continue;
    std::vector<std::string> stopwords;
    /// Words that, alone, qualify a neighbouring noun phrase.
    std::vector<std::string> adjectives;

    static ConnectiveLexicon
    defaults();

    /// Keys absent from `j` keep their defaults. Unknown keys and non-string
    /// entries throw Error(kInvalidArgument).
    static ConnectiveLexicon
    from_json(const nlohmann::json& j);

    nlohmann::json
    to_json() const;
};

struct CollectionEntry {
    std::string name;
    std::vector<std::string> aliases;
};

/// Known collection names, matched longest-first before anything else.
class CollectionLexicon {
public:
    static CollectionLexicon
    defaults();

    /// Adds `name` (and aliases) or merges aliases into an existing entry.
    void
    add(std::string_view name, const std::vector<std::string>& aliases = {});

    const std::vector<CollectionEntry>&
    entries() const {
        return entries_;
    }

    static CollectionLexicon
    from_json(const nlohmann::json& j);
    nlohmann::json
    to_json() const;

private:
    std::vector<CollectionEntry> entries_;
};

struct QueryLexicon {
    ConnectiveLexicon connectives = ConnectiveLexicon::defaults();
    CollectionLexicon collections = CollectionLexicon::defaults();

    /// Connective keys plus an optional "collections" array of
    /// {"name":..,"aliases":[..]}.
    static QueryLexicon
    from_json(const nlohmann::json& j);
    static QueryLexicon
    load(const std::string& path);
};

/// Query tokenization shared by the grammar and the lexicons: whitespace
/// split, "," and ";" become "," tokens, edge punctuation dropped.
std::vector<std::string> tokenize_query(std::string_view text);

}  // namespace isearch
