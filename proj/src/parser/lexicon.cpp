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

#include "intentsearch/parser/lexicon.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "intentsearch/core/error.hpp"
#include "intentsearch/core/intent.hpp"

namespace isearch {

namespace {

using nlohmann::json;

struct Field {
    const char* key;
    std::vector<std::string> ConnectiveLexicon::*member;
};

constexpr Field kFields[] = {
    {"intersection", &ConnectiveLexicon::intersection},
    {"union", &ConnectiveLexicon::union_},
    {"exclusion", &ConnectiveLexicon::exclusion},
    {"change", &ConnectiveLexicon::change},
    {"price_desc", &ConnectiveLexicon::price_desc},
    {"price_asc", &ConnectiveLexicon::price_asc},
    {"price_under", &ConnectiveLexicon::price_under},
    {"price_over", &ConnectiveLexicon::price_over},
    {"price_between", &ConnectiveLexicon::price_between},
    {"negation_continue", &ConnectiveLexicon::negation_continue},
    {"stopwords", &ConnectiveLexicon::stopwords},
    {"adjectives", &ConnectiveLexicon::adjectives},
};

std::vector<std::string>
string_list(const json& v, const std::string& key) {
    if (!v.is_array()) {
        throw Error(ErrorCode::kInvalidArgument, "lexicon '" + key + "' must be an array of strings");
    }
    std::vector<std::string> out;
    for (const auto& s : v) {
        if (!s.is_string() || trim(s.get<std::string>()).empty()) {
            throw Error(ErrorCode::kInvalidArgument, "lexicon '" + key + "' must hold non-empty strings");
        }
        out.push_back(s.get<std::string>());
    }
    return out;
}

void
check_change_template(const std::string& t) {
    const auto s = t.find("{source}");
    const auto d = t.find("{target}");
    if (s == std::string::npos || d == std::string::npos) {
        throw Error(ErrorCode::kInvalidArgument, "change template needs {source} and {target}: " + t);
    }
    const auto last = std::max(s, d);
    if (trim(std::string_view(t).substr(last + 8)).size() != 0) {
        throw Error(ErrorCode::kInvalidArgument, "change template must end with a slot: " + t);
    }
    const auto first = std::min(s, d);
    if (trim(std::string_view(t).substr(first + 8, last - first - 8)).empty()) {
        throw Error(ErrorCode::kInvalidArgument, "change template needs a literal between slots: " + t);
    }
}

}  // namespace

std::vector<std::string>
tokenize_query(std::string_view text) {
    static constexpr std::string_view kEdge = ".!?\"'()[]{}:`";
    std::vector<std::string> out;
    std::string cur;
    auto emit = [&] {
        std::string_view w = cur;
        while (!w.empty() && kEdge.find(w.front()) != std::string_view::npos) {
            w.remove_prefix(1);
        }
        while (!w.empty() && kEdge.find(w.back()) != std::string_view::npos) {
            w.remove_suffix(1);
        }
        if (!w.empty()) {
            out.emplace_back(w);
        }
        cur.clear();
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            emit();
        } else if (c == ',' || c == ';') {
            emit();
            out.emplace_back(",");
        } else {
            cur.push_back(c);
        }
    }
    emit();
    return out;
}

ConnectiveLexicon
ConnectiveLexicon::defaults() {
    ConnectiveLexicon lex;
    lex.intersection = {"and", "with", "wearing", "wears", "in", "having", "has", "but", ",", "&"};
    lex.union_ = {"or"};
    lex.exclusion = {"but no", "but not", "but without", "without", "no", "not", "except", "excluding"};
    lex.change = {"change {source} to {target}",  "change {source} into {target}",
                  "replace {source} with {target}", "replace {source} by {target}",
                  "swap {source} for {target}",     "swap {source} with {target}",
                  "{target} instead of {source}"};
    lex.price_desc = {"expensive", "most expensive", "highest price", "high price", "priciest", "pricey"};
    lex.price_asc = {"cheap", "cheapest", "lowest price", "low price", "inexpensive"};
    lex.price_under = {"under", "below", "less than", "cheaper than", "at most"};
    lex.price_over = {"over", "above", "more than", "at least"};
    lex.price_between = {"between", "from"};
    lex.negation_continue = {"and", ",", "&"};
    lex.stopwords = {"a", "an", "the", "some", "any", "nft", "nfts", "image", "images", "picture",
                     "pictures", "of", "find", "show", "me", "search", "for", "please", "i", "want"};
    lex.adjectives = {"red",  "orange", "yellow", "green", "blue",   "purple", "pink",  "brown",
                      "black", "white", "gray",   "grey",  "gold",   "golden", "silver", "big",
                      "small", "large", "tiny",   "long",  "short",  "dark",   "light", "bright"};
    return lex;
}

ConnectiveLexicon
ConnectiveLexicon::from_json(const json& j) {
    if (!j.is_object()) {
        throw Error(ErrorCode::kInvalidArgument, "connective lexicon must be a JSON object");
    }
    ConnectiveLexicon lex = defaults();
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const auto& f : kFields) {
            if (key == f.key) {
                lex.*f.member = string_list(value, key);
                known = true;
            }
        }
        if (!known && key != "collections") {
            throw Error(ErrorCode::kInvalidArgument, "unknown lexicon key '" + key + "'");
        }
    }
    for (const auto& t : lex.change) {
        check_change_template(t);
    }
    return lex;
}

json
ConnectiveLexicon::to_json() const {
    json j = json::object();
    for (const auto& f : kFields) {
        j[f.key] = this->*f.member;
    }
    return j;
}

CollectionLexicon
CollectionLexicon::defaults() {
    CollectionLexicon lex;
    lex.add("Bored Ape Yacht Club", {"BAYC", "Bored Ape", "Bored Apes"});
    lex.add("Mutant Ape Yacht Club", {"MAYC", "Mutant Ape", "Mutant Apes"});
    // "Pudgy penguin" must leave "penguin" behind as content.
    lex.add("Pudgy Penguins", {"Pudgy"});
    lex.add("CryptoPunks", {"Cryptopunk", "Crypto Punks", "Crypto Punk"});
    lex.add("Doodles", {"Doodle"});
    lex.add("Azuki");
    lex.add("Cool Cats", {"Cool Cat"});
    lex.add("The Doge Pound", {"Doge Pound"});
    return lex;
}

void
CollectionLexicon::add(std::string_view name, const std::vector<std::string>& aliases) {
    const auto clean = std::string(trim(name));
    if (clean.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "collection name must be non-empty");
    }
    for (auto& e : entries_) {
        if (same_text(e.name, clean)) {
            for (const auto& a : aliases) {
                e.aliases.push_back(a);
            }
            return;
        }
    }
    entries_.push_back({clean, aliases});
}

CollectionLexicon
CollectionLexicon::from_json(const json& j) {
    if (!j.is_array()) {
        throw Error(ErrorCode::kInvalidArgument, "collections must be an array");
    }
    CollectionLexicon lex;
    for (const auto& e : j) {
        if (e.is_string()) {
            lex.add(e.get<std::string>());
            continue;
        }
        if (!e.is_object() || !e.contains("name") || !e["name"].is_string()) {
            throw Error(ErrorCode::kInvalidArgument, "collection entries need a string \"name\"");
        }
        lex.add(e["name"].get<std::string>(),
                e.contains("aliases") ? string_list(e["aliases"], "aliases") : std::vector<std::string>{});
    }
    return lex;
}

json
CollectionLexicon::to_json() const {
    json out = json::array();
    for (const auto& e : entries_) {
        out.push_back({{"name", e.name}, {"aliases", e.aliases}});
    }
    return out;
}

QueryLexicon
QueryLexicon::from_json(const json& j) {
    QueryLexicon lex;
    lex.connectives = ConnectiveLexicon::from_json(j);
    if (j.contains("collections")) {
        lex.collections = CollectionLexicon::from_json(j["collections"]);
    }
    return lex;
}

QueryLexicon
QueryLexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::kIoError, "cannot read lexicon file " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    auto j = json::parse(ss.str(), nullptr, false);
    if (j.is_discarded()) {
        throw Error(ErrorCode::kInvalidArgument, "lexicon file " + path + " is not valid JSON");
    }
    return from_json(j);
}

}  // namespace isearch
