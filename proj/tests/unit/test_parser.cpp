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

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "intentsearch/core/error.hpp"
#include "intentsearch/core/intent_json.hpp"
#include "intentsearch/embed/synthetic.hpp"
#include "intentsearch/parser/grammar.hpp"
#include "intentsearch/parser/prompt.hpp"
#include "intentsearch/parser/tags.hpp"
#include "support/golden_queries.hpp"

using namespace isearch;

namespace {

std::string
parsed(const std::string& q) {
    auto e = parse_query(q);
    CHECK(e.raw_query == q);
    e.raw_query.clear();
    return serialize(e);
}

ErrorCode
code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::kInvalidArgument;
}

bool
has_text(const std::vector<IntentElement>& v, const std::string& t) {
    return std::any_of(v.begin(), v.end(), [&](const IntentElement& e) { return same_text(e.text, t); });
}

// Content words that are not connectives, markers, stopwords or collections.
const std::vector<std::string> kNouns = {"monkey", "penguin", "woman", "hat",    "glasses", "pipe", "sword",
                                         "robot", "laser",   "cap",   "scarf",  "crown",   "dog",  "cat",
                                         "zombie", "alien",  "beard", "hoodie", "earring", "tie"};

std::string
random_phrase(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, kNouns.size() - 1);
    std::uniform_int_distribution<int> len(1, 2);
    std::string out = kNouns[pick(rng)];
    if (len(rng) == 2) {
        out = kNouns[pick(rng)] + " " + out;
    }
    return out;
}

}  // namespace

TEST_CASE("golden parses") {
    for (const auto& [q, want] : testing::kGoldenQueries) {
        CAPTURE(q);
        CHECK(parsed(q) == want);
    }
}

TEST_CASE("unparsable queries") {
    CHECK(code_of([] { parse_query("...,,,"); }) == ErrorCode::kUnparsableQuery);
    CHECK(code_of([] { parse_query("   "); }) == ErrorCode::kUnparsableQuery);
    CHECK(code_of([] { parse_query("the a an"); }) == ErrorCode::kUnparsableQuery);
    CHECK(code_of([] { parse_query("no glasses"); }) == ErrorCode::kUnparsableQuery);
    CHECK(code_of([] { parse_query("change hat to hat"); }) == ErrorCode::kUnparsableQuery);
}

TEST_CASE("parse is deterministic and valid") {
    std::mt19937_64 rng(5);
    const std::vector<std::string> glue = {" and ", " with ", ", ", " or ", " but no ", " without ", " wearing "};
    std::uniform_int_distribution<std::size_t> g(0, glue.size() - 1);
    for (int i = 0; i < 300; ++i) {
        std::string q = random_phrase(rng);
        for (int k = 0; k < 3; ++k) {
            q += glue[g(rng)] + random_phrase(rng);
        }
        IntentExpression a;
        try {
            a = parse_query(q);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::kUnparsableQuery);
            continue;
        }
        CHECK(validate_expression(a).empty());
        CHECK(serialize(parse_query(q)) == serialize(a));
    }
}

TEST_CASE("negation scope: '<A> but no <B>'") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 300; ++i) {
        const auto a = random_phrase(rng);
        auto b = random_phrase(rng);
        if (a.find(b) != std::string::npos || b.find(a) != std::string::npos) {
            continue;
        }
        const auto e = parse_query(a + " but no " + b);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(has_text(e.negatives, b));
        for (const auto& o : e.options) {
            CHECK(!has_text(o.elements, b));
        }
    }
}

TEST_CASE("union distribution: 'A or B with C'") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 300; ++i) {
        const auto a = random_phrase(rng);
        const auto b = random_phrase(rng);
        const auto c = random_phrase(rng);
        if (same_text(a, b) || same_text(a, c) || same_text(b, c)) {
            continue;
        }
        const auto e = parse_query(a + " or " + b + " with " + c);
        REQUIRE(e.options.size() == 2);
        for (const auto& o : e.options) {
            CHECK(has_text(o.elements, c));
        }
        CHECK(has_text(e.options[0].elements, a));
        CHECK(has_text(e.options[1].elements, b));
    }
}

TEST_CASE("custom lexicon file") {
    auto lex = QueryLexicon::load(std::string(INTENTSEARCH_DATA_DIR) + "/connectives.json");
    CHECK(lex.connectives.to_json() == ConnectiveLexicon::defaults().to_json());
    CHECK(lex.collections.to_json() == CollectionLexicon::defaults().to_json());

    auto j = nlohmann::json::parse(R"({"union":["oder"],"collections":[{"name":"Moon Cats","aliases":["mooncat"]}]})");
    const auto custom = QueryLexicon::from_json(j);
    auto e = parse_query("mooncat with hat oder cap", custom);
    e.raw_query.clear();
    CHECK(serialize(e) ==
          R"({"metadata":{"collection":"Moon Cats"},"options":[["C_Moon Cats","hat"],["C_Moon Cats","cap"]]})");
    CHECK_THROWS_AS(QueryLexicon::from_json(nlohmann::json::parse(R"({"unions":["or"]})")), Error);
    CHECK_THROWS_AS(QueryLexicon::from_json(nlohmann::json::parse(R"({"change":["swap {source}"]})")), Error);
}

TEST_CASE("adapt_llm_output") {
    const auto e = adapt_llm_output(R"([["woman","pixel style"]])");
    REQUIRE(e.options.size() == 1);
    CHECK(e.options[0].elements == std::vector{IntentElement::visual("woman"), IntentElement::visual("pixel style")});
    CHECK(e.negatives.empty());

    try {
        adapt_llm_output(R"({"options":[]})");
        FAIL("expected error");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::kMalformedIntentJson);
        CHECK(std::string(err.what()) == "options must be non-empty");
    }
    CHECK(code_of([] { adapt_llm_output("not json"); }) == ErrorCode::kMalformedIntentJson);
    CHECK(code_of([] { adapt_llm_output(R"([["a","a"]])"); }) == ErrorCode::kMalformedIntentJson);
    CHECK(code_of([] { adapt_llm_output(R"([["a"],"b"])"); }) == ErrorCode::kMalformedIntentJson);

    const auto fenced = adapt_llm_output("```json\n{\"options\":[[\"C_ Azuki \",\"girl\"]],"
                                         "\"metadata\":{\"collection\":\"C_Azuki\"}}\n```");
    CHECK(fenced.options[0].elements[0] == IntentElement::collection("Azuki"));
    CHECK(fenced.metadata.collection == std::optional<std::string>("Azuki"));
}

TEST_CASE("adapt_llm_output inverts serialize") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> small(0, 3);
    for (int i = 0; i < 400; ++i) {
        IntentExpression e;
        const int n_opts = 1 + small(rng);
        for (int o = 0; o < n_opts; ++o) {
            ComposedIntent ci;
            const int n = 1 + small(rng);
            for (int k = 0; k < n; ++k) {
                auto t = random_phrase(rng) + " " + std::to_string(k);
                ci.elements.push_back(k == 0 && small(rng) == 0 ? IntentElement::collection(t) : IntentElement::visual(t));
            }
            e.options.push_back(ci);
        }
        for (int k = small(rng); k > 0; --k) {
            e.negatives.push_back(IntentElement::visual(random_phrase(rng)));
        }
        if (small(rng) == 0) {
            e.changes.push_back({IntentElement::visual("x " + random_phrase(rng)), IntentElement::visual("y " + random_phrase(rng))});
        }
        if (small(rng) == 0) {
            e.metadata.price_order = small(rng) % 2 ? PriceOrder::kAsc : PriceOrder::kDesc;
        }
        if (small(rng) == 0) {
            e.metadata.price_range = PriceBounds{EthPrice::parse("0.25"), EthPrice::parse(std::to_string(1 + small(rng)))};
        }
        if (small(rng) == 0) {
            e.metadata.collection = "Azuki";
        }
        if (small(rng) == 0) {
            e.raw_query = random_phrase(rng);
        }
        REQUIRE(validate_expression(e).empty());
        CHECK(adapt_llm_output(serialize(e)) == e);
    }
}

TEST_CASE("cot prompt structure") {
    const PromptTemplate one("Return JSON.", {{"cat", "one element", R"([["cat"]])"}});
    const auto p = build_cot_prompt(one, "dog");
    CHECK(p == "Q: cat\nP: Return JSON.\nR: one element\nA: [[\"cat\"]]\n\nQ: dog\nP: Return JSON.\nR:");

    const PromptTemplate three("I.", {{"q1", "r1", R"([["a"]])"}, {"q2", "r2", R"([["b"]])"}, {"q3", "r3", R"([["c"]])"}});
    const auto p3 = build_cot_prompt(three, "live");
    const auto a = p3.find("Q: q1");
    const auto b = p3.find("Q: q2");
    const auto c = p3.find("Q: q3");
    const auto d = p3.find("Q: live");
    CHECK(a < b);
    CHECK(b < c);
    CHECK(c < d);
    CHECK(d != std::string::npos);
    CHECK(p3 == build_cot_prompt(three, "live"));

    CHECK(code_of([] { PromptTemplate("x", {}); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([] { PromptTemplate("x", {{"q", "r", R"({"options":[]})"}}); }) == ErrorCode::kMalformedIntentJson);
}

TEST_CASE("default template answers agree with the grammar") {
    const auto tmpl = default_prompt_template();
    CHECK(tmpl.examples().size() >= 3);
    for (const auto& ex : tmpl.examples()) {
        CAPTURE(ex.query);
        auto parsed_expr = parse_query(ex.query);
        parsed_expr.raw_query.clear();
        CHECK(adapt_llm_output(ex.answer_json) == parsed_expr);
    }
}

TEST_CASE("tag matching") {
    const auto spec = SyntheticGallerySpec::grid({"red hat", "boat", "glasses", "hat"});
    SyntheticEmbedder emb(spec);
    const std::vector<TagEntry> vocab = {{"Doodles", "boat"}, {"Azuki", "hat"}, {"Azuki", "red hat"}, {"BAYC", "glasses"}};

    auto s = match_elements_to_tags({IntentElement::visual("red hat")}, vocab, emb, 1);
    REQUIRE(s[0].size() == 1);
    CHECK(s[0][0].tag == "red hat");
    CHECK(s[0][0].similarity == doctest::Approx(1.0));

    const auto hat = match_elements_to_tags({IntentElement::visual("hat"), IntentElement::collection("Azuki")},
                                            {{"", "boat"}, {"", "hat"}}, SyntheticEmbedder(SyntheticGallerySpec::grid({"hat", "boat"})), 5);
    REQUIRE(hat[0].size() == 2);
    CHECK(hat[0][0].tag == "hat");
    CHECK(hat[0][0].similarity == doctest::Approx(1.0));
    CHECK(hat[0][1].tag == "boat");
    CHECK(hat[0][1].similarity == doctest::Approx(0.0));
    CHECK(hat[1].empty());

    const auto all = match_elements_to_tags({IntentElement::visual("pipe")}, vocab, emb, 99);
    REQUIRE(all[0].size() == vocab.size());
    for (std::size_t i = 1; i < all[0].size(); ++i) {
        const auto& p = all[0][i - 1];
        const auto& c = all[0][i];
        CHECK((p.similarity > c.similarity || (p.similarity == c.similarity && p.tag <= c.tag)));
    }
    CHECK(code_of([&] { match_elements_to_tags({}, {}, emb, 1); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([&] { match_elements_to_tags({}, vocab, emb, 0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("parse_fragment") {
    const QueryLexicon lex;
    auto frag = [&](const char* q) {
        auto e = parse_fragment(q, lex);
        e.raw_query.clear();
        return serialize(e);
    };
    CHECK(frag("no hat") == R"({"negatives":["hat"],"options":[]})");
    CHECK(frag("") == R"({"options":[]})");
    CHECK(frag("   ") == R"({"options":[]})");
    CHECK(frag("red hat") == R"({"options":[["red hat"]]})");
    CHECK(frag("expensive") == R"({"metadata":{"price_order":"desc"},"options":[]})");
    // a change alone stays a change
    const auto c = parse_fragment("blue cap instead of red cap", lex);
    CHECK(c.options.empty());
    REQUIRE(c.changes.size() == 1);
    CHECK(c.changes[0].target.text == "blue cap");
    // wherever the full parser succeeds, the fragment parser agrees
    for (const char* q : {"woman in pixel style but no black hair or smoking", "cat or dog with hat",
                          "penguin with glasses, expensive", "penguin under 2 eth"}) {
        CHECK(parse_fragment(q, lex) == parse_query(q, lex));
    }
}
