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

#include "intentsearch/parser/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "intentsearch/core/error.hpp"

namespace isearch {

namespace {

using Phrase = std::vector<std::string>;  // folded tokens

Phrase
folded_tokens(std::string_view text) {
    Phrase out;
    for (auto& t : tokenize_query(text)) {
        out.push_back(fold_case(t));
    }
    return out;
}

std::vector<Phrase>
phrases_of(const std::vector<std::string>& entries) {
    std::vector<Phrase> out;
    for (const auto& e : entries) {
        auto p = folded_tokens(e);
        if (!p.empty()) {
            out.push_back(std::move(p));
        }
    }
    return out;
}

struct ChangeTemplate {
    Phrase lead;   // empty: the first slot is the phrase before `infix`
    Phrase infix;
    bool source_first = true;
};

ChangeTemplate
compile_change(const std::string& t) {
    const auto s = t.find("{source}");
    const auto d = t.find("{target}");
    if (s == std::string::npos || d == std::string::npos) {
        throw Error(ErrorCode::kInvalidArgument, "change template needs {source} and {target}: " + t);
    }
    const auto first = std::min(s, d);
    const auto last = std::max(s, d);
    ChangeTemplate ct;
    ct.lead = folded_tokens(std::string_view(t).substr(0, first));
    ct.infix = folded_tokens(std::string_view(t).substr(first + 8, last - first - 8));
    ct.source_first = s < d;
    if (ct.infix.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "change template needs a literal between slots: " + t);
    }
    return ct;
}

struct Compiled {
    std::vector<std::pair<Phrase, std::string>> collections;
    std::vector<Phrase> intersection, union_, exclusion, desc, asc, under, over, between, neg_continue;
    std::vector<ChangeTemplate> changes;
    std::set<std::string> stopwords, adjectives;

    explicit Compiled(const QueryLexicon& lex) {
        const auto& c = lex.connectives;
        for (const auto& e : lex.collections.entries()) {
            collections.emplace_back(folded_tokens(e.name), e.name);
            for (const auto& a : e.aliases) {
                collections.emplace_back(folded_tokens(a), e.name);
            }
        }
        std::erase_if(collections, [](const auto& p) { return p.first.empty(); });
        intersection = phrases_of(c.intersection);
        union_ = phrases_of(c.union_);
        exclusion = phrases_of(c.exclusion);
        desc = phrases_of(c.price_desc);
        asc = phrases_of(c.price_asc);
        under = phrases_of(c.price_under);
        over = phrases_of(c.price_over);
        between = phrases_of(c.price_between);
        neg_continue = phrases_of(c.negation_continue);
        for (const auto& t : c.change) {
            changes.push_back(compile_change(t));
        }
        for (const auto& w : c.stopwords) {
            stopwords.insert(fold_case(w));
        }
        for (const auto& w : c.adjectives) {
            adjectives.insert(fold_case(w));
        }
    }
};

enum class Connective { kNone, kIntersection, kUnion, kExclusion };

struct PriceHit {
    std::size_t len = 0;
    std::optional<PriceOrder> order;
    std::optional<PriceBounds> range;
};

// Upper bound used for open-ended "over N" ranges.
const EthPrice kPriceCeiling = EthPrice::parse("1000000000");

class Parser {
public:
    Parser(const Compiled& lex, std::string_view text, bool fragment = false)
        : lex_(lex), raw_(tokenize_query(text)), fragment_(fragment) {
        for (const auto& t : raw_) {
            fold_.push_back(fold_case(t));
        }
        expr_.raw_query = std::string(text);
    }

    IntentExpression
    run();

private:
    std::size_t
    match_len(std::size_t i, const Phrase& p) const {
        if (i + p.size() > fold_.size()) {
            return 0;
        }
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (fold_[i + k] != p[k]) {
                return 0;
            }
        }
        return p.size();
    }

    std::size_t
    longest(std::size_t i, const std::vector<Phrase>& set) const {
        std::size_t best = 0;
        for (const auto& p : set) {
            best = std::max(best, match_len(i, p));
        }
        return best;
    }

    std::pair<std::size_t, const std::string*>
    collection_at(std::size_t i) const {
        std::size_t best = 0;
        const std::string* name = nullptr;
        for (const auto& [p, n] : lex_.collections) {
            const auto len = match_len(i, p);
            if (len > best) {
                best = len;
                name = &n;
            }
        }
        return {best, name};
    }

    // Number with an optional "eth" suffix or trailing "eth" token.
    std::optional<std::pair<EthPrice, std::size_t>>
    number_at(std::size_t i) const {
        if (i >= fold_.size()) {
            return std::nullopt;
        }
        std::string t = fold_[i];
        for (std::string_view unit : {"ether", "eth"}) {
            if (t.size() > unit.size() && t.ends_with(unit)) {
                t.resize(t.size() - unit.size());
                break;
            }
        }
        if (t.empty() || !(std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '.')) {
            return std::nullopt;
        }
        try {
            auto p = EthPrice::parse(t);
            std::size_t len = 1;
            if (i + 1 < fold_.size() && (fold_[i + 1] == "eth" || fold_[i + 1] == "ether")) {
                ++len;
            }
            return std::make_pair(p, len);
        } catch (const Error&) {
            return std::nullopt;
        }
    }

    PriceHit
    price_at(std::size_t i) const {
        PriceHit hit;
        if (auto n = longest(i, lex_.under); n > 0) {
            if (auto num = number_at(i + n)) {
                hit = {n + num->second, std::nullopt, PriceBounds{EthPrice{}, num->first}};
            }
        }
        if (auto n = longest(i, lex_.over); n > 0 && hit.len == 0) {
            if (auto num = number_at(i + n)) {
                hit = {n + num->second, std::nullopt, PriceBounds{num->first, std::max(num->first, kPriceCeiling)}};
            }
        }
        if (auto n = longest(i, lex_.between); n > 0 && hit.len == 0) {
            if (auto a = number_at(i + n)) {
                const std::size_t sep = i + n + a->second;
                if (sep < fold_.size() && (fold_[sep] == "and" || fold_[sep] == "to" || fold_[sep] == "-")) {
                    if (auto b = number_at(sep + 1)) {
                        auto lo = std::min(a->first, b->first);
                        auto hi = std::max(a->first, b->first);
                        hit = {sep + 1 + b->second - i, std::nullopt, PriceBounds{lo, hi}};
                    }
                }
            }
        }
        if (hit.len > 0) {
            return hit;
        }
        const auto d = longest(i, lex_.desc);
        const auto a = longest(i, lex_.asc);
        if (d > 0 || a > 0) {
            hit.len = std::max(d, a);
            hit.order = d >= a ? PriceOrder::kDesc : PriceOrder::kAsc;
        }
        return hit;
    }

    std::pair<Connective, std::size_t>
    connective_at(std::size_t i) const {
        const auto e = longest(i, lex_.exclusion);
        const auto u = longest(i, lex_.union_);
        const auto n = longest(i, lex_.intersection);
        if (e == 0 && u == 0 && n == 0) {
            if (fold_[i] == ",") {
                return {Connective::kIntersection, 1};
            }
            return {Connective::kNone, 0};
        }
        if (e >= u && e >= n) {
            return {Connective::kExclusion, e};
        }
        if (u >= n) {
            return {Connective::kUnion, u};
        }
        return {Connective::kIntersection, n};
    }

    bool
    infix_at(std::size_t i) const {
        for (const auto& ct : lex_.changes) {
            if (ct.lead.empty() && match_len(i, ct.infix) > 0) {
                return true;
            }
        }
        return false;
    }

    bool
    boundary(std::size_t i) const {
        return connective_at(i).first != Connective::kNone || collection_at(i).first > 0 ||
               price_at(i).len > 0 || infix_at(i);
    }

    std::size_t
    span_end(std::size_t i) const {
        while (i < fold_.size() && !boundary(i)) {
            ++i;
        }
        return i;
    }

    // Visual element from raw tokens [b, e) minus edge stopwords.
    std::optional<IntentElement>
    element_from(std::size_t b, std::size_t e) const {
        while (b < e && lex_.stopwords.count(fold_[b]) > 0) {
            ++b;
        }
        while (e > b && lex_.stopwords.count(fold_[e - 1]) > 0) {
            --e;
        }
        if (b == e) {
            return std::nullopt;
        }
        std::string text = raw_[b];
        for (std::size_t k = b + 1; k < e; ++k) {
            text += " " + raw_[k];
        }
        return IntentElement::visual(text);
    }

    void
    flush_phrase() {
        if (phrase_begin_) {
            auto el = element_from(*phrase_begin_, phrase_end_);
            phrase_begin_.reset();
            if (el) {
                (negative_ ? expr_.negatives : alts_).push_back(std::move(*el));
            }
        }
    }

    void
    close_conjunct() {
        flush_phrase();
        if (!alts_.empty()) {
            conjuncts_.push_back(std::move(alts_));
            alts_.clear();
        }
        after_collection_ = false;
    }

    // Positive mode closes the conjunct; negative mode only ends the phrase.
    void
    end_unit() {
        if (negative_) {
            flush_phrase();
        } else {
            close_conjunct();
        }
    }

    bool
    try_prefix_change(std::size_t& i);
    bool
    try_infix_change(std::size_t& i);
    void
    finish();

    const Compiled& lex_;
    std::vector<std::string> raw_;
    Phrase fold_;
    IntentExpression expr_;

    std::vector<std::vector<IntentElement>> conjuncts_;
    std::vector<IntentElement> alts_;
    std::optional<std::size_t> phrase_begin_;
    std::size_t phrase_end_ = 0;
    bool negative_ = false;
    bool fragment_ = false;  // options may come out empty
    bool after_collection_ = false;
};

bool
Parser::try_prefix_change(std::size_t& i) {
    for (const auto& ct : lex_.changes) {
        const auto lead = ct.lead.empty() ? 0 : match_len(i, ct.lead);
        if (lead == 0) {
            continue;
        }
        for (std::size_t j = i + lead + 1; j < fold_.size(); ++j) {
            const auto mid = match_len(j, ct.infix);
            if (mid == 0) {
                continue;
            }
            const auto first = element_from(i + lead, j);
            const auto end = span_end(j + mid);
            const auto second = element_from(j + mid, end);
            if (!first || !second) {
                break;
            }
            end_unit();
            negative_ = false;
            expr_.changes.push_back(ct.source_first ? ChangeSpec{*first, *second} : ChangeSpec{*second, *first});
            i = end;
            return true;
        }
    }
    return false;
}

bool
Parser::try_infix_change(std::size_t& i) {
    if (negative_) {
        return false;
    }
    for (const auto& ct : lex_.changes) {
        if (!ct.lead.empty()) {
            continue;
        }
        const auto mid = match_len(i, ct.infix);
        if (mid == 0) {
            continue;
        }
        const auto end = span_end(i + mid);
        const auto second = element_from(i + mid, end);
        if (!second) {
            continue;
        }
        std::optional<IntentElement> first;
        if (phrase_begin_) {
            first = element_from(*phrase_begin_, phrase_end_);
            phrase_begin_.reset();
        }
        if (!first && !alts_.empty()) {
            first = alts_.back();
            alts_.pop_back();
        }
        if (!first && !conjuncts_.empty() && conjuncts_.back().size() == 1 &&
            conjuncts_.back().front().kind == ElementKind::kVisual) {
            first = conjuncts_.back().front();
            conjuncts_.pop_back();
        }
        if (!first) {
            continue;
        }
        close_conjunct();
        expr_.changes.push_back(ct.source_first ? ChangeSpec{*first, *second} : ChangeSpec{*second, *first});
        i = end;
        return true;
    }
    return false;
}

IntentExpression
Parser::run() {
    std::size_t i = 0;
    while (i < fold_.size()) {
        if (try_prefix_change(i)) {
            continue;
        }
        if (auto [len, name] = collection_at(i); len > 0) {
            if (phrase_begin_) {
                end_unit();
            }
            flush_phrase();
            auto el = IntentElement::collection(*name);
            if (negative_) {
                expr_.negatives.push_back(std::move(el));
            } else {
                if (after_collection_) {
                    close_conjunct();
                }
                alts_.push_back(std::move(el));
                after_collection_ = true;
            }
            i += len;
            continue;
        }
        if (auto hit = price_at(i); hit.len > 0) {
            end_unit();
            negative_ = false;
            if (hit.order) {
                expr_.metadata.price_order = hit.order;
            } else {
                expr_.metadata.price_range = hit.range;
            }
            i += hit.len;
            continue;
        }
        if (auto [kind, len] = connective_at(i); kind != Connective::kNone) {
            switch (kind) {
                case Connective::kExclusion:
                    end_unit();
                    negative_ = true;
                    break;
                case Connective::kUnion:
                    flush_phrase();
                    after_collection_ = false;
                    break;
                default:
                    if (negative_) {
                        flush_phrase();
                        if (longest(i, lex_.neg_continue) != len && !(fold_[i] == "," && len == 1)) {
                            negative_ = false;
                        }
                    } else {
                        close_conjunct();
                    }
                    break;
            }
            i += len;
            continue;
        }
        if (try_infix_change(i)) {
            continue;
        }
        // plain word
        if (after_collection_ && !negative_) {
            close_conjunct();
        }
        if (!phrase_begin_) {
            phrase_begin_ = i;
        }
        phrase_end_ = i + 1;
        ++i;
    }
    end_unit();
    finish();
    return std::move(expr_);
}

void
Parser::finish() {
    auto adjective_only = [&](const IntentElement& e) {
        if (e.kind != ElementKind::kVisual) {
            return false;
        }
        const auto toks = folded_tokens(e.text);
        return std::all_of(toks.begin(), toks.end(),
                           [&](const std::string& t) { return lex_.adjectives.count(t) > 0; });
    };
    // Trailing qualifiers ("hat, red") fold into the nearest noun phrase.
    for (std::size_t c = 1; c < conjuncts_.size();) {
        if (conjuncts_[c].size() == 1 && adjective_only(conjuncts_[c][0]) &&
            !std::all_of(conjuncts_[c - 1].begin(), conjuncts_[c - 1].end(), adjective_only)) {
            bool merged = false;
            for (auto& prev : conjuncts_[c - 1]) {
                if (prev.kind == ElementKind::kVisual && !adjective_only(prev)) {
                    prev = IntentElement::visual(conjuncts_[c][0].text + " " + prev.text);
                    merged = true;
                }
            }
            if (merged) {
                conjuncts_.erase(conjuncts_.begin() + static_cast<std::ptrdiff_t>(c));
                continue;
            }
        }
        ++c;
    }
    auto& negs = expr_.negatives;
    for (std::size_t k = 1; k < negs.size();) {
        if (adjective_only(negs[k]) && !adjective_only(negs[k - 1]) && negs[k - 1].kind == ElementKind::kVisual) {
            negs[k - 1] = IntentElement::visual(negs[k].text + " " + negs[k - 1].text);
            negs.erase(negs.begin() + static_cast<std::ptrdiff_t>(k));
            continue;
        }
        ++k;
    }
    std::vector<IntentElement> unique_negs;
    for (auto& n : negs) {
        if (std::none_of(unique_negs.begin(), unique_negs.end(),
                         [&](const IntentElement& u) { return u.kind == n.kind && same_text(u.text, n.text); })) {
            unique_negs.push_back(std::move(n));
        }
    }
    negs = std::move(unique_negs);

    // Cartesian product; the first conjunct varies slowest.
    std::vector<ComposedIntent> options;
    if (!conjuncts_.empty()) {
        options.push_back({});
        for (const auto& alts : conjuncts_) {
            std::vector<ComposedIntent> next;
            for (const auto& partial : options) {
                for (const auto& alt : alts) {
                    auto grown = partial;
                    const bool dup = std::any_of(grown.elements.begin(), grown.elements.end(),
                                                 [&](const IntentElement& e) { return same_text(e.text, alt.text); });
                    if (!dup) {
                        grown.elements.push_back(alt);
                    }
                    next.push_back(std::move(grown));
                }
            }
            options = std::move(next);
        }
    }
    if (options.empty() && !expr_.changes.empty() && !fragment_) {
        ComposedIntent targets;
        for (const auto& c : expr_.changes) {
            if (std::none_of(targets.elements.begin(), targets.elements.end(),
                             [&](const IntentElement& e) { return same_text(e.text, c.target.text); })) {
                targets.elements.push_back(c.target);
            }
        }
        options.push_back(std::move(targets));
    }
    for (auto& o : options) {
        if (std::find(expr_.options.begin(), expr_.options.end(), o) == expr_.options.end()) {
            expr_.options.push_back(std::move(o));
        }
    }
    if (expr_.options.empty() && !fragment_) {
        throw Error(ErrorCode::kUnparsableQuery, "no search element found in query '" + expr_.raw_query + "'");
    }

    // A single collection named by every option doubles as a metadata filter.
    std::optional<std::string> only;
    bool consistent = true;
    for (const auto& o : expr_.options) {
        const IntentElement* c = nullptr;
        for (const auto& e : o.elements) {
            if (e.kind == ElementKind::kCollection) {
                if (c != nullptr) {
                    consistent = false;
                }
                c = &e;
            }
        }
        if (c == nullptr || (only && !same_text(*only, c->text))) {
            consistent = false;
        } else {
            only = c->text;
        }
    }
    if (consistent && only && !expr_.options.empty()) {
        expr_.metadata.collection = only;
    }

    auto problems = validate_expression(expr_);
    if (fragment_ && expr_.options.empty()) {
        std::erase(problems, std::string("options must be non-empty"));
    }
    if (!problems.empty()) {
        throw Error(ErrorCode::kUnparsableQuery, problems.front());
    }
}

}  // namespace

IntentExpression
parse_query(std::string_view text, const QueryLexicon& lexicon) {
    if (trim(text).empty()) {
        throw Error(ErrorCode::kUnparsableQuery, "query is empty");
    }
    const Compiled compiled(lexicon);
    return Parser(compiled, text).run();
}

IntentExpression
parse_query(std::string_view text) {
    static const QueryLexicon lexicon;
    return parse_query(text, lexicon);
}

IntentExpression
parse_fragment(std::string_view text, const QueryLexicon& lexicon) {
    if (trim(text).empty()) {
        return {};
    }
    const Compiled compiled(lexicon);
    return Parser(compiled, text, true).run();
}

}  // namespace isearch
