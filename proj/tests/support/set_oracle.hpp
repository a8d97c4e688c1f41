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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "intentsearch/embed/synthetic.hpp"
#include "intentsearch/ranking/engine.hpp"

namespace isearch::testing {

/// Rendered synthetic gallery: attribute subsets, records and the built
/// Gallery (embedded through the synthetic image embedder).
struct SyntheticFixture {
    SyntheticGallerySpec spec;
    std::vector<std::vector<std::size_t>> subsets;  // per record
    Gallery gallery;
};

inline std::vector<std::string>
attr_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back("attr" + std::to_string(i));
    }
    return out;
}

inline SyntheticFixture
make_fixture(std::vector<std::string> names, const std::vector<std::vector<std::size_t>>& subsets,
             const std::vector<std::string>& prices = {}) {
    SyntheticFixture f;
    f.spec = SyntheticGallerySpec::grid(std::move(names));
    f.subsets = subsets;
    SyntheticEmbedder emb(f.spec);
    std::vector<ImageRecord> recs;
    std::vector<Image> images;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        char id[16];
        std::snprintf(id, sizeof(id), "img%04zu", i);
        ImageRecord r;
        r.id = id;
        r.image_path = std::string(id) + ".png";
        r.collection = i % 2 == 0 ? "Even" : "Odd";
        r.price = EthPrice::parse(prices.empty() ? std::to_string(i % 7) : prices[i]);
        recs.push_back(r);
        images.push_back(render_attributes(f.spec, subsets[i]));
    }
    f.gallery = Gallery::build(std::move(recs), emb.embed_images(images));
    return f;
}

/// Every non-empty subset of n attributes, then the first subsets again
/// until `count` records exist.
inline std::vector<std::vector<std::size_t>>
all_subsets(std::size_t n, std::size_t count) {
    const std::size_t total = (std::size_t{1} << n) - 1;
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t mask = i % total + 1;
        std::vector<std::size_t> s;
        for (std::size_t b = 0; b < n; ++b) {
            if ((mask >> b) & 1U) {
                s.push_back(b);
            }
        }
        out.push_back(s);
    }
    return out;
}

/// Expression over attribute indices.
struct SetQuery {
    std::vector<std::vector<std::size_t>> options;
    std::vector<std::size_t> negatives;
};

inline IntentExpression
to_expression(const SetQuery& q, const SyntheticGallerySpec& spec) {
    IntentExpression e;
    for (const auto& o : q.options) {
        ComposedIntent ci;
        for (auto a : o) {
            ci.elements.push_back(IntentElement::visual(spec.attribute_names[a]));
        }
        e.options.push_back(ci);
    }
    for (auto n : q.negatives) {
        e.negatives.push_back(IntentElement::visual(spec.attribute_names[n]));
    }
    return e;
}

inline bool
contains_attr(const std::vector<std::size_t>& t, std::size_t a) {
    return std::find(t.begin(), t.end(), a) != t.end();
}

/// Closed-form scores from attribute sets alone: cos(S, T) = |S n T| /
/// sqrt(|S||T|), element sim = [a in T] / sqrt(|T|).
struct SetOracle {
    const std::vector<std::vector<std::size_t>>& subsets;
    RankingConfig cfg;

    double
    element_sim(std::size_t a, std::size_t image) const {
        const auto& t = subsets[image];
        return contains_attr(t, a) ? 1.0 / std::sqrt(static_cast<double>(t.size())) : 0.0;
    }

    double
    composed_sim(const std::vector<std::size_t>& s, std::size_t image) const {
        const auto& t = subsets[image];
        std::size_t common = 0;
        for (auto a : s) {
            common += contains_attr(t, a) ? 1 : 0;
        }
        return static_cast<double>(common) / std::sqrt(static_cast<double>(s.size() * t.size()));
    }

    double
    score(const std::vector<std::size_t>& s, std::size_t image) const {
        double sum = 0.0;
        for (auto a : s) {
            sum += element_sim(a, image);
        }
        return cfg.w * composed_sim(s, image) + cfg.w_elem * sum;
    }

    /// Survivors of the threshold rule with the whole gallery as the pool.
    std::vector<std::size_t>
    survivors(const std::vector<std::size_t>& s) const {
        std::vector<double> mean(s.size(), 0.0);
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            for (std::size_t e = 0; e < s.size(); ++e) {
                mean[e] += element_sim(s[e], i);
            }
        }
        for (auto& m : mean) {
            m /= static_cast<double>(subsets.size());
        }
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            bool ok = true;
            for (std::size_t e = 0; e < s.size(); ++e) {
                ok = ok && element_sim(s[e], i) >= mean[e] - 1e-9;
            }
            if (ok) {
                out.push_back(i);
            }
        }
        return out;
    }

    double
    negative_sim(const std::vector<std::size_t>& negs, std::size_t image) const {
        double s = 0.0;
        for (auto n : negs) {
            s += element_sim(n, image);
        }
        return s / static_cast<double>(negs.size());
    }
};

inline SetQuery
random_set_query(std::mt19937_64& rng, std::size_t n_attrs, std::size_t max_options = 3,
                 std::size_t max_elements = 2, std::size_t max_negatives = 2) {
    std::uniform_int_distribution<std::size_t> attr(0, n_attrs - 1);
    std::uniform_int_distribution<std::size_t> n_opt(1, max_options);
    std::uniform_int_distribution<std::size_t> n_el(1, max_elements);
    std::uniform_int_distribution<std::size_t> n_neg(0, max_negatives);
    SetQuery q;
    const auto opts = n_opt(rng);
    for (std::size_t o = 0; o < opts; ++o) {
        std::vector<std::size_t> s;
        const auto want = n_el(rng);
        while (s.size() < want) {
            const auto a = attr(rng);
            if (!contains_attr(s, a)) {
                s.push_back(a);
            }
        }
        q.options.push_back(s);
    }
    const auto negs = n_neg(rng);
    while (q.negatives.size() < negs) {
        const auto a = attr(rng);
        if (!contains_attr(q.negatives, a)) {
            q.negatives.push_back(a);
        }
    }
    return q;
}

/// Empty string if `trace` agrees with the set-semantics oracle, otherwise a
/// description of the first disagreement.
inline std::string
check_against_oracle(const SetQuery& q, const SyntheticFixture& f, const ExecutionTrace& trace,
                     const ExecuteResult& result, const RankingConfig& cfg) {
    const SetOracle oracle{f.subsets, cfg};
    auto index_of = [&](const std::string& id) { return *f.gallery.position(id); };

    if (trace.per_option.size() != q.options.size()) {
        return "option count differs";
    }
    for (std::size_t o = 0; o < q.options.size(); ++o) {
        const auto& got = trace.per_option[o];
        auto want = oracle.survivors(q.options[o]);
        std::vector<std::size_t> got_idx;
        for (const auto& c : got) {
            got_idx.push_back(index_of(c.image_id));
            for (auto a : q.options[o]) {
                if (!contains_attr(f.subsets[got_idx.back()], a)) {
                    return "option " + std::to_string(o) + " kept " + c.image_id + " lacking attr" + std::to_string(a);
                }
            }
        }
        auto sorted = got_idx;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != want) {
            return "option " + std::to_string(o) + " survivor set differs from oracle";
        }
        for (std::size_t i = 1; i < got_idx.size(); ++i) {
            if (oracle.score(q.options[o], got_idx[i - 1]) < oracle.score(q.options[o], got_idx[i]) - 1e-6) {
                return "option " + std::to_string(o) + " not ordered by score";
            }
        }
    }
    const auto merged = merge_union(trace.per_option);
    if (merged.size() != trace.merged.size()) {
        return "merged list differs";
    }
    for (std::size_t i = 0; i < merged.size(); ++i) {
        if (merged[i].image_id != trace.merged[i].image_id) {
            return "merged list differs";
        }
    }
    if (q.negatives.empty()) {
        if (trace.after_exclusion.size() != trace.merged.size()) {
            return "exclusion without negatives changed the list";
        }
    } else {
        const std::size_t n = trace.merged.size();
        const auto m = static_cast<std::size_t>(std::ceil(cfg.exclusion_fraction * static_cast<double>(n) - 1e-9));
        if (trace.after_exclusion.size() != n - m) {
            return "exclusion removed " + std::to_string(n - trace.after_exclusion.size()) + ", expected " +
                   std::to_string(m);
        }
        std::vector<bool> kept(f.subsets.size(), false);
        for (const auto& c : trace.after_exclusion) {
            kept[index_of(c.image_id)] = true;
        }
        double min_removed = 1e300;
        double max_kept = -1e300;
        std::size_t k = 0;
        for (const auto& c : trace.merged) {
            const auto i = index_of(c.image_id);
            const double s = oracle.negative_sim(q.negatives, i);
            if (kept[i]) {
                max_kept = std::max(max_kept, s);
                if (k >= trace.after_exclusion.size() || trace.after_exclusion[k].image_id != c.image_id) {
                    return "survivors lost their relative order";
                }
                ++k;
            } else {
                min_removed = std::min(min_removed, s);
            }
        }
        if (m > 0 && n > m && min_removed < max_kept - 1e-9) {
            return "a removed candidate is less negative-similar than a kept one";
        }
    }
    for (const auto& r : result.results) {
        const auto i = index_of(r.image_id);
        for (auto a : q.options[r.option]) {
            if (!contains_attr(f.subsets[i], a)) {
                return "result " + r.image_id + " lacks an element of its option";
            }
        }
    }
    return {};
}

}  // namespace isearch::testing
