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

// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures, so ctest fails if any line does.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "intentsearch/core/intent_json.hpp"
#include "intentsearch/core/ranking_config.hpp"
#include "intentsearch/embed/triplet.hpp"
#include "intentsearch/index/ball_tree.hpp"
#include "intentsearch/index/brute_force.hpp"
#include "intentsearch/parser/grammar.hpp"
#include "intentsearch/service/server.hpp"
#include "intentsearch/visual/composite.hpp"
#include "intentsearch/visual/edit.hpp"
#include "intentsearch/visual/query.hpp"
#include "intentsearch/visual/segment.hpp"
#include "support/fixtures.hpp"
#include "support/golden_queries.hpp"
#include "support/service_fixture.hpp"
#include "support/set_oracle.hpp"

using namespace isearch;
using namespace isearch::testing;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Collects the first few failures; later ones only count.
class Checker {
public:
    void
    expect(bool cond, const std::string& what) {
        if (!cond) {
            ++failures_;
            if (failures_ <= 3) {
                notes_ += (notes_.empty() ? "" : "; ") + what;
            }
        }
    }
    Outcome
    done(std::string summary) const {
        if (failures_ == 0) {
            return {true, std::move(summary)};
        }
        return {false, std::to_string(failures_) + " failures: " + notes_};
    }

private:
    int failures_ = 0;
    std::string notes_;
};

double
seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string
fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

Outcome
constants() {
    const RankingConfig c;
    Checker ck;
    ck.expect(c.alpha0 == 0.9, "alpha0");
    ck.expect(c.alpha1 == 0.1, "alpha1");
    ck.expect(c.w == 1.0, "w");
    ck.expect(c.w_elem == 0.5, "w_elem");
    ck.expect(c.prefilter_k == 500, "prefilter_k");
    ck.expect(c.exclusion_fraction == 0.4, "exclusion_fraction");
    ck.expect(c.triplet_alpha == 0.05, "triplet_alpha");
    ck.expect(validate_config(c).empty(), "defaults do not validate");
    return ck.done("alpha0=0.9 alpha1=0.1 w=1 w_elem=0.5 prefilter=500 exclusion=0.4 triplet=0.05");
}

Outcome
index_oracle(double limit) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2026);
    const std::size_t ns[] = {10, 1000, 10000};
    const std::size_t dims[] = {8, 32, 512};
    const std::size_t ks[] = {1, 5, 20};
    Checker ck;
    std::size_t queries = 0;
    for (int g = 0; g < 50; ++g) {
        const auto n = ns[g % 3];
        const auto dim = dims[(g / 3) % 3];
        const auto recs = g % 2 == 0 ? random_records(n, dim, rng) : clustered_records(n, dim, 8, 0.05, rng);
        const auto tree = BallTreeIndex::build(recs, 1 + rng() % 40);
        for (int qi = 0; qi < 10; ++qi) {
            // half the queries sit on stored points to exercise ties at distance 0
            const auto q = qi % 2 == 0 ? random_unit(dim, rng) : recs[rng() % n].vector;
            for (auto k : ks) {
                const auto got = tree.knn(q, k);
                const auto want = brute_force_knn(recs, q, k);
                bool same = got.size() == want.size();
                for (std::size_t i = 0; same && i < got.size(); ++i) {
                    same = got[i].id == want[i].id && std::abs(got[i].distance - want[i].distance) <= 1e-9;
                }
                ck.expect(same, "gallery " + std::to_string(g) + " n=" + std::to_string(n) +
                                    " dim=" + std::to_string(dim) + " k=" + std::to_string(k));
                ++queries;
            }
        }
    }
    const double s = seconds_since(t0);
    ck.expect(s < limit, "took " + fmt("%.1fs", s));
    return ck.done("50 galleries, " + std::to_string(queries) + " queries, " + fmt("%.1fs", s));
}

Outcome
sphere_equivalence(double limit) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(4);
    std::size_t violations = 0;
    for (int i = 0; i < 100000; ++i) {
        const std::size_t dim = 2 + rng() % 62;
        const auto u = random_unit(dim, rng);
        const auto v = random_unit(dim, rng);
        const auto w = random_unit(dim, rng);
        const double cv = cosine_distance(u, v);
        const double cw = cosine_distance(u, w);
        double ev = 0.0;
        double ew = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double a = static_cast<double>(u[d]) - v[d];
            const double b = static_cast<double>(u[d]) - w[d];
            ev += a * a;
            ew += b * b;
        }
        ev = std::sqrt(ev);
        ew = std::sqrt(ew);
        if ((cv <= cw + 1e-9) != (ev <= ew + 1e-9)) {
            ++violations;
        }
    }
    const double s = seconds_since(t0);
    Checker ck;
    ck.expect(violations == 0, std::to_string(violations) + " violations");
    ck.expect(s < limit, "took " + fmt("%.2fs", s));
    return ck.done("1e5 triples, 0 violations, " + fmt("%.2fs", s));
}

Outcome
parser_golden() {
    Checker ck;
    for (const auto& [q, want] : kGoldenQueries) {
        auto a = parse_query(q);
        auto b = parse_query(q);
        const auto sa = serialize(a);
        ck.expect(sa == serialize(b), "unstable: " + q);
        ck.expect(a.raw_query == q, "raw_query: " + q);
        a.raw_query.clear();
        ck.expect(serialize(a) == want, q + " -> " + serialize(a));
        ck.expect(deserialize(sa) == b, "round trip: " + q);
    }
    return ck.done(std::to_string(kGoldenQueries.size()) + " queries");
}

Outcome
logic_oracle(double limit) {
    const auto t0 = Clock::now();
    const auto f = make_fixture(attr_names(8), all_subsets(8, 256));
    const SyntheticEmbedder emb(f.spec);
    const RankingConfig cfg;
    std::mt19937_64 rng(99);
    Checker ck;
    std::size_t with_negatives = 0;
    for (int i = 0; i < 200; ++i) {
        const auto q = random_set_query(rng, 8, 3, 2, 2);
        ExecutionTrace trace;
        const auto out = execute(to_expression(q, f.spec), f.gallery, emb, cfg, 200, &trace);
        const auto why = check_against_oracle(q, f, trace, out, cfg);
        ck.expect(why.empty(), "expression " + std::to_string(i) + ": " + why);
        with_negatives += q.negatives.empty() ? 0 : 1;
    }
    const double s = seconds_since(t0);
    ck.expect(s < limit, "took " + fmt("%.1fs", s));
    return ck.done("256 images, 200 expressions (" + std::to_string(with_negatives) + " with negatives), " +
                   fmt("%.2fs", s));
}

Outcome
pixel_exactness(double limit) {
    const auto t0 = Clock::now();
    std::mt19937 rng(32);
    Checker ck;
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint32_t ch = trial % 2 == 0 ? 3 : 1;
        auto img = Image::filled(32, 32, ch, 0);
        auto edited = Image::filled(32, 32, ch, 0);
        for (auto& v : img.pixels) {
            v = static_cast<std::uint8_t>(rng());
        }
        for (auto& v : edited.pixels) {
            v = static_cast<std::uint8_t>(rng());
        }
        // random mask, not just a box
        RegionMask mask;
        mask.width = mask.height = 32;
        mask.bits.resize(32 * 32);
        for (auto& b : mask.bits) {
            b = rng() % 3 == 0 ? 1 : 0;
        }
        mask.bits[rng() % mask.bits.size()] = 1;
        const auto comp = regularized_black_composite(img, mask, 0.9, 0.1);
        const auto swapped = swap_element(img, edited, mask);
        ck.expect(comp == serial::regularized_black_composite(img, mask, 0.9, 0.1), "parallel composite differs");
        ck.expect(swapped == serial::swap_element(img, edited, mask), "parallel swap differs");
        for (std::uint32_t y = 0; y < 32; ++y) {
            for (std::uint32_t x = 0; x < 32; ++x) {
                const bool in = mask.test(x, y);
                for (std::uint32_t c = 0; c < ch; ++c) {
                    const int v = img.at(x, y)[c];
                    const int got = comp.at(x, y)[c];
                    if (in) {
                        ck.expect(got == v, "inside pixel changed");
                    } else {
                        ck.expect(std::abs(got - 0.1 * v) <= 1.0, "outside pixel not scaled");
                    }
                    ck.expect(swapped.at(x, y)[c] == (in ? edited.at(x, y)[c] : img.at(x, y)[c]), "swap pixel");
                }
            }
        }
    }
    const double s = seconds_since(t0);
    ck.expect(s < limit, "took " + fmt("%.2fs", s));
    return ck.done("200 random 32x32 fixtures, " + fmt("%.3fs", s));
}

Outcome
visual_end_to_end() {
    SynthOptions o;
    o.attributes = 8;
    o.images = 64;
    o.seed = 7;
    const auto f = make_service_fixture(o);
    const auto& spec = f->spec;
    Checker ck;
    std::size_t checked = 0;
    for (const auto& rec : spec.records) {
        const auto img = render_attributes(spec, rec.attributes);
        for (auto a : rec.attributes) {
            const auto mask = segment(img, spec.regions[a], BoxFillSegmenter{});
            const auto v = visual_query_embedding(img, mask, *f->state->embedder);
            const auto e = UnitVector::basis(spec.dim, a);
            double worst = 0.0;
            for (std::size_t i = 0; i < spec.dim; ++i) {
                worst = std::max(worst, std::abs(static_cast<double>(v[i]) - e[i]));
            }
            ck.expect(worst <= 1e-6, rec.id + " attr" + std::to_string(a) + " off by " + fmt("%g", worst));
            ++checked;
        }
    }
    // and through the service: box over a known region, top-1 has the attribute
    for (std::size_t a = 0; a < spec.attribute_names.size(); ++a) {
        const SyntheticRecord* base = nullptr;
        for (const auto& r : spec.records) {
            if (f->has(r.id, a)) {
                base = &r;
                break;
            }
        }
        if (base == nullptr) {
            continue;
        }
        const json req{{"base_image", base->id}, {"selections", {box_to_json(spec.regions[a])}}, {"k", 5}};
        const auto res = f->service->handle("POST", "/search/visual", req.dump());
        const auto body = json::parse(res.body);
        ck.expect(res.status == 200 && !body["results"].empty() && f->has(body["results"][0]["id"], a),
                  "top-1 for attr" + std::to_string(a));
    }
    return ck.done(std::to_string(checked) + " boxes embed to their basis, top-1 correct for every attribute");
}

Outcome
triplet_cases() {
    const auto e0 = UnitVector::basis(3, 0);
    const auto e1 = UnitVector::basis(3, 1);
    Checker ck;
    const double a = triplet_margin_from_sims(0.9, 0.7, 0.05);
    const double b = triplet_margin({e0, e0, e1}, 0.05);
    const double c = triplet_margin({e0, e0, e0}, 0.05);
    ck.expect(std::abs(a + 0.15) <= 1e-9, fmt("%.12f", a));
    ck.expect(std::abs(b + 0.95) <= 1e-9, fmt("%.12f", b));
    ck.expect(std::abs(c - 0.05) <= 1e-9, fmt("%.12f", c));
    return ck.done("-0.15, -0.95, alpha");
}

double
mean_us(const std::function<void(const UnitVector&)>& fn, const std::vector<UnitVector>& qs) {
    const auto t0 = Clock::now();
    for (const auto& q : qs) {
        fn(q);
    }
    return seconds_since(t0) * 1e6 / static_cast<double>(qs.size());
}

Outcome
performance() {
    Checker ck;
    std::mt19937_64 rng(100000);
    // dim 32: embedding-like clustered data, queries drawn from the same clusters
    auto recs = clustered_records(100100, 32, 256, 0.03, rng);
    std::vector<UnitVector> qs;
    for (std::size_t i = 100000; i < recs.size(); ++i) {
        qs.push_back(recs[i].vector);
    }
    recs.resize(100000);
    const auto tree = BallTreeIndex::build(recs);
    const auto table = VectorTable::from_records(recs);
    std::size_t agree = 0;
    for (const auto& q : qs) {
        agree += tree.knn(q, 20) == brute_force_knn(recs, q, 20) ? 1 : 0;
    }
    ck.expect(agree == qs.size(), "dim 32 tree disagrees with brute force");
    const double tree_us = mean_us([&](const UnitVector& q) { (void)tree.knn(q, 20); }, qs);
    const double brute_us = mean_us([&](const UnitVector& q) { (void)brute_force_knn(recs, q, 20); }, qs);
    const double scan_us = mean_us([&](const UnitVector& q) { (void)scan_knn_parallel(table, q, 20); }, qs);
    const double ratio = tree_us / brute_us;
    ck.expect(ratio <= 0.5, "dim 32 tree/brute = " + fmt("%.3f", ratio));

    // uniform sphere, reported only: pruning is weak without structure
    std::mt19937_64 rng_u(32);
    const auto uni = random_records(100000, 32, rng_u);
    std::vector<UnitVector> uq;
    for (int i = 0; i < 100; ++i) {
        uq.push_back(random_unit(32, rng_u));
    }
    const auto tree_u = BallTreeIndex::build(uni);
    const double uni_ratio = mean_us([&](const UnitVector& q) { (void)tree_u.knn(q, 20); }, uq) /
                             mean_us([&](const UnitVector& q) { (void)brute_force_knn(uni, q, 20); }, uq);

    // dim 512: correctness only
    std::mt19937_64 rng2(512);
    const auto big = random_records(10000, 512, rng2);
    const auto tree512 = BallTreeIndex::build(big);
    for (int i = 0; i < 20; ++i) {
        const auto q = random_unit(512, rng2);
        ck.expect(tree512.knn(q, 20) == brute_force_knn(big, q, 20), "dim 512 disagreement");
    }
    return ck.done("dim 32, N=1e5: tree " + fmt("%.0fus", tree_us) + ", brute force " + fmt("%.0fus", brute_us) +
                   ", openmp scan " + fmt("%.0fus", scan_us) + ", ratio " + fmt("%.3f", ratio) +
                   " (uniform sphere " + fmt("%.3f", uni_ratio) + ", not gated); dim 512 exact on 20 queries");
}

Outcome
service_contract() {
    const auto f = make_service_fixture();
    ApiServer server(f->service);
    const int port = server.start("127.0.0.1", 0);
    httplib::Client client("127.0.0.1", port);
    Checker ck;

    auto res = client.Post("/parse", R"({"query":"woman in pixel style but no black hair"})", "application/json");
    ck.expect(res && res->status == 200 &&
                  json::parse(res->body)["intent"]["negatives"] == json::array({"black hair"}),
              "/parse negatives");
    res = client.Get("/images/unknown");
    ck.expect(res && res->status == 404 && json::parse(res->body)["error"]["code"] == "not_found", "/images 404");
    res = client.Post("/search", R"({"query":"attr0","k":0})", "application/json");
    ck.expect(res && res->status == 400 && json::parse(res->body)["error"]["code"] == "invalid_argument",
              "/search k=0");
    res = client.Post("/search", R"({"query":"attr0 and attr1","k":10})", "application/json");
    bool all = res && res->status == 200;
    if (all) {
        const auto body = json::parse(res->body);
        all = !body["results"].empty();
        for (const auto& r : body["results"]) {
            all = all && f->has(r["id"], 0) && f->has(r["id"], 1);
        }
    }
    ck.expect(all, "/search results");

    const auto& rec = f->spec.records[0];
    const auto region = f->spec.regions[rec.attributes[0]];
    const json preview{{"image", rec.id}, {"box", box_to_json(region)}, {"instruction", "make it blue"}};
    res = client.Post("/preview", preview.dump(), "application/json");
    bool preview_ok = res && res->status == 200;
    if (preview_ok) {
        const auto body = json::parse(res->body);
        const auto img = render_attributes(f->spec, rec.attributes);
        const auto want = preview_change(img, RegionMask::from_box(img.width, img.height, region), "make it blue",
                                         StubEditProvider{});
        preview_ok = body["box"] == box_to_json(region) &&
                     decode_png(base64_decode(body["image"].get<std::string>())) == want;
    }
    ck.expect(preview_ok, "/preview");
    server.stop();
    return ck.done("/parse, /search, /preview, /images against 127.0.0.1:" + std::to_string(port));
}

}  // namespace

int
main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"constant fidelity", constants},
        {"index oracle", [] { return index_oracle(60.0); }},
        {"cosine/euclidean equivalence", [] { return sphere_equivalence(5.0); }},
        {"parser golden suite", parser_golden},
        {"logic semantics oracle", [] { return logic_oracle(30.0); }},
        {"pixel exactness", [] { return pixel_exactness(2.0); }},
        {"visual parsing end to end", visual_end_to_end},
        {"triplet evaluator", triplet_cases},
        {"performance sanity", performance},
        {"service contract", service_contract},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        std::printf("%s  %-30s %s\n", o.ok ? "PASS" : "FAIL", c.name, o.detail.c_str());
        std::fflush(stdout);
        failed += o.ok ? 0 : 1;
    }
    return failed;
}
