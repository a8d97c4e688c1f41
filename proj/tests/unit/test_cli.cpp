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

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "intentsearch/service/synth.hpp"
#include "support/temp_dir.hpp"

using namespace isearch;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run
run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("synth, ingest, query") {
    testing::TempDir dir;
    const auto g = dir.path().string();
    auto r = run({"synth", "--attrs", "6", "--images", "40", "--seed", "3", "--out", g});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    r = run({"ingest", "--gallery", g});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(std::filesystem::exists(dir / "embeddings.iemb"));

    const auto spec = read_synthetic_spec(dir / "spec.json");
    const auto has = [&](const std::string& id, std::size_t a) {
        for (const auto& rec : spec.records) {
            if (rec.id == id) {
                return std::find(rec.attributes.begin(), rec.attributes.end(), a) != rec.attributes.end();
            }
        }
        return false;
    };

    r = run({"query", "--gallery", g, "--json", "--k", "10", "attr0 and attr1"});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const auto body = json::parse(r.out);
    CHECK(body.size() == 2);
    CHECK(body.contains("intent"));
    REQUIRE(!body["results"].empty());
    CHECK(body["results"].size() <= 10);
    for (const auto& item : body["results"]) {
        CHECK(has(item["id"], 0));
        CHECK(has(item["id"], 1));
    }

    // same answer as the HTTP handler on the same files
    cli::GalleryFlags flags;
    flags.gallery = g;
    const SearchService svc(cli::load_state(cli::resolved(flags)));
    const auto http = svc.handle("POST", "/search", R"({"query":"attr0 and attr1","k":10})");
    CHECK(json::parse(http.body) == body);

    r = run({"query", "--gallery", g, "--k", "3", "attr2"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        ++n;
        CHECK(line.rfind(std::to_string(n) + "\t", 0) == 0);
        CHECK(std::count(line.begin(), line.end(), '\t') == 4);
    }
    CHECK(n == 3);

    std::ofstream(dir / "q.jsonl") << json{{"query", "attr0"}, {"ground_truth", body["results"][0]["id"]}}.dump()
                                   << "\n";
    r = run({"eval", "--gallery", g, "--queries", (dir / "q.jsonl").string(), "--k", "1,5"});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(r.out.find("Top-5") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"--bogus"}).code == cli::kExitUsage);
    CHECK(run({"query", "--k", "x", "cat"}).code == cli::kExitUsage);
    testing::TempDir dir;
    REQUIRE(run({"synth", "--attrs", "3", "--images", "5", "--out", dir.path().string()}).code == 0);
    REQUIRE(run({"ingest", "--gallery", dir.path().string()}).code == 0);
    const auto empty = run({"query", "--gallery", dir.path().string(), "  "});
    CHECK(empty.code == cli::kExitUsage);
    CHECK(!empty.err.empty());
    const auto bad = run({"query", "--gallery", dir.path().string(), "and or"});
    CHECK(bad.code == cli::kExitRuntime);
    CHECK(bad.err.find("unparsable_query") != std::string::npos);
    // no embedder configured at all is a usage problem
    CHECK(run({"ingest", "--gallery", (dir / "missing").string()}).code == cli::kExitUsage);
    const auto spec = (dir / "spec.json").string();
    CHECK(run({"ingest", "--gallery", (dir / "missing").string(), "--synthetic-spec", spec}).code ==
          cli::kExitRuntime);
    CHECK(run({"query", "--gallery", (dir / "missing").string(), "--synthetic-spec", spec, "attr0"}).code ==
          cli::kExitRuntime);
    CHECK(run({"query", "--gallery", dir.path().string(), "--exclusion-fraction", "1.5", "attr0"}).code ==
          cli::kExitUsage);
}
