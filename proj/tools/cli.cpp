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

#include "cli.hpp"

#include <csignal>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "intentsearch/core/error.hpp"
#include "intentsearch/embed/remote.hpp"
#include "intentsearch/embed/synthetic.hpp"
#include "intentsearch/service/eval.hpp"
#include "intentsearch/service/server.hpp"
#include "intentsearch/service/store.hpp"
#include "intentsearch/service/synth.hpp"

namespace isearch::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void
add_gallery_flags(CLI::App& cmd, GalleryFlags& f, bool providers) {
    cmd.add_option("--gallery", f.gallery, "Gallery root; image paths are relative to it")->capture_default_str();
    cmd.add_option("--meta", f.meta, "Metadata JSON Lines (default <gallery>/meta.jsonl)");
    cmd.add_option("--embeddings", f.embeddings, "Embeddings file (default <gallery>/embeddings.iemb)");
    cmd.add_option("--synthetic-spec", f.synthetic_spec,
                   "Synthetic embedder spec, used without --embed-url (default <gallery>/spec.json)");
    cmd.add_option("--embed-url", f.embed_url, "Remote embedding service base URL");
    cmd.add_option("--embed-dim", f.embed_dim, "Dimension the remote embedder must return")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd.add_option("--timeout-ms", f.timeout_ms, "Remote provider timeout")->capture_default_str()->check(CLI::PositiveNumber);
    if (providers) {
        cmd.add_option("--segment-url", f.segment_url, "Remote segmentation service (default: box fill)");
        cmd.add_option("--edit-url", f.edit_url, "Remote edit service (default: offline stub)");
        cmd.add_option("--llm-url", f.llm_url, "Completion service for llm_mode parsing");
        cmd.add_option("--leaf-size", f.leaf_size, "Ball tree leaf size")->capture_default_str()->check(CLI::PositiveNumber);
        cmd.add_option("--prefilter-k", f.prefilter_k, "Candidates taken from the index per option")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd.add_option("--exclusion-fraction", f.exclusion_fraction, "Share of candidates dropped by negatives")
            ->capture_default_str()
            ->check(CLI::Range(0.0, 1.0));
    }
}

std::vector<std::size_t>
parse_ks(const std::string& text) {
    std::vector<std::size_t> ks;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size() || v <= 0) {
                throw std::invalid_argument(item);
            }
            ks.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw UsageError("--k expects positive integers separated by commas, got '" + text + "'");
        }
    }
    if (ks.empty()) {
        throw UsageError("--k is empty");
    }
    return ks;
}

int
cmd_ingest(const GalleryFlags& raw, std::ostream& out) {
    const auto f = resolved(raw);
    const auto embedder = make_embedder(f);
    const auto m = ingest(f.gallery, f.meta, *embedder, f.embeddings);
    out << "ingested " << m.records.size() << " records (dim " << embedder->dim() << ") into " << f.embeddings
        << "\n";
    return kExitOk;
}

int
cmd_serve(const GalleryFlags& raw, const std::string& host, int port, std::ostream& out) {
    const auto state = load_state(raw);
    auto service = std::make_shared<const SearchService>(state);
    ApiServer server(service);

    // stop cleanly on SIGINT / SIGTERM
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
    const int bound = server.bind(host, port);
    out << "listening on http://" << host << ":" << bound << " (" << state->gallery.size() << " images)"
        << std::endl;
    std::thread waiter([&] {
        int sig = 0;
        sigwait(&set, &sig);
        server.stop();
    });
    server.listen();
    // listen returned on its own: wake the waiter
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    pthread_sigmask(SIG_UNBLOCK, &set, nullptr);
    return kExitOk;
}

int
cmd_query(const GalleryFlags& raw, const std::string& text, std::size_t k, bool json, bool llm, std::ostream& out) {
    if (trim(text).empty()) {
        throw UsageError("query text is empty");
    }
    if (k < 1 || k > kMaxResults) {
        throw UsageError("--k must be in [1, " + std::to_string(kMaxResults) + "]");
    }
    const SearchService service(load_state(raw));
    const auto body = service.search(SearchRequest{text, k, llm});
    if (json) {
        out << body.dump() << "\n";
        return kExitOk;
    }
    std::size_t rank = 0;
    for (const auto& r : body["results"]) {
        char score[32];
        std::snprintf(score, sizeof(score), "%.6f", r["score"].get<double>());
        out << ++rank << "\t" << r["id"].get<std::string>() << "\t" << score << "\t"
            << r["collection"].get<std::string>() << "\t" << r["price"].get<std::string>() << "\n";
    }
    if (rank == 0) {
        out << "no results\n";
    }
    return kExitOk;
}

int
cmd_synth(const SynthOptions& opts, const std::string& dir, std::ostream& out) {
    const auto spec = make_synthetic_gallery(opts);
    write_synthetic_gallery(spec, dir);
    out << "wrote " << spec.records.size() << " images over " << spec.attribute_names.size() << " attributes to "
        << dir << "\n";
    return kExitOk;
}

int
cmd_eval(const GalleryFlags& raw, const std::string& queries_path, const std::string& ks_text, std::ostream& out) {
    const auto ks = parse_ks(ks_text);
    const SearchService service(load_state(raw));
    const auto queries = read_eval_queries(queries_path);
    out << format_report(eval_topk(queries, service, ks));
    return kExitOk;
}

}  // namespace

GalleryFlags
resolved(GalleryFlags f) {
    const fs::path root(f.gallery);
    if (f.meta.empty()) {
        f.meta = (root / "meta.jsonl").string();
    }
    if (f.embeddings.empty()) {
        f.embeddings = (root / "embeddings.iemb").string();
    }
    if (f.synthetic_spec.empty()) {
        f.synthetic_spec = (root / "spec.json").string();
    }
    return f;
}

std::shared_ptr<const EmbeddingProvider>
make_embedder(const GalleryFlags& f, std::shared_ptr<RequestLimiter> limiter) {
    if (!f.embed_url.empty()) {
        RemoteEmbedderOptions o;
        o.timeout = std::chrono::milliseconds(f.timeout_ms);
        o.limiter = limiter ? limiter : o.limiter;
        return std::make_shared<RemoteEmbedder>(f.embed_url, f.embed_dim, o);
    }
    if (!fs::exists(f.synthetic_spec)) {
        throw UsageError("no --embed-url given and no synthetic spec at " + f.synthetic_spec);
    }
    return std::make_shared<SyntheticEmbedder>(read_synthetic_spec(f.synthetic_spec));
}

std::shared_ptr<const ServiceState>
load_state(const GalleryFlags& raw) {
    const auto f = resolved(raw);
    auto st = std::make_shared<ServiceState>();
    st->cfg.prefilter_k = f.prefilter_k;
    st->cfg.exclusion_fraction = f.exclusion_fraction;
    if (const auto problems = validate_config(st->cfg); !problems.empty()) {
        throw UsageError(problems.front());
    }
    // one in-flight cap across every remote provider
    HttpOptions http{std::chrono::milliseconds(f.timeout_ms), std::make_shared<RequestLimiter>()};
    st->embedder = make_embedder(f, http.limiter);
    st->segmenter = f.segment_url.empty() ? std::shared_ptr<const SegmentationProvider>(std::make_shared<BoxFillSegmenter>())
                                          : std::make_shared<RemoteSegmenter>(f.segment_url, http);
    st->editor = f.edit_url.empty() ? std::shared_ptr<const EditProvider>(std::make_shared<StubEditProvider>())
                                    : std::make_shared<RemoteEditProvider>(f.edit_url, http);
    if (!f.llm_url.empty()) {
        st->llm = std::make_shared<RemoteCompletion>(f.llm_url, http);
    }
    const auto manifest = manifest_from_files(f.gallery, f.meta, f.embeddings);
    st->root = manifest.root;
    st->gallery = load(manifest, f.leaf_size);
    st->tag_vocab = tag_vocabulary(st->gallery.records());
    return st;
}

int
run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Intent-expanded image search over an embedded gallery", "intentsearch"};
    app.require_subcommand(1);
    app.fallthrough(false);

    GalleryFlags ingest_f, serve_f, query_f, eval_f;

    auto* ingest_cmd = app.add_subcommand("ingest", "Embed every gallery image and write the embeddings file");
    add_gallery_flags(*ingest_cmd, ingest_f, false);

    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    add_gallery_flags(*serve_cmd, serve_f, true);
    std::string host = "127.0.0.1";
    int port = 8080;
    serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
    serve_cmd->add_option("--port", port, "Port, 0 for any free one")->capture_default_str()->check(CLI::Range(0, 65535));

    auto* query_cmd = app.add_subcommand("query", "Run one text query and print the ranking");
    add_gallery_flags(*query_cmd, query_f, true);
    std::string text;
    std::size_t k = kDefaultResults;
    bool json = false;
    bool llm = false;
    query_cmd->add_option("text", text, "Query text")->required();
    query_cmd->add_option("--k", k, "Number of results")->capture_default_str();
    query_cmd->add_flag("--json", json, "Print the /search response body");
    query_cmd->add_flag("--llm", llm, "Parse through the --llm-url completion service");

    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic gallery (PNGs, meta.jsonl, spec.json)");
    SynthOptions synth;
    std::string synth_out;
    synth_cmd->add_option("--attrs", synth.attributes, "Number of attributes")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
    synth_cmd->add_option("--images", synth.images, "Number of images")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
    synth_cmd->add_option("--seed", synth.seed, "RNG seed")->capture_default_str();
    synth_cmd->add_option("--cell", synth.cell, "Grid cell size in pixels")->capture_default_str()->check(CLI::Range(4, 512));
    synth_cmd->add_option("--out", synth_out, "Output directory")->required();

    auto* eval_cmd = app.add_subcommand("eval", "Top-K accuracy over a labeled query file");
    add_gallery_flags(*eval_cmd, eval_f, true);
    std::string queries_path;
    std::string ks = "1,5,20";
    eval_cmd->add_option("--queries", queries_path, "JSON Lines of {query, ground_truth}")->required();
    eval_cmd->add_option("--k", ks, "Comma-separated cutoffs")->capture_default_str();

    // CLI11 wants argv order reversed for vector parsing
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitUsage;
    }

    try {
        if (ingest_cmd->parsed()) {
            return cmd_ingest(ingest_f, out);
        }
        if (serve_cmd->parsed()) {
            return cmd_serve(serve_f, host, port, out);
        }
        if (query_cmd->parsed()) {
            return cmd_query(query_f, text, k, json, llm, out);
        }
        if (synth_cmd->parsed()) {
            return cmd_synth(synth, synth_out, out);
        }
        return cmd_eval(eval_f, queries_path, ks, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << app.get_subcommands().front()->help();
        return kExitUsage;
    } catch (const Error& e) {
        err << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace isearch::cli
