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

// Index and composite kernels: serial reference vs OpenMP vs ball tree.
//   intentsearch_bench --benchmark_filter=Knn
#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "intentsearch/index/ball_tree.hpp"
#include "intentsearch/index/brute_force.hpp"
#include "intentsearch/visual/composite.hpp"
#include "support/fixtures.hpp"

using namespace isearch;

namespace {

constexpr std::size_t kDim = 512;
constexpr std::size_t kK = 20;

struct Data {
    std::vector<VectorRecord> records;
    std::vector<UnitVector> queries;
    VectorTable table;
    BallTreeIndex tree;
};

// arg 1 = clustered
const Data&
data(std::size_t n, bool clustered) {
    static std::map<std::pair<std::size_t, bool>, Data> cache;
    auto [it, fresh] = cache.try_emplace({n, clustered});
    if (fresh) {
        std::mt19937_64 rng(n * 2 + clustered);
        auto& d = it->second;
        d.records = clustered ? testing::clustered_records(n, kDim, 64, 0.02, rng)
                              : testing::random_records(n, kDim, rng);
        // queries near stored points, as real lookups are
        std::normal_distribution<double> g(0.0, 0.01);
        for (std::size_t i = 0; i < 64; ++i) {
            const auto& base = d.records[(i * 7919) % n].vector;
            std::vector<double> raw(kDim);
            for (std::size_t j = 0; j < kDim; ++j) {
                raw[j] = base[j] + g(rng);
            }
            d.queries.push_back(UnitVector::normalize(std::span<const double>(raw)));
        }
        d.table = VectorTable::from_records(d.records);
        d.tree = BallTreeIndex::build(d.records);
    }
    return it->second;
}

void
BM_KnnSerialScan(benchmark::State& state) {
    const auto& d = data(state.range(0), state.range(1) != 0);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan_knn(d.table, d.queries[i++ % d.queries.size()], kK));
    }
}

void
BM_KnnParallelScan(benchmark::State& state) {
    const auto& d = data(state.range(0), state.range(1) != 0);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan_knn_parallel(d.table, d.queries[i++ % d.queries.size()], kK));
    }
}

void
BM_KnnBallTree(benchmark::State& state) {
    const auto& d = data(state.range(0), state.range(1) != 0);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(d.tree.knn(d.queries[i++ % d.queries.size()], kK));
    }
}

void
BM_KnnBallTreeBatch(benchmark::State& state) {
    const auto& d = data(state.range(0), state.range(1) != 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(d.tree.knn_batch(d.queries, kK));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.queries.size()));
}

void
BM_BallTreeBuild(benchmark::State& state) {
    const auto& d = data(state.range(0), state.range(1) != 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(BallTreeIndex::build(d.records));
    }
}

void
index_args(benchmark::internal::Benchmark* b) {
    for (long n : {10000, 100000}) {
        for (long c : {0, 1}) {
            b->Args({n, c});
        }
    }
    b->ArgNames({"n", "clustered"});
}

BENCHMARK(BM_KnnSerialScan)->Apply(index_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KnnParallelScan)->Apply(index_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KnnBallTree)->Apply(index_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KnnBallTreeBatch)->Apply(index_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BallTreeBuild)->Args({100000, 1})->Unit(benchmark::kMillisecond);

struct Pictures {
    Image image;
    Image edited;
    RegionMask mask;
};

const Pictures&
pictures(std::uint32_t side) {
    static std::map<std::uint32_t, Pictures> cache;
    auto [it, fresh] = cache.try_emplace(side);
    if (fresh) {
        std::mt19937 rng(side);
        auto& p = it->second;
        p.image = Image::filled(side, side, 3, 0);
        p.edited = Image::filled(side, side, 3, 0);
        for (auto& v : p.image.pixels) {
            v = static_cast<std::uint8_t>(rng());
        }
        for (auto& v : p.edited.pixels) {
            v = static_cast<std::uint8_t>(rng());
        }
        p.mask = RegionMask::from_box(side, side, {side / 4, side / 4, side * 3 / 4, side * 3 / 4});
    }
    return it->second;
}

template <Image (*F)(const Image&, const RegionMask&, double, double)>
void
BM_BlackComposite(benchmark::State& state) {
    const auto& p = pictures(static_cast<std::uint32_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(F(p.image, p.mask, 0.9, 0.1));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(p.image.pixels.size()));
}

template <Image (*F)(const Image&, const Image&, const RegionMask&)>
void
BM_SwapElement(benchmark::State& state) {
    const auto& p = pictures(static_cast<std::uint32_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(F(p.image, p.edited, p.mask));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(p.image.pixels.size()));
}

BENCHMARK(BM_BlackComposite<serial::regularized_black_composite>)->Arg(512)->Arg(2048);
BENCHMARK(BM_BlackComposite<regularized_black_composite>)->Arg(512)->Arg(2048);
BENCHMARK(BM_SwapElement<serial::swap_element>)->Arg(512)->Arg(2048);
BENCHMARK(BM_SwapElement<swap_element>)->Arg(512)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
