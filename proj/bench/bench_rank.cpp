// Serial vs parallel sparse elimination, with the dense reference on the
// smaller inputs. Thread count follows NCGEO_THREADS.

#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <string>

#include "ncgeo/cech.hpp"

using namespace ncgeo;

namespace {

const SparseMatrix& d_prime_3() {
    static const SparseMatrix m = d_prime_matrix(3, 4, Execution::serial);
    return m;
}

const SparseMatrix& total_block(const char* name, int k) {
    static std::map<std::pair<std::string, int>, SparseMatrix> cache;
    auto it = cache.find({name, k});
    if (it == cache.end()) {
        const auto cx = std::make_shared<const SimplicialComplex>(*bundled_complex(name));
        const CechComplex c(bundled_flat_cocycle(name, cx, 2));
        it = cache.emplace(std::make_pair(std::string(name), k), c.view(Execution::serial).total_matrix(k)).first;
    }
    return it->second;
}

void run_rank(benchmark::State& state, const SparseMatrix& m, int mode) {
    for (auto _ : state) {
        size_t r = 0;
        if (mode == 0) r = rank_sparse(m, Execution::serial);
        if (mode == 1) r = rank_sparse(m, Execution::parallel);
        if (mode == 2) r = rank_reference(m);
        benchmark::DoNotOptimize(r);
    }
    state.counters["rows"] = static_cast<double>(m.rows());
    state.counters["cols"] = static_cast<double>(m.cols());
}

void BM_dprime3_serial(benchmark::State& s) { run_rank(s, d_prime_3(), 0); }
void BM_dprime3_parallel(benchmark::State& s) { run_rank(s, d_prime_3(), 1); }
void BM_hexagon_serial(benchmark::State& s) { run_rank(s, total_block("s1-hexagon", 2), 0); }
void BM_hexagon_parallel(benchmark::State& s) { run_rank(s, total_block("s1-hexagon", 2), 1); }
void BM_hexagon_reference(benchmark::State& s) { run_rank(s, total_block("s1-hexagon", 2), 2); }
void BM_torus_serial(benchmark::State& s) { run_rank(s, total_block("t2-nine", 3), 0); }
void BM_torus_parallel(benchmark::State& s) { run_rank(s, total_block("t2-nine", 3), 1); }

}  // namespace

BENCHMARK(BM_dprime3_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dprime3_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hexagon_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hexagon_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hexagon_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_torus_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_torus_parallel)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
    apply_thread_config();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
