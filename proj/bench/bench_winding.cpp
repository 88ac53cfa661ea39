// Serial vs OpenMP winding of a batch of closed relator loops.

#include "cxlift/pathlift/pathlift.hpp"
#include "cxlift/presets/presets.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace cxlift;

namespace {

struct Fixture {
    std::vector<pathlift::GeneratorLog> logs;
    std::vector<std::vector<pathlift::Letter>> words;
};

const Fixture& fixture()
{
    static const Fixture f = [] {
        Fixture f;
        const auto p = presets::dm_lattice("dm-5-4-1-1-1-6");
        f.logs = pathlift::generator_logs(p.standard);
        const int central = static_cast<int>(p.standard.size());
        std::mt19937_64 g(5);
        std::uniform_int_distribution<size_t> pick(0, p.presentation.relators.size() - 1);
        std::uniform_int_distribution<int> gen(0, 2), sign(0, 1);
        for (int i = 0; i < 64; ++i) {
            fpgroups::Word u;
            for (int k = 0; k < 3; ++k)
                u *= fpgroups::Word::generator(gen(g), sign(g) ? 1 : -1);
            const auto w = u * p.presentation.relators[pick(g)] * u.inverse();
            f.words.push_back(pathlift::path_letters(w, central, pathlift::central_power(w, p.scaled)));
        }
        return f;
    }();
    return f;
}

void run(benchmark::State& state, bool parallel)
{
    const Fixture& f = fixture();
    pathlift::PathOptions o;
    o.samples_per_letter = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(pathlift::winding_batch(f.words, f.logs, o, parallel));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.words.size()));
}

void BM_WindingSerial(benchmark::State& s) { run(s, false); }
void BM_WindingParallel(benchmark::State& s) { run(s, true); }

}  // namespace

BENCHMARK(BM_WindingSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WindingParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
