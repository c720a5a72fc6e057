// Microbenchmarks for the hot paths: the denoiser forward pass (dominates
// sampling), the corrector relaxation, the energy oracle, and the rank
// correlation used during evaluation.

#include <benchmark/benchmark.h>

#include "affilab/coteach.hpp"
#include "affilab/guidance.hpp"
#include "affilab/world.hpp"

using namespace affilab;

namespace {

struct Fixture {
    ComplexLayout layout;
    FlowModel flow;

    Fixture() : layout(make_layout()), flow(FlowModel::init(FlowModelConfig{}, 13)) {
        Rng rng(14);
        for (double& p : flow.params) p += 0.05 * rng.gaussian();
    }

    static ComplexLayout make_layout() {
        const WorldConfig world;
        Rng rng(12);
        SequenceRegistry reg;
        reg.world = world;
        reg.antibodies.push_back(sample_natural_antibody(world.antibody_length, rng));
        reg.antigens.push_back(sample_antigen(world.antigen_length, rng));
        return reg.layout_for(0, 0);
    }
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

void BM_DenoiserForward(benchmark::State& state) {
    const Fixture& f = fixture();
    Rng rng(14);
    Structure x(f.layout.full.size());
    for (double& c : x.xyz) c = rng.gaussian();
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.flow.denoise(x, 0.5, f.layout.full));
    }
}
BENCHMARK(BM_DenoiserForward);

void BM_CorrectorRelax(benchmark::State& state) {
    const Fixture& f = fixture();
    Rng rng(15);
    Structure x = oracle_mean_structure(f.layout.full);
    for (double& c : x.xyz) c += 0.3 * rng.gaussian();
    RelaxConfig cfg;
    cfg.max_iters = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(corrector_relax(x, cfg));
    }
}
BENCHMARK(BM_CorrectorRelax)->Arg(10)->Arg(100);

void BM_OracleBindingEnergy(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_binding_energy(f.layout));
    }
}
BENCHMARK(BM_OracleBindingEnergy);

void BM_Spearman(benchmark::State& state) {
    Rng rng(16);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.gaussian();
        b[i] = a[i] + 0.5 * rng.gaussian();
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(spearman(a, b));
    }
}
BENCHMARK(BM_Spearman)->Arg(64)->Arg(1024);

} // namespace

BENCHMARK_MAIN();
