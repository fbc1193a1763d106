#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bellsim/builders.h"
#include "bellsim/decoder.h"
#include "bellsim/error_model.h"
#include "bellsim/experiment.h"
#include "bellsim/matching.h"
#include "bellsim/rng.h"
#include "bellsim/sampler.h"
#include "bellsim/tableau.h"

namespace {

bellsim::BoostingCircuit boosting(int d_bell, int d_s, double p_bell) {
    bellsim::BoostingSpec spec;
    spec.d_bell = d_bell;
    spec.d_s = d_s;
    spec.noise.p = 1e-3;
    spec.noise.p_bell = p_bell;
    return bellsim::build_boosting_circuit(spec);
}

void BM_TableauCnotLayer(benchmark::State &state) {
    size_t n = static_cast<size_t>(state.range(0));
    bellsim::StabilizerTableau t(n);
    for (auto _ : state) {
        for (size_t q = 0; q + 1 < n; q += 2) t.apply_cnot(q, q + 1);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * (n / 2));
}
BENCHMARK(BM_TableauCnotLayer)->Arg(64)->Arg(256)->Arg(1024);

void BM_TableauMeasureZ(benchmark::State &state) {
    size_t n = static_cast<size_t>(state.range(0));
    std::mt19937_64 rng(7);
    bellsim::StabilizerTableau t(n);
    for (size_t q = 0; q + 1 < n; q += 2) t.prepare_bell(q, q + 1, &rng);
    size_t q = 0;
    for (auto _ : state) {
        t.measure_z(q, &rng);
        q = (q + 1) % n;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TableauMeasureZ)->Arg(64)->Arg(256)->Arg(1024);

void BM_SampleChannelModel(benchmark::State &state) {
    auto built = boosting(3, static_cast<int>(state.range(0)), 0.01);
    auto model = bellsim::extract_channel_model(built.circuit);
    const size_t kShots = 1024;
    for (auto _ : state) {
        auto batch = bellsim::sample_channel_model(model, 99, kShots);
        benchmark::DoNotOptimize(batch.det_bits.data());
    }
    state.SetItemsProcessed(state.iterations() * kShots);
}
BENCHMARK(BM_SampleChannelModel)->Arg(5)->Arg(7)->Arg(11);

void BM_MinWeightMatching(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    std::vector<std::vector<std::vector<int64_t>>> cases;
    for (size_t i = 0; i < 64; ++i) {
        bellsim::ShotRng rng(5150, i);
        std::vector<std::vector<int64_t>> w(n, std::vector<int64_t>(n, 0));
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                w[a][b] = w[b][a] = static_cast<int64_t>(rng.next_below(1000)) + 1;
        cases.push_back(std::move(w));
    }
    size_t i = 0;
    for (auto _ : state) {
        auto mate = bellsim::min_weight_perfect_matching(cases[i]);
        benchmark::DoNotOptimize(mate.data());
        i = (i + 1) % cases.size();
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MinWeightMatching)->Arg(8)->Arg(16)->Arg(32);

void BM_DecodeShot(benchmark::State &state) {
    auto built = boosting(3, static_cast<int>(state.range(0)), 0.01);
    auto dem = bellsim::collapse_to_dem(bellsim::extract_channel_model(built.circuit), built.circuit);
    bellsim::GapDecoder decoder(dem);
    auto batch = bellsim::sample_dem(dem, 31, 4096);
    size_t s = 0;
    for (auto _ : state) {
        auto out = decoder.decode(batch, s);
        benchmark::DoNotOptimize(out.gap);
        s = (s + 1) % batch.num_shots;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DecodeShot)->Arg(5)->Arg(7)->Arg(11);

void BM_DecodeCampaign(benchmark::State &state) {
    auto built = boosting(3, 5, 0.03);
    const size_t kShots = 2048;
    for (auto _ : state) {
        auto res = bellsim::run_decode_campaign(built.circuit, kShots, 1, 1);
        benchmark::DoNotOptimize(res.errors_any);
    }
    state.SetItemsProcessed(state.iterations() * kShots);
}
BENCHMARK(BM_DecodeCampaign);

}  // namespace

BENCHMARK_MAIN();
