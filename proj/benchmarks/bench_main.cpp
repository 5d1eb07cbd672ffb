#include <benchmark/benchmark.h>

#include "lsim/goal_models.hpp"
#include "lsim/montecarlo.hpp"
#include "lsim/rng.hpp"
#include "lsim/schedule.hpp"
#include "lsim/standings.hpp"

namespace {

lsim::LeagueParams identical_league(int n, double lambda) {
    lsim::LeagueParams league;
    league.lambda_all = lambda;
    for (int i = 0; i < n; ++i) {
        lsim::TeamParams t;
        t.team_id = i;
        t.name = "T" + std::to_string(i);
        t.lambda_gf = t.lambda_ga = lambda;
        t.lambda_gf_h = t.lambda_gf_a = lambda;
        t.lambda_ga_h = t.lambda_ga_a = lambda;
        league.teams.push_back(t);
    }
    return league;
}

void BM_GenerateSchedule18(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lsim::generate_season_schedule(18, seed++));
    }
}
BENCHMARK(BM_GenerateSchedule18);

void BM_SamplePoisson(benchmark::State& state) {
    auto rng = lsim::rng::Stream::seeded(1);
    long long acc = 0;
    for (auto _ : state) {
        acc += lsim::sample_poisson(1.35, rng);
    }
    benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_SamplePoisson);

void BM_SeasonReplicationM1(benchmark::State& state) {
    lsim::SimConfig cfg;
    cfg.model = lsim::Model::M1;
    cfg.n_replications = 1;
    cfg.league = identical_league(18, 1.35);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.master_seed = seed++;
        benchmark::DoNotOptimize(lsim::run_simulation(cfg));
    }
}
BENCHMARK(BM_SeasonReplicationM1);

void BM_FitM5(benchmark::State& state) {
    std::vector<lsim::HistoryRecord> history;
    auto rng = lsim::rng::Stream::seeded(2);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const double gf = (i + 0.5) * 0.4;
            const double ga = (j + 0.5) * 0.4;
            const double mu = 0.7 * gf + 0.3 * ga + 0.1;
            for (int k = 0; k < 200; ++k) {
                history.push_back(
                    {gf, ga, static_cast<double>(lsim::sample_poisson(mu, rng))});
            }
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(lsim::fit_m5(history));
    }
}
BENCHMARK(BM_FitM5);

}  // namespace

BENCHMARK_MAIN();
