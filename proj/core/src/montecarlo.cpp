#include "lsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <utility>

#include "lsim/goal_models.hpp"
#include "lsim/rng.hpp"
#include "lsim/schedule.hpp"
#include "lsim/standings.hpp"

namespace lsim {

namespace {

// Sub-seed tags under one replication's base seed.
constexpr std::uint64_t kTagSchedule = 1;
constexpr std::uint64_t kTagTiebreak = 2;
constexpr std::uint64_t kTagMatches = 3;
constexpr std::uint64_t kTagFixedSchedule = 0x5eedf1c5;

struct Tally {
    std::array<long long, 9> case_counts{};
    std::array<long long, 5> extra_counts{};
    std::array<long long, 3> team_count_counts{};
    std::vector<long long> point_sum;
    std::vector<long long> point_sqsum;
    std::vector<long long> champion_counts;

    explicit Tally(std::size_t n_teams, bool champions)
        : point_sum(n_teams, 0),
          point_sqsum(n_teams, 0),
          champion_counts(champions ? n_teams : 0, 0) {}

    void merge(const Tally& other) {
        for (std::size_t i = 0; i < case_counts.size(); ++i)
            case_counts[i] += other.case_counts[i];
        for (std::size_t i = 0; i < extra_counts.size(); ++i)
            extra_counts[i] += other.extra_counts[i];
        for (std::size_t i = 0; i < team_count_counts.size(); ++i)
            team_count_counts[i] += other.team_count_counts[i];
        for (std::size_t i = 0; i < point_sum.size(); ++i) {
            point_sum[i] += other.point_sum[i];
            point_sqsum[i] += other.point_sqsum[i];
        }
        for (std::size_t i = 0; i < champion_counts.size(); ++i)
            champion_counts[i] += other.champion_counts[i];
    }
};

void validate_config(const SimConfig& cfg) {
    if (cfg.n_replications < 1) {
        throw std::invalid_argument("run_simulation: n_replications must be >= 1");
    }
    if (cfg.n_workers < 1) {
        throw std::invalid_argument("run_simulation: n_workers must be >= 1");
    }
    cfg.league.validate();
    const int n = static_cast<int>(cfg.league.teams.size());
    if (n < 4 || n > 64 || n % 2 != 0) {
        throw std::invalid_argument("run_simulation: league needs an even team count in [4, 64]");
    }
    if ((cfg.model == Model::M5) != cfg.coeffs.has_value()) {
        throw std::invalid_argument(
            cfg.model == Model::M5
                ? "run_simulation: M5 requires regression coefficients"
                : "run_simulation: coefficients are only valid with M5");
    }
}

void run_replication(const SimConfig& cfg, const SeasonSchedule* fixed,
                     std::uint64_t rep_index, Tally& tally) {
    const std::uint64_t base = rng::mix(cfg.master_seed, rep_index);
    const RegressionCoeffs* coeffs = cfg.coeffs ? &*cfg.coeffs : nullptr;
    const int n = static_cast<int>(cfg.league.teams.size());

    SeasonSchedule schedule =
        fixed ? *fixed : generate_season_schedule(n, rng::mix(base, kTagSchedule));

    auto match_rng = rng::Stream::seeded(rng::mix(base, kTagMatches));
    std::vector<MatchScore> scores;
    scores.reserve(schedule.fixtures.size());
    for (const Fixture& f : schedule.fixtures) {
        scores.push_back(sample_match(cfg.model,
                                      cfg.league.teams[static_cast<std::size_t>(f.home)],
                                      cfg.league.teams[static_cast<std::size_t>(f.away)],
                                      cfg.league, coeffs, match_rng));
    }

    SeasonOutcome outcome =
        build_tables(std::move(schedule), std::move(scores), rng::mix(base, kTagTiebreak));
    const QualifierSet q = select_qualifiers(outcome, cfg.exclude_low_winners);
    const OverlapCase oc = classify_overlap(q);

    if (oc.case_id > 0) {
        ++tally.case_counts[static_cast<std::size_t>(oc.case_id)];
    } else {
        ++tally.extra_counts[static_cast<std::size_t>(oc.extra)];
    }
    ++tally.team_count_counts[static_cast<std::size_t>(oc.n_teams - 3)];

    for (const TableRow& row : outcome.total_table) {
        const auto slot = static_cast<std::size_t>(row.team_id);
        tally.point_sum[slot] += row.points;
        tally.point_sqsum[slot] += static_cast<long long>(row.points) * row.points;
    }

    if (cfg.track_champions) {
        const Bracket bracket = build_bracket_official(q, oc);
        const TeamId champ =
            simulate_bracket(bracket, cfg.model, cfg.league, coeffs, match_rng, cfg.draw_rule);
        ++tally.champion_counts[static_cast<std::size_t>(champ)];
    }
}

}  // namespace

SimReport run_simulation(const SimConfig& cfg) {
    validate_config(cfg);

    const auto n_teams = cfg.league.teams.size();
    const long long reps = cfg.n_replications;

    SeasonSchedule fixed_schedule;
    const SeasonSchedule* fixed = nullptr;
    if (cfg.fixed_schedule) {
        fixed_schedule = generate_season_schedule(
            static_cast<int>(n_teams), rng::mix(cfg.master_seed, kTagFixedSchedule));
        fixed = &fixed_schedule;
    }

    const int workers = static_cast<int>(
        std::min<long long>(cfg.n_workers, std::max<long long>(1, reps)));
    std::vector<Tally> tallies(static_cast<std::size_t>(workers),
                               Tally(n_teams, cfg.track_champions));

    if (workers == 1) {
        for (long long k = 0; k < reps; ++k) {
            run_replication(cfg, fixed, static_cast<std::uint64_t>(k), tallies[0]);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const long long chunk = (reps + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const long long lo = w * chunk;
            const long long hi = std::min(reps, lo + chunk);
            pool.emplace_back([&cfg, fixed, lo, hi, &tally = tallies[static_cast<std::size_t>(w)]] {
                for (long long k = lo; k < hi; ++k) {
                    run_replication(cfg, fixed, static_cast<std::uint64_t>(k), tally);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    Tally total(n_teams, cfg.track_champions);
    for (const Tally& t : tallies) total.merge(t);

    SimReport report;
    report.model = cfg.model;
    report.replications = reps;
    report.master_seed = cfg.master_seed;
    report.case_counts = total.case_counts;
    report.extra_counts = total.extra_counts;
    report.team_count_counts = total.team_count_counts;
    report.per_team.reserve(n_teams);
    for (std::size_t i = 0; i < n_teams; ++i) {
        const double mean =
            static_cast<double>(total.point_sum[i]) / static_cast<double>(reps);
        const double raw2 =
            static_cast<double>(total.point_sqsum[i]) / static_cast<double>(reps);
        const double variance = std::max(0.0, raw2 - mean * mean);
        report.per_team.push_back(TeamPointStats{cfg.league.teams[i].team_id,
                                                 cfg.league.teams[i].name, mean,
                                                 std::sqrt(variance)});
    }
    if (cfg.track_champions) report.champion_counts = total.champion_counts;
    return report;
}

std::vector<TeamPointStats> per_team_point_stats(const SimConfig& cfg) {
    return run_simulation(cfg).per_team;
}

double normalized_error(double actual_points, double mean, double std) {
    if (!(std > 0.0)) {
        throw std::domain_error("normalized_error: std must be positive");
    }
    return (mean - actual_points) / std;
}

}  // namespace lsim
