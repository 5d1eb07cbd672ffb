#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lsim/postseason.hpp"
#include "lsim/types.hpp"

namespace lsim {

// Full-season replication setup. Replication k always draws from a stream
// derived from (master_seed, k), so reports are identical for any worker
// count.
struct SimConfig {
    Model model = Model::M1;
    long long n_replications = 100000;
    std::uint64_t master_seed = 0;
    LeagueParams league;
    std::optional<RegressionCoeffs> coeffs;  // required exactly for M5
    bool exclude_low_winners = false;
    DrawRule draw_rule = DrawRule::higher_rank;
    int n_workers = 1;
    bool fixed_schedule = false;   // one shared schedule instead of one per replication
    bool track_champions = false;  // also play out the official bracket
};

struct TeamPointStats {
    TeamId team_id = kNoTeam;
    std::string name;
    double mean_points = 0.0;
    double std_points = 0.0;  // population standard deviation
};

// Aggregated outcome counts. Probabilities are exposed as count ratios so
// the integer tallies remain the single source of truth.
struct SimReport {
    Model model = Model::M1;
    long long replications = 0;
    std::uint64_t master_seed = 0;

    std::array<long long, 9> case_counts{};   // index 1..8; 0 unused
    std::array<long long, 5> extra_counts{};  // indexed by ExtraCase value
    std::array<long long, 3> team_count_counts{};  // postseasons with 3, 4, 5 teams

    std::vector<TeamPointStats> per_team;          // league order
    std::vector<long long> champion_counts;        // league order; empty unless tracked

    double case_prob(int case_id) const {
        return static_cast<double>(case_counts.at(static_cast<std::size_t>(case_id))) /
               static_cast<double>(replications);
    }
    double extra_prob(ExtraCase e) const {
        return static_cast<double>(extra_counts[static_cast<std::size_t>(e)]) /
               static_cast<double>(replications);
    }
    // k in {3, 4, 5}
    double team_count_prob(int k) const {
        return static_cast<double>(team_count_counts.at(static_cast<std::size_t>(k - 3))) /
               static_cast<double>(replications);
    }
    double mean_team_count() const {
        return 3.0 * team_count_prob(3) + 4.0 * team_count_prob(4) + 5.0 * team_count_prob(5);
    }
};

// Simulates cfg.n_replications seasons: schedule, every match score, the
// three tables, qualifier selection, overlap classification. Validates the
// whole configuration up front (throws std::invalid_argument) so no
// replication runs on bad input.
SimReport run_simulation(const SimConfig& cfg);

// Mean and population standard deviation of each team's total season
// points across replications.
std::vector<TeamPointStats> per_team_point_stats(const SimConfig& cfg);

// (mean - actual) / std: positive when the simulation overrates the team.
// Throws std::domain_error when std is not positive.
double normalized_error(double actual_points, double mean, double std);

}  // namespace lsim
