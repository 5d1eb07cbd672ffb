#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsim/types.hpp"

namespace lsim {

// One match slot in the season calendar. Teams are 0-based indices into
// the league's team list.
struct Fixture {
    int stage = 1;       // 1 or 2
    int round = 1;       // 1-based within the stage, in [1, n-1]
    TeamId home = kNoTeam;
    TeamId away = kNoTeam;

    bool operator==(const Fixture&) const = default;
};

// Two-stage season: each stage is a single round robin over the same
// pairs, with every pair's venue flipped between stages. For n teams a
// team plays n-1 games per stage with floor((n-1)/2) or ceil((n-1)/2) of
// them at home, and exactly n-1 home games over the full season.
struct SeasonSchedule {
    int n_teams = 0;
    std::vector<Fixture> fixtures;  // stage 1 rounds in order, then stage 2

    int fixtures_per_stage() const { return n_teams * (n_teams - 1) / 2; }
};

// Builds the schedule with the circle method for round structure and a
// seeded random venue orientation under the per-stage home balance
// constraint. Deterministic given (n_teams, seed).
// Throws std::invalid_argument unless n_teams is even and in [4, 64].
SeasonSchedule generate_season_schedule(int n_teams, std::uint64_t home_assignment_seed);

// Checks every SeasonSchedule invariant and returns one message per
// violation, naming the offending team or pair. Empty means valid.
// Malformed input produces violations, never throws.
std::vector<std::string> validate_schedule(const SeasonSchedule& schedule);

}  // namespace lsim
