#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "lsim/schedule.hpp"
#include "lsim/types.hpp"

namespace lsim {

struct TableRow {
    TeamId team_id = kNoTeam;
    int played = 0;
    int wins = 0;
    int draws = 0;
    int losses = 0;
    int goals_for = 0;
    int goals_against = 0;
    int points = 0;

    int goal_diff() const { return goals_for - goals_against; }

    bool operator==(const TableRow&) const = default;
};

// 3-1-0 points for (home, away).
std::pair<int, int> score_fixture(const MatchScore& score);

// Orders rows by points, then goal difference, then goals for, then a
// seeded random draw. The draw is a pure function of (seed, team_id), so
// re-ranking the same rows with the same seed is stable.
std::vector<TableRow> rank_with_tiebreak(std::vector<TableRow> rows,
                                         std::uint64_t tiebreak_seed);

// A fully played season: the scores in fixture order plus the ranked
// per-stage and total tables.
struct SeasonOutcome {
    SeasonSchedule schedule;
    std::vector<MatchScore> scores;            // one per fixture, same order
    std::array<std::vector<TableRow>, 2> stage_tables;
    std::vector<TableRow> total_table;
    std::array<TeamId, 2> stage_winners = {kNoTeam, kNoTeam};
};

// Scores every fixture and ranks the three tables. Each table uses its own
// sub-seed derived from tiebreak_seed. Throws std::invalid_argument when
// the score count does not match the fixture count.
SeasonOutcome build_tables(SeasonSchedule schedule, std::vector<MatchScore> scores,
                           std::uint64_t tiebreak_seed = 0);

}  // namespace lsim
