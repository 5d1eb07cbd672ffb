#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lsim/rng.hpp"
#include "lsim/standings.hpp"
#include "lsim/types.hpp"

namespace lsim {

// The five postseason slots: total-points ranks 1-3 (Y1..Y3) and the two
// stage winners relabeled by total points (W1 the higher). A winner slot
// is empty only when the low-rank exclusion rule removed it; since W1
// outranks W2, an absent W1 implies an absent W2.
struct QualifierSet {
    TeamId y1 = kNoTeam;
    TeamId y2 = kNoTeam;
    TeamId y3 = kNoTeam;
    std::optional<TeamId> w1;
    std::optional<TeamId> w2;
    int w1_total_rank = 0;  // 1-based; 0 when absent
    int w2_total_rank = 0;
};

// Configurations the 8-case table does not enumerate: a team that won both
// stages without finishing 1st in total points, or a winner removed by the
// low-rank exclusion rule.
enum class ExtraCase {
    none,
    double_winner_y2,   // won both stages, ranked 2nd in total
    double_winner_y3,   // won both stages, ranked 3rd in total
    double_winner_y4,   // won both stages, ranked 4th or lower
    winner_excluded,    // at least one winner dropped by the exclusion rule
};

const char* extra_case_name(ExtraCase e);

// Overlap classification. case_id is 1..8 for the enumerated table and 0
// when extra != none. n_teams is the number of distinct postseason teams.
struct OverlapCase {
    int case_id = 0;
    ExtraCase extra = ExtraCase::none;
    int n_teams = 0;

    bool operator==(const OverlapCase&) const = default;
};

// Knockout structure. First-round matches hold concrete teams; second-round
// slots hold either a team that cleared the first round or a reference to a
// first-round match. The championship is always Y1 against the second-round
// winner, over two legs.
struct Bracket {
    struct Slot {
        TeamId team = kNoTeam;
        int winner_of = -1;  // index into first_round when team == kNoTeam

        static Slot of_team(TeamId t) { return Slot{t, -1}; }
        static Slot of_winner(int match) { return Slot{kNoTeam, match}; }
        bool is_team() const { return team != kNoTeam; }
        bool operator==(const Slot&) const = default;
    };
    struct Match {
        TeamId high_seed = kNoTeam;  // better total rank
        TeamId low_seed = kNoTeam;
        TeamId venue = kNoTeam;
    };

    std::vector<Match> first_round;  // 0..2 matches
    std::array<Slot, 2> second_round;
    TeamId championship_seed = kNoTeam;
    std::vector<std::pair<TeamId, int>> total_ranks;  // participant -> 1-based rank
};

// Reads the five slots off a completed season. With exclude_low_winners
// set, a stage winner whose total rank is in the bottom three (16th-18th
// for 18 teams) is dropped.
QualifierSet select_qualifiers(const SeasonOutcome& outcome,
                               bool exclude_low_winners = false);

// Maps the qualifier overlap pattern to its case. Throws
// std::invalid_argument for an internally inconsistent QualifierSet.
OverlapCase classify_overlap(const QualifierSet& q);

// Number of distinct postseason teams for a case, in {3, 4, 5}.
int team_count(const OverlapCase& c);

// Bracket under the official 2015 overlap-resolution rules. Throws
// std::invalid_argument when (q, c) disagree.
Bracket build_bracket_official(const QualifierSet& q, const OverlapCase& c);

// Bracket under the re-defined postseason: Y1 seeded to the championship,
// Y2 and Y3 in the Super Stage, stage winners ranked 4th or lower admitted
// as repechage teams.
Bracket build_bracket_proposed(const QualifierSet& q);

// True when two brackets give the same match-ups: same first-round
// pairings, same byes, same second-round composition, same championship
// seed. First-round order and seeding labels are ignored.
bool same_structure(const Bracket& a, const Bracket& b);

// How a drawn knockout match is resolved.
enum class DrawRule { higher_rank, coin_flip };

// Plays the bracket out with sampled scores and returns the champion.
// Bracket team ids index league.teams. Single matches fall back to
// draw_rule on a draw; the championship is decided on aggregate goals over
// two legs, with draw_rule breaking an aggregate tie.
TeamId simulate_bracket(const Bracket& b, Model model, const LeagueParams& league,
                        const RegressionCoeffs* coeffs, rng::Stream& rng,
                        DrawRule draw_rule = DrawRule::higher_rank);

// JSON export: case id, team count, and a rounds array of match/bye
// entries. Schema in docs/report-schema.md.
std::string bracket_to_json(const Bracket& b, const OverlapCase& c);

}  // namespace lsim
