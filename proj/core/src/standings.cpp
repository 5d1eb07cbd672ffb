#include "lsim/standings.hpp"

#include <algorithm>
#include <tuple>

#include "lsim/rng.hpp"

namespace lsim {

std::pair<int, int> score_fixture(const MatchScore& score) {
    if (score.home_goals > score.away_goals) return {3, 0};
    if (score.home_goals < score.away_goals) return {0, 3};
    return {1, 1};
}

std::vector<TableRow> rank_with_tiebreak(std::vector<TableRow> rows,
                                         std::uint64_t tiebreak_seed) {
    const auto key = [tiebreak_seed](const TableRow& r) {
        return std::make_tuple(-r.points, -r.goal_diff(), -r.goals_for,
                               rng::mix(tiebreak_seed, static_cast<std::uint64_t>(
                                                           static_cast<std::int64_t>(r.team_id))),
                               r.team_id);
    };
    std::sort(rows.begin(), rows.end(),
              [&key](const TableRow& a, const TableRow& b) { return key(a) < key(b); });
    return rows;
}

SeasonOutcome build_tables(SeasonSchedule schedule, std::vector<MatchScore> scores,
                           std::uint64_t tiebreak_seed) {
    if (scores.size() != schedule.fixtures.size()) {
        throw std::invalid_argument("build_tables: " + std::to_string(scores.size()) +
                                    " scores for " + std::to_string(schedule.fixtures.size()) +
                                    " fixtures");
    }

    const int n = schedule.n_teams;
    std::array<std::vector<TableRow>, 2> stage_rows;
    for (auto& rows : stage_rows) {
        rows.resize(n);
        for (int t = 0; t < n; ++t) rows[t].team_id = t;
    }

    for (std::size_t i = 0; i < schedule.fixtures.size(); ++i) {
        const Fixture& f = schedule.fixtures[i];
        if (f.stage < 1 || f.stage > 2 || f.home < 0 || f.home >= n || f.away < 0 ||
            f.away >= n) {
            throw std::invalid_argument("build_tables: fixture " + std::to_string(i) +
                                        " is malformed");
        }
        const MatchScore& s = scores[i];
        const auto [hp, ap] = score_fixture(s);
        auto& home = stage_rows[f.stage - 1][f.home];
        auto& away = stage_rows[f.stage - 1][f.away];
        ++home.played;
        ++away.played;
        home.goals_for += s.home_goals;
        home.goals_against += s.away_goals;
        away.goals_for += s.away_goals;
        away.goals_against += s.home_goals;
        home.points += hp;
        away.points += ap;
        if (hp == 3) {
            ++home.wins;
            ++away.losses;
        } else if (ap == 3) {
            ++away.wins;
            ++home.losses;
        } else {
            ++home.draws;
            ++away.draws;
        }
    }

    std::vector<TableRow> total_rows(n);
    for (int t = 0; t < n; ++t) {
        TableRow& row = total_rows[t];
        row.team_id = t;
        for (const auto& rows : stage_rows) {
            row.played += rows[t].played;
            row.wins += rows[t].wins;
            row.draws += rows[t].draws;
            row.losses += rows[t].losses;
            row.goals_for += rows[t].goals_for;
            row.goals_against += rows[t].goals_against;
            row.points += rows[t].points;
        }
    }

    SeasonOutcome outcome;
    outcome.schedule = std::move(schedule);
    outcome.scores = std::move(scores);
    outcome.stage_tables[0] = rank_with_tiebreak(std::move(stage_rows[0]),
                                                 rng::mix(tiebreak_seed, 1));
    outcome.stage_tables[1] = rank_with_tiebreak(std::move(stage_rows[1]),
                                                 rng::mix(tiebreak_seed, 2));
    outcome.total_table = rank_with_tiebreak(std::move(total_rows),
                                             rng::mix(tiebreak_seed, 3));
    outcome.stage_winners = {outcome.stage_tables[0].front().team_id,
                             outcome.stage_tables[1].front().team_id};
    return outcome;
}

}  // namespace lsim
