#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "lsim/postseason.hpp"
#include "lsim/rng.hpp"
#include "lsim/standings.hpp"

using namespace lsim;

namespace {

// Mock outcome: teams finish the total table in the given id order; stage
// winners are set directly. Only the fields select_qualifiers reads are
// filled in.
SeasonOutcome mock_outcome(const std::vector<TeamId>& total_order, TeamId stage1_winner,
                           TeamId stage2_winner) {
    SeasonOutcome outcome;
    int points = 3 * static_cast<int>(total_order.size());
    for (TeamId t : total_order) {
        TableRow row;
        row.team_id = t;
        row.points = points--;
        outcome.total_table.push_back(row);
    }
    outcome.stage_winners = {stage1_winner, stage2_winner};
    return outcome;
}

// Qualifier set for stage winners at the given 1-based total ranks of a
// 6-team mock table with team ids 10, 20, ..., 60.
QualifierSet qualifiers_at_ranks(int rank_a, int rank_b) {
    const std::vector<TeamId> order{10, 20, 30, 40, 50, 60};
    const SeasonOutcome outcome = mock_outcome(
        order, order[static_cast<std::size_t>(rank_a - 1)],
        order[static_cast<std::size_t>(rank_b - 1)]);
    return select_qualifiers(outcome);
}

std::set<TeamId> bracket_teams(const Bracket& b) {
    std::set<TeamId> teams{b.championship_seed};
    for (const auto& m : b.first_round) {
        teams.insert(m.high_seed);
        teams.insert(m.low_seed);
    }
    for (const auto& s : b.second_round) {
        if (s.is_team()) teams.insert(s.team);
    }
    return teams;
}

}  // namespace

TEST_CASE("select_qualifiers orders winners by total points") {
    const QualifierSet q = qualifiers_at_ranks(4, 1);
    CHECK(q.y1 == 10);
    CHECK(q.y2 == 20);
    CHECK(q.y3 == 30);
    REQUIRE(q.w1.has_value());
    REQUIRE(q.w2.has_value());
    CHECK(*q.w1 == 10);  // the rank-1 stage winner is W1 regardless of stage
    CHECK(q.w1_total_rank == 1);
    CHECK(*q.w2 == 40);
    CHECK(q.w2_total_rank == 4);
}

TEST_CASE("a double stage winner fills both slots") {
    const QualifierSet q = qualifiers_at_ranks(1, 1);
    CHECK(*q.w1 == *q.w2);
    CHECK(q.w1_total_rank == 1);
    CHECK(q.w2_total_rank == 1);
}

TEST_CASE("the low-rank exclusion flag drops a 17th-ranked winner") {
    std::vector<TeamId> order(18);
    for (int i = 0; i < 18; ++i) order[static_cast<std::size_t>(i)] = i;
    const SeasonOutcome outcome = mock_outcome(order, /*stage1=*/0, /*stage2=*/16);

    const QualifierSet kept = select_qualifiers(outcome, false);
    REQUIRE(kept.w2.has_value());
    CHECK(*kept.w2 == 16);
    CHECK(kept.w2_total_rank == 17);

    const QualifierSet dropped = select_qualifiers(outcome, true);
    REQUIRE(dropped.w1.has_value());
    CHECK(*dropped.w1 == 0);
    CHECK(!dropped.w2.has_value());
    const OverlapCase oc = classify_overlap(dropped);
    CHECK(oc.extra == ExtraCase::winner_excluded);
}

TEST_CASE("classification covers the 8-case table") {
    const auto case_of = [](int ra, int rb) { return classify_overlap(qualifiers_at_ranks(ra, rb)); };

    CHECK(case_of(5, 4).case_id == 1);  // both outside the top three
    CHECK(case_of(3, 4).case_id == 2);  // W1 = Y3
    CHECK(case_of(2, 5).case_id == 3);  // W1 = Y2
    CHECK(case_of(2, 3).case_id == 4);  // W1 = Y2, W2 = Y3
    CHECK(case_of(1, 6).case_id == 5);  // W1 = Y1
    CHECK(case_of(1, 3).case_id == 6);  // W1 = Y1, W2 = Y3
    CHECK(case_of(1, 2).case_id == 7);  // W1 = Y1, W2 = Y2
    CHECK(case_of(1, 1).case_id == 8);  // double winner ranked 1st

    CHECK(case_of(5, 4).n_teams == 5);
    CHECK(case_of(1, 6).n_teams == 4);
    CHECK(case_of(1, 1).n_teams == 3);
}

TEST_CASE("double winners outside rank 1 map to extra cases") {
    const OverlapCase y2 = classify_overlap(qualifiers_at_ranks(2, 2));
    CHECK(y2.case_id == 0);
    CHECK(y2.extra == ExtraCase::double_winner_y2);
    CHECK(y2.n_teams == 3);

    const OverlapCase y3 = classify_overlap(qualifiers_at_ranks(3, 3));
    CHECK(y3.extra == ExtraCase::double_winner_y3);

    const OverlapCase y4 = classify_overlap(qualifiers_at_ranks(5, 5));
    CHECK(y4.extra == ExtraCase::double_winner_y4);
    CHECK(y4.n_teams == 4);
}

TEST_CASE("team_count follows the table mapping") {
    CHECK(team_count(OverlapCase{1, ExtraCase::none, 5}) == 5);
    CHECK(team_count(OverlapCase{3, ExtraCase::none, 4}) == 4);
    CHECK(team_count(OverlapCase{4, ExtraCase::none, 3}) == 3);
    CHECK(team_count(OverlapCase{8, ExtraCase::none, 3}) == 3);
    CHECK(team_count(OverlapCase{0, ExtraCase::double_winner_y4, 4}) == 4);
}

TEST_CASE("team_count equals the distinct-team union for every placement") {
    for (int ra = 1; ra <= 6; ++ra) {
        for (int rb = 1; rb <= 6; ++rb) {
            const QualifierSet q = qualifiers_at_ranks(ra, rb);
            const OverlapCase oc = classify_overlap(q);
            std::set<TeamId> teams{q.y1, q.y2, q.y3};
            if (q.w1) teams.insert(*q.w1);
            if (q.w2) teams.insert(*q.w2);
            CHECK(team_count(oc) == static_cast<int>(teams.size()));
        }
    }
}

TEST_CASE("official bracket shapes") {
    SUBCASE("case 1: two first-round games at the winners' homes") {
        const QualifierSet q = qualifiers_at_ranks(4, 6);
        const OverlapCase oc = classify_overlap(q);
        const Bracket b = build_bracket_official(q, oc);
        REQUIRE(b.first_round.size() == 2);
        CHECK(b.first_round[0].venue == *q.w1);
        CHECK(b.first_round[1].venue == *q.w2);
        // W1 meets Y3, W2 meets Y2.
        CHECK(b.first_round[0].high_seed == q.y3);  // rank 3 beats rank 4
        CHECK(b.first_round[0].low_seed == *q.w1);
        CHECK(b.first_round[1].high_seed == q.y2);
        CHECK(b.first_round[1].low_seed == *q.w2);
        CHECK(!b.second_round[0].is_team());
        CHECK(!b.second_round[1].is_team());
        CHECK(b.championship_seed == q.y1);
    }
    SUBCASE("case 4: second round only, Y2 against Y3") {
        const QualifierSet q = qualifiers_at_ranks(2, 3);
        const Bracket b = build_bracket_official(q, classify_overlap(q));
        CHECK(b.first_round.empty());
        CHECK(b.second_round[0] == Bracket::Slot::of_team(q.y2));
        CHECK(b.second_round[1] == Bracket::Slot::of_team(q.y3));
    }
    SUBCASE("case 5: Y2-Y3 first round with W2 seeded") {
        const QualifierSet q = qualifiers_at_ranks(1, 5);
        const Bracket b = build_bracket_official(q, classify_overlap(q));
        REQUIRE(b.first_round.size() == 1);
        CHECK(b.first_round[0].high_seed == q.y2);
        CHECK(b.first_round[0].low_seed == q.y3);
        CHECK(b.second_round[0] == Bracket::Slot::of_team(*q.w2));
        CHECK(b.second_round[1] == Bracket::Slot::of_winner(0));
    }
    SUBCASE("case 2: the overlapping winner is seeded") {
        const QualifierSet q = qualifiers_at_ranks(3, 5);
        const Bracket b = build_bracket_official(q, classify_overlap(q));
        REQUIRE(b.first_round.size() == 1);
        CHECK(b.first_round[0].venue == *q.w2);
        CHECK(b.second_round[0] == Bracket::Slot::of_team(q.y3));
    }
    SUBCASE("case 8: basic three-team shape") {
        const QualifierSet q = qualifiers_at_ranks(1, 1);
        const Bracket b = build_bracket_official(q, classify_overlap(q));
        CHECK(b.first_round.empty());
        CHECK(b.second_round[0] == Bracket::Slot::of_team(q.y2));
        CHECK(b.second_round[1] == Bracket::Slot::of_team(q.y3));
        CHECK(b.championship_seed == q.y1);
    }
    SUBCASE("a mismatched case is rejected") {
        const QualifierSet q = qualifiers_at_ranks(4, 6);
        const OverlapCase wrong{4, ExtraCase::none, 3};
        CHECK_THROWS_AS(build_bracket_official(q, wrong), std::invalid_argument);
    }
}

TEST_CASE("proposed bracket shapes") {
    SUBCASE("no repechage winner: basic format") {
        const QualifierSet q = qualifiers_at_ranks(1, 2);
        const Bracket b = build_bracket_proposed(q);
        CHECK(b.first_round.empty());
        CHECK(b.second_round[0] == Bracket::Slot::of_team(q.y2));
        CHECK(b.second_round[1] == Bracket::Slot::of_team(q.y3));
    }
    SUBCASE("overlapping W1 in Y2 is seeded past the first round") {
        const QualifierSet q = qualifiers_at_ranks(2, 5);
        const Bracket b = build_bracket_proposed(q);
        REQUIRE(b.first_round.size() == 1);
        CHECK(b.first_round[0].venue == *q.w2);
        CHECK(b.second_round[0] == Bracket::Slot::of_team(q.y2));
        CHECK(b.second_round[1] == Bracket::Slot::of_winner(0));
    }
    SUBCASE("two repechage winners: Y2-W2 and Y3-W1") {
        const QualifierSet q = qualifiers_at_ranks(4, 5);
        const Bracket b = build_bracket_proposed(q);
        REQUIRE(b.first_round.size() == 2);
        CHECK(b.first_round[0].high_seed == q.y2);
        CHECK(b.first_round[0].low_seed == *q.w2);
        CHECK(b.first_round[1].high_seed == q.y3);
        CHECK(b.first_round[1].low_seed == *q.w1);
    }
}

TEST_CASE("official and proposed brackets agree on every winner placement") {
    for (int ra = 1; ra <= 6; ++ra) {
        for (int rb = 1; rb <= 6; ++rb) {
            const QualifierSet q = qualifiers_at_ranks(ra, rb);
            const OverlapCase oc = classify_overlap(q);
            const Bracket official = build_bracket_official(q, oc);
            const Bracket proposed = build_bracket_proposed(q);
            CAPTURE(ra);
            CAPTURE(rb);
            CHECK(same_structure(official, proposed));

            // Shared structural invariants.
            for (const Bracket& b : {official, proposed}) {
                CHECK(b.championship_seed == q.y1);
                const auto teams = bracket_teams(b);
                CHECK(static_cast<int>(teams.size()) == team_count(oc));
                // No team twice in the first round.
                std::set<TeamId> fr;
                for (const auto& m : b.first_round) {
                    CHECK(fr.insert(m.high_seed).second);
                    CHECK(fr.insert(m.low_seed).second);
                }
                // Seeded second-round teams did not also play the first round.
                for (const auto& s : b.second_round) {
                    if (s.is_team()) CHECK(fr.count(s.team) == 0);
                }
            }
        }
    }
}

TEST_CASE("simulate_bracket respects the draw rule and participant closure") {
    LeagueParams league;
    league.lambda_all = 0.0;
    league.teams.resize(6);
    for (int i = 0; i < 6; ++i) {
        league.teams[static_cast<std::size_t>(i)].team_id = i;
    }

    SUBCASE("all-zero rates: every game drawn, Y1 retains") {
        const std::vector<TeamId> order{0, 1, 2, 3, 4, 5};
        const SeasonOutcome outcome = mock_outcome(order, 3, 4);
        const QualifierSet q = select_qualifiers(outcome);
        const Bracket b = build_bracket_official(q, classify_overlap(q));
        auto rng = rng::Stream::seeded(8);
        for (int i = 0; i < 200; ++i) {
            CHECK(simulate_bracket(b, Model::M1, league, nullptr, rng) == q.y1);
        }
    }
    SUBCASE("case-4 bracket only ever crowns a top-3 team") {
        league.lambda_all = 1.35;
        const std::vector<TeamId> order{0, 1, 2, 3, 4, 5};
        const SeasonOutcome outcome = mock_outcome(order, 1, 2);
        const QualifierSet q = select_qualifiers(outcome);
        const Bracket b = build_bracket_official(q, classify_overlap(q));
        auto rng = rng::Stream::seeded(9);
        for (int i = 0; i < 2000; ++i) {
            const TeamId champ = simulate_bracket(b, Model::M1, league, nullptr, rng);
            CHECK((champ == q.y1 || champ == q.y2 || champ == q.y3));
        }
    }
    SUBCASE("symmetric teams: every basic-bracket slot wins a real share") {
        league.lambda_all = 1.35;
        const std::vector<TeamId> order{0, 1, 2, 3, 4, 5};
        const SeasonOutcome outcome = mock_outcome(order, 0, 0);
        const QualifierSet q = select_qualifiers(outcome);
        const Bracket b = build_bracket_official(q, classify_overlap(q));
        auto rng = rng::Stream::seeded(10);
        std::map<TeamId, int> champs;
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            ++champs[simulate_bracket(b, Model::M1, league, nullptr, rng)];
        }
        REQUIRE(champs.size() == 3);
        for (const auto& [team, count] : champs) {
            CAPTURE(team);
            CHECK(count > n / 20);  // bounded away from zero
        }
    }
}
