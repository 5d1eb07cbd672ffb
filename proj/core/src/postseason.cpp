#include "lsim/postseason.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "lsim/goal_models.hpp"

namespace lsim {

namespace {

// Position of a team among the top-3 slots: 1..3, or 0 when outside.
int top3_position(const QualifierSet& q, TeamId t) {
    if (t == q.y1) return 1;
    if (t == q.y2) return 2;
    if (t == q.y3) return 3;
    return 0;
}

void check_qualifiers(const QualifierSet& q) {
    if (q.y1 == q.y2 || q.y1 == q.y3 || q.y2 == q.y3) {
        throw std::invalid_argument("qualifiers: y1, y2, y3 must be distinct");
    }
    if (q.w2 && !q.w1) {
        throw std::invalid_argument("qualifiers: w2 present without w1");
    }
    const auto check_winner = [&](const std::optional<TeamId>& w, int rank,
                                  const char* label) {
        if (!w) return;
        if (rank < 1) {
            throw std::invalid_argument(std::string("qualifiers: ") + label +
                                        " needs a positive total rank");
        }
        const int pos = top3_position(q, *w);
        if ((rank <= 3 && pos != rank) || (rank > 3 && pos != 0)) {
            throw std::invalid_argument(std::string("qualifiers: ") + label +
                                        " total rank disagrees with the y slots");
        }
    };
    check_winner(q.w1, q.w1_total_rank, "w1");
    check_winner(q.w2, q.w2_total_rank, "w2");
    if (q.w1 && q.w2) {
        if (*q.w1 == *q.w2 && q.w1_total_rank != q.w2_total_rank) {
            throw std::invalid_argument("qualifiers: double winner with two ranks");
        }
        if (*q.w1 != *q.w2 && q.w1_total_rank >= q.w2_total_rank) {
            throw std::invalid_argument("qualifiers: w1 must outrank w2");
        }
    }
}

int distinct_team_count(const QualifierSet& q) {
    std::set<TeamId> teams{q.y1, q.y2, q.y3};
    if (q.w1) teams.insert(*q.w1);
    if (q.w2) teams.insert(*q.w2);
    return static_cast<int>(teams.size());
}

int rank_of(const Bracket& b, TeamId t) {
    for (const auto& [team, rank] : b.total_ranks) {
        if (team == t) return rank;
    }
    throw std::invalid_argument("bracket: team " + std::to_string(t) +
                                " has no recorded rank");
}

Bracket::Match make_match(const Bracket& b, TeamId a, TeamId c, TeamId venue) {
    const bool a_high = rank_of(b, a) < rank_of(b, c);
    return Bracket::Match{a_high ? a : c, a_high ? c : a, venue};
}

Bracket bracket_base(const QualifierSet& q) {
    Bracket b;
    b.championship_seed = q.y1;
    b.total_ranks = {{q.y1, 1}, {q.y2, 2}, {q.y3, 3}};
    const auto add_winner = [&b](const std::optional<TeamId>& w, int rank) {
        if (!w) return;
        for (const auto& [team, _] : b.total_ranks) {
            if (team == *w) return;
        }
        b.total_ranks.emplace_back(*w, rank);
    };
    add_winner(q.w1, q.w1_total_rank);
    add_winner(q.w2, q.w2_total_rank);
    return b;
}

// The basic three-team shape: second round Y2 against Y3, winner meets the
// seeded Y1 in the championship.
void fill_basic(Bracket& b, const QualifierSet& q) {
    b.second_round = {Bracket::Slot::of_team(q.y2), Bracket::Slot::of_team(q.y3)};
}

TeamId resolve_single_match(TeamId home, TeamId away, int home_rank, int away_rank,
                            Model model, const LeagueParams& league,
                            const RegressionCoeffs* coeffs, rng::Stream& rng,
                            DrawRule rule) {
    const auto& hp = league.teams.at(static_cast<std::size_t>(home));
    const auto& ap = league.teams.at(static_cast<std::size_t>(away));
    const MatchScore s = sample_match(model, hp, ap, league, coeffs, rng);
    if (s.home_goals > s.away_goals) return home;
    if (s.home_goals < s.away_goals) return away;
    if (rule == DrawRule::coin_flip) return rng.coin() ? home : away;
    return home_rank < away_rank ? home : away;
}

}  // namespace

const char* extra_case_name(ExtraCase e) {
    switch (e) {
        case ExtraCase::none: return "none";
        case ExtraCase::double_winner_y2: return "double_winner_y2";
        case ExtraCase::double_winner_y3: return "double_winner_y3";
        case ExtraCase::double_winner_y4: return "double_winner_y4";
        case ExtraCase::winner_excluded: return "winner_excluded";
    }
    return "none";
}

QualifierSet select_qualifiers(const SeasonOutcome& outcome, bool exclude_low_winners) {
    const auto& table = outcome.total_table;
    if (table.size() < 4) {
        throw std::invalid_argument("select_qualifiers: total table has fewer than 4 teams");
    }
    const auto rank_of_team = [&table](TeamId t) {
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (table[i].team_id == t) return static_cast<int>(i) + 1;
        }
        throw std::invalid_argument("select_qualifiers: stage winner missing from table");
    };

    QualifierSet q;
    q.y1 = table[0].team_id;
    q.y2 = table[1].team_id;
    q.y3 = table[2].team_id;

    TeamId s1 = outcome.stage_winners[0];
    TeamId s2 = outcome.stage_winners[1];
    int r1 = rank_of_team(s1);
    int r2 = rank_of_team(s2);
    if (r2 < r1) {
        std::swap(s1, s2);
        std::swap(r1, r2);
    }
    q.w1 = s1;
    q.w1_total_rank = r1;
    q.w2 = s2;
    q.w2_total_rank = r2;

    if (exclude_low_winners) {
        // Bottom three ranks: 16th-18th in an 18-team league.
        const int cutoff = static_cast<int>(table.size()) - 2;
        if (q.w2_total_rank >= cutoff) {
            q.w2.reset();
            q.w2_total_rank = 0;
        }
        if (q.w1_total_rank >= cutoff) {
            q.w1.reset();
            q.w1_total_rank = 0;
        }
        if (!q.w1 && q.w2) {  // keep the invariant: absent w1 implies absent w2
            q.w1 = q.w2;
            q.w1_total_rank = q.w2_total_rank;
            q.w2.reset();
            q.w2_total_rank = 0;
        }
    }
    return q;
}

OverlapCase classify_overlap(const QualifierSet& q) {
    check_qualifiers(q);

    OverlapCase oc;
    oc.n_teams = distinct_team_count(q);

    if (!q.w1 || !q.w2) {
        oc.case_id = 0;
        oc.extra = ExtraCase::winner_excluded;
        return oc;
    }

    if (*q.w1 == *q.w2) {
        switch (q.w1_total_rank) {
            case 1: oc.case_id = 8; return oc;
            case 2: oc.extra = ExtraCase::double_winner_y2; return oc;
            case 3: oc.extra = ExtraCase::double_winner_y3; return oc;
            default: oc.extra = ExtraCase::double_winner_y4; return oc;
        }
    }

    const int a = top3_position(q, *q.w1);
    const int b = top3_position(q, *q.w2);
    if (a == 0 && b == 0) oc.case_id = 1;
    else if (a == 3 && b == 0) oc.case_id = 2;
    else if (a == 2 && b == 0) oc.case_id = 3;
    else if (a == 2 && b == 3) oc.case_id = 4;
    else if (a == 1 && b == 0) oc.case_id = 5;
    else if (a == 1 && b == 3) oc.case_id = 6;
    else if (a == 1 && b == 2) oc.case_id = 7;
    else {
        // Unreachable for a consistent set: w1 outranks w2.
        throw std::invalid_argument("classify_overlap: inconsistent winner positions");
    }
    return oc;
}

int team_count(const OverlapCase& c) {
    switch (c.case_id) {
        case 1: return 5;
        case 2: case 3: case 5: return 4;
        case 4: case 6: case 7: case 8: return 3;
        default: break;
    }
    if (c.extra == ExtraCase::none) {
        throw std::invalid_argument("team_count: case_id " + std::to_string(c.case_id) +
                                    " is not a table case");
    }
    return c.n_teams;
}

Bracket build_bracket_official(const QualifierSet& q, const OverlapCase& c) {
    check_qualifiers(q);
    if (classify_overlap(q) != c) {
        throw std::invalid_argument("build_bracket_official: case does not match qualifiers");
    }

    Bracket b = bracket_base(q);
    switch (c.case_id) {
        case 1:
            // First round W1-Y3 and W2-Y2, each hosted by the stage winner.
            b.first_round.push_back(make_match(b, *q.w1, q.y3, *q.w1));
            b.first_round.push_back(make_match(b, *q.w2, q.y2, *q.w2));
            b.second_round = {Bracket::Slot::of_winner(0), Bracket::Slot::of_winner(1)};
            return b;
        case 2:  // W1 = Y3 is seeded past the first round
            b.first_round.push_back(make_match(b, *q.w2, q.y2, *q.w2));
            b.second_round = {Bracket::Slot::of_team(q.y3), Bracket::Slot::of_winner(0)};
            return b;
        case 3:  // W1 = Y2 is seeded past the first round
            b.first_round.push_back(make_match(b, *q.w2, q.y3, *q.w2));
            b.second_round = {Bracket::Slot::of_team(q.y2), Bracket::Slot::of_winner(0)};
            return b;
        case 4:  // both winners overlap Y2/Y3: second round only
        case 6:
        case 7:
        case 8:
            fill_basic(b, q);
            return b;
        case 5:
            // Y1 = W1 goes straight to the championship; Y2-Y3 play the
            // first round (venue: the better-ranked side) and W2 is seeded.
            b.first_round.push_back(make_match(b, q.y2, q.y3, q.y2));
            b.second_round = {Bracket::Slot::of_team(*q.w2), Bracket::Slot::of_winner(0)};
            return b;
        default:
            break;
    }

    switch (c.extra) {
        case ExtraCase::double_winner_y2:
        case ExtraCase::double_winner_y3:
            // The double winner already holds a Super Stage slot; the rules
            // seed it, its would-be opponent clears too, so the basic shape
            // remains.
            fill_basic(b, q);
            return b;
        case ExtraCase::double_winner_y4:
            // One repechage team holding both winner slots; it takes W1's
            // pairing against Y3 and Y2 is left seeded.
            b.first_round.push_back(make_match(b, *q.w1, q.y3, *q.w1));
            b.second_round = {Bracket::Slot::of_team(q.y2), Bracket::Slot::of_winner(0)};
            return b;
        case ExtraCase::winner_excluded:
            if (q.w1 && top3_position(q, *q.w1) == 0) {
                b.first_round.push_back(make_match(b, *q.w1, q.y3, *q.w1));
                b.second_round = {Bracket::Slot::of_team(q.y2), Bracket::Slot::of_winner(0)};
            } else {
                // No surviving repechage winner: basic shape.
                fill_basic(b, q);
            }
            return b;
        case ExtraCase::none:
            break;
    }
    throw std::invalid_argument("build_bracket_official: unhandled case");
}

Bracket build_bracket_proposed(const QualifierSet& q) {
    check_qualifiers(q);
    Bracket b = bracket_base(q);

    // Repechage teams: stage winners ranked 4th or lower, as distinct teams.
    const bool w1_rep = q.w1 && top3_position(q, *q.w1) == 0;
    const bool w2_rep = q.w2 && top3_position(q, *q.w2) == 0 && (!q.w1 || *q.w2 != *q.w1);

    if (w1_rep && w2_rep) {
        // Two repechage winners: first round Y2-W2 and Y3-W1, hosted by the
        // stage winners.
        b.first_round.push_back(make_match(b, q.y2, *q.w2, *q.w2));
        b.first_round.push_back(make_match(b, q.y3, *q.w1, *q.w1));
        b.second_round = {Bracket::Slot::of_winner(0), Bracket::Slot::of_winner(1)};
        return b;
    }

    if (w1_rep || w2_rep) {
        const TeamId rep = w1_rep ? *q.w1 : *q.w2;
        // The other winner slot, when it names a different team, is inside
        // Y1..Y3 and decides who is seeded.
        const std::optional<TeamId> other = w1_rep ? q.w2 : q.w1;
        const int other_pos =
            (other && *other != rep) ? top3_position(q, *other) : 0;
        if (other_pos == 1) {
            // W1 is Y1: it is already seeded to the championship, W2 clears
            // the first round, Y2 and Y3 meet in the first round.
            b.first_round.push_back(make_match(b, q.y2, q.y3, q.y2));
            b.second_round = {Bracket::Slot::of_team(rep), Bracket::Slot::of_winner(0)};
        } else if (other_pos == 2) {
            b.first_round.push_back(make_match(b, rep, q.y3, rep));
            b.second_round = {Bracket::Slot::of_team(q.y2), Bracket::Slot::of_winner(0)};
        } else if (other_pos == 3) {
            b.first_round.push_back(make_match(b, rep, q.y2, rep));
            b.second_round = {Bracket::Slot::of_team(q.y3), Bracket::Slot::of_winner(0)};
        } else {
            // Double winner in Y4- or a lone surviving winner: it takes the
            // W1 pairing against Y3, Y2 clears.
            b.first_round.push_back(make_match(b, rep, q.y3, rep));
            b.second_round = {Bracket::Slot::of_team(q.y2), Bracket::Slot::of_winner(0)};
        }
        return b;
    }

    // No repechage team: Y2 and Y3 contest the Super Stage.
    fill_basic(b, q);
    return b;
}

bool same_structure(const Bracket& a, const Bracket& b) {
    if (a.championship_seed != b.championship_seed) return false;

    using Pair = std::pair<TeamId, TeamId>;
    const auto match_pair = [](const Bracket::Match& m) {
        return Pair{std::min(m.high_seed, m.low_seed), std::max(m.high_seed, m.low_seed)};
    };
    const auto first_round_pairs = [&](const Bracket& br) {
        std::vector<std::pair<Pair, TeamId>> pairs;  // pairing + venue
        pairs.reserve(br.first_round.size());
        for (const auto& m : br.first_round) pairs.emplace_back(match_pair(m), m.venue);
        std::sort(pairs.begin(), pairs.end());
        return pairs;
    };
    if (first_round_pairs(a) != first_round_pairs(b)) return false;

    // Second-round slots, with winner references replaced by the pairing
    // they point at so the first-round order does not matter.
    const auto slot_tokens = [&](const Bracket& br) {
        std::vector<std::pair<Pair, bool>> tokens;  // (id pair, is_winner_ref)
        for (const auto& s : br.second_round) {
            if (s.is_team()) {
                tokens.emplace_back(Pair{s.team, s.team}, false);
            } else {
                tokens.emplace_back(match_pair(br.first_round.at(
                                        static_cast<std::size_t>(s.winner_of))),
                                    true);
            }
        }
        std::sort(tokens.begin(), tokens.end());
        return tokens;
    };
    return slot_tokens(a) == slot_tokens(b);
}

TeamId simulate_bracket(const Bracket& b, Model model, const LeagueParams& league,
                        const RegressionCoeffs* coeffs, rng::Stream& rng,
                        DrawRule draw_rule) {
    for (const auto& [team, _] : b.total_ranks) {
        if (team < 0 || static_cast<std::size_t>(team) >= league.teams.size()) {
            throw std::invalid_argument("simulate_bracket: team " + std::to_string(team) +
                                        " outside league.teams");
        }
    }

    std::vector<TeamId> fr_winner(b.first_round.size(), kNoTeam);
    for (std::size_t i = 0; i < b.first_round.size(); ++i) {
        const auto& m = b.first_round[i];
        const TeamId home = m.venue;
        const TeamId away = home == m.high_seed ? m.low_seed : m.high_seed;
        fr_winner[i] = resolve_single_match(home, away, rank_of(b, home), rank_of(b, away),
                                            model, league, coeffs, rng, draw_rule);
    }

    const auto resolve_slot = [&](const Bracket::Slot& s) {
        return s.is_team() ? s.team : fr_winner.at(static_cast<std::size_t>(s.winner_of));
    };
    const TeamId t0 = resolve_slot(b.second_round[0]);
    const TeamId t1 = resolve_slot(b.second_round[1]);
    const bool t0_high = rank_of(b, t0) < rank_of(b, t1);
    const TeamId sr_home = t0_high ? t0 : t1;  // better rank hosts
    const TeamId sr_away = t0_high ? t1 : t0;
    const TeamId finalist =
        resolve_single_match(sr_home, sr_away, rank_of(b, sr_home), rank_of(b, sr_away),
                             model, league, coeffs, rng, draw_rule);

    // Championship over two legs: first at the Super Stage winner's home,
    // second at Y1's, decided on aggregate goals.
    const TeamId y1 = b.championship_seed;
    const auto& y1_params = league.teams.at(static_cast<std::size_t>(y1));
    const auto& fin_params = league.teams.at(static_cast<std::size_t>(finalist));
    const MatchScore leg1 = sample_match(model, fin_params, y1_params, league, coeffs, rng);
    const MatchScore leg2 = sample_match(model, y1_params, fin_params, league, coeffs, rng);
    const int y1_aggregate = leg1.away_goals + leg2.home_goals;
    const int fin_aggregate = leg1.home_goals + leg2.away_goals;
    if (y1_aggregate > fin_aggregate) return y1;
    if (y1_aggregate < fin_aggregate) return finalist;
    if (draw_rule == DrawRule::coin_flip) return rng.coin() ? y1 : finalist;
    return rank_of(b, y1) < rank_of(b, finalist) ? y1 : finalist;
}

std::string bracket_to_json(const Bracket& b, const OverlapCase& c) {
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& m : b.first_round) {
        rounds.push_back({{"round", "first"},
                          {"home", m.venue},
                          {"away", m.venue == m.high_seed ? m.low_seed : m.high_seed},
                          {"bye", nullptr}});
    }
    for (const auto& s : b.second_round) {
        if (s.is_team()) {
            rounds.push_back(
                {{"round", "first"}, {"home", nullptr}, {"away", nullptr}, {"bye", s.team}});
        }
    }
    const auto slot_token = [&](const Bracket::Slot& s) -> nlohmann::json {
        if (s.is_team()) return s.team;
        return "winner_of_first_round_" + std::to_string(s.winner_of + 1);
    };
    rounds.push_back({{"round", "second"},
                      {"home", slot_token(b.second_round[0])},
                      {"away", slot_token(b.second_round[1])},
                      {"bye", nullptr}});
    rounds.push_back({{"round", "championship"},
                      {"home", b.championship_seed},
                      {"away", "winner_of_second_round"},
                      {"bye", nullptr}});

    nlohmann::json j{{"case_id", c.case_id},
                     {"extra", extra_case_name(c.extra)},
                     {"team_count", team_count(c)},
                     {"rounds", rounds}};
    return j.dump();
}

}  // namespace lsim
