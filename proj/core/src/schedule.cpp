#include "lsim/schedule.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <utility>

#include "lsim/rng.hpp"

namespace lsim {

namespace {

// Unordered pairs for one stage, grouped in circle-method rounds.
// Team n-1 sits fixed, the others rotate.
std::vector<std::vector<std::pair<int, int>>> circle_rounds(int n) {
    std::vector<std::vector<std::pair<int, int>>> rounds;
    rounds.reserve(n - 1);
    for (int r = 0; r < n - 1; ++r) {
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(n / 2);
        pairs.emplace_back(n - 1, r);
        for (int i = 1; i < n / 2; ++i) {
            const int a = (r + i) % (n - 1);
            const int b = (r - i + (n - 1)) % (n - 1);
            pairs.emplace_back(a, b);
        }
        rounds.push_back(std::move(pairs));
    }
    return rounds;
}

// Near-regular orientation of the complete graph on n (even) vertices:
// every vertex hosts n/2-1 or n/2 of its n-1 pairings. Vertices are
// placed on a circle; i hosts j when j is within the next n/2-1 steps
// clockwise, and "diameter" pairs are hosted by the lower index.
std::vector<std::vector<char>> canonical_orientation(int n) {
    std::vector<std::vector<char>> home(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const int d = (j - i + n) % n;
            if (d < n / 2) {
                home[i][j] = 1;
            } else if (d == n / 2) {
                home[i][j] = (i < n / 2) ? 1 : 0;
            }
        }
    }
    return home;
}

// Seeded shuffle of the orientation: relabel vertices by a random
// permutation, then apply random 3-cycle reversals, which preserve every
// vertex's home count.
void randomize_orientation(std::vector<std::vector<char>>& home, int n, rng::Stream& rng) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(perm[i], perm[j]);
    }
    std::vector<std::vector<char>> relabeled(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) relabeled[i][j] = home[perm[i]][perm[j]];
    home = std::move(relabeled);

    const int attempts = 2 * n * n;
    for (int k = 0; k < attempts; ++k) {
        const int a = static_cast<int>(rng.below(n));
        const int b = static_cast<int>(rng.below(n));
        const int c = static_cast<int>(rng.below(n));
        if (a == b || b == c || a == c) continue;
        if (home[a][b] && home[b][c] && home[c][a]) {
            home[a][b] = home[b][c] = home[c][a] = 0;
            home[b][a] = home[c][b] = home[a][c] = 1;
        }
    }
}

}  // namespace

SeasonSchedule generate_season_schedule(int n_teams, std::uint64_t home_assignment_seed) {
    if (n_teams < 4 || n_teams > 64 || n_teams % 2 != 0) {
        throw std::invalid_argument("n_teams must be even and in [4, 64], got " +
                                    std::to_string(n_teams));
    }

    auto rng = rng::Stream::seeded(home_assignment_seed);
    auto home = canonical_orientation(n_teams);
    randomize_orientation(home, n_teams, rng);

    const auto rounds = circle_rounds(n_teams);
    SeasonSchedule schedule;
    schedule.n_teams = n_teams;
    schedule.fixtures.reserve(n_teams * (n_teams - 1));
    for (int stage = 1; stage <= 2; ++stage) {
        for (int r = 0; r < static_cast<int>(rounds.size()); ++r) {
            for (const auto& [a, b] : rounds[r]) {
                const bool a_home_s1 = home[a][b] != 0;
                const bool a_home = (stage == 1) ? a_home_s1 : !a_home_s1;
                schedule.fixtures.push_back(Fixture{
                    stage, r + 1,
                    a_home ? a : b,
                    a_home ? b : a,
                });
            }
        }
    }
    return schedule;
}

std::vector<std::string> validate_schedule(const SeasonSchedule& schedule) {
    std::vector<std::string> violations;
    const int n = schedule.n_teams;

    if (n < 4 || n % 2 != 0) {
        violations.push_back("n_teams must be even and >= 4, got " + std::to_string(n));
        return violations;
    }

    const int per_stage = n * (n - 1) / 2;
    int stage_count[2] = {0, 0};
    // home count per team per stage, and pair occurrence per stage
    std::vector<std::array<int, 2>> home_count(n, {0, 0});
    std::map<std::pair<int, int>, std::array<int, 2>> pair_count;
    // stage-1 home team per pair, to check venue complementarity
    std::map<std::pair<int, int>, std::array<TeamId, 2>> pair_home;

    for (const auto& f : schedule.fixtures) {
        if (f.stage != 1 && f.stage != 2) {
            violations.push_back("fixture has stage " + std::to_string(f.stage) +
                                 ", expected 1 or 2");
            continue;
        }
        if (f.home == f.away) {
            violations.push_back("team " + std::to_string(f.home) +
                                 " is scheduled against itself");
            continue;
        }
        if (f.home < 0 || f.home >= n || f.away < 0 || f.away >= n) {
            violations.push_back("fixture references team outside [0, " +
                                 std::to_string(n - 1) + "]: " + std::to_string(f.home) +
                                 " vs " + std::to_string(f.away));
            continue;
        }
        if (f.round < 1 || f.round > n - 1) {
            violations.push_back("fixture round " + std::to_string(f.round) +
                                 " outside [1, " + std::to_string(n - 1) + "]");
        }
        const int s = f.stage - 1;
        ++stage_count[s];
        ++home_count[f.home][s];
        const auto key = std::minmax(f.home, f.away);
        ++pair_count[{key.first, key.second}][s];
        pair_home[{key.first, key.second}][s] = f.home;
    }

    for (int s = 0; s < 2; ++s) {
        if (stage_count[s] != per_stage) {
            violations.push_back("stage " + std::to_string(s + 1) + " has " +
                                 std::to_string(stage_count[s]) + " fixtures, expected " +
                                 std::to_string(per_stage));
        }
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto it = pair_count.find({i, j});
            const int c1 = it == pair_count.end() ? 0 : (*it).second[0];
            const int c2 = it == pair_count.end() ? 0 : (*it).second[1];
            for (int s = 0; s < 2; ++s) {
                const int c = s == 0 ? c1 : c2;
                if (c != 1) {
                    violations.push_back("stage " + std::to_string(s + 1) + ": pair (" +
                                         std::to_string(i) + "," + std::to_string(j) +
                                         ") appears " + std::to_string(c) +
                                         " times, expected 1");
                }
            }
            if (c1 == 1 && c2 == 1) {
                const auto& homes = pair_home[{i, j}];
                if (homes[0] == homes[1]) {
                    violations.push_back("pair (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") has team " +
                                         std::to_string(homes[0]) +
                                         " at home in both stages");
                }
            }
        }
    }

    const int lo = (n - 1) / 2;
    const int hi = n / 2;
    for (int t = 0; t < n; ++t) {
        for (int s = 0; s < 2; ++s) {
            const int c = home_count[t][s];
            if (c < lo || c > hi) {
                violations.push_back("stage " + std::to_string(s + 1) + ": team " +
                                     std::to_string(t) + " has " + std::to_string(c) +
                                     " home games, expected " + std::to_string(lo) +
                                     " or " + std::to_string(hi));
            }
        }
        const int total = home_count[t][0] + home_count[t][1];
        if (total != n - 1) {
            violations.push_back("team " + std::to_string(t) + " has " +
                                 std::to_string(total) +
                                 " home games over both stages, expected " +
                                 std::to_string(n - 1));
        }
    }

    return violations;
}

}  // namespace lsim
