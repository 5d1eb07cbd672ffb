#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsim {

using TeamId = std::int32_t;

inline constexpr TeamId kNoTeam = -1;

// Match-score generation models. M1 treats every team alike, M2 adds
// per-team attack rates, M3 blends attack and defence, M4 adds home/away
// splits, M5 predicts the mean from a fitted linear regression.
enum class Model { M1, M2, M3, M4, M5 };

const char* model_name(Model m);
Model model_from_name(const std::string& name);  // throws std::invalid_argument

// Final score of one match.
struct MatchScore {
    int home_goals = 0;
    int away_goals = 0;

    bool operator==(const MatchScore&) const = default;
};

// Per-team scoring rates, all in goals per game.
struct TeamParams {
    TeamId team_id = kNoTeam;
    std::string name;
    double lambda_gf = 0.0;    // scored, any venue
    double lambda_ga = 0.0;    // conceded, any venue
    double lambda_gf_h = 0.0;  // scored at home
    double lambda_gf_a = 0.0;  // scored away
    double lambda_ga_h = 0.0;  // conceded at home
    double lambda_ga_a = 0.0;  // conceded away
};

struct LeagueParams {
    double lambda_all = 0.0;  // league-wide goals per game per team
    std::vector<TeamParams> teams;

    // Throws std::invalid_argument naming the offending team or field.
    void validate() const;
};

// Result of the M5 binned least-squares fit:
// mu(gf, ga) = a1*gf + a2*ga + a3.
struct RegressionCoeffs {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double r_squared = 0.0;
    int n_bins_used = 0;
};

// One past observation for the M5 fit. Goals may be fractional when the
// input is pre-aggregated.
struct HistoryRecord {
    double scorer_lambda_gf = 0.0;
    double opponent_lambda_ga = 0.0;
    double goals = 0.0;
};

// Thrown when the M5 fit has too few surviving bins to determine the
// regression coefficients.
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lsim
