#pragma once

#include <span>

#include "lsim/rng.hpp"
#include "lsim/types.hpp"

namespace lsim {

// Poisson probability mass e^(-lambda) * lambda^x / x!, evaluated in log
// space. Throws std::invalid_argument for negative lambda or x.
double poisson_pmf(double lambda, int x);

// Draws from Po(lambda). Throws std::invalid_argument for negative or
// non-finite lambda.
int sample_poisson(double lambda, rng::Stream& rng);

struct MuPair {
    double mu_home = 0.0;
    double mu_away = 0.0;
};

// Expected goals for both sides of one match under the chosen model:
//   M1: (lambda_all, lambda_all)
//   M2: (home gf, away gf)
//   M3: mean of the attacker's gf and the defender's ga
//   M4: as M3 with the home/away split rates
//   M5: a1*gf + a2*ga + a3 in both directions, clamped at 0
// coeffs must be present exactly when model is M5.
MuPair match_mu(Model model, const TeamParams& home, const TeamParams& away,
                const LeagueParams& league, const RegressionCoeffs* coeffs);

// Samples a match score: both sides drawn independently from Po(mu).
MatchScore sample_match(Model model, const TeamParams& home, const TeamParams& away,
                        const LeagueParams& league, const RegressionCoeffs* coeffs,
                        rng::Stream& rng);

// Which lambda representative each surviving bin contributes to the
// regression: the geometric cell center, or the mean of the lambdas that
// fell into the cell.
enum class BinRepresentative { cell_center, cell_mean };

struct FitOptions {
    double bin_width = 0.4;
    int min_games_per_bin = 30;
    BinRepresentative representative = BinRepresentative::cell_center;
    bool weight_by_count = false;  // weight bins by game count in the fit
};

// Bins the (gf, ga) plane into bin_width squares anchored at 0, averages
// goals per bin, discards bins with fewer than min_games_per_bin records,
// and fits mu = a1*gf + a2*ga + a3 by least squares over the surviving
// bins. Throws InsufficientDataError when fewer than 3 bins survive or the
// surviving bins are collinear; std::invalid_argument on bad inputs.
RegressionCoeffs fit_m5(std::span<const HistoryRecord> history, const FitOptions& options = {});

}  // namespace lsim
