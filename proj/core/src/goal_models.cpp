#include "lsim/goal_models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lsim {

namespace {

bool bad_rate(double lambda) { return !(lambda >= 0.0) || !std::isfinite(lambda); }

// Knuth's product-of-uniforms method; only safe while exp(-lambda) stays
// well above the double underflow threshold.
int sample_poisson_knuth(double lambda, rng::Stream& rng) {
    const double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.uniform();
    } while (p > limit);
    return k - 1;
}

}  // namespace

double poisson_pmf(double lambda, int x) {
    if (bad_rate(lambda)) {
        throw std::invalid_argument("poisson_pmf: lambda must be finite and >= 0");
    }
    if (x < 0) {
        throw std::invalid_argument("poisson_pmf: x must be >= 0");
    }
    if (lambda == 0.0) return x == 0 ? 1.0 : 0.0;
    return std::exp(-lambda + x * std::log(lambda) - std::lgamma(x + 1.0));
}

int sample_poisson(double lambda, rng::Stream& rng) {
    if (bad_rate(lambda)) {
        throw std::invalid_argument("sample_poisson: lambda must be finite and >= 0");
    }
    if (lambda == 0.0) return 0;
    // Po(a + b) = Po(a) + Po(b); chunking keeps exp(-lambda) in range.
    int total = 0;
    while (lambda > 30.0) {
        total += sample_poisson_knuth(30.0, rng);
        lambda -= 30.0;
    }
    return total + sample_poisson_knuth(lambda, rng);
}

MuPair match_mu(Model model, const TeamParams& home, const TeamParams& away,
                const LeagueParams& league, const RegressionCoeffs* coeffs) {
    if ((model == Model::M5) != (coeffs != nullptr)) {
        throw std::invalid_argument(model == Model::M5
                                        ? "match_mu: M5 requires regression coefficients"
                                        : "match_mu: coefficients are only valid with M5");
    }
    switch (model) {
        case Model::M1:
            return {league.lambda_all, league.lambda_all};
        case Model::M2:
            return {home.lambda_gf, away.lambda_gf};
        case Model::M3:
            return {(home.lambda_gf + away.lambda_ga) / 2.0,
                    (away.lambda_gf + home.lambda_ga) / 2.0};
        case Model::M4:
            return {(home.lambda_gf_h + away.lambda_ga_a) / 2.0,
                    (away.lambda_gf_a + home.lambda_ga_h) / 2.0};
        case Model::M5: {
            const auto predict = [&](double gf, double ga) {
                return std::max(0.0, coeffs->a1 * gf + coeffs->a2 * ga + coeffs->a3);
            };
            return {predict(home.lambda_gf, away.lambda_ga),
                    predict(away.lambda_gf, home.lambda_ga)};
        }
    }
    throw std::invalid_argument("match_mu: unknown model");
}

MatchScore sample_match(Model model, const TeamParams& home, const TeamParams& away,
                        const LeagueParams& league, const RegressionCoeffs* coeffs,
                        rng::Stream& rng) {
    const MuPair mu = match_mu(model, home, away, league, coeffs);
    return MatchScore{sample_poisson(mu.mu_home, rng), sample_poisson(mu.mu_away, rng)};
}

RegressionCoeffs fit_m5(std::span<const HistoryRecord> history, const FitOptions& options) {
    if (history.empty()) {
        throw std::invalid_argument("fit_m5: history is empty");
    }
    if (!(options.bin_width > 0.0) || !std::isfinite(options.bin_width)) {
        throw std::invalid_argument("fit_m5: bin_width must be > 0");
    }
    if (options.min_games_per_bin < 1) {
        throw std::invalid_argument("fit_m5: min_games_per_bin must be >= 1");
    }

    // Records grouped per cell and sorted before summation, so the fit is
    // bit-identical under any permutation of the history.
    const double w = options.bin_width;
    std::map<std::pair<long long, long long>, std::vector<std::array<double, 3>>> cells;
    for (const auto& rec : history) {
        if (bad_rate(rec.scorer_lambda_gf) || bad_rate(rec.opponent_lambda_ga) ||
            bad_rate(rec.goals)) {
            throw std::invalid_argument("fit_m5: rates and goals must be finite and >= 0");
        }
        const auto key = std::make_pair(
            static_cast<long long>(std::floor(rec.scorer_lambda_gf / w)),
            static_cast<long long>(std::floor(rec.opponent_lambda_ga / w)));
        cells[key].push_back({rec.scorer_lambda_gf, rec.opponent_lambda_ga, rec.goals});
    }

    // One regression point per surviving bin.
    std::vector<std::array<double, 3>> points;  // gf, ga, mean goals
    std::vector<double> weights;
    for (auto& [key, records] : cells) {
        const auto n = static_cast<long long>(records.size());
        if (n < options.min_games_per_bin) continue;
        std::sort(records.begin(), records.end());
        double sum_gf = 0.0, sum_ga = 0.0, sum_goals = 0.0;
        for (const auto& r : records) {
            sum_gf += r[0];
            sum_ga += r[1];
            sum_goals += r[2];
        }
        double gf, ga;
        if (options.representative == BinRepresentative::cell_center) {
            gf = (static_cast<double>(key.first) + 0.5) * w;
            ga = (static_cast<double>(key.second) + 0.5) * w;
        } else {
            gf = sum_gf / static_cast<double>(n);
            ga = sum_ga / static_cast<double>(n);
        }
        points.push_back({gf, ga, sum_goals / static_cast<double>(n)});
        weights.push_back(options.weight_by_count ? static_cast<double>(n) : 1.0);
    }

    if (points.size() < 3) {
        throw InsufficientDataError(
            "fit_m5: " + std::to_string(points.size()) + " of " +
            std::to_string(cells.size()) + " bins have at least " +
            std::to_string(options.min_games_per_bin) +
            " games; need 3 to determine the coefficients");
    }

    // Normal equations for mu = a1*gf + a2*ga + a3.
    double m[3][3] = {};
    double rhs[3] = {};
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double x[3] = {points[i][0], points[i][1], 1.0};
        const double y = points[i][2];
        const double wt = weights[i];
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += wt * x[r] * x[c];
            rhs[r] += wt * x[r] * y;
        }
    }

    // Gaussian elimination with partial pivoting.
    int index[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(m[index[r]][col]) > std::abs(m[index[pivot]][col])) pivot = r;
        }
        std::swap(index[col], index[pivot]);
        const double diag = m[index[col]][col];
        if (std::abs(diag) < 1e-12) {
            throw InsufficientDataError(
                "fit_m5: surviving bins are collinear; the normal equations are singular");
        }
        for (int r = col + 1; r < 3; ++r) {
            const double factor = m[index[r]][col] / diag;
            for (int c = col; c < 3; ++c) m[index[r]][c] -= factor * m[index[col]][c];
            rhs[index[r]] -= factor * rhs[index[col]];
        }
    }
    double beta[3];
    for (int col = 2; col >= 0; --col) {
        double acc = rhs[index[col]];
        for (int c = col + 1; c < 3; ++c) acc -= m[index[col]][c] * beta[c];
        beta[col] = acc / m[index[col]][col];
    }

    // r^2 of the fit over the bin points, unweighted.
    double mean_y = 0.0;
    for (const auto& p : points) mean_y += p[2];
    mean_y /= static_cast<double>(points.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (const auto& p : points) {
        const double pred = beta[0] * p[0] + beta[1] * p[1] + beta[2];
        ss_res += (p[2] - pred) * (p[2] - pred);
        ss_tot += (p[2] - mean_y) * (p[2] - mean_y);
    }
    double r2;
    if (ss_tot <= 0.0) {
        r2 = ss_res <= 1e-12 ? 1.0 : 0.0;
    } else {
        r2 = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
    }

    RegressionCoeffs out;
    out.a1 = beta[0];
    out.a2 = beta[1];
    out.a3 = beta[2];
    out.r_squared = r2;
    out.n_bins_used = static_cast<int>(points.size());
    return out;
}

}  // namespace lsim
