#include "lsim/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_set>

namespace lsim {

const char* model_name(Model m) {
    switch (m) {
        case Model::M1: return "m1";
        case Model::M2: return "m2";
        case Model::M3: return "m3";
        case Model::M4: return "m4";
        case Model::M5: return "m5";
    }
    return "m1";
}

Model model_from_name(const std::string& name) {
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "m1") return Model::M1;
    if (lower == "m2") return Model::M2;
    if (lower == "m3") return Model::M3;
    if (lower == "m4") return Model::M4;
    if (lower == "m5") return Model::M5;
    throw std::invalid_argument("unknown model '" + name + "', expected m1..m5");
}

void LeagueParams::validate() const {
    const auto check_rate = [](double v, const std::string& what) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(what + " must be finite and >= 0");
        }
    };
    check_rate(lambda_all, "lambda_all");
    std::unordered_set<TeamId> seen;
    for (const auto& t : teams) {
        const std::string tag = "team " + std::to_string(t.team_id);
        if (!seen.insert(t.team_id).second) {
            throw std::invalid_argument("duplicate team_id " + std::to_string(t.team_id));
        }
        check_rate(t.lambda_gf, tag + " lambda_gf");
        check_rate(t.lambda_ga, tag + " lambda_ga");
        check_rate(t.lambda_gf_h, tag + " lambda_gf_h");
        check_rate(t.lambda_gf_a, tag + " lambda_gf_a");
        check_rate(t.lambda_ga_h, tag + " lambda_ga_h");
        check_rate(t.lambda_ga_a, tag + " lambda_ga_a");
    }
}

}  // namespace lsim
