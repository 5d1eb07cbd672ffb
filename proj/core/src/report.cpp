#include "lsim/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace lsim {

namespace {

constexpr ExtraCase kExtraKinds[] = {ExtraCase::double_winner_y2,
                                     ExtraCase::double_winner_y3,
                                     ExtraCase::double_winner_y4,
                                     ExtraCase::winner_excluded};

std::string prob4(double p) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.4f", p);
    return buf;
}

}  // namespace

std::string double_to_string(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string render_report_json(const SimReport& report) {
    nlohmann::json j;
    j["model"] = model_name(report.model);
    j["replications"] = report.replications;
    j["master_seed"] = report.master_seed;

    nlohmann::json cases, case_probs;
    for (int c = 1; c <= 8; ++c) {
        cases[std::to_string(c)] = report.case_counts[static_cast<std::size_t>(c)];
        case_probs[std::to_string(c)] = report.case_prob(c);
    }
    j["case_counts"] = cases;
    j["case_probabilities"] = case_probs;

    nlohmann::json extras;
    for (ExtraCase e : kExtraKinds) {
        extras[extra_case_name(e)] = report.extra_counts[static_cast<std::size_t>(e)];
    }
    j["extra_counts"] = extras;

    nlohmann::json tc, tcp;
    for (int k = 3; k <= 5; ++k) {
        tc[std::to_string(k)] = report.team_count_counts[static_cast<std::size_t>(k - 3)];
        tcp[std::to_string(k)] = report.team_count_prob(k);
    }
    j["team_count_counts"] = tc;
    j["team_count_probabilities"] = tcp;
    j["mean_team_count"] = report.mean_team_count();

    nlohmann::json teams = nlohmann::json::array();
    for (const TeamPointStats& t : report.per_team) {
        teams.push_back({{"team_id", t.team_id},
                         {"name", t.name},
                         {"mean_points", t.mean_points},
                         {"std_points", t.std_points}});
    }
    j["per_team"] = teams;

    if (!report.champion_counts.empty()) {
        nlohmann::json champs = nlohmann::json::array();
        for (std::size_t i = 0; i < report.champion_counts.size(); ++i) {
            champs.push_back({{"team_id", report.per_team[i].team_id},
                              {"name", report.per_team[i].name},
                              {"count", report.champion_counts[i]}});
        }
        j["champion_counts"] = champs;
    }
    return j.dump(2);
}

std::string render_report_table(const SimReport& report) {
    std::ostringstream out;
    char line[160];

    out << "model " << model_name(report.model) << ", " << report.replications
        << " replications, master seed " << report.master_seed << "\n\n";

    out << "teams reaching the postseason\n";
    out << "  teams  probability  cases\n";
    static const char* kCaseGroups[] = {"4, 6, 7, 8", "2, 3, 5", "1"};
    for (int k = 3; k <= 5; ++k) {
        std::snprintf(line, sizeof(line), "  %5d  %11s  %s\n", k,
                      prob4(report.team_count_prob(k)).c_str(), kCaseGroups[k - 3]);
        out << line;
    }
    std::snprintf(line, sizeof(line), "  %5s  %11.4f\n", "mean", report.mean_team_count());
    out << line;

    out << "\noverlap case probabilities\n";
    out << "  case  teams  probability\n";
    for (int c = 1; c <= 8; ++c) {
        std::snprintf(line, sizeof(line), "  %4d  %5d  %11s\n", c,
                      team_count(OverlapCase{c, ExtraCase::none, 0}),
                      prob4(report.case_prob(c)).c_str());
        out << line;
    }

    long long extra_total = 0;
    for (ExtraCase e : kExtraKinds) {
        extra_total += report.extra_counts[static_cast<std::size_t>(e)];
    }
    if (extra_total == 0) {
        out << "\nconfigurations outside the 8-case table: none\n";
    } else {
        out << "\nconfigurations outside the 8-case table\n";
        for (ExtraCase e : kExtraKinds) {
            const long long n = report.extra_counts[static_cast<std::size_t>(e)];
            if (n == 0) continue;
            std::snprintf(line, sizeof(line), "  %-18s  %10lld  %11s\n", extra_case_name(e),
                          n, prob4(report.extra_prob(e)).c_str());
            out << line;
        }
    }

    out << "\nper-team season points\n";
    out << "  team_id  name              mean     std\n";
    for (const TeamPointStats& t : report.per_team) {
        std::snprintf(line, sizeof(line), "  %7d  %-14s  %6.2f  %6.2f\n", t.team_id,
                      t.name.c_str(), t.mean_points, t.std_points);
        out << line;
    }

    if (!report.champion_counts.empty()) {
        out << "\nchampions (official bracket)\n";
        out << "  team_id  name              count  probability\n";
        for (std::size_t i = 0; i < report.champion_counts.size(); ++i) {
            const double p = static_cast<double>(report.champion_counts[i]) /
                             static_cast<double>(report.replications);
            std::snprintf(line, sizeof(line), "  %7d  %-14s  %5lld  %11s\n",
                          report.per_team[i].team_id, report.per_team[i].name.c_str(),
                          report.champion_counts[i], prob4(p).c_str());
            out << line;
        }
    }
    return out.str();
}

ReportCsv render_report_csv(const SimReport& report) {
    ReportCsv csv;
    std::ostringstream cases;
    cases << "case_id,count,probability\n";
    for (int c = 1; c <= 8; ++c) {
        cases << c << "," << report.case_counts[static_cast<std::size_t>(c)] << ","
              << double_to_string(report.case_prob(c)) << "\n";
    }
    for (ExtraCase e : kExtraKinds) {
        cases << extra_case_name(e) << ","
              << report.extra_counts[static_cast<std::size_t>(e)] << ","
              << double_to_string(report.extra_prob(e)) << "\n";
    }
    csv.cases_csv = cases.str();

    std::ostringstream tc;
    tc << "team_count,probability\n";
    for (int k = 3; k <= 5; ++k) {
        tc << k << "," << double_to_string(report.team_count_prob(k)) << "\n";
    }
    csv.team_count_csv = tc.str();
    return csv;
}

}  // namespace lsim
