#include "lsim/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace lsim {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

struct Reader {
    std::istream& in;
    const std::string& source;
    int line_no = 0;

    bool next_line(std::string& line) {
        while (std::getline(in, line)) {
            ++line_no;
            if (!trim(line).empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(source, line_no, msg);
    }

    void expect_header(const std::string& expected) {
        std::string line;
        if (!next_line(line)) {
            throw ParseError(source, 1, "empty file, expected header '" + expected + "'");
        }
        std::string got;
        for (const auto& f : split_fields(line)) {
            if (!got.empty()) got += ",";
            got += f;
        }
        if (got != expected) {
            fail("expected header '" + expected + "', got '" + got + "'");
        }
    }

    long long parse_int(const std::string& field, const char* what) const {
        long long v = 0;
        const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
        if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
            fail(std::string("cannot parse ") + what + " from '" + field + "'");
        }
        return v;
    }

    double parse_rate(const std::string& field, const char* what) const {
        double v = 0.0;
        const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
        if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
            fail(std::string("cannot parse ") + what + " from '" + field + "'");
        }
        if (!(v >= 0.0) || !std::isfinite(v)) {
            fail(std::string(what) + " must be finite and >= 0, got '" + field + "'");
        }
        return v;
    }

    void want_fields(const std::vector<std::string>& fields, std::size_t n) const {
        if (fields.size() != n) {
            fail("expected " + std::to_string(n) + " fields, got " +
                 std::to_string(fields.size()));
        }
    }
};

}  // namespace

LeagueParams read_team_params_csv(std::istream& in, const std::string& source) {
    Reader r{in, source};
    r.expect_header(
        "team_id,name,lambda_gf,lambda_ga,lambda_gf_h,lambda_gf_a,lambda_ga_h,lambda_ga_a");

    LeagueParams league;
    std::string line;
    while (r.next_line(line)) {
        const auto fields = split_fields(line);
        r.want_fields(fields, 8);
        TeamParams t;
        t.team_id = static_cast<TeamId>(r.parse_int(fields[0], "team_id"));
        t.name = fields[1];
        t.lambda_gf = r.parse_rate(fields[2], "lambda_gf");
        t.lambda_ga = r.parse_rate(fields[3], "lambda_ga");
        t.lambda_gf_h = r.parse_rate(fields[4], "lambda_gf_h");
        t.lambda_gf_a = r.parse_rate(fields[5], "lambda_gf_a");
        t.lambda_ga_h = r.parse_rate(fields[6], "lambda_ga_h");
        t.lambda_ga_a = r.parse_rate(fields[7], "lambda_ga_a");
        for (const auto& seen : league.teams) {
            if (seen.team_id == t.team_id) {
                r.fail("duplicate team_id " + std::to_string(t.team_id));
            }
        }
        league.teams.push_back(std::move(t));
    }
    if (league.teams.empty()) {
        throw ParseError(source, r.line_no + 1, "no team rows");
    }
    return league;
}

std::vector<HistoryRecord> read_history_csv(std::istream& in, const std::string& source) {
    Reader r{in, source};
    r.expect_header("scorer_lambda_gf,opponent_lambda_ga,goals");

    std::vector<HistoryRecord> records;
    std::string line;
    while (r.next_line(line)) {
        const auto fields = split_fields(line);
        r.want_fields(fields, 3);
        HistoryRecord rec;
        rec.scorer_lambda_gf = r.parse_rate(fields[0], "scorer_lambda_gf");
        rec.opponent_lambda_ga = r.parse_rate(fields[1], "opponent_lambda_ga");
        rec.goals = r.parse_rate(fields[2], "goals");
        records.push_back(rec);
    }
    if (records.empty()) {
        throw ParseError(source, r.line_no + 1, "no history rows");
    }
    return records;
}

SeasonSchedule read_schedule_csv(std::istream& in, const std::string& source) {
    Reader r{in, source};
    r.expect_header("stage,round,home_id,away_id");

    SeasonSchedule schedule;
    TeamId max_id = -1;
    std::string line;
    while (r.next_line(line)) {
        const auto fields = split_fields(line);
        r.want_fields(fields, 4);
        Fixture f;
        f.stage = static_cast<int>(r.parse_int(fields[0], "stage"));
        f.round = static_cast<int>(r.parse_int(fields[1], "round"));
        f.home = static_cast<TeamId>(r.parse_int(fields[2], "home_id"));
        f.away = static_cast<TeamId>(r.parse_int(fields[3], "away_id"));
        if (f.home < 0 || f.away < 0) {
            r.fail("team ids must be >= 0");
        }
        max_id = std::max({max_id, f.home, f.away});
        schedule.fixtures.push_back(f);
    }
    if (schedule.fixtures.empty()) {
        throw ParseError(source, r.line_no + 1, "no fixture rows");
    }
    schedule.n_teams = max_id + 1;
    return schedule;
}

void write_schedule_csv(std::ostream& out, const SeasonSchedule& schedule) {
    out << "stage,round,home_id,away_id\n";
    for (const Fixture& f : schedule.fixtures) {
        out << f.stage << "," << f.round << "," << f.home << "," << f.away << "\n";
    }
}

void write_table_csv(std::ostream& out, const std::vector<TableRow>& table) {
    out << "rank,team_id,played,w,d,l,gf,ga,gd,points\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
        const TableRow& row = table[i];
        out << (i + 1) << "," << row.team_id << "," << row.played << "," << row.wins << ","
            << row.draws << "," << row.losses << "," << row.goals_for << ","
            << row.goals_against << "," << row.goal_diff() << "," << row.points << "\n";
    }
}

}  // namespace lsim
