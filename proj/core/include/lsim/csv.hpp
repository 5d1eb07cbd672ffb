#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsim/schedule.hpp"
#include "lsim/standings.hpp"
#include "lsim/types.hpp"

namespace lsim {

// Malformed input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, int line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// header: team_id,name,lambda_gf,lambda_ga,lambda_gf_h,lambda_gf_a,lambda_ga_h,lambda_ga_a
// lambda_all is not part of the file; the caller supplies it or derives it
// from the mean lambda_gf.
LeagueParams read_team_params_csv(std::istream& in, const std::string& source);

// header: scorer_lambda_gf,opponent_lambda_ga,goals
std::vector<HistoryRecord> read_history_csv(std::istream& in, const std::string& source);

// header: stage,round,home_id,away_id  (0-based team ids)
// n_teams is inferred from the highest id; invariant violations are left
// for validate_schedule to report.
SeasonSchedule read_schedule_csv(std::istream& in, const std::string& source);
void write_schedule_csv(std::ostream& out, const SeasonSchedule& schedule);

// header: rank,team_id,played,w,d,l,gf,ga,gd,points
void write_table_csv(std::ostream& out, const std::vector<TableRow>& table);

}  // namespace lsim
