#pragma once

#include <string>

#include "lsim/montecarlo.hpp"

namespace lsim {

// Full-precision JSON report (schema in docs/report-schema.md). The output
// is byte-deterministic for a given SimReport.
std::string render_report_json(const SimReport& report);

// Human-readable table, probabilities rounded to 4 decimal places.
std::string render_report_table(const SimReport& report);

struct ReportCsv {
    std::string cases_csv;       // case_id,count,probability
    std::string team_count_csv;  // team_count,probability
};

ReportCsv render_report_csv(const SimReport& report);

// Shortest round-trip decimal representation of a double.
std::string double_to_string(double v);

}  // namespace lsim
