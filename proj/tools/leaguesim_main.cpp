// leaguesim: two-stage league season simulator with a five-team postseason.
//
// Subcommands:
//   simulate  run replicated seasons and report overlap-case statistics
//   fit       binned least-squares fit of the regression goal model
//   classify  classify one standings scenario and print both brackets
//   schedule  generate or validate a two-stage round-robin schedule

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lsim/csv.hpp"
#include "lsim/goal_models.hpp"
#include "lsim/montecarlo.hpp"
#include "lsim/postseason.hpp"
#include "lsim/report.hpp"
#include "lsim/schedule.hpp"
#include "lsim/standings.hpp"
#include "lsim/types.hpp"
#include "lsim/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitInsufficientData = 4;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Reads a whole file; throws lsim::ParseError so the caller maps it to
// exit 3 like any other input-file problem.
std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw lsim::ParseError(path, 0, "cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct ManifestBuilder {
    std::string subcommand;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json config = nlohmann::json::object();
    std::uint64_t master_seed = 0;

    void add_input(const std::string& path, const std::string& bytes) {
        inputs[path] = hex64(fnv1a64(bytes));
    }

    nlohmann::json finish() const {
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        return nlohmann::json{{"tool_version", lsim::kVersion},
                              {"subcommand", subcommand},
                              {"master_seed", master_seed},
                              {"inputs", inputs},
                              {"config", config},
                              {"duration_ms", elapsed.count()}};
    }
};

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string model = "m1";
    std::string teams_file;
    double lambda_all = -1.0;  // <0 means "not given"
    int n_teams = 18;
    long long reps = 100000;
    std::optional<std::uint64_t> seed;
    int workers = 1;
    std::string coeffs_file;
    bool exclude_low_winners = false;
    bool fixed_schedule = false;
    bool champions = false;
    std::string draw_rule = "rank";
    std::string emit = "table";
    std::string out_dir;
};

lsim::RegressionCoeffs read_coeffs_json(const std::string& path) {
    const std::string bytes = slurp_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw lsim::ParseError(path, 1, std::string("invalid JSON: ") + e.what());
    }
    lsim::RegressionCoeffs c;
    try {
        c.a1 = j.at("a1").get<double>();
        c.a2 = j.at("a2").get<double>();
        c.a3 = j.at("a3").get<double>();
        c.r_squared = j.value("r_squared", 0.0);
        c.n_bins_used = j.value("n_bins_used", 0);
    } catch (const nlohmann::json::exception& e) {
        throw lsim::ParseError(path, 1, std::string("missing coefficient field: ") + e.what());
    }
    return c;
}

int run_simulate(const SimulateArgs& args) {
    ManifestBuilder manifest;
    manifest.subcommand = "simulate";

    const lsim::Model model = lsim::model_from_name(args.model);

    if (model == lsim::Model::M5 && args.coeffs_file.empty()) {
        std::cerr << "error: model m5 requires --coeffs FILE\n";
        return kExitUsage;
    }
    if (model != lsim::Model::M5 && !args.coeffs_file.empty()) {
        std::cerr << "error: --coeffs is only valid with --model m5\n";
        return kExitUsage;
    }
    if (args.teams_file.empty() && model != lsim::Model::M1) {
        std::cerr << "error: --model " << args.model << " requires --teams FILE\n";
        return kExitUsage;
    }
    if (args.teams_file.empty() && args.lambda_all < 0.0) {
        std::cerr << "error: m1 without --teams requires --lambda-all\n";
        return kExitUsage;
    }

    lsim::SimConfig cfg;
    cfg.model = model;
    cfg.n_replications = args.reps;
    cfg.master_seed = args.seed ? *args.seed : entropy_seed();
    cfg.n_workers = args.workers;
    cfg.exclude_low_winners = args.exclude_low_winners;
    cfg.fixed_schedule = args.fixed_schedule;
    cfg.track_champions = args.champions;
    cfg.draw_rule =
        args.draw_rule == "coin" ? lsim::DrawRule::coin_flip : lsim::DrawRule::higher_rank;

    if (!args.teams_file.empty()) {
        const std::string bytes = slurp_file(args.teams_file);
        manifest.add_input(args.teams_file, bytes);
        std::istringstream in(bytes);
        cfg.league = lsim::read_team_params_csv(in, args.teams_file);
        if (args.lambda_all >= 0.0) {
            cfg.league.lambda_all = args.lambda_all;
        } else {
            double sum = 0.0;
            for (const auto& t : cfg.league.teams) sum += t.lambda_gf;
            cfg.league.lambda_all = sum / static_cast<double>(cfg.league.teams.size());
        }
    } else {
        cfg.league.lambda_all = args.lambda_all;
        for (int i = 0; i < args.n_teams; ++i) {
            lsim::TeamParams t;
            t.team_id = i;
            char name[16];
            std::snprintf(name, sizeof(name), "T%02d", i + 1);
            t.name = name;
            t.lambda_gf = t.lambda_ga = args.lambda_all;
            t.lambda_gf_h = t.lambda_gf_a = args.lambda_all;
            t.lambda_ga_h = t.lambda_ga_a = args.lambda_all;
            cfg.league.teams.push_back(std::move(t));
        }
    }

    if (!args.coeffs_file.empty()) {
        cfg.coeffs = read_coeffs_json(args.coeffs_file);
        manifest.add_input(args.coeffs_file, slurp_file(args.coeffs_file));
    }

    manifest.master_seed = cfg.master_seed;
    manifest.config = {{"model", args.model},
                       {"replications", cfg.n_replications},
                       {"workers", cfg.n_workers},
                       {"lambda_all", cfg.league.lambda_all},
                       {"n_teams", cfg.league.teams.size()},
                       {"exclude_low_winners", cfg.exclude_low_winners},
                       {"fixed_schedule", cfg.fixed_schedule},
                       {"champions", cfg.track_champions},
                       {"draw_rule", args.draw_rule},
                       {"emit", args.emit}};

    const lsim::SimReport report = lsim::run_simulation(cfg);

    if (!args.out_dir.empty()) {
        const std::filesystem::path dir(args.out_dir);
        std::filesystem::create_directories(dir);
        write_file(dir / "report.json", lsim::render_report_json(report) + "\n");
        write_file(dir / "report.txt", lsim::render_report_table(report));
        const lsim::ReportCsv csv = lsim::render_report_csv(report);
        write_file(dir / "report_cases.csv", csv.cases_csv);
        write_file(dir / "report_teamcount.csv", csv.team_count_csv);
        write_file(dir / "manifest.json", manifest.finish().dump(2) + "\n");
        std::cerr << "wrote " << dir.string() << "\n";
    } else {
        if (args.emit == "json") {
            std::cout << lsim::render_report_json(report) << "\n";
        } else if (args.emit == "csv") {
            const lsim::ReportCsv csv = lsim::render_report_csv(report);
            std::cout << csv.cases_csv << "\n" << csv.team_count_csv;
        } else {
            std::cout << lsim::render_report_table(report);
        }
        std::cerr << manifest.finish().dump(2) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
    std::string history_file;
    double bin_width = 0.4;
    int min_games = 30;
    std::string representative = "center";
    bool weighted = false;
    std::string out_file;
};

int run_fit(const FitArgs& args) {
    ManifestBuilder manifest;
    manifest.subcommand = "fit";

    if (!(args.bin_width > 0.0)) {
        std::cerr << "error: --bin-width must be > 0\n";
        return kExitUsage;
    }
    if (args.min_games < 1) {
        std::cerr << "error: --min-games must be >= 1\n";
        return kExitUsage;
    }

    const std::string bytes = slurp_file(args.history_file);
    manifest.add_input(args.history_file, bytes);
    std::istringstream in(bytes);
    const std::vector<lsim::HistoryRecord> history =
        lsim::read_history_csv(in, args.history_file);

    lsim::FitOptions options;
    options.bin_width = args.bin_width;
    options.min_games_per_bin = args.min_games;
    options.representative = args.representative == "mean"
                                 ? lsim::BinRepresentative::cell_mean
                                 : lsim::BinRepresentative::cell_center;
    options.weight_by_count = args.weighted;

    const lsim::RegressionCoeffs coeffs = lsim::fit_m5(history, options);

    manifest.config = {{"history", args.history_file},
                       {"bin_width", args.bin_width},
                       {"min_games", args.min_games},
                       {"representative", args.representative},
                       {"weighted", args.weighted}};

    const nlohmann::json out{{"a1", coeffs.a1},
                             {"a2", coeffs.a2},
                             {"a3", coeffs.a3},
                             {"r_squared", coeffs.r_squared},
                             {"n_bins_used", coeffs.n_bins_used},
                             {"bin_width", args.bin_width},
                             {"min_games_per_bin", args.min_games},
                             {"representative", args.representative},
                             {"weighted", args.weighted}};
    if (!args.out_file.empty()) {
        write_file(args.out_file, out.dump(2) + "\n");
    } else {
        std::cout << out.dump(2) << "\n";
    }
    std::cerr << manifest.finish().dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyArgs {
    std::vector<lsim::TeamId> total_ranks;
    lsim::TeamId stage1_winner = lsim::kNoTeam;
    lsim::TeamId stage2_winner = lsim::kNoTeam;
};

int run_classify(const ClassifyArgs& args) {
    if (args.total_ranks.size() < 4) {
        std::cerr << "error: --total-ranks needs at least 4 team ids\n";
        return kExitUsage;
    }
    const auto rank_of = [&args](lsim::TeamId t) -> int {
        for (std::size_t i = 0; i < args.total_ranks.size(); ++i) {
            if (args.total_ranks[i] == t) return static_cast<int>(i) + 1;
        }
        return 0;
    };
    for (std::size_t i = 0; i < args.total_ranks.size(); ++i) {
        for (std::size_t j = i + 1; j < args.total_ranks.size(); ++j) {
            if (args.total_ranks[i] == args.total_ranks[j]) {
                std::cerr << "error: duplicate team id " << args.total_ranks[i]
                          << " in --total-ranks\n";
                return kExitUsage;
            }
        }
    }
    const int r1 = rank_of(args.stage1_winner);
    const int r2 = rank_of(args.stage2_winner);
    if (r1 == 0 || r2 == 0) {
        std::cerr << "error: stage winners must appear in --total-ranks\n";
        return kExitUsage;
    }

    lsim::QualifierSet q;
    q.y1 = args.total_ranks[0];
    q.y2 = args.total_ranks[1];
    q.y3 = args.total_ranks[2];
    const bool s1_first = r1 <= r2;
    q.w1 = s1_first ? args.stage1_winner : args.stage2_winner;
    q.w1_total_rank = s1_first ? r1 : r2;
    q.w2 = s1_first ? args.stage2_winner : args.stage1_winner;
    q.w2_total_rank = s1_first ? r2 : r1;

    const lsim::OverlapCase oc = lsim::classify_overlap(q);
    const lsim::Bracket official = lsim::build_bracket_official(q, oc);
    const lsim::Bracket proposed = lsim::build_bracket_proposed(q);
    const bool equal = lsim::same_structure(official, proposed);

    if (oc.case_id > 0) {
        std::cout << "case " << oc.case_id;
    } else {
        std::cout << "extra " << lsim::extra_case_name(oc.extra);
    }
    std::cout << ", " << lsim::team_count(oc) << " teams, brackets "
              << (equal ? "equivalent" : "DIFFERENT") << "\n";
    std::cout << "official: " << lsim::bracket_to_json(official, oc) << "\n";
    std::cout << "proposed: " << lsim::bracket_to_json(proposed, oc) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// schedule

struct ScheduleArgs {
    int n_teams = 18;
    std::optional<std::uint64_t> seed;
    std::string out_file;
    std::string validate_file;
};

int run_schedule(const ScheduleArgs& args) {
    if (!args.validate_file.empty()) {
        const std::string bytes = slurp_file(args.validate_file);
        std::istringstream in(bytes);
        const lsim::SeasonSchedule schedule =
            lsim::read_schedule_csv(in, args.validate_file);
        const std::vector<std::string> violations = lsim::validate_schedule(schedule);
        if (violations.empty()) {
            std::cout << "schedule valid: 0 violations\n";
        } else {
            std::cout << "schedule invalid: " << violations.size() << " violations\n";
            for (const auto& v : violations) std::cout << "  " << v << "\n";
        }
        return kExitOk;
    }

    ManifestBuilder manifest;
    manifest.subcommand = "schedule";
    manifest.master_seed = args.seed ? *args.seed : entropy_seed();
    manifest.config = {{"n_teams", args.n_teams}};

    const lsim::SeasonSchedule schedule =
        lsim::generate_season_schedule(args.n_teams, manifest.master_seed);
    const std::vector<std::string> violations = lsim::validate_schedule(schedule);

    if (!args.out_file.empty()) {
        std::ostringstream csv;
        lsim::write_schedule_csv(csv, schedule);
        write_file(args.out_file, csv.str());
    } else {
        lsim::write_schedule_csv(std::cout, schedule);
    }
    std::cerr << "validation: " << violations.size() << " violations\n";
    for (const auto& v : violations) std::cerr << "  " << v << "\n";
    std::cerr << manifest.finish().dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-stage league season simulator"};
    app.set_version_flag("--version", lsim::kVersion);
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "run replicated seasons and report postseason statistics");
    simulate->add_option("--model", sim.model, "goal model, m1..m5")->required();
    simulate->add_option("--teams", sim.teams_file, "team parameter CSV");
    simulate->add_option("--lambda-all", sim.lambda_all,
                         "league-wide goals per game per team (m1)");
    simulate->add_option("--n-teams", sim.n_teams,
                         "team count when no --teams file is given");
    simulate->add_option("--reps", sim.reps, "number of season replications");
    simulate->add_option("--seed", sim.seed, "master seed; omitted = from entropy");
    simulate->add_option("--workers", sim.workers, "worker threads");
    simulate->add_option("--coeffs", sim.coeffs_file, "regression coefficients JSON (m5)");
    simulate->add_flag("--exclude-low-winners", sim.exclude_low_winners,
                       "drop stage winners ranked in the bottom three");
    simulate->add_flag("--fixed-schedule", sim.fixed_schedule,
                       "reuse one schedule for every replication");
    simulate->add_flag("--champions", sim.champions,
                       "also play out the official bracket each season");
    simulate->add_option("--draw-rule", sim.draw_rule, "knockout draw resolution")
        ->transform(CLI::IsMember({"rank", "coin"}));
    simulate->add_option("--emit", sim.emit, "stdout format")
        ->transform(CLI::IsMember({"json", "csv", "table"}));
    simulate->add_option("--out", sim.out_dir, "write report and manifest files here");

    FitArgs fit;
    CLI::App* fit_cmd =
        app.add_subcommand("fit", "fit the regression goal model on binned history");
    fit_cmd->add_option("--history", fit.history_file, "history CSV")->required();
    fit_cmd->add_option("--bin-width", fit.bin_width, "bin width on both lambda axes");
    fit_cmd->add_option("--min-games", fit.min_games, "minimum games per surviving bin");
    fit_cmd->add_option("--representative", fit.representative,
                        "bin regressor: cell center or in-cell mean")
        ->transform(CLI::IsMember({"center", "mean"}));
    fit_cmd->add_flag("--weighted", fit.weighted, "weight bins by game count");
    fit_cmd->add_option("--out", fit.out_file, "write coefficients JSON here");

    ClassifyArgs cls;
    CLI::App* classify =
        app.add_subcommand("classify", "classify a standings scenario and print brackets");
    classify->add_option("--total-ranks", cls.total_ranks,
                         "team ids in total-points order, best first")
        ->required()
        ->delimiter(',');
    classify->add_option("--stage1-winner", cls.stage1_winner, "stage 1 winning team id")
        ->required();
    classify->add_option("--stage2-winner", cls.stage2_winner, "stage 2 winning team id")
        ->required();

    ScheduleArgs sched;
    CLI::App* schedule =
        app.add_subcommand("schedule", "generate or validate a two-stage schedule");
    schedule->add_option("--teams", sched.n_teams, "even team count in [4, 64]");
    schedule->add_option("--seed", sched.seed, "home-assignment seed");
    schedule->add_option("--out", sched.out_file, "write schedule CSV here");
    schedule->add_option("--validate", sched.validate_file,
                         "validate an existing schedule CSV instead of generating");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(simulate)) return run_simulate(sim);
        if (app.got_subcommand(fit_cmd)) return run_fit(fit);
        if (app.got_subcommand(classify)) return run_classify(cls);
        if (app.got_subcommand(schedule)) return run_schedule(sched);
    } catch (const lsim::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const lsim::InsufficientDataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInsufficientData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}
