#pragma once

// Command-line front end: `simulate` runs the truncation sweep and writes the
// results CSV, `evaluate` applies the rules to one ballot file, and `plot`
// renders grouped SVG charts from a results CSV.
//
// Exit codes: 0 success, 1 output/write failure, 2 invalid input.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "truncalab/experiment.hpp"
#include "truncalab/profile_io.hpp"
#include "truncalab/svg_plot.hpp"

namespace truncalab::cli {

namespace detail {

inline std::optional<std::string> read_file(const std::string& path, std::string& contents) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "cannot open '" + path + "'";
    std::ostringstream buffer;
    buffer << in.rdbuf();
    contents = buffer.str();
    return std::nullopt;
}

inline std::optional<std::vector<Rule>> parse_rules(const std::vector<std::string>& names,
                                                    std::ostream& err) {
    std::vector<Rule> rules;
    for (const std::string& name : names) {
        const auto rule = parse_rule(name);
        if (!rule) {
            err << "error: unknown rule '" << name
                << "' (expected bucklin, coombs, plurality_runoff, or schulze)\n";
            return std::nullopt;
        }
        rules.push_back(*rule);
    }
    return rules;
}

inline std::optional<int> parse_workers(const std::string& text, std::ostream& err) {
    if (text == "single") return 1;
    try {
        std::size_t used = 0;
        const int value = std::stoi(text, &used);
        if (used == text.size() && value >= 1) return value;
    } catch (const std::exception&) {
    }
    err << "error: --workers expects a positive integer or 'single'\n";
    return std::nullopt;
}

}  // namespace detail

struct SimulateArgs {
    std::vector<int> candidates{4, 5, 6, 7};
    std::vector<std::int64_t> voters{100, 200, 300, 400, 500, 600, 2000};
    std::vector<double> phis{0.7, 0.8, 0.9, 1.0};
    int trials = 1000;
    std::uint64_t seed = 42;
    std::vector<std::string> rules{"bucklin", "coombs", "plurality_runoff", "schulze"};
    std::string out = "results.csv";
    std::string store_profiles;
    std::string workers;
};

inline int run_simulate(const SimulateArgs& args, std::ostream&, std::ostream& err) {
    GridConfig config;
    config.candidate_counts = args.candidates;
    config.voter_counts = args.voters;
    config.phis = args.phis;
    config.trials = args.trials;
    config.master_seed = Seed{args.seed};
    const auto rules = detail::parse_rules(args.rules, err);
    if (!rules) return 2;
    config.rules = *rules;
    config.store_profiles = !args.store_profiles.empty();
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    int workers = 0;
    if (args.workers.empty()) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    } else {
        const auto parsed = detail::parse_workers(args.workers, err);
        if (!parsed) return 2;
        workers = *parsed;
    }

    std::ofstream dump;
    RunOptions options;
    options.workers = workers;
    if (config.store_profiles) {
        dump.open(args.store_profiles, std::ios::app);
        if (!dump) {
            err << "error: cannot open profile dump '" << args.store_profiles << "'\n";
            return 1;
        }
        options.profile_sink = &dump;
    }
    options.progress = [&err](int done, int total, int m, std::int64_t n, double phi) {
        char line[96];
        std::snprintf(line, sizeof line, "[%d/%d] m=%d n=%lld phi=%.2f\n", done, total, m,
                      static_cast<long long>(n), phi);
        err << line;
    };

    const ResultTable table = run_grid(config, options);
    if (config.store_profiles && !dump.good()) {
        err << "error: failed writing profile dump '" << args.store_profiles << "'\n";
        return 1;
    }

    std::ofstream csv(args.out, std::ios::binary);
    if (!csv) {
        err << "error: cannot open output '" << args.out << "'\n";
        return 1;
    }
    csv << emit_csv(table);
    csv.flush();
    if (!csv.good()) {
        err << "error: failed writing '" << args.out << "'\n";
        return 1;
    }
    err << "wrote " << args.out << " (" << table.cells.size() << " rows, seed " << args.seed
        << ")\n";
    return 0;
}

struct EvaluateArgs {
    std::string profile_path;
    std::vector<std::string> rules{"bucklin", "coombs", "plurality_runoff", "schulze"};
    std::optional<int> truncate;
};

inline int run_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
    std::string text;
    if (const auto failure = detail::read_file(args.profile_path, text)) {
        err << "error: " << *failure << "\n";
        return 2;
    }
    const auto rules = detail::parse_rules(args.rules, err);
    if (!rules) return 2;
    if (args.truncate && *args.truncate < 1) {
        err << "error: --truncate must be at least 1\n";
        return 2;
    }

    try {
        NamedProfile named = parse_profile_file(text);
        const Profile profile =
            args.truncate ? named.profile.truncated(*args.truncate) : named.profile;
        for (Rule rule : kAllRules) {
            if (std::find(rules->begin(), rules->end(), rule) == rules->end()) continue;
            const WinningSet winners = apply_rule(rule, profile);
            std::vector<std::string> names;
            for (Candidate c : winners) names.push_back(named.names[static_cast<std::size_t>(c)]);
            std::sort(names.begin(), names.end());
            out << rule_name(rule) << ": {";
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (i > 0) out << ",";
                out << names[i];
            }
            out << "}\n";
        }
    } catch (const ProfileParseError& e) {
        err << "error: " << args.profile_path << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

struct PlotArgs {
    std::string in_path;
    std::string out_dir = ".";
    std::string group_by = "all";
};

inline int run_plot(const PlotArgs& args, std::ostream&, std::ostream& err) {
    std::string text;
    if (const auto failure = detail::read_file(args.in_path, text)) {
        err << "error: " << *failure << "\n";
        return 2;
    }
    const auto group_by = parse_group_by(args.group_by);
    if (!group_by) {
        err << "error: --group-by expects all, voters, phi, or candidates\n";
        return 2;
    }

    std::vector<ResultRow> rows;
    try {
        rows = parse_results_csv(text);
    } catch (const CsvParseError& e) {
        err << "error: " << args.in_path << ": " << e.what() << "\n";
        return 2;
    }
    if (rows.empty()) {
        err << "error: " << args.in_path << ": no data rows to plot\n";
        return 2;
    }

    std::error_code ec;
    std::filesystem::create_directories(args.out_dir, ec);
    if (ec) {
        err << "error: cannot create directory '" << args.out_dir << "': " << ec.message() << "\n";
        return 1;
    }
    for (const PlotGroup& group : group_results(rows, *group_by)) {
        const std::filesystem::path path =
            std::filesystem::path(args.out_dir) / (group.key + ".svg");
        std::ofstream svg(path, std::ios::binary);
        if (!svg) {
            err << "error: cannot open '" << path.string() << "'\n";
            return 1;
        }
        svg << render_svg(group);
        svg.flush();
        if (!svg.good()) {
            err << "error: failed writing '" << path.string() << "'\n";
            return 1;
        }
        err << "wrote " << path.string() << "\n";
    }
    return 0;
}

inline int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo study of forced ballot truncation for ranked voting rules"};
    app.name("truncalab");
    app.require_subcommand(1);

    SimulateArgs sim_args;
    CLI::App* sim = app.add_subcommand(
        "simulate", "Run the truncation sweep over a (candidates, voters, phi) grid");
    sim->add_option("--candidates", sim_args.candidates, "Candidate counts")
        ->delimiter(',');
    sim->add_option("--voters", sim_args.voters, "Voter counts")->delimiter(',');
    sim->add_option("--phi", sim_args.phis, "Mallows dispersion values in [0,1]")
        ->delimiter(',');
    sim->add_option("--trials", sim_args.trials, "Profiles per grid cell");
    sim->add_option("--seed", sim_args.seed, "Master seed (64-bit)");
    sim->add_option("--rules", sim_args.rules, "Rules to evaluate")->delimiter(',');
    sim->add_option("--out", sim_args.out, "Output CSV path");
    sim->add_option("--store-profiles", sim_args.store_profiles,
                    "Append every sampled profile to this file");
    sim->add_option("--workers", sim_args.workers, "Worker threads (number or 'single')")
        ->envname("TRUNCALAB_WORKERS");

    EvaluateArgs eval_args;
    CLI::App* eval = app.add_subcommand("evaluate", "Evaluate the rules on one ballot file");
    eval->add_option("--profile", eval_args.profile_path, "Ballot file")->required();
    eval->add_option("--rules", eval_args.rules, "Rules to evaluate")->delimiter(',');
    eval->add_option("--truncate", eval_args.truncate,
                     "Truncate every ballot to this length first");

    PlotArgs plot_args;
    CLI::App* plot = app.add_subcommand("plot", "Render SVG charts from a results CSV");
    plot->add_option("--in", plot_args.in_path, "Results CSV")->required();
    plot->add_option("--out", plot_args.out_dir, "Output directory");
    plot->add_option("--group-by", plot_args.group_by, "all, voters, phi, or candidates");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (sim->parsed()) return run_simulate(sim_args, out, err);
    if (eval->parsed()) return run_evaluate(eval_args, out, err);
    if (plot->parsed()) return run_plot(plot_args, out, err);
    err << "error: no subcommand\n";
    return 2;
}

inline int run_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(std::move(args), std::cout, std::cerr);
}

}  // namespace truncalab::cli
