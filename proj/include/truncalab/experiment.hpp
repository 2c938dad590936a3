#pragma once

// The truncation-sweep experiment: for every (candidates, voters, phi) cell,
// sample `trials` Mallows profiles, compute each rule's true winning set on
// the complete profile, then re-run every rule at each ballot length L and
// count exact winning-set matches.
//
// Trials are embarrassingly parallel. Every trial owns an RNG stream derived
// from (master seed, cell index, trial index), and aggregation is integer
// addition, so the result table is bit-identical for any worker count.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "truncalab/ballots.hpp"
#include "truncalab/mallows.hpp"
#include "truncalab/rules.hpp"

namespace truncalab {

inline constexpr std::string_view kVersion = "1.0.0";

enum class Rule { Bucklin, Coombs, PluralityRunoff, Schulze };

inline constexpr std::array<Rule, 4> kAllRules{Rule::Bucklin, Rule::Coombs,
                                               Rule::PluralityRunoff, Rule::Schulze};

inline std::string_view rule_name(Rule rule) {
    switch (rule) {
        case Rule::Bucklin: return "bucklin";
        case Rule::Coombs: return "coombs";
        case Rule::PluralityRunoff: return "plurality_runoff";
        case Rule::Schulze: return "schulze";
    }
    return "unknown";
}

inline std::optional<Rule> parse_rule(std::string_view name) {
    for (Rule r : kAllRules) {
        if (rule_name(r) == name) return r;
    }
    return std::nullopt;
}

inline WinningSet apply_rule(Rule rule, const Profile& profile) {
    switch (rule) {
        case Rule::Bucklin: return bucklin_adapted(profile);
        case Rule::Coombs: return coombs_adapted(profile);
        case Rule::PluralityRunoff: return plurality_with_runoff(profile);
        case Rule::Schulze: return schulze_beat_path(profile);
    }
    throw std::invalid_argument("apply_rule: unknown rule");
}

/// Parameter grid for one sweep. Defaults reproduce the full study grid.
struct GridConfig {
    std::vector<int> candidate_counts{4, 5, 6, 7};
    std::vector<std::int64_t> voter_counts{100, 200, 300, 400, 500, 600, 2000};
    std::vector<double> phis{0.7, 0.8, 0.9, 1.0};
    int trials = 1000;
    Seed master_seed{42};
    std::vector<Rule> rules{kAllRules.begin(), kAllRules.end()};
    bool store_profiles = false;

    void validate() const {
        detail::require(!candidate_counts.empty(), "GridConfig: candidate_counts is empty");
        detail::require(!voter_counts.empty(), "GridConfig: voter_counts is empty");
        detail::require(!phis.empty(), "GridConfig: phis is empty");
        detail::require(!rules.empty(), "GridConfig: rules is empty");
        detail::require(trials >= 1, "GridConfig: trials must be positive");
        for (int m : candidate_counts) {
            detail::require(m >= 1, "GridConfig: candidate counts must be positive");
        }
        for (std::int64_t n : voter_counts) {
            detail::require(n >= 1, "GridConfig: voter counts must be positive");
        }
        for (double phi : phis) {
            detail::require(phi >= 0.0 && phi <= 1.0, "GridConfig: phi must lie in [0, 1]");
        }
        auto no_dupes = [](auto list, const char* msg) {
            std::sort(list.begin(), list.end());
            detail::require(std::adjacent_find(list.begin(), list.end()) == list.end(), msg);
        };
        no_dupes(candidate_counts, "GridConfig: duplicate candidate count");
        no_dupes(voter_counts, "GridConfig: duplicate voter count");
        no_dupes(phis, "GridConfig: duplicate phi");
        no_dupes(rules, "GridConfig: duplicate rule");
    }
};

/// One row of the result table: match count for a (cell, rule, L) triple.
struct CellResult {
    int candidates;
    std::int64_t voters;
    double phi;
    Rule rule;
    int ballot_length;
    std::int64_t trials;
    std::int64_t matches;

    double probability() const {
        return trials > 0 ? static_cast<double>(matches) / static_cast<double>(trials) : 0.0;
    }
};

struct ResultTable {
    GridConfig config;
    std::vector<CellResult> cells;
    std::string build_id;
    std::string timestamp;  // provenance only; never serialized into the CSV
};

/// Match flags for a single sampled profile: match_flags[rule][L-1] says
/// whether the rule's winning set at ballot length L equals its true set.
/// L = m is the true set itself and is defined true.
struct TrialResult {
    std::vector<std::vector<char>> match_flags;
    Profile profile;
    MallowsParams params;
};

inline TrialResult run_trial(int num_candidates, std::int64_t num_voters, double phi,
                             std::span<const Rule> rules, Seed seed) {
    Rng rng(seed);
    auto [profile, params] = sample_profile(num_candidates, num_voters, phi, rng);

    std::vector<WinningSet> true_sets;
    true_sets.reserve(rules.size());
    for (Rule rule : rules) true_sets.push_back(apply_rule(rule, profile));

    const int m = num_candidates;
    std::vector<std::vector<char>> flags(rules.size(),
                                         std::vector<char>(static_cast<std::size_t>(m), 0));
    for (std::size_t i = 0; i < rules.size(); ++i) flags[i][static_cast<std::size_t>(m - 1)] = 1;

    Profile current = profile;
    for (int length = m - 1; length >= 1; --length) {
        current = current.truncated(length).compacted();
        for (std::size_t i = 0; i < rules.size(); ++i) {
            flags[i][static_cast<std::size_t>(length - 1)] =
                apply_rule(rules[i], current) == true_sets[i];
        }
    }
    return {std::move(flags), std::move(profile), std::move(params)};
}

namespace detail {

inline std::string ranking_to_string(const Ranking& ranking) {
    std::string out;
    for (Candidate c : ranking.ordered()) {
        if (!out.empty()) out.push_back('>');
        out += std::to_string(c);
    }
    return out;
}

}  // namespace detail

/// One line of the optional profile dump:
/// m,n,phi,trial_index,reference_ranking,ballot:multiplicity;...
inline std::string format_profile_record(int num_candidates, std::int64_t num_voters, double phi,
                                         int trial_index, const MallowsParams& params,
                                         const Profile& profile) {
    char head[96];
    std::snprintf(head, sizeof head, "%d,%lld,%.2f,%d,", num_candidates,
                  static_cast<long long>(num_voters), phi, trial_index);
    std::string out = head;
    out += detail::ranking_to_string(params.reference);
    out.push_back(',');
    bool first = true;
    for (const WeightedBallot& b : profile.ballots()) {
        if (!first) out.push_back(';');
        first = false;
        out += detail::ranking_to_string(b.ranking);
        out.push_back(':');
        out += std::to_string(b.multiplicity);
    }
    out.push_back('\n');
    return out;
}

struct RunOptions {
    int workers = 1;
    std::ostream* profile_sink = nullptr;  // used when config.store_profiles
    std::function<void(int cells_done, int cells_total, int candidates, std::int64_t voters,
                       double phi)>
        progress;
};

namespace detail {

inline std::string utc_timestamp_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace detail

inline ResultTable run_grid(const GridConfig& config, const RunOptions& options = {}) {
    config.validate();
    const int workers = std::max(1, options.workers);
    const auto& rules = config.rules;
    const bool dump = config.store_profiles && options.profile_sink != nullptr;

    ResultTable table;
    table.config = config;
    table.build_id = std::string("truncalab ") + std::string(kVersion);
    table.timestamp = detail::utc_timestamp_now();

    const int cells_total = static_cast<int>(config.candidate_counts.size() *
                                             config.voter_counts.size() * config.phis.size());
    std::uint64_t cell_index = 0;
    int cells_done = 0;
    for (int m : config.candidate_counts) {
        for (std::int64_t n : config.voter_counts) {
            for (double phi : config.phis) {
                std::vector<std::vector<std::int64_t>> counts(
                    rules.size(), std::vector<std::int64_t>(static_cast<std::size_t>(m), 0));
                std::vector<std::string> records(dump ? static_cast<std::size_t>(config.trials)
                                                      : 0);

                auto worker_body = [&](std::atomic<int>& next,
                                       std::vector<std::vector<std::int64_t>>& local) {
                    for (;;) {
                        const int t = next.fetch_add(1, std::memory_order_relaxed);
                        if (t >= config.trials) break;
                        const Seed seed = derive_seed(config.master_seed, cell_index,
                                                      static_cast<std::uint64_t>(t));
                        TrialResult result = run_trial(m, n, phi, rules, seed);
                        for (std::size_t r = 0; r < rules.size(); ++r) {
                            for (int length = 1; length <= m; ++length) {
                                local[r][static_cast<std::size_t>(length - 1)] +=
                                    result.match_flags[r][static_cast<std::size_t>(length - 1)];
                            }
                        }
                        if (dump) {
                            records[static_cast<std::size_t>(t)] = format_profile_record(
                                m, n, phi, t, result.params, result.profile);
                        }
                    }
                };

                std::atomic<int> next_trial{0};
                if (workers == 1) {
                    worker_body(next_trial, counts);
                } else {
                    std::vector<std::vector<std::vector<std::int64_t>>> locals(
                        static_cast<std::size_t>(workers), counts);
                    std::vector<std::thread> pool;
                    pool.reserve(static_cast<std::size_t>(workers));
                    for (int w = 0; w < workers; ++w) {
                        pool.emplace_back(
                            [&, w] { worker_body(next_trial, locals[static_cast<std::size_t>(w)]); });
                    }
                    for (std::thread& th : pool) th.join();
                    for (const auto& local : locals) {
                        for (std::size_t r = 0; r < rules.size(); ++r) {
                            for (int l = 0; l < m; ++l) {
                                counts[r][static_cast<std::size_t>(l)] +=
                                    local[r][static_cast<std::size_t>(l)];
                            }
                        }
                    }
                }

                if (dump) {
                    for (const std::string& record : records) *options.profile_sink << record;
                }
                for (std::size_t r = 0; r < rules.size(); ++r) {
                    for (int length = 1; length <= m; ++length) {
                        table.cells.push_back({m, n, phi, rules[r], length,
                                               static_cast<std::int64_t>(config.trials),
                                               counts[r][static_cast<std::size_t>(length - 1)]});
                    }
                }
                ++cell_index;
                ++cells_done;
                if (options.progress) options.progress(cells_done, cells_total, m, n, phi);
            }
        }
    }
    return table;
}

/// Long-format CSV, sorted by (candidates, voters, phi, rule, ballot_length).
inline std::string emit_csv(const ResultTable& table) {
    std::vector<CellResult> rows(table.cells);
    std::sort(rows.begin(), rows.end(), [](const CellResult& a, const CellResult& b) {
        if (a.candidates != b.candidates) return a.candidates < b.candidates;
        if (a.voters != b.voters) return a.voters < b.voters;
        if (a.phi != b.phi) return a.phi < b.phi;
        if (const auto an = rule_name(a.rule), bn = rule_name(b.rule); an != bn) return an < bn;
        return a.ballot_length < b.ballot_length;
    });
    std::string out = "candidates,voters,phi,rule,ballot_length,trials,matches,probability\n";
    char buf[160];
    for (const CellResult& row : rows) {
        std::snprintf(buf, sizeof buf, "%d,%lld,%.2f,%.*s,%d,%lld,%lld,%.4f\n", row.candidates,
                      static_cast<long long>(row.voters), row.phi,
                      static_cast<int>(rule_name(row.rule).size()), rule_name(row.rule).data(),
                      row.ballot_length, static_cast<long long>(row.trials),
                      static_cast<long long>(row.matches), row.probability());
        out += buf;
    }
    return out;
}

}  // namespace truncalab
