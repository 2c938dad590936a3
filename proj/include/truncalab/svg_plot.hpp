#pragma once

// Grouped line charts over the results CSV, rendered as standalone SVG.
// Hand-emitted markup with fixed formatting keeps the byte output stable
// for identical input.

#include <cstdio>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "truncalab/results_io.hpp"

namespace truncalab {

enum class GroupBy { All, Voters, Phi, Candidates };

inline std::optional<GroupBy> parse_group_by(std::string_view name) {
    if (name == "all") return GroupBy::All;
    if (name == "voters") return GroupBy::Voters;
    if (name == "phi") return GroupBy::Phi;
    if (name == "candidates") return GroupBy::Candidates;
    return std::nullopt;
}

struct PlotGroup {
    std::string key;    // file stem, e.g. "all", "voters_100", "phi_0.70"
    std::string title;
    std::vector<ResultRow> rows;
};

namespace detail {

inline std::string format_phi(double phi) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", phi);
    return buf;
}

}  // namespace detail

/// Splits rows into one plot per group value, ascending. GroupBy::All yields
/// a single group holding every row.
inline std::vector<PlotGroup> group_results(std::span<const ResultRow> rows, GroupBy group_by) {
    if (group_by == GroupBy::All) {
        PlotGroup all{"all", "all simulations", {rows.begin(), rows.end()}};
        return {std::move(all)};
    }
    std::map<double, PlotGroup> groups;
    for (const ResultRow& row : rows) {
        switch (group_by) {
            case GroupBy::Voters: {
                auto& g = groups[static_cast<double>(row.voters)];
                if (g.rows.empty()) {
                    g.key = "voters_" + std::to_string(row.voters);
                    g.title = std::to_string(row.voters) + " voters";
                }
                g.rows.push_back(row);
                break;
            }
            case GroupBy::Phi: {
                auto& g = groups[row.phi];
                if (g.rows.empty()) {
                    g.key = "phi_" + detail::format_phi(row.phi);
                    g.title = "phi = " + detail::format_phi(row.phi);
                }
                g.rows.push_back(row);
                break;
            }
            case GroupBy::Candidates: {
                auto& g = groups[static_cast<double>(row.candidates)];
                if (g.rows.empty()) {
                    g.key = "candidates_" + std::to_string(row.candidates);
                    g.title = std::to_string(row.candidates) + " candidates";
                }
                g.rows.push_back(row);
                break;
            }
            case GroupBy::All: break;
        }
    }
    std::vector<PlotGroup> out;
    out.reserve(groups.size());
    for (auto& [key, group] : groups) out.push_back(std::move(group));
    return out;
}

namespace detail {

inline constexpr std::string_view plot_color(Rule rule) {
    switch (rule) {
        case Rule::Coombs: return "blue";
        case Rule::Bucklin: return "red";
        case Rule::PluralityRunoff: return "yellow";
        case Rule::Schulze: return "green";
    }
    return "black";
}

inline std::string format_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace detail

/// One chart: x = ballot length L (ascending from 1), y = probability that
/// the truncated winning set equals the true one, one polyline per rule.
/// Each point averages the rows of the group at that rule and L, with equal
/// weight per row.
inline std::string render_svg(const PlotGroup& group) {
    detail::require(!group.rows.empty(), "render_svg: group has no rows");

    // 800x500 viewport with 10% margins.
    constexpr double kWidth = 800.0, kHeight = 500.0;
    constexpr double kMarginX = 80.0, kMarginY = 50.0;
    const double plot_w = kWidth - 2 * kMarginX;
    const double plot_h = kHeight - 2 * kMarginY;

    int max_length = 1;
    for (const ResultRow& row : group.rows) max_length = std::max(max_length, row.ballot_length);

    const auto x_of = [&](int length) {
        if (max_length == 1) return kMarginX + plot_w / 2;
        return kMarginX + plot_w * (length - 1) / (max_length - 1);
    };
    const auto y_of = [&](double p) { return kHeight - kMarginY - p * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n";
    svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    svg += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">true winning set retention &#8212; " +
           group.title + "</text>\n";

    // Gridlines and y ticks at 0.0 .. 1.0.
    for (int tick = 0; tick <= 5; ++tick) {
        const double p = tick / 5.0;
        const std::string y = detail::format_coord(y_of(p));
        svg += "<line x1=\"" + detail::format_coord(kMarginX) + "\" y1=\"" + y + "\" x2=\"" +
               detail::format_coord(kWidth - kMarginX) + "\" y2=\"" + y +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + detail::format_coord(kMarginX - 8) + "\" y=\"" + y +
               "\" text-anchor=\"end\" dominant-baseline=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"12\">" +
               detail::format_coord(p) + "</text>\n";
    }
    // X ticks at each ballot length.
    for (int length = 1; length <= max_length; ++length) {
        const std::string x = detail::format_coord(x_of(length));
        svg += "<line x1=\"" + x + "\" y1=\"" + detail::format_coord(kHeight - kMarginY) +
               "\" x2=\"" + x + "\" y2=\"" + detail::format_coord(kHeight - kMarginY + 6) +
               "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + x + "\" y=\"" + detail::format_coord(kHeight - kMarginY + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               std::to_string(length) + "</text>\n";
    }
    // Axes.
    svg += "<line x1=\"" + detail::format_coord(kMarginX) + "\" y1=\"" +
           detail::format_coord(kMarginY) + "\" x2=\"" + detail::format_coord(kMarginX) +
           "\" y2=\"" + detail::format_coord(kHeight - kMarginY) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + detail::format_coord(kMarginX) + "\" y1=\"" +
           detail::format_coord(kHeight - kMarginY) + "\" x2=\"" +
           detail::format_coord(kWidth - kMarginX) + "\" y2=\"" +
           detail::format_coord(kHeight - kMarginY) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"400\" y=\"" + detail::format_coord(kHeight - 8) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">ballot length "
           "(L)</text>\n";
    svg += "<text x=\"20\" y=\"250\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 20 250)\">probability of true winning "
           "set</text>\n";

    // One averaged polyline per rule present in the group.
    double legend_y = kMarginY + 16;
    for (Rule rule : kAllRules) {
        std::vector<double> sum(static_cast<std::size_t>(max_length), 0.0);
        std::vector<int> count(static_cast<std::size_t>(max_length), 0);
        for (const ResultRow& row : group.rows) {
            if (row.rule != rule) continue;
            sum[static_cast<std::size_t>(row.ballot_length - 1)] += row.probability;
            count[static_cast<std::size_t>(row.ballot_length - 1)] += 1;
        }
        std::string points;
        for (int length = 1; length <= max_length; ++length) {
            if (count[static_cast<std::size_t>(length - 1)] == 0) continue;
            const double mean = sum[static_cast<std::size_t>(length - 1)] /
                                count[static_cast<std::size_t>(length - 1)];
            if (!points.empty()) points.push_back(' ');
            points += detail::format_coord(x_of(length)) + "," + detail::format_coord(y_of(mean));
        }
        if (points.empty()) continue;
        const std::string color{detail::plot_color(rule)};
        svg += "<polyline fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
        // Legend entry.
        const std::string lx = detail::format_coord(kWidth - kMarginX - 170);
        const std::string ly = detail::format_coord(legend_y);
        svg += "<line x1=\"" + lx + "\" y1=\"" + ly + "\" x2=\"" +
               detail::format_coord(kWidth - kMarginX - 140) + "\" y2=\"" + ly + "\" stroke=\"" +
               color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + detail::format_coord(kWidth - kMarginX - 132) + "\" y=\"" + ly +
               "\" dominant-baseline=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               std::string(rule_name(rule)) + "</text>\n";
        legend_y += 16;
    }

    svg += "<text x=\"400\" y=\"" + detail::format_coord(kHeight - kMarginY + 36) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
           "fill=\"#555555\">each point averages the group's cells at that L, equal weight per "
           "cell</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace truncalab
