#pragma once

// Named ballot files. Format:
//
//   # comments run from '#' to end of line; blank lines are ignored
//   candidates: Alice Bob Carol
//   2: Alice > Bob > Carol
//   1: Carol
//
// The header names the candidates (declaration order defines their indices);
// each following line is `COUNT: Name1 > Name2 > ...`, possibly truncated.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "truncalab/ballots.hpp"

namespace truncalab {

struct NamedProfile {
    std::vector<std::string> names;  // index = candidate
    Profile profile;

    friend bool operator==(const NamedProfile&, const NamedProfile&) = default;
};

class ProfileParseError : public std::runtime_error {
public:
    ProfileParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

inline std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::string_view strip_comment(std::string_view s) {
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    return s;
}

}  // namespace detail

inline NamedProfile parse_profile_file(std::string_view text) {
    std::vector<std::string> names;
    std::unordered_map<std::string_view, Candidate> index_of;
    std::vector<WeightedBallot> ballots;
    bool have_header = false;
    int line_number = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                              : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_number;

        const std::string_view line = detail::strip(detail::strip_comment(raw));
        if (line.empty()) continue;

        if (!have_header) {
            constexpr std::string_view kHeader = "candidates:";
            if (!line.starts_with(kHeader)) {
                throw ProfileParseError(line_number,
                                        "expected 'candidates: Name1 Name2 ...' header");
            }
            std::string_view rest = line.substr(kHeader.size());
            while (true) {
                rest = detail::strip(rest);
                if (rest.empty()) break;
                auto cut = rest.find_first_of(" \t");
                std::string_view name = cut == std::string_view::npos ? rest : rest.substr(0, cut);
                rest = cut == std::string_view::npos ? std::string_view{} : rest.substr(cut);
                names.emplace_back(name);
            }
            if (names.empty()) {
                throw ProfileParseError(line_number, "header declares no candidates");
            }
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (!index_of.emplace(names[i], static_cast<Candidate>(i)).second) {
                    throw ProfileParseError(line_number,
                                            "duplicate candidate name '" + names[i] + "'");
                }
            }
            have_header = true;
            continue;
        }

        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw ProfileParseError(line_number, "expected 'COUNT: Name > Name > ...'");
        }
        const std::string count_text{detail::strip(line.substr(0, colon))};
        std::int64_t count = 0;
        try {
            std::size_t used = 0;
            count = std::stoll(count_text, &used);
            if (used != count_text.size()) throw std::invalid_argument(count_text);
        } catch (const std::exception&) {
            throw ProfileParseError(line_number, "invalid ballot count '" + count_text + "'");
        }
        if (count <= 0) {
            throw ProfileParseError(line_number, "ballot count must be positive");
        }

        Ranking::Storage order;
        std::vector<char> seen(names.size(), 0);
        std::string_view rest = line.substr(colon + 1);
        while (true) {
            const auto gt = rest.find('>');
            const std::string_view token =
                detail::strip(gt == std::string_view::npos ? rest : rest.substr(0, gt));
            if (token.empty()) {
                throw ProfileParseError(line_number, "empty candidate name in ranking");
            }
            const auto found = index_of.find(token);
            if (found == index_of.end()) {
                throw ProfileParseError(line_number,
                                        "unknown candidate '" + std::string(token) + "'");
            }
            if (seen[static_cast<std::size_t>(found->second)]) {
                throw ProfileParseError(line_number,
                                        "duplicate candidate '" + std::string(token) + "'");
            }
            seen[static_cast<std::size_t>(found->second)] = 1;
            order.push_back(found->second);
            if (gt == std::string_view::npos) break;
            rest = rest.substr(gt + 1);
        }
        ballots.push_back(
            {Ranking(std::move(order), static_cast<int>(names.size())), count});
    }

    if (!have_header) {
        throw ProfileParseError(1, "empty file: missing 'candidates:' header");
    }
    if (ballots.empty()) {
        throw ProfileParseError(line_number, "no ballot lines after the header");
    }
    return {std::move(names), Profile(static_cast<int>(names.size()), std::move(ballots))};
}

inline std::string write_profile_file(const NamedProfile& named) {
    detail::require(named.names.size() ==
                        static_cast<std::size_t>(named.profile.num_candidates()),
                    "write_profile_file: name count must match candidate count");
    std::string out = "candidates:";
    for (const std::string& name : named.names) {
        out.push_back(' ');
        out += name;
    }
    out.push_back('\n');
    for (const WeightedBallot& b : named.profile.ballots()) {
        out += std::to_string(b.multiplicity);
        out += ":";
        bool first = true;
        for (Candidate c : b.ranking.ordered()) {
            out += first ? " " : " > ";
            first = false;
            out += named.names[static_cast<std::size_t>(c)];
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace truncalab
