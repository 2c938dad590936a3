#pragma once

// Reader for the results CSV produced by emit_csv.

#include <array>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "truncalab/experiment.hpp"

namespace truncalab {

struct ResultRow {
    int candidates;
    std::int64_t voters;
    double phi;
    Rule rule;
    int ballot_length;
    std::int64_t trials;
    std::int64_t matches;
    double probability;
};

class CsvParseError : public std::runtime_error {
public:
    CsvParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

inline constexpr std::string_view kCsvHeader =
    "candidates,voters,phi,rule,ballot_length,trials,matches,probability";

template <typename T>
T parse_number(std::string_view field, int line, const char* what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw CsvParseError(line, std::string("invalid ") + what + " '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace detail

inline std::vector<ResultRow> parse_results_csv(std::string_view text) {
    std::vector<ResultRow> rows;
    int line_number = 0;
    bool seen_header = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        if (!seen_header) {
            if (line != detail::kCsvHeader) {
                throw CsvParseError(line_number, "unexpected header (want '" +
                                                     std::string(detail::kCsvHeader) + "')");
            }
            seen_header = true;
            continue;
        }

        std::array<std::string_view, 8> fields;
        std::size_t count = 0;
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            if (count == fields.size()) {
                throw CsvParseError(line_number, "too many fields");
            }
            fields[count++] = comma == std::string_view::npos ? rest : rest.substr(0, comma);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (count != fields.size()) {
            throw CsvParseError(line_number, "expected 8 fields");
        }

        ResultRow row{};
        row.candidates = detail::parse_number<int>(fields[0], line_number, "candidate count");
        row.voters = detail::parse_number<std::int64_t>(fields[1], line_number, "voter count");
        row.phi = detail::parse_number<double>(fields[2], line_number, "phi");
        const auto rule = parse_rule(fields[3]);
        if (!rule) {
            throw CsvParseError(line_number, "unknown rule '" + std::string(fields[3]) + "'");
        }
        row.rule = *rule;
        row.ballot_length = detail::parse_number<int>(fields[4], line_number, "ballot length");
        row.trials = detail::parse_number<std::int64_t>(fields[5], line_number, "trial count");
        row.matches = detail::parse_number<std::int64_t>(fields[6], line_number, "match count");
        row.probability = detail::parse_number<double>(fields[7], line_number, "probability");
        if (row.candidates < 1 || row.ballot_length < 1 || row.ballot_length > row.candidates) {
            throw CsvParseError(line_number, "ballot length out of range");
        }
        if (row.probability < 0.0 || row.probability > 1.0) {
            throw CsvParseError(line_number, "probability out of range");
        }
        rows.push_back(row);
    }
    if (!seen_header) {
        throw CsvParseError(1, "empty file");
    }
    return rows;
}

}  // namespace truncalab
