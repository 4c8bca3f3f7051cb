#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polypack/rational.hpp"

namespace polypack {

class ValueExceedsBest : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnknownInstance : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// team_value^2 / best_value^2, or 0 when best_value is 0.
Rational instance_score(std::int64_t team_value, std::int64_t best_value);

// Seconds since the Unix epoch (UTC) with optional fractional part kept
// exact, parsed from "YYYY-MM-DDTHH:MM:SS[.fff](Z|+hh:mm|-hh:mm)".
struct Instant {
    std::int64_t seconds = 0;
    std::int64_t nanos = 0;

    friend auto operator<=>(const Instant&, const Instant&) = default;
};

Instant parse_iso8601(std::string_view text);

struct SubmissionRecord {
    std::string team;
    std::string instance;
    std::int64_t value = 0;
    std::string timestamp;  // as given
    Instant at;
};

struct TeamStanding {
    std::string team;
    Rational total;
    // First instant at which the running total (against final bests)
    // reached the final total.
    std::optional<Instant> achieved_at;
    std::string achieved_at_text;
    std::map<std::string, Rational> per_instance;
    std::map<std::string, std::int64_t> best_values;
};

struct Leaderboard {
    std::vector<std::string> instances;  // sorted
    std::map<std::string, std::int64_t> best;  // B(I)
    std::vector<TeamStanding> ranking;  // best first
};

// Throws UnknownInstance when a record names an instance not in `instances`.
Leaderboard build_leaderboard(const std::vector<SubmissionRecord>& records, const std::vector<std::string>& instances);

// CSV rows: team,instance,value,timestamp[,solution_path]. A header row whose
// first field is "team" is skipped. Throws std::invalid_argument with the
// line number on malformed rows.
struct CsvRecord {
    SubmissionRecord record;
    std::string solution_path;
};
std::vector<CsvRecord> parse_records_csv(std::string_view text);

std::string leaderboard_to_json(const Leaderboard& board);
std::string leaderboard_table(const Leaderboard& board);

}  // namespace polypack
