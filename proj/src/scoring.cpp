#include "polypack/scoring.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"

namespace polypack {

Rational instance_score(std::int64_t team_value, std::int64_t best_value) {
    if (team_value < 0 || best_value < 0) throw std::invalid_argument("values must be non-negative");
    if (team_value > best_value) {
        throw ValueExceedsBest("team value " + std::to_string(team_value) + " exceeds best value " + std::to_string(best_value));
    }
    if (best_value == 0) return 0;
    Rational r = make_rational(team_value, best_value);
    return r * r;
}

namespace {

int digits(std::string_view s, std::size_t pos, std::size_t count) {
    if (pos + count > s.size()) throw std::invalid_argument("truncated timestamp");
    int v = 0;
    for (std::size_t i = pos; i < pos + count; ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad digit in timestamp");
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

// Days since 1970-01-01 in the proleptic Gregorian calendar.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void expect(std::string_view s, std::size_t pos, char c) {
    if (pos >= s.size() || s[pos] != c) throw std::invalid_argument("malformed timestamp");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& f : out) {
        auto b = f.find_first_not_of(" \t\r");
        auto e = f.find_last_not_of(" \t\r");
        f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
    }
    return out;
}

}  // namespace

Instant parse_iso8601(std::string_view s) {
    try {
        int year = digits(s, 0, 4);
        expect(s, 4, '-');
        int month = digits(s, 5, 2);
        expect(s, 7, '-');
        int day = digits(s, 8, 2);
        if (s.size() <= 10 || (s[10] != 'T' && s[10] != 't' && s[10] != ' ')) throw std::invalid_argument("missing time");
        int hour = digits(s, 11, 2);
        expect(s, 13, ':');
        int minute = digits(s, 14, 2);
        expect(s, 16, ':');
        int second = digits(s, 17, 2);
        static constexpr int kMonthDays[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
        if (month < 1 || month > 12 || day < 1 || day > kMonthDays[month - 1] || hour > 23 || minute > 59 || second > 60) {
            throw std::invalid_argument("field out of range");
        }
        std::size_t pos = 19;
        std::int64_t nanos = 0;
        if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
            ++pos;
            int count = 0;
            while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
                if (count < 9) nanos = nanos * 10 + (s[pos] - '0');
                ++count;
                ++pos;
            }
            if (count == 0) throw std::invalid_argument("empty fraction");
            for (int k = std::min(count, 9); k < 9; ++k) nanos *= 10;
        }
        std::int64_t offset = 0;
        if (pos < s.size() && (s[pos] == 'Z' || s[pos] == 'z')) {
            ++pos;
        } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            int sign = s[pos] == '+' ? 1 : -1;
            int oh = digits(s, pos + 1, 2);
            std::size_t next = pos + 3;
            if (next < s.size() && s[next] == ':') ++next;
            int om = digits(s, next, 2);
            offset = sign * (oh * 3600 + om * 60);
            pos = next + 2;
        } else {
            throw std::invalid_argument("missing zone designator");
        }
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        std::int64_t secs = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day)) * 86400 +
                            hour * 3600 + minute * 60 + second - offset;
        return {secs, nanos};
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("invalid ISO-8601 timestamp '" + std::string(s) + "': " + e.what());
    }
}

Leaderboard build_leaderboard(const std::vector<SubmissionRecord>& records, const std::vector<std::string>& instances) {
    Leaderboard board;
    board.instances = instances;
    std::sort(board.instances.begin(), board.instances.end());
    board.instances.erase(std::unique(board.instances.begin(), board.instances.end()), board.instances.end());
    const std::set<std::string> known(board.instances.begin(), board.instances.end());

    std::set<std::string> teams;
    for (const auto& r : records) {
        if (!known.count(r.instance)) throw UnknownInstance("record of team '" + r.team + "' names unknown instance '" + r.instance + "'");
        if (r.value < 0) throw std::invalid_argument("negative value in record of team '" + r.team + "'");
        teams.insert(r.team);
    }
    for (const auto& name : board.instances) board.best[name] = 0;
    for (const auto& r : records) board.best[r.instance] = std::max(board.best[r.instance], r.value);

    // Records in time order (stable on input order) drive the tie-break replay.
    std::vector<const SubmissionRecord*> timeline;
    for (const auto& r : records) timeline.push_back(&r);
    std::stable_sort(timeline.begin(), timeline.end(),
                     [](const SubmissionRecord* a, const SubmissionRecord* b) { return a->at < b->at; });

    for (const auto& team : teams) {
        TeamStanding st;
        st.team = team;
        for (const auto& name : board.instances) st.best_values[name] = 0;
        for (const auto& r : records)
            if (r.team == team) st.best_values[r.instance] = std::max(st.best_values[r.instance], r.value);
        st.total = 0;
        for (const auto& name : board.instances) {
            st.per_instance[name] = instance_score(st.best_values[name], board.best[name]);
            st.total += st.per_instance[name];
        }

        std::map<std::string, std::int64_t> running;
        Rational running_total = 0;
        for (const SubmissionRecord* r : timeline) {
            if (r->team != team) continue;
            if (!st.achieved_at && st.total == 0) {
                st.achieved_at = r->at;
                st.achieved_at_text = r->timestamp;
            }
            auto& cur = running[r->instance];
            if (r->value > cur) {
                running_total += instance_score(r->value, board.best[r->instance]) - instance_score(cur, board.best[r->instance]);
                cur = r->value;
            }
            if (!st.achieved_at && running_total == st.total) {
                st.achieved_at = r->at;
                st.achieved_at_text = r->timestamp;
            }
        }
        board.ranking.push_back(std::move(st));
    }

    std::sort(board.ranking.begin(), board.ranking.end(), [](const TeamStanding& a, const TeamStanding& b) {
        if (a.total != b.total) return a.total > b.total;
        if (a.achieved_at != b.achieved_at) {
            if (!a.achieved_at) return false;
            if (!b.achieved_at) return true;
            return *a.achieved_at < *b.achieved_at;
        }
        return a.team < b.team;
    });
    return board;
}

std::vector<CsvRecord> parse_records_csv(std::string_view text) {
    std::vector<CsvRecord> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto f = split_csv_line(line);
        if (line_no == 1 && !f.empty() && f[0] == "team") continue;
        auto where = [&] { return "records line " + std::to_string(line_no) + ": "; };
        if (f.size() != 4 && f.size() != 5) throw std::invalid_argument(where() + "expected 4 or 5 fields");
        CsvRecord rec;
        rec.record.team = f[0];
        rec.record.instance = f[1];
        const std::string& v = f[2];
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), rec.record.value);
        if (ec != std::errc() || ptr != v.data() + v.size() || rec.record.value < 0) {
            throw std::invalid_argument(where() + "value must be a non-negative integer");
        }
        rec.record.timestamp = f[3];
        try {
            rec.record.at = parse_iso8601(f[3]);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where() + e.what());
        }
        if (rec.record.team.empty() || rec.record.instance.empty()) throw std::invalid_argument(where() + "empty team or instance");
        if (f.size() == 5) rec.solution_path = f[4];
        out.push_back(std::move(rec));
    }
    return out;
}

std::string leaderboard_to_json(const Leaderboard& board) {
    nlohmann::ordered_json j;
    j["instances"] = board.instances;
    nlohmann::ordered_json best = nlohmann::ordered_json::object();
    for (const auto& [name, v] : board.best) best[name] = v;
    j["best_values"] = best;
    nlohmann::ordered_json ranking = nlohmann::ordered_json::array();
    std::size_t rank = 1;
    for (const auto& st : board.ranking) {
        nlohmann::ordered_json t;
        t["rank"] = rank++;
        t["team"] = st.team;
        t["total"] = to_exact_string(st.total);
        t["total_display"] = to_fixed_string(st.total, 2);
        t["achieved_at"] = st.achieved_at ? nlohmann::ordered_json(st.achieved_at_text) : nlohmann::ordered_json(nullptr);
        nlohmann::ordered_json per = nlohmann::ordered_json::object();
        for (const auto& name : board.instances) {
            per[name] = {{"value", st.best_values.at(name)}, {"score", to_exact_string(st.per_instance.at(name))}};
        }
        t["instances"] = per;
        ranking.push_back(t);
    }
    j["ranking"] = ranking;
    return j.dump(2) + "\n";
}

std::string leaderboard_table(const Leaderboard& board) {
    std::size_t width = 4;
    for (const auto& st : board.ranking) width = std::max(width, st.team.size());
    std::ostringstream out;
    out << std::left << std::setw(6) << "rank" << std::setw(static_cast<int>(width) + 2) << "team" << std::right
        << std::setw(10) << "score" << "  achieved\n";
    std::size_t rank = 1;
    for (const auto& st : board.ranking) {
        out << std::left << std::setw(6) << rank++ << std::setw(static_cast<int>(width) + 2) << st.team << std::right
            << std::setw(10) << to_fixed_string(st.total, 2) << "  " << (st.achieved_at ? st.achieved_at_text : "-") << "\n";
    }
    return out.str();
}

}  // namespace polypack
