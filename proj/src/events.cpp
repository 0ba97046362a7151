#include "fuzzavail/events.hpp"

#include <algorithm>
#include <cmath>

#include "fuzzavail/error.hpp"
#include "fuzzavail/numfmt.hpp"
#include "text.hpp"

namespace fuzzavail {

Timeline::Timeline(double observation_start, double observation_end, std::vector<EventRecord> events)
    : start_(observation_start), end_(observation_end), events_(std::move(events)) {
    if (!std::isfinite(start_) || !std::isfinite(end_) || start_ < 0.0 || start_ > end_) {
        throw Error("invalid-timeline", "observation window must satisfy 0 <= start <= end");
    }
    for (std::size_t k = 0; k < events_.size(); ++k) {
        const auto& e = events_[k];
        if (!std::isfinite(e.timestamp) || e.timestamp < start_ || e.timestamp > end_) {
            throw Error("invalid-timeline", "event " + std::to_string(k + 1) + " lies outside the window");
        }
        if (k > 0 && !(e.timestamp > events_[k - 1].timestamp)) {
            throw Error("invalid-timeline", "event " + std::to_string(k + 1) + " is not after its predecessor");
        }
        const EventKind expected = k % 2 == 0 ? EventKind::failure : EventKind::restore;
        if (e.kind != expected) {
            throw Error("invalid-timeline", "event " + std::to_string(k + 1) + " breaks failure/restore alternation");
        }
    }
}

namespace {

struct Row {
    EventRecord event;
    std::size_t line;
};

Diagnostic located(std::string code, std::string message, std::size_t line, std::size_t column = 1) {
    return {Severity::error, std::move(code), std::move(message), SourceLocation{line, column}};
}

}  // namespace

EventParseResult parse_events(std::string_view csv, const WindowOverride& window) {
    EventParseResult result;
    auto& diags = result.diagnostics;

    std::optional<double> start;
    std::optional<double> end;
    std::size_t start_line = 0;
    std::size_t end_line = 0;
    bool header_seen = false;
    std::vector<Row> rows;

    std::size_t line_no = 0;
    for (auto raw : split(csv, '\n')) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            // "# start=<h>" / "# end=<h>"; other comments are ignored.
            auto body = trim(line.substr(1));
            const auto eq = body.find('=');
            if (eq == std::string_view::npos) continue;
            const auto key = to_lower(trim(body.substr(0, eq)));
            auto text = trim(body.substr(eq + 1));
            std::optional<double>* slot = key == "start" ? &start : key == "end" ? &end : nullptr;
            if (!slot) continue;
            if (auto v = parse_number(text)) {
                *slot = *v;
                (key == "start" ? start_line : end_line) = line_no;
            } else {
                diags.push_back(
                    located("malformed-number", "malformed window bound '" + std::string(text) + "'", line_no));
            }
            continue;
        }
        if (!header_seen) {
            auto fields = split(line, ',');
            if (fields.size() != 2 || to_lower(trim(fields[0])) != "timestamp" || to_lower(trim(fields[1])) != "kind") {
                diags.push_back(located("missing-header", "expected header 'timestamp,kind'", line_no));
                return result;
            }
            header_seen = true;
            continue;
        }

        auto fields = split(raw, ',');
        if (fields.size() != 2) {
            diags.push_back(located("malformed-row", "expected 2 fields, got " + std::to_string(fields.size()), line_no));
            continue;
        }
        const auto kind_text = trim(fields[1]);
        const std::size_t kind_col = fields[0].size() + 2 + static_cast<std::size_t>(kind_text.data() - fields[1].data());
        auto ts = parse_number(trim(fields[0]));
        if (!ts || *ts < 0.0) {
            diags.push_back(located("malformed-number",
                                    "timestamp must be a non-negative number, got '" + std::string(trim(fields[0])) + "'",
                                    line_no));
            continue;
        }
        auto kind = to_lower(kind_text);
        EventKind k;
        if (kind == "failure") {
            k = EventKind::failure;
        } else if (kind == "restore") {
            k = EventKind::restore;
        } else {
            diags.push_back(located("unknown-kind", "event kind must be 'failure' or 'restore', got '" +
                                                        std::string(kind_text) + "'",
                                    line_no, kind_col));
            continue;
        }
        rows.push_back({{*ts, k}, line_no});
    }

    if (!header_seen) {
        diags.push_back(located("missing-header", "expected header 'timestamp,kind'", std::max<std::size_t>(line_no, 1)));
        return result;
    }

    if (window.start) start = window.start;
    if (window.end) end = window.end;
    if (!start || !end) {
        diags.push_back({Severity::error, "missing-window",
                         "observation window needs '# start=' and '# end=' lines or explicit bounds", std::nullopt});
        return result;
    }
    if (*start < 0.0 || *start > *end) {
        const std::size_t at = window.start || window.end ? 0 : std::max(start_line, end_line);
        Diagnostic d{Severity::error, "invalid-window", "observation window must satisfy 0 <= start <= end", std::nullopt};
        if (at > 0) d.location = SourceLocation{at, 1};
        diags.push_back(std::move(d));
        return result;
    }

    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& [e, line] = rows[k];
        if (e.timestamp < *start || e.timestamp > *end) {
            diags.push_back(located("outside-window",
                                    "event at " + format_number(e.timestamp) + " lies outside the observation window [" +
                                        format_number(*start) + ", " + format_number(*end) + "]",
                                    line));
        }
        if (k > 0 && !(e.timestamp > rows[k - 1].event.timestamp)) {
            diags.push_back(located("non-monotone-timestamp",
                                    "timestamp " + format_number(e.timestamp) + " does not follow " +
                                        format_number(rows[k - 1].event.timestamp),
                                    line));
        }
        const EventKind previous = k == 0 ? EventKind::restore : rows[k - 1].event.kind;
        if (e.kind == previous) {
            if (k == 0) {
                diags.push_back(located("orphan-restore", "restore without a preceding failure", line));
            } else {
                diags.push_back(located(e.kind == EventKind::failure ? "consecutive-failure" : "consecutive-restore",
                                        "two consecutive events of the same kind", line));
            }
        }
    }
    if (has_errors(diags)) return result;

    std::vector<EventRecord> events;
    events.reserve(rows.size());
    for (const auto& r : rows) events.push_back(r.event);
    result.timeline.emplace(*start, *end, std::move(events));
    return result;
}

UptimeBreakdown breakdown(const Timeline& timeline) {
    UptimeBreakdown b;
    double up_since = timeline.observation_start();
    double down_since = 0.0;
    bool up = true;
    for (const auto& e : timeline.events()) {
        if (e.kind == EventKind::failure) {
            b.uptime += e.timestamp - up_since;
            down_since = e.timestamp;
            up = false;
        } else {
            b.completed_repair_time += e.timestamp - down_since;
            ++b.completed_repairs;
            up_since = e.timestamp;
            up = true;
        }
    }
    if (up) {
        b.uptime += timeline.observation_end() - up_since;
    } else {
        b.open_downtime = timeline.observation_end() - down_since;
    }
    return b;
}

ReliabilityStats compute_stats(const Timeline& timeline, Diagnostics* notes) {
    const auto b = breakdown(timeline);
    ReliabilityStats stats;
    stats.failure_count = (timeline.events().size() + 1) / 2;
    if (stats.failure_count > 0) stats.mtbf = b.uptime / static_cast<double>(stats.failure_count);
    if (b.completed_repairs > 0) stats.mtr = b.completed_repair_time / static_cast<double>(b.completed_repairs);
    if (stats.failure_count > b.completed_repairs && notes) {
        notes->push_back({Severity::warning, "incomplete-repair",
                          "last failure at " + format_number(timeline.events().back().timestamp) +
                              " has no restore; it is excluded from MTR",
                          std::nullopt});
    }
    return stats;
}

}  // namespace fuzzavail
